#include "mds/summarize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace mds {

namespace {

std::string join_selected(const MetaDocument& meta, const std::vector<int>& selected) {
  std::string text;
  for (int idx : selected) {
    if (!text.empty()) text += ' ';
    text += meta.sentences[idx].sentence->text;
  }
  return text;
}

Summary finish(const MetaDocument& meta, std::vector<int> selected, std::string method) {
  std::sort(selected.begin(), selected.end());
  selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
  Summary s;
  s.instance_id = meta.instance_id;
  s.text = join_selected(meta, selected);
  s.selected = std::move(selected);
  s.method = std::move(method);
  return s;
}

// PageRank on the row-normalized weight matrix: zero rows jump uniformly,
// damping 0.85, L-inf tolerance 1e-5, at most 100 iterations. The result is
// normalized to sum 1.
Eigen::VectorXd pagerank(const Eigen::MatrixXd& weights) {
  const int n = static_cast<int>(weights.rows());
  const double damping = 0.85;
  Eigen::MatrixXd transition(n, n);
  for (int i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < n; ++j) row_sum += i == j ? 0.0 : weights(i, j);
    if (row_sum > 0.0) {
      for (int j = 0; j < n; ++j) transition(i, j) = i == j ? 0.0 : weights(i, j) / row_sum;
    } else {
      transition.row(i).setConstant(1.0 / n);
    }
  }
  Eigen::VectorXd score = Eigen::VectorXd::Constant(n, 1.0 / n);
  for (int iter = 0; iter < 100; ++iter) {
    Eigen::VectorXd next =
        Eigen::VectorXd::Constant(n, (1.0 - damping) / n) + damping * transition.transpose() * score;
    double delta = (next - score).cwiseAbs().maxCoeff();
    score = next;
    if (delta < 1e-5) break;
  }
  score /= score.sum();
  return score;
}

}  // namespace

std::vector<int> select_top_k(const std::vector<double>& scores, int k) {
  if (k < 1) throw std::invalid_argument("select_top_k: k must be >= 1");
  for (double s : scores)
    if (std::isnan(s)) throw std::invalid_argument("select_top_k: NaN score");
  std::vector<int> idx(scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return scores[a] > scores[b]; });
  if (static_cast<int>(idx.size()) > k) idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

SentenceGraph tfidf_similarity(const MetaDocument& meta) {
  const int n = static_cast<int>(meta.sentences.size());
  SentenceGraph graph;
  graph.n = n;
  graph.weights = Eigen::MatrixXd::Zero(n, n);
  graph.directed = false;
  if (n == 0) return graph;

  // Document frequency over the meta-document's own sentences.
  std::unordered_map<std::string, int> df;
  std::vector<std::unordered_map<std::string, int>> tf(n);
  for (int i = 0; i < n; ++i) {
    for (const auto& tok : meta.sentences[i].sentence->tokens) ++tf[i][tok];
    for (const auto& [tok, count] : tf[i]) ++df[tok];
  }
  std::vector<std::unordered_map<std::string, double>> vec(n);
  std::vector<double> norm(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (const auto& [tok, count] : tf[i]) {
      double w = count * (1.0 + std::log(static_cast<double>(n) / df[tok]));
      vec[i][tok] = w;
      norm[i] += w * w;
    }
    norm[i] = std::sqrt(norm[i]);
  }
  for (int i = 0; i < n; ++i) {
    graph.weights(i, i) = 1.0;
    for (int j = i + 1; j < n; ++j) {
      if (norm[i] == 0.0 || norm[j] == 0.0) continue;
      const auto& small = vec[i].size() <= vec[j].size() ? vec[i] : vec[j];
      const auto& large = vec[i].size() <= vec[j].size() ? vec[j] : vec[i];
      double dot = 0.0;
      for (const auto& [tok, w] : small) {
        auto it = large.find(tok);
        if (it != large.end()) dot += w * it->second;
      }
      double cos = dot / (norm[i] * norm[j]);
      graph.weights(i, j) = cos;
      graph.weights(j, i) = cos;
    }
  }
  return graph;
}

Summary lead_n(const MetaDocument& meta, int n_per_doc) {
  if (n_per_doc < 1) throw std::invalid_argument("lead_n: n_per_doc must be >= 1");
  std::vector<int> selected;
  for (const auto& ms : meta.sentences)
    if (ms.position_in_doc < n_per_doc) selected.push_back(ms.position_in_meta);
  return finish(meta, std::move(selected), "lead");
}

Summary textrank(const MetaDocument& meta, int k) {
  if (k < 1) throw std::invalid_argument("textrank: k must be >= 1");
  SentenceGraph graph = tfidf_similarity(meta);
  Eigen::VectorXd score = pagerank(graph.weights);
  std::vector<double> scores(score.data(), score.data() + score.size());
  return finish(meta, select_top_k(scores, k), "textrank");
}

Summary lexrank(const MetaDocument& meta, int k) {
  if (k < 1) throw std::invalid_argument("lexrank: k must be >= 1");
  SentenceGraph graph = tfidf_similarity(meta);
  Eigen::MatrixXd adjacency =
      (graph.weights.array() >= 0.1).cast<double>();
  Eigen::VectorXd score = pagerank(adjacency);
  std::vector<double> scores(score.data(), score.data() + score.size());
  return finish(meta, select_top_k(scores, k), "lexrank");
}

Summary pacsum(const MetaDocument& meta, int k, const PacsumParams& params) {
  if (k < 1) throw std::invalid_argument("pacsum: k must be >= 1");
  if (params.beta < 0.0 || params.beta > 1.0)
    throw std::invalid_argument("pacsum: beta must be in [0,1]");
  const int n = static_cast<int>(meta.sentences.size());
  if (n == 0) return finish(meta, {}, "pacsum");
  SentenceGraph graph = tfidf_similarity(meta);

  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double e = graph.weights(i, j);
      if (first) {
        lo = hi = e;
        first = false;
      } else {
        lo = std::min(lo, e);
        hi = std::max(hi, e);
      }
    }
  double tau = lo + params.beta * (hi - lo);

  std::vector<double> centrality(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double incoming = 0.0, outgoing = 0.0;
    for (int j = 0; j < i; ++j) incoming += std::max(0.0, graph.weights(j, i) - tau);
    for (int j = i + 1; j < n; ++j) outgoing += std::max(0.0, graph.weights(i, j) - tau);
    centrality[i] = params.lambda1 * incoming + params.lambda2 * outgoing;
  }
  return finish(meta, select_top_k(centrality, k), "pacsum");
}

double oracle_gain_metric(const std::vector<TokenSeq>& candidate,
                          const std::vector<TokenSeq>& reference) {
  return 0.5 * (rouge_n(candidate, reference, 1).f1 + rouge_n(candidate, reference, 2).f1);
}

Summary greedy_oracle(const MetaDocument& meta, const std::vector<TokenSeq>& reference,
                      int budget) {
  long long ref_tokens = 0;
  for (const auto& s : reference) ref_tokens += static_cast<long long>(s.size());
  if (reference.empty() || ref_tokens == 0)
    throw std::invalid_argument("greedy_oracle: empty reference");

  const int n = static_cast<int>(meta.sentences.size());
  std::vector<int> selected;
  std::vector<bool> used(n, false);
  std::vector<TokenSeq> chosen;
  double current = 0.0;
  while (static_cast<int>(selected.size()) < budget) {
    int best = -1;
    double best_score = current;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      chosen.push_back(meta.sentences[i].sentence->tokens);
      double score = oracle_gain_metric(chosen, reference);
      chosen.pop_back();
      if (score > best_score) {  // strict: ties on gain keep the earlier position
        best_score = score;
        best = i;
      }
    }
    if (best < 0) break;
    used[best] = true;
    selected.push_back(best);
    chosen.push_back(meta.sentences[best].sentence->tokens);
    current = best_score;
  }
  return finish(meta, std::move(selected), "oracle");
}

}  // namespace mds
