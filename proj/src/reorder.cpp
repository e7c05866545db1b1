#include "mds/reorder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mds/rouge.hpp"

namespace mds {

namespace {

std::vector<TokenSeq> document_token_sentences(const Document& doc) {
  std::vector<TokenSeq> out;
  out.reserve(doc.sentences.size());
  for (const auto& s : doc.sentences) out.push_back(s.tokens);
  return out;
}

}  // namespace

bool ImportanceDistribution::valid(double tol) const {
  double sum = 0.0;
  for (double s : scores) {
    if (!(s >= 0.0)) return false;
    sum += s;
  }
  return std::abs(sum - 1.0) <= tol;
}

ImportanceDistribution oracle_importance(const Instance& instance) {
  if (tokenize(instance.gold_summary).empty())
    throw std::invalid_argument("oracle requires reference (instance " + instance.id + ")");
  std::vector<TokenSeq> summary_sents;
  for (const auto& s : segment_sentences(instance.gold_summary))
    summary_sents.push_back(tokenize(s));

  ImportanceDistribution dist;
  dist.instance_id = instance.id;
  double sum = 0.0;
  for (const auto& doc : instance.documents) {
    double f = rouge_n(document_token_sentences(doc), summary_sents, 1).f1;
    dist.scores.push_back(f);
    sum += f;
  }
  if (sum <= 0.0) {
    std::fill(dist.scores.begin(), dist.scores.end(),
              1.0 / static_cast<double>(dist.scores.size()));
  } else {
    for (double& s : dist.scores) s /= sum;
  }
  return dist;
}

std::vector<double> centrality_scores(const Instance& instance) {
  std::size_t m = instance.documents.size();
  if (m < 2)
    throw std::invalid_argument("centrality undefined for single document (instance " +
                                instance.id + ")");
  std::vector<double> scores(m);
  for (std::size_t i = 0; i < m; ++i) {
    // Topic T_i: lead-3 sentences of every other document.
    std::vector<TokenSeq> topic;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const auto& sents = instance.documents[j].sentences;
      for (std::size_t k = 0; k < std::min<std::size_t>(3, sents.size()); ++k)
        topic.push_back(sents[k].tokens);
    }
    scores[i] = rouge_n(document_token_sentences(instance.documents[i]), topic, 1).f1;
  }
  return scores;
}

std::vector<double> length_scores(const Instance& instance) {
  std::vector<double> scores;
  scores.reserve(instance.documents.size());
  for (const auto& doc : instance.documents) {
    std::size_t tokens = 0;
    for (const auto& s : doc.sentences) tokens += s.tokens.size();
    scores.push_back(static_cast<double>(tokens));
  }
  return scores;
}

std::uint64_t derive_seed(std::uint64_t seed, const std::string& instance_id) {
  // FNV-1a over the id, mixed with the base seed; stable across platforms.
  std::uint64_t h = 14695981039346656037ull ^ seed;
  for (unsigned char c : instance_id) {
    h ^= c;
    h *= 1099511628211ull;
  }
  h ^= seed * 0x9e3779b97f4a7c15ull;
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  return h;
}

namespace {

// splitmix64: small, fully specified, reproducible everywhere.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Unbiased bounded draw by rejection.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = -bound % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }
};

}  // namespace

DocumentOrder random_order(const Instance& instance, std::uint64_t seed) {
  std::size_t m = instance.documents.size();
  DocumentOrder order = DocumentOrder::identity(m);
  SplitMix64 rng{derive_seed(seed, instance.id)};
  for (std::size_t i = m; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(order.permutation[i - 1], order.permutation[j]);
  }
  return order;
}

DocumentOrder make_order(const std::vector<double>& scores) {
  if (scores.empty()) throw std::invalid_argument("make_order: empty scores");
  for (double s : scores)
    if (std::isnan(s)) throw std::invalid_argument("make_order: NaN score");
  DocumentOrder order = DocumentOrder::identity(scores.size());
  std::stable_sort(order.permutation.begin(), order.permutation.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });
  order.inducing_scores = scores;
  return order;
}

double kl_divergence(const ImportanceDistribution& predicted,
                     const ImportanceDistribution& oracle) {
  if (predicted.scores.size() != oracle.scores.size())
    throw std::invalid_argument("kl_divergence: length mismatch");
  double kl = 0.0;
  for (std::size_t i = 0; i < predicted.scores.size(); ++i) {
    double p = predicted.scores[i];
    if (p <= 0.0) continue;
    double q = std::max(oracle.scores[i], 1e-10);
    kl += p * std::log(p / q);
  }
  return kl;
}

ImportanceDistribution external_scores(const Instance& instance, ImportanceScorer& scorer) {
  std::vector<double> raw;
  try {
    raw = scorer.score(instance);
  } catch (const std::exception& e) {
    throw std::runtime_error("external scorer failed on instance " + instance.id + ": " +
                             e.what());
  }
  if (raw.size() != instance.documents.size())
    throw std::runtime_error("external scorer returned " + std::to_string(raw.size()) +
                             " scores for " + std::to_string(instance.documents.size()) +
                             " documents (instance " + instance.id + ")");
  for (double s : raw)
    if (!std::isfinite(s))
      throw std::runtime_error("external scorer returned non-finite score (instance " +
                               instance.id + ")");
  double max_raw = *std::max_element(raw.begin(), raw.end());
  double sum = 0.0;
  ImportanceDistribution dist;
  dist.instance_id = instance.id;
  dist.scores.reserve(raw.size());
  for (double s : raw) {
    double e = std::exp(s - max_raw);
    dist.scores.push_back(e);
    sum += e;
  }
  for (double& s : dist.scores) s /= sum;
  return dist;
}

}  // namespace mds
