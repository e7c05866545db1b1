#include "mds/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "mds/reorder.hpp"

namespace mds {

double kendall_tau(const DocumentOrder& predicted, const DocumentOrder& oracle) {
  const std::size_t m = predicted.permutation.size();
  if (m != oracle.permutation.size())
    throw std::invalid_argument("kendall_tau: length mismatch");
  if (m < 2) throw std::invalid_argument("tau undefined for m < 2");
  if (!predicted.is_permutation() || !oracle.is_permutation())
    throw std::invalid_argument("kendall_tau: invalid permutation");

  std::vector<int> rank_pred(m), rank_oracle(m);
  for (std::size_t pos = 0; pos < m; ++pos) {
    rank_pred[predicted.permutation[pos]] = static_cast<int>(pos);
    rank_oracle[oracle.permutation[pos]] = static_cast<int>(pos);
  }
  long long concordant = 0, discordant = 0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      long long s = static_cast<long long>(rank_pred[a] - rank_pred[b]) *
                    (rank_oracle[a] - rank_oracle[b]);
      if (s > 0) ++concordant;
      else ++discordant;
    }
  }
  return static_cast<double>(concordant - discordant) /
         (static_cast<double>(m) * (m - 1) / 2.0);
}

RankingReport ranking_report(const std::vector<DocumentOrder>& predicted,
                             const std::vector<DocumentOrder>& oracle,
                             const std::vector<std::string>& ids) {
  if (predicted.size() != oracle.size() || (!ids.empty() && ids.size() != predicted.size()))
    throw std::invalid_argument("ranking_report: length mismatch");
  RankingReport report;
  double tau_sum = 0.0;
  std::size_t tau_count = 0, matches = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    bool exact = predicted[i].permutation == oracle[i].permutation;
    double tau = std::numeric_limits<double>::quiet_NaN();
    if (predicted[i].permutation.size() >= 2) {
      tau = kendall_tau(predicted[i], oracle[i]);
      tau_sum += tau;
      ++tau_count;
    }
    if (exact) ++matches;
    report.per_instance.push_back({ids.empty() ? std::to_string(i) : ids[i], tau, exact});
  }
  report.mean_tau = tau_count > 0 ? tau_sum / static_cast<double>(tau_count) : 0.0;
  report.pmr = predicted.empty() ? 0.0
                                 : static_cast<double>(matches) /
                                       static_cast<double>(predicted.size());
  return report;
}

RougeAggregate evaluate_rouge(const std::vector<std::string>& summary_texts,
                              const std::vector<std::string>& reference_texts, bool stem) {
  if (summary_texts.size() != reference_texts.size())
    throw std::invalid_argument("evaluate_rouge: length mismatch");
  if (summary_texts.empty()) throw std::invalid_argument("evaluate_rouge: empty input");

  auto to_token_sentences = [stem](const std::string& text) {
    std::vector<TokenSeq> out;
    for (const auto& sent : segment_sentences(text)) out.push_back(tokenize(sent, stem));
    return out;
  };

  RougeAggregate agg;
  for (std::size_t i = 0; i < summary_texts.size(); ++i) {
    auto cand = to_token_sentences(summary_texts[i]);
    auto ref = to_token_sentences(reference_texts[i]);
    agg.per_instance_r1.push_back(rouge_n(cand, ref, 1).f1);
    agg.per_instance_r2.push_back(rouge_n(cand, ref, 2).f1);
    agg.per_instance_rl.push_back(rouge_l(cand, ref).f1);
  }
  auto mean = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  };
  agg.mean_r1 = mean(agg.per_instance_r1);
  agg.mean_r2 = mean(agg.per_instance_r2);
  agg.mean_rl = mean(agg.per_instance_rl);
  return agg;
}

SignificanceResult paired_bootstrap(const std::vector<double>& scores_a,
                                    const std::vector<double>& scores_b, int iterations,
                                    std::uint64_t seed) {
  if (scores_a.size() != scores_b.size())
    throw std::invalid_argument("paired_bootstrap: length mismatch");
  if (scores_a.size() < 2) throw std::invalid_argument("paired_bootstrap: need >= 2 instances");
  if (iterations < 100) throw std::invalid_argument("paired_bootstrap: iterations must be >= 100");

  const std::size_t n = scores_a.size();
  double full_mean_a = std::accumulate(scores_a.begin(), scores_a.end(), 0.0) / n;
  double full_mean_b = std::accumulate(scores_b.begin(), scores_b.end(), 0.0) / n;
  // The one-sided test asks how often the nominally worse system beats (or
  // ties, conservatively) the nominally better one under resampling.
  bool a_is_better = full_mean_a >= full_mean_b;

  SignificanceResult result;
  result.iterations = iterations;
  result.seed = seed;
  int null_events = 0;
  for (int it = 0; it < iterations; ++it) {
    std::uint64_t sub = derive_seed(seed, "bootstrap:" + std::to_string(it));
    // splitmix64 inline to keep iterations independent and order-free
    auto next = [&sub]() {
      std::uint64_t z = (sub += 0x9e3779b97f4a7c15ull);
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      return z ^ (z >> 31);
    };
    double sum_a = 0.0, sum_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t idx = static_cast<std::size_t>(next() % n);
      sum_a += scores_a[idx];
      sum_b += scores_b[idx];
    }
    if (sum_a > sum_b) ++result.wins_a;
    else if (sum_b > sum_a) ++result.wins_b;
    bool better_won = a_is_better ? sum_a > sum_b : sum_b > sum_a;
    if (!better_won) ++null_events;  // worse system won or tied
  }
  result.p_value = static_cast<double>(null_events) / static_cast<double>(iterations);
  return result;
}

PositionHistogram position_histogram(const std::vector<Summary>& summaries,
                                     const std::vector<MetaDocument>& metas,
                                     PositionHistogram::Axis axis, int bin_width) {
  if (summaries.size() != metas.size())
    throw std::invalid_argument("position_histogram: length mismatch");
  if (bin_width < 1) throw std::invalid_argument("position_histogram: bin_width must be >= 1");

  PositionHistogram hist;
  hist.bin_width = bin_width;
  hist.axis = axis;
  std::vector<long long> counts;
  long long total = 0;
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    const MetaDocument& meta = metas[i];

    // For the original axis, map (doc, pos_in_doc) to the position the
    // sentence would have under identity document order.
    std::vector<int> doc_offsets;
    if (axis == PositionHistogram::Axis::original_meta) {
      std::vector<int> doc_sizes;
      for (const auto& ms : meta.sentences) {
        if (ms.source_doc_index >= static_cast<int>(doc_sizes.size()))
          doc_sizes.resize(ms.source_doc_index + 1, 0);
        doc_sizes[ms.source_doc_index] =
            std::max(doc_sizes[ms.source_doc_index], ms.position_in_doc + 1);
      }
      doc_offsets.resize(doc_sizes.size(), 0);
      int off = 0;
      for (std::size_t d = 0; d < doc_sizes.size(); ++d) {
        doc_offsets[d] = off;
        off += doc_sizes[d];
      }
    }

    for (int sel : summaries[i].selected) {
      if (sel < 0 || sel >= static_cast<int>(meta.sentences.size()))
        throw std::invalid_argument("position_histogram: selection out of range");
      const MetaSentence& ms = meta.sentences[sel];
      int pos = axis == PositionHistogram::Axis::reordered_meta
                    ? ms.position_in_meta
                    : doc_offsets[ms.source_doc_index] + ms.position_in_doc;
      int bin = pos / bin_width;
      if (bin >= static_cast<int>(counts.size())) counts.resize(bin + 1, 0);
      ++counts[bin];
      ++total;
    }
  }
  if (total > 0)
    for (long long c : counts) hist.bins.push_back(static_cast<double>(c) / total);
  return hist;
}

std::vector<GainRow> gain_by_doc_count(const std::vector<double>& r1_a,
                                       const std::vector<double>& r1_b,
                                       const std::vector<int>& doc_counts) {
  if (r1_a.size() != r1_b.size() || r1_a.size() != doc_counts.size())
    throw std::invalid_argument("gain_by_doc_count: length mismatch");
  std::map<int, std::pair<double, int>> groups;
  for (std::size_t i = 0; i < r1_a.size(); ++i) {
    if (doc_counts[i] >= 6) continue;
    auto& [delta_sum, count] = groups[doc_counts[i]];
    delta_sum += r1_a[i] - r1_b[i];
    ++count;
  }
  std::vector<GainRow> rows;
  for (const auto& [m, acc] : groups)
    rows.push_back({m, acc.first / acc.second, acc.second});
  return rows;
}

}  // namespace mds
