#ifndef MDS_EVAL_HPP
#define MDS_EVAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mds/corpus.hpp"
#include "mds/rouge.hpp"
#include "mds/summarize.hpp"

namespace mds {

struct RankingReport {
  double mean_tau = 0.0;  // over instances with m >= 2
  double pmr = 0.0;
  struct PerInstance {
    std::string id;
    double tau;  // NaN when m == 1
    bool exact_match;
  };
  std::vector<PerInstance> per_instance;
};

struct PositionHistogram {
  int bin_width = 5;
  std::vector<double> bins;  // fractions, last bin open-ended
  enum class Axis { reordered_meta, original_meta };
  Axis axis = Axis::reordered_meta;
};

struct SignificanceResult {
  double p_value = 1.0;
  int wins_a = 0;
  int wins_b = 0;
  int iterations = 0;
  std::uint64_t seed = 0;
};

struct RougeAggregate {
  double mean_r1 = 0.0, mean_r2 = 0.0, mean_rl = 0.0;
  std::vector<double> per_instance_r1, per_instance_r2, per_instance_rl;
};

/// Kendall tau-a between two permutations of the same m >= 2 documents.
double kendall_tau(const DocumentOrder& predicted, const DocumentOrder& oracle);

/// Mean tau (m >= 2 only) and perfect-match ratio over aligned order
/// sequences; m = 1 instances count as exact matches but are excluded from
/// the tau mean.
RankingReport ranking_report(const std::vector<DocumentOrder>& predicted,
                             const std::vector<DocumentOrder>& oracle,
                             const std::vector<std::string>& ids);

/// Mean R1/R2/RL F1 over aligned (summary, reference) pairs; per-instance
/// scores retained for bootstrap. `stem` applies Porter stemming to both
/// sides before matching.
RougeAggregate evaluate_rouge(const std::vector<std::string>& summary_texts,
                              const std::vector<std::string>& reference_texts, bool stem);

/// One-sided paired bootstrap over instance scores: resample indices with
/// replacement; p = fraction of iterations where the system with the lower
/// full-set mean wins or ties. Deterministic under fixed seed.
SignificanceResult paired_bootstrap(const std::vector<double>& scores_a,
                                    const std::vector<double>& scores_b, int iterations,
                                    std::uint64_t seed);

/// Distribution of selected-sentence positions, binned by bin_width and
/// normalized. Axis original_meta maps selections back through provenance to
/// the identity-order meta-document.
PositionHistogram position_histogram(const std::vector<Summary>& summaries,
                                     const std::vector<MetaDocument>& metas,
                                     PositionHistogram::Axis axis, int bin_width = 5);

struct GainRow {
  int m;
  double mean_delta_r1;
  int count;
};

/// Per-document-count mean R1 difference (a minus b); groups with m >= 6 are
/// excluded.
std::vector<GainRow> gain_by_doc_count(const std::vector<double>& r1_a,
                                       const std::vector<double>& r1_b,
                                       const std::vector<int>& doc_counts);

}  // namespace mds

#endif  // MDS_EVAL_HPP
