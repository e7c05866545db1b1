#ifndef MDS_REORDER_HPP
#define MDS_REORDER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mds/corpus.hpp"

namespace mds {

/// Per-document scores over one instance, nonnegative and summing to 1.
struct ImportanceDistribution {
  std::string instance_id;
  std::vector<double> scores;

  bool valid(double tol = 1e-9) const;
};

/// Raw per-document importance scores for one instance. Implementations may
/// shell out to external processes; the contract is synchronous.
class ImportanceScorer {
 public:
  virtual ~ImportanceScorer() = default;
  virtual std::vector<double> score(const Instance& instance) = 0;
};

/// Normalized ROUGE-1 F of each document against the gold summary.
/// Uniform when every raw score is zero. Throws if the gold summary is empty.
ImportanceDistribution oracle_importance(const Instance& instance);

/// Centrality of d_i = ROUGE-1 F(d_i, T_i) where T_i concatenates the lead
/// min(3, |d_j|) sentences of every other document. Requires m >= 2.
std::vector<double> centrality_scores(const Instance& instance);

/// Token count of each document.
std::vector<double> length_scores(const Instance& instance);

/// Deterministic seeded uniform permutation; same (instance_id, seed) gives
/// the same order on every platform.
DocumentOrder random_order(const Instance& instance, std::uint64_t seed);

/// Stable descending sort of indices by score. Throws on NaN.
DocumentOrder make_order(const std::vector<double>& scores);

/// KL(predicted || oracle) with 0*ln(0/q) = 0 and oracle entries floored at
/// 1e-10. Throws on length mismatch.
double kl_divergence(const ImportanceDistribution& predicted,
                     const ImportanceDistribution& oracle);

/// Softmax-normalizes a scorer's raw outputs into a distribution. Propagates
/// scorer failures with the instance id attached; throws on non-finite raw
/// scores.
ImportanceDistribution external_scores(const Instance& instance, ImportanceScorer& scorer);

/// Stable 64-bit sub-seed derived from (seed, instance_id); keeps per-instance
/// randomness independent of processing order.
std::uint64_t derive_seed(std::uint64_t seed, const std::string& instance_id);

}  // namespace mds

#endif  // MDS_REORDER_HPP
