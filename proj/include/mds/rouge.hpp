#ifndef MDS_ROUGE_HPP
#define MDS_ROUGE_HPP

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

namespace mds {

using TokenSeq = std::vector<std::string>;

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

inline RougeScore make_rouge(double overlap, double cand_total, double ref_total) {
  if (cand_total <= 0.0 || ref_total <= 0.0) return {};
  RougeScore s;
  s.precision = overlap / cand_total;
  s.recall = overlap / ref_total;
  s.f1 = (s.precision + s.recall > 0.0)
             ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

/// Multiset of within-sentence n-grams; n-grams never cross sentence
/// boundaries.
struct NgramCounts {
  int n = 1;
  std::unordered_map<std::string, int> counts;  // key: tokens joined by '\x1f'
  long long total = 0;
};

NgramCounts ngram_counts(const std::vector<TokenSeq>& sentences, int n);

/// Clipped n-gram overlap P/R/F between bags of sentence token sequences.
RougeScore rouge_n(const std::vector<TokenSeq>& candidate,
                   const std::vector<TokenSeq>& reference, int n);

/// Longest common subsequence length, O(|a|*|b|) dynamic programming.
int lcs_length(const TokenSeq& a, const TokenSeq& b);

/// Summary-level ROUGE-L with union-LCS: per reference sentence, union of
/// LCS-matched token positions over all candidate sentences; marked tokens
/// are clipped by their candidate multiplicity (ROUGE-1.5.5 behavior).
RougeScore rouge_l(const std::vector<TokenSeq>& candidate,
                   const std::vector<TokenSeq>& reference);

}  // namespace mds

#endif  // MDS_ROUGE_HPP
