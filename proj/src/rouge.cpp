#include "mds/rouge.hpp"

#include <algorithm>
#include <stdexcept>

namespace mds {

namespace {

std::string ngram_key(const TokenSeq& tokens, std::size_t start, int n) {
  std::string key = tokens[start];
  for (int j = 1; j < n; ++j) {
    key += '\x1f';
    key += tokens[start + j];
  }
  return key;
}

}  // namespace

NgramCounts ngram_counts(const std::vector<TokenSeq>& sentences, int n) {
  if (n < 1) throw std::invalid_argument("ngram_counts: n must be >= 1");
  NgramCounts out;
  out.n = n;
  for (const auto& sent : sentences) {
    if (static_cast<int>(sent.size()) < n) continue;
    for (std::size_t i = 0; i + n <= sent.size(); ++i) {
      ++out.counts[ngram_key(sent, i, n)];
      ++out.total;
    }
  }
  return out;
}

RougeScore rouge_n(const std::vector<TokenSeq>& candidate,
                   const std::vector<TokenSeq>& reference, int n) {
  NgramCounts cand = ngram_counts(candidate, n);
  NgramCounts ref = ngram_counts(reference, n);
  long long overlap = 0;
  // Iterate the smaller map.
  const auto& small = cand.counts.size() <= ref.counts.size() ? cand.counts : ref.counts;
  const auto& large = cand.counts.size() <= ref.counts.size() ? ref.counts : cand.counts;
  for (const auto& [gram, count] : small) {
    auto it = large.find(gram);
    if (it != large.end()) overlap += std::min(count, it->second);
  }
  return make_rouge(static_cast<double>(overlap), static_cast<double>(cand.total),
                    static_cast<double>(ref.total));
}

int lcs_length(const TokenSeq& a, const TokenSeq& b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<int> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

namespace {

// Positions in `ref` belonging to one LCS of (cand, ref).
std::vector<int> lcs_ref_positions(const TokenSeq& cand, const TokenSeq& ref) {
  std::size_t n = cand.size(), m = ref.size();
  if (n == 0 || m == 0) return {};
  std::vector<std::vector<int>> dp(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      dp[i][j] = cand[i - 1] == ref[j - 1] ? dp[i - 1][j - 1] + 1
                                           : std::max(dp[i - 1][j], dp[i][j - 1]);
  std::vector<int> positions;
  std::size_t i = n, j = m;
  while (i > 0 && j > 0) {
    if (cand[i - 1] == ref[j - 1]) {
      positions.push_back(static_cast<int>(j - 1));
      --i;
      --j;
    } else if (dp[i - 1][j] >= dp[i][j - 1]) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(positions.begin(), positions.end());
  return positions;
}

}  // namespace

RougeScore rouge_l(const std::vector<TokenSeq>& candidate,
                   const std::vector<TokenSeq>& reference) {
  long long cand_tokens = 0, ref_tokens = 0;
  for (const auto& s : candidate) cand_tokens += static_cast<long long>(s.size());
  for (const auto& s : reference) ref_tokens += static_cast<long long>(s.size());
  if (cand_tokens == 0 || ref_tokens == 0) return {};

  // Candidate unigram budget for the duplicate-mark clipping.
  std::unordered_map<std::string, int> cand_budget;
  for (const auto& s : candidate)
    for (const auto& t : s) ++cand_budget[t];

  long long hits = 0;
  for (const auto& ref_sent : reference) {
    std::vector<bool> marked(ref_sent.size(), false);
    for (const auto& cand_sent : candidate)
      for (int pos : lcs_ref_positions(cand_sent, ref_sent)) marked[pos] = true;
    for (std::size_t j = 0; j < ref_sent.size(); ++j) {
      if (!marked[j]) continue;
      auto it = cand_budget.find(ref_sent[j]);
      if (it != cand_budget.end() && it->second > 0) {
        --it->second;
        ++hits;
      }
    }
  }
  return make_rouge(static_cast<double>(hits), static_cast<double>(cand_tokens),
                    static_cast<double>(ref_tokens));
}

}  // namespace mds
