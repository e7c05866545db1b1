#ifndef MDS_SUMMARIZE_HPP
#define MDS_SUMMARIZE_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mds/corpus.hpp"
#include "mds/rouge.hpp"

namespace mds {

/// Extractive summary: selected position_in_meta indices, unique and sorted
/// ascending, |selected| <= min(K, n).
struct Summary {
  std::string instance_id;
  std::vector<int> selected;
  std::string text;
  std::string method;
};

/// Pairwise sentence similarity. Consumers ignore the diagonal; the matrix is
/// symmetric when directed is false.
struct SentenceGraph {
  int n = 0;
  Eigen::MatrixXd weights;
  bool directed = false;
};

/// TF-IDF cosine similarity over the meta-document's own sentences, term
/// weight tf * (1 + ln(n / df)).
SentenceGraph tfidf_similarity(const MetaDocument& meta);

/// First min(n_per_doc, |d|) sentences of each document, in meta order.
Summary lead_n(const MetaDocument& meta, int n_per_doc);

/// PageRank over the row-normalized similarity matrix (damping 0.85,
/// tolerance 1e-5, max 100 iterations); top-k by score, ties by position.
Summary textrank(const MetaDocument& meta, int k);

/// Like textrank but on the 0/1 adjacency thresholded at cosine >= 0.1.
Summary lexrank(const MetaDocument& meta, int k);

struct PacsumParams {
  double lambda1 = -1.0;
  double lambda2 = 1.0;
  double beta = 0.6;
};

/// Directed positional centrality: similarities are shifted down by the
/// beta-interpolated threshold and clamped at zero, then each sentence scores
/// lambda1 * (incoming mass from earlier sentences) + lambda2 * (outgoing
/// mass to later sentences). Throws if beta is outside [0,1].
Summary pacsum(const MetaDocument& meta, int k, const PacsumParams& params = {});

/// Greedily adds the sentence with the largest gain in
/// (ROUGE-1 F + ROUGE-2 F)/2 against the reference; stops at zero gain or at
/// the budget. Throws on an empty reference.
Summary greedy_oracle(const MetaDocument& meta, const std::vector<TokenSeq>& reference,
                      int budget);

/// Indices of the k largest scores, ties by ascending index, sorted ascending.
/// Throws on NaN.
std::vector<int> select_top_k(const std::vector<double>& scores, int k);

/// Mean of ROUGE-1 F and ROUGE-2 F; the greedy oracle's gain metric.
double oracle_gain_metric(const std::vector<TokenSeq>& candidate,
                          const std::vector<TokenSeq>& reference);

}  // namespace mds

#endif  // MDS_SUMMARIZE_HPP
