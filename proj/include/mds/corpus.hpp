#ifndef MDS_CORPUS_HPP
#define MDS_CORPUS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace mds {

/// A sentence with its deterministic lowercase tokenization.
struct Sentence {
  std::string text;
  std::vector<std::string> tokens;
};

struct Document {
  std::vector<Sentence> sentences;
  std::string raw_text;
};

/// One MDS example: ordered source documents plus an (optionally empty)
/// gold abstractive summary.
struct Instance {
  std::string id;
  std::vector<Document> documents;  // m >= 1, each with >= 1 sentence
  std::string gold_summary;

  std::size_t num_documents() const { return documents.size(); }
  std::size_t num_sentences() const;
};

/// A permutation of document indices, position 0 = most important.
/// When inducing_scores is present, scores along the permutation are
/// non-increasing with ties broken by ascending original index.
struct DocumentOrder {
  std::vector<int> permutation;
  std::vector<double> inducing_scores;  // empty when not score-induced

  bool is_permutation() const;
  static DocumentOrder identity(std::size_t m);
};

/// One sentence of a meta-document with full provenance.
struct MetaSentence {
  const Sentence* sentence;  // owned by the Instance
  int source_doc_index;
  int position_in_doc;
  int position_in_meta;
};

/// Concatenation of an instance's documents under an explicit ordering.
struct MetaDocument {
  std::string instance_id;
  DocumentOrder order;
  std::vector<MetaSentence> sentences;
};

/// Lowercases and splits into maximal alphanumeric runs; every other
/// character separates. Bytes >= 0x80 (UTF-8 continuation of non-ASCII
/// letters) count as word characters. Optional Porter stemming per token.
std::vector<std::string> tokenize(const std::string& text, bool stem = false);

/// Porter stemmer (1980) over a single lowercase ASCII token. Tokens with
/// non-ASCII bytes or digits are returned unchanged.
std::string porter_stem(const std::string& token);

/// Rule-based sentence splitter: breaks after . ! ? followed by whitespace
/// or end of text, with an abbreviation guard on periods; a blank line
/// always splits. Segments are trimmed, empties dropped.
std::vector<std::string> segment_sentences(const std::string& text);

struct LoadReport {
  std::size_t loaded = 0;
  std::size_t skipped_empty = 0;
  std::size_t dropped_documents = 0;
};

/// Reads UTF-8 JSONL: {"id": optional, "documents": [...], "summary": optional}.
/// Empty documents are dropped; instances with no surviving document are
/// skipped and counted in the report. Throws std::runtime_error naming the
/// line number on malformed input.
std::vector<Instance> load_jsonl(const std::string& path, LoadReport* report = nullptr);

/// Plain-text adapter: one instance in `path`, documents separated by a line
/// containing exactly "|||||", summary read from the sibling `.tgt` file if
/// present.
Instance load_plain_text(const std::string& path, const std::string& id);

/// Builds an instance from raw document texts, segmenting and tokenizing
/// eagerly. Empty documents are dropped.
Instance make_instance(std::string id, const std::vector<std::string>& document_texts,
                       std::string gold_summary);

/// Concatenates the instance's documents in the given order with sentence
/// provenance. Throws std::invalid_argument if order is not a permutation
/// of 0..m-1.
MetaDocument build_meta_document(const Instance& instance, const DocumentOrder& order);

}  // namespace mds

#endif  // MDS_CORPUS_HPP
