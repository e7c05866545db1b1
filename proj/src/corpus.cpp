#include "mds/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mds {

namespace {

bool is_word_byte(unsigned char c) {
  return std::isalnum(c) || c >= 0x80;
}

// --- Porter stemmer -------------------------------------------------------
// Standard Porter (1980) algorithm on lowercase ASCII words.

bool pt_is_vowel(const std::string& w, int i) {
  switch (w[i]) {
    case 'a': case 'e': case 'i': case 'o': case 'u':
      return true;
    case 'y':
      return i > 0 && !pt_is_vowel(w, i - 1);
    default:
      return false;
  }
}

// Number of VC sequences in w[0..end].
int pt_measure(const std::string& w, int end) {
  int m = 0;
  bool prev_vowel = false;
  for (int i = 0; i <= end; ++i) {
    bool v = pt_is_vowel(w, i);
    if (prev_vowel && !v) ++m;
    prev_vowel = v;
  }
  return m;
}

bool pt_has_vowel(const std::string& w, int end) {
  for (int i = 0; i <= end; ++i)
    if (pt_is_vowel(w, i)) return true;
  return false;
}

bool pt_double_consonant(const std::string& w, int end) {
  return end >= 1 && w[end] == w[end - 1] && !pt_is_vowel(w, end);
}

// consonant-vowel-consonant where the final consonant is not w, x or y
bool pt_cvc(const std::string& w, int end) {
  if (end < 2) return false;
  if (pt_is_vowel(w, end) || !pt_is_vowel(w, end - 1) || pt_is_vowel(w, end - 2)) return false;
  char c = w[end];
  return c != 'w' && c != 'x' && c != 'y';
}

bool pt_ends(const std::string& w, const char* suffix) {
  std::size_t len = std::strlen(suffix);
  return w.size() >= len && w.compare(w.size() - len, len, suffix) == 0;
}

// Replaces suffix when the stem measure condition holds.
bool pt_replace(std::string& w, const char* suffix, const char* repl, int min_m) {
  if (!pt_ends(w, suffix)) return false;
  int stem_end = static_cast<int>(w.size() - std::strlen(suffix)) - 1;
  if (stem_end < 0 || pt_measure(w, stem_end) <= min_m) return false;
  w.resize(stem_end + 1);
  w += repl;
  return true;
}

}  // namespace

std::string porter_stem(const std::string& token) {
  for (unsigned char c : token)
    if (c < 'a' || c > 'z') return token;
  if (token.size() <= 2) return token;

  std::string w = token;

  // Step 1a
  if (pt_ends(w, "sses")) w.resize(w.size() - 2);
  else if (pt_ends(w, "ies")) w.resize(w.size() - 2);
  else if (!pt_ends(w, "ss") && pt_ends(w, "s")) w.resize(w.size() - 1);

  // Step 1b
  bool step1b_fixup = false;
  if (pt_ends(w, "eed")) {
    if (pt_measure(w, static_cast<int>(w.size()) - 4) > 0) w.resize(w.size() - 1);
  } else if (pt_ends(w, "ed") && pt_has_vowel(w, static_cast<int>(w.size()) - 3)) {
    w.resize(w.size() - 2);
    step1b_fixup = true;
  } else if (pt_ends(w, "ing") && pt_has_vowel(w, static_cast<int>(w.size()) - 4)) {
    w.resize(w.size() - 3);
    step1b_fixup = true;
  }
  if (step1b_fixup) {
    int end = static_cast<int>(w.size()) - 1;
    if (pt_ends(w, "at") || pt_ends(w, "bl") || pt_ends(w, "iz")) {
      w += 'e';
    } else if (pt_double_consonant(w, end) && w[end] != 'l' && w[end] != 's' && w[end] != 'z') {
      w.resize(w.size() - 1);
    } else if (pt_measure(w, end) == 1 && pt_cvc(w, end)) {
      w += 'e';
    }
  }

  // Step 1c
  if (pt_ends(w, "y") && pt_has_vowel(w, static_cast<int>(w.size()) - 2)) w.back() = 'i';

  // Step 2
  static const std::pair<const char*, const char*> step2[] = {
      {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
      {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
      {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
      {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
      {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"}};
  for (const auto& [suf, rep] : step2)
    if (pt_replace(w, suf, rep, 0)) break;

  // Step 3
  static const std::pair<const char*, const char*> step3[] = {
      {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
      {"ical", "ic"},  {"ful", ""},   {"ness", ""}};
  for (const auto& [suf, rep] : step3)
    if (pt_replace(w, suf, rep, 0)) break;

  // Step 4
  static const char* step4[] = {"al",   "ance", "ence", "er",  "ic",  "able", "ible",
                                "ant",  "ement", "ment", "ent", "ou",  "ism",  "ate",
                                "iti",  "ous",  "ive",  "ize"};
  for (const char* suf : step4) {
    if (!pt_ends(w, suf)) continue;
    int stem_end = static_cast<int>(w.size() - std::strlen(suf)) - 1;
    if (stem_end >= 0 && pt_measure(w, stem_end) > 1) w.resize(stem_end + 1);
    break;
  }
  if (pt_ends(w, "ion")) {
    int stem_end = static_cast<int>(w.size()) - 4;
    if (stem_end >= 0 && pt_measure(w, stem_end) > 1 &&
        (w[stem_end] == 's' || w[stem_end] == 't'))
      w.resize(stem_end + 1);
  }

  // Step 5a
  if (pt_ends(w, "e")) {
    int stem_end = static_cast<int>(w.size()) - 2;
    int m = pt_measure(w, stem_end);
    if (m > 1 || (m == 1 && !pt_cvc(w, stem_end))) w.resize(w.size() - 1);
  }
  // Step 5b
  if (pt_ends(w, "ll") && pt_measure(w, static_cast<int>(w.size()) - 1) > 1)
    w.resize(w.size() - 1);

  return w;
}

std::vector<std::string> tokenize(const std::string& text, bool stem) {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char c : text) {
    if (is_word_byte(c)) {
      cur += static_cast<char>(std::tolower(c));
    } else if (!cur.empty()) {
      tokens.push_back(stem ? porter_stem(cur) : cur);
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(stem ? porter_stem(cur) : cur);
  return tokens;
}

namespace {

const char* kAbbreviations[] = {"Mr", "Mrs", "Ms", "Dr",  "St", "vs", "etc",
                                "Inc", "Ltd", "No", "Jr", "Sr"};
// Dotted abbreviations checked as full tails ("e.g.", "U.S.").
const char* kDottedAbbreviations[] = {"e.g", "i.e", "U.S"};

// Word immediately preceding position `dot` (exclusive), alphanumeric run.
std::string word_before(const std::string& text, std::size_t dot) {
  std::size_t end = dot;
  std::size_t start = end;
  while (start > 0 && is_word_byte(static_cast<unsigned char>(text[start - 1]))) --start;
  return text.substr(start, end - start);
}

bool guarded_period(const std::string& text, std::size_t dot, std::size_t seg_start) {
  std::string w = word_before(text, dot);
  // A single capital reads as an initial ("J. Smith"), but not when it opens
  // the segment ("A. B." is two sentences).
  if (w.size() == 1 && std::isupper(static_cast<unsigned char>(w[0])) &&
      dot >= w.size() && dot - w.size() > seg_start)
    return true;
  for (const char* a : kAbbreviations)
    if (w == a) return true;
  for (const char* a : kDottedAbbreviations) {
    std::size_t len = std::strlen(a);
    if (dot >= len && text.compare(dot - len, len, a) == 0 &&
        (dot == len || !is_word_byte(static_cast<unsigned char>(text[dot - len - 1]))))
      return true;
  }
  return false;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

void split_block(const std::string& block, std::vector<std::string>& out) {
  std::size_t start = 0;
  auto content_start = [&block](std::size_t from) {
    while (from < block.size() && std::isspace(static_cast<unsigned char>(block[from]))) ++from;
    return from;
  };
  std::size_t seg_start = content_start(0);
  for (std::size_t i = 0; i < block.size(); ++i) {
    char c = block[i];
    if (c != '.' && c != '!' && c != '?') continue;
    bool at_end = i + 1 == block.size();
    bool before_space = !at_end && std::isspace(static_cast<unsigned char>(block[i + 1]));
    if (!at_end && !before_space) continue;
    if (c == '.' && guarded_period(block, i, seg_start)) continue;
    std::string seg = trim(block.substr(start, i + 1 - start));
    if (!seg.empty()) out.push_back(std::move(seg));
    start = i + 1;
    seg_start = content_start(start);
  }
  std::string tail = trim(block.substr(start));
  if (!tail.empty()) out.push_back(std::move(tail));
}

}  // namespace

std::vector<std::string> segment_sentences(const std::string& text) {
  std::vector<std::string> out;
  // Blank lines are hard boundaries.
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t brk = text.find("\n\n", pos);
    std::string block = text.substr(pos, brk == std::string::npos ? std::string::npos : brk - pos);
    split_block(block, out);
    if (brk == std::string::npos) break;
    pos = brk + 2;
  }
  return out;
}

std::size_t Instance::num_sentences() const {
  std::size_t n = 0;
  for (const auto& d : documents) n += d.sentences.size();
  return n;
}

bool DocumentOrder::is_permutation() const {
  std::vector<bool> seen(permutation.size(), false);
  for (int p : permutation) {
    if (p < 0 || p >= static_cast<int>(permutation.size()) || seen[p]) return false;
    seen[p] = true;
  }
  return true;
}

DocumentOrder DocumentOrder::identity(std::size_t m) {
  DocumentOrder o;
  o.permutation.resize(m);
  std::iota(o.permutation.begin(), o.permutation.end(), 0);
  return o;
}

Instance make_instance(std::string id, const std::vector<std::string>& document_texts,
                       std::string gold_summary) {
  Instance inst;
  inst.id = std::move(id);
  inst.gold_summary = std::move(gold_summary);
  for (const auto& raw : document_texts) {
    Document doc;
    doc.raw_text = raw;
    for (auto& sent_text : segment_sentences(raw)) {
      Sentence s;
      s.tokens = tokenize(sent_text);
      s.text = std::move(sent_text);
      doc.sentences.push_back(std::move(s));
    }
    if (!doc.sentences.empty()) inst.documents.push_back(std::move(doc));
  }
  return inst;
}

std::vector<Instance> load_jsonl(const std::string& path, LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::vector<Instance> instances;
  LoadReport local;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(path + ": malformed JSON at line " + std::to_string(line_no) +
                               ": " + e.what());
    }
    if (!rec.is_object() || !rec.contains("documents") || !rec["documents"].is_array())
      throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                               " lacks a 'documents' array");
    std::vector<std::string> docs;
    for (const auto& d : rec["documents"]) {
      if (!d.is_string())
        throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                                 " has a non-string document");
      docs.push_back(d.get<std::string>());
    }
    std::string id = rec.value("id", std::to_string(line_no));
    std::string summary = rec.value("summary", std::string{});
    Instance inst = make_instance(std::move(id), docs, std::move(summary));
    local.dropped_documents += docs.size() - inst.documents.size();
    if (inst.documents.empty()) {
      std::cerr << "warning: skipping instance " << inst.id << " (line " << line_no
                << "): all documents empty\n";
      ++local.skipped_empty;
      continue;
    }
    instances.push_back(std::move(inst));
    ++local.loaded;
  }
  if (report) *report = local;
  return instances;
}

Instance load_plain_text(const std::string& path, const std::string& id) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::vector<std::string> docs;
  std::string cur, line;
  while (std::getline(in, line)) {
    if (trim(line) == "|||||") {
      docs.push_back(cur);
      cur.clear();
    } else {
      cur += line;
      cur += '\n';
    }
  }
  if (!trim(cur).empty()) docs.push_back(cur);

  std::string summary;
  std::string tgt = path;
  std::size_t dot = tgt.find_last_of('.');
  std::size_t slash = tgt.find_last_of('/');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
    tgt.resize(dot);
  tgt += ".tgt";
  if (std::ifstream tin{tgt}) {
    std::ostringstream ss;
    ss << tin.rdbuf();
    summary = ss.str();
  }
  return make_instance(id, docs, summary);
}

MetaDocument build_meta_document(const Instance& instance, const DocumentOrder& order) {
  if (order.permutation.size() != instance.documents.size() || !order.is_permutation())
    throw std::invalid_argument("order is not a permutation of the instance's documents (id " +
                                instance.id + ")");
  MetaDocument meta;
  meta.instance_id = instance.id;
  meta.order = order;
  int meta_pos = 0;
  for (int doc_idx : order.permutation) {
    const Document& doc = instance.documents[doc_idx];
    for (std::size_t j = 0; j < doc.sentences.size(); ++j) {
      meta.sentences.push_back(
          {&doc.sentences[j], doc_idx, static_cast<int>(j), meta_pos++});
    }
  }
  return meta;
}

}  // namespace mds
