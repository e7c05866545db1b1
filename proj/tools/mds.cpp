#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mds/corpus.hpp"
#include "mds/eval.hpp"
#include "mds/reorder.hpp"
#include "mds/rouge.hpp"
#include "mds/summarize.hpp"

using json = nlohmann::json;

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string orders;
  std::string summaries;
  std::string method = "none";
  std::string summarizer = "lead";
  std::string scores_file;
  std::string bootstrap_against;
  std::string gain_against;
  int k = 9;
  int lead_n = 3;
  int budget = 9;
  int bin_width = 5;
  int iterations = 1000;
  double lambda1 = -1.0;
  double lambda2 = 1.0;
  double beta = 0.6;
  std::uint64_t seed = 0;
  bool stem = false;
  bool sweep_lead = false;
};

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

std::vector<json> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::vector<json> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    try {
      records.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw std::runtime_error(path + ": malformed JSON at line " + std::to_string(line_no) +
                               ": " + e.what());
    }
  }
  return records;
}

// Orders keyed by instance id; ids must cover every input instance.
std::map<std::string, mds::DocumentOrder> read_orders(const std::string& path) {
  std::map<std::string, mds::DocumentOrder> orders;
  for (const auto& rec : read_jsonl(path)) {
    mds::DocumentOrder order;
    order.permutation = rec.at("permutation").get<std::vector<int>>();
    if (rec.contains("scores")) order.inducing_scores = rec["scores"].get<std::vector<double>>();
    orders[rec.at("id").get<std::string>()] = std::move(order);
  }
  return orders;
}

mds::DocumentOrder order_for(const std::map<std::string, mds::DocumentOrder>& orders,
                             const mds::Instance& inst) {
  auto it = orders.find(inst.id);
  if (it == orders.end())
    throw std::runtime_error("orders file has no entry for instance " + inst.id);
  return it->second;
}

// Raw external scores read from a JSONL of {id, scores}.
class FileScorer : public mds::ImportanceScorer {
 public:
  explicit FileScorer(const std::string& path) {
    for (const auto& rec : read_jsonl(path))
      scores_[rec.at("id").get<std::string>()] = rec.at("scores").get<std::vector<double>>();
  }
  std::vector<double> score(const mds::Instance& instance) override {
    auto it = scores_.find(instance.id);
    if (it == scores_.end()) throw std::runtime_error("no external scores for this instance");
    return it->second;
  }

 private:
  std::map<std::string, std::vector<double>> scores_;
};

mds::DocumentOrder compute_order(const mds::Instance& inst, const Options& opt,
                                 mds::ImportanceScorer* scorer) {
  std::size_t m = inst.documents.size();
  if (opt.method == "none") return mds::DocumentOrder::identity(m);
  if (opt.method == "random") return mds::random_order(inst, opt.seed);
  if (opt.method == "length") return mds::make_order(mds::length_scores(inst));
  if (opt.method == "oracle") return mds::make_order(mds::oracle_importance(inst).scores);
  if (opt.method == "unsup") {
    if (m < 2) return mds::DocumentOrder::identity(m);  // single doc: nothing to reorder
    return mds::make_order(mds::centrality_scores(inst));
  }
  if (opt.method == "external") {
    if (!scorer) throw std::runtime_error("method=external requires --scores");
    return mds::make_order(mds::external_scores(inst, *scorer).scores);
  }
  throw std::runtime_error("unknown reorder method: " + opt.method);
}

int cmd_reorder(const Options& opt) {
  auto instances = mds::load_jsonl(opt.input);
  std::optional<FileScorer> scorer;
  if (!opt.scores_file.empty()) scorer.emplace(opt.scores_file);
  std::ofstream file;
  std::ostream& out = open_output(file, opt.output);
  for (const auto& inst : instances) {
    mds::DocumentOrder order = compute_order(inst, opt, scorer ? &*scorer : nullptr);
    json rec{{"id", inst.id}, {"permutation", order.permutation}};
    if (!order.inducing_scores.empty()) rec["scores"] = order.inducing_scores;
    out << rec.dump() << "\n";
  }
  return 0;
}

mds::Summary summarize_one(const mds::MetaDocument& meta, const mds::Instance& inst,
                           const Options& opt, int lead_n_override = -1) {
  if (opt.summarizer == "lead")
    return mds::lead_n(meta, lead_n_override > 0 ? lead_n_override : opt.lead_n);
  if (opt.summarizer == "textrank") return mds::textrank(meta, opt.k);
  if (opt.summarizer == "lexrank") return mds::lexrank(meta, opt.k);
  if (opt.summarizer == "pacsum")
    return mds::pacsum(meta, opt.k, {opt.lambda1, opt.lambda2, opt.beta});
  if (opt.summarizer == "oracle") {
    std::vector<mds::TokenSeq> ref;
    for (const auto& s : mds::segment_sentences(inst.gold_summary))
      ref.push_back(mds::tokenize(s));
    return mds::greedy_oracle(meta, ref, opt.budget);
  }
  throw std::runtime_error("unknown summarizer: " + opt.summarizer);
}

int cmd_summarize(const Options& opt) {
  auto instances = mds::load_jsonl(opt.input);
  std::map<std::string, mds::DocumentOrder> orders;
  if (!opt.orders.empty()) orders = read_orders(opt.orders);

  auto meta_for = [&](const mds::Instance& inst) {
    return mds::build_meta_document(
        inst, opt.orders.empty() ? mds::DocumentOrder::identity(inst.documents.size())
                                 : order_for(orders, inst));
  };

  int chosen_lead_n = opt.lead_n;
  if (opt.sweep_lead && opt.summarizer == "lead") {
    // Pick the corpus-best N in {1,2,3} by mean ROUGE-1 F against the gold.
    double best = -1.0;
    for (int n : {1, 2, 3}) {
      std::vector<std::string> cands, refs;
      for (const auto& inst : instances) {
        cands.push_back(mds::lead_n(meta_for(inst), n).text);
        refs.push_back(inst.gold_summary);
      }
      double r1 = mds::evaluate_rouge(cands, refs, opt.stem).mean_r1;
      std::cerr << "sweep-lead: N=" << n << " mean R1=" << r1 << "\n";
      if (r1 > best) {
        best = r1;
        chosen_lead_n = n;
      }
    }
    std::cerr << "sweep-lead: chose N=" << chosen_lead_n << "\n";
  }

  std::ofstream file;
  std::ostream& out = open_output(file, opt.output);
  for (const auto& inst : instances) {
    mds::Summary s = summarize_one(meta_for(inst), inst, opt, chosen_lead_n);
    out << json{{"id", s.instance_id}, {"selected", s.selected}, {"text", s.text},
                {"method", s.method}}
               .dump()
        << "\n";
  }
  return 0;
}

std::vector<json> read_summaries_aligned(const std::string& path,
                                         const std::vector<mds::Instance>& instances) {
  auto records = read_jsonl(path);
  std::map<std::string, json> by_id;
  for (auto& rec : records) {
    std::string id = rec.at("id").get<std::string>();
    by_id[id] = std::move(rec);
  }
  std::vector<json> aligned;
  for (const auto& inst : instances) {
    auto it = by_id.find(inst.id);
    if (it == by_id.end())
      throw std::runtime_error(path + ": no summary for instance " + inst.id);
    aligned.push_back(it->second);
  }
  return aligned;
}

int cmd_evaluate(const Options& opt) {
  auto instances = mds::load_jsonl(opt.input);
  auto summaries = read_summaries_aligned(opt.summaries, instances);

  std::vector<std::string> cands, refs;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (mds::tokenize(instances[i].gold_summary).empty())
      throw std::runtime_error("instance " + instances[i].id + " has no reference summary");
    cands.push_back(summaries[i].at("text").get<std::string>());
    refs.push_back(instances[i].gold_summary);
  }
  mds::RougeAggregate agg = mds::evaluate_rouge(cands, refs, opt.stem);

  json report{{"mean", {{"rouge1_f", agg.mean_r1}, {"rouge2_f", agg.mean_r2},
                        {"rougeL_f", agg.mean_rl}}},
              {"stem", opt.stem},
              {"instances", json::array()}};
  for (std::size_t i = 0; i < instances.size(); ++i)
    report["instances"].push_back({{"id", instances[i].id},
                                   {"rouge1_f", agg.per_instance_r1[i]},
                                   {"rouge2_f", agg.per_instance_r2[i]},
                                   {"rougeL_f", agg.per_instance_rl[i]}});

  if (!opt.bootstrap_against.empty()) {
    auto other = read_summaries_aligned(opt.bootstrap_against, instances);
    std::vector<std::string> cands_b;
    for (const auto& rec : other) cands_b.push_back(rec.at("text").get<std::string>());
    mds::RougeAggregate agg_b = mds::evaluate_rouge(cands_b, refs, opt.stem);
    mds::SignificanceResult sig = mds::paired_bootstrap(
        agg.per_instance_r1, agg_b.per_instance_r1, opt.iterations, opt.seed);
    report["bootstrap"] = {{"metric", "rouge1_f"},
                           {"other_mean_rouge1_f", agg_b.mean_r1},
                           {"p_value", sig.p_value},
                           {"wins_a", sig.wins_a},
                           {"wins_b", sig.wins_b},
                           {"iterations", sig.iterations},
                           {"seed", sig.seed}};
  }
  std::ofstream file;
  std::ostream& out = open_output(file, opt.output);
  out << report.dump(2) << "\n";
  return 0;
}

void write_histogram_csv(const mds::PositionHistogram& hist, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << "bin_start,fraction\n";
  for (std::size_t b = 0; b < hist.bins.size(); ++b)
    out << b * hist.bin_width << "," << hist.bins[b] << "\n";
}

int cmd_analyze(const Options& opt) {
  auto instances = mds::load_jsonl(opt.input);
  auto summary_recs = read_summaries_aligned(opt.summaries, instances);
  std::map<std::string, mds::DocumentOrder> orders;
  if (!opt.orders.empty()) orders = read_orders(opt.orders);

  std::vector<mds::MetaDocument> metas;
  std::vector<mds::Summary> summaries;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    metas.push_back(mds::build_meta_document(
        inst, opt.orders.empty() ? mds::DocumentOrder::identity(inst.documents.size())
                                 : order_for(orders, inst)));
    mds::Summary s;
    s.instance_id = inst.id;
    s.selected = summary_recs[i].at("selected").get<std::vector<int>>();
    s.text = summary_recs[i].value("text", "");
    s.method = summary_recs[i].value("method", "");
    summaries.push_back(std::move(s));
  }

  std::string prefix = opt.output.empty() ? "analysis" : opt.output;
  write_histogram_csv(mds::position_histogram(summaries, metas,
                                              mds::PositionHistogram::Axis::reordered_meta,
                                              opt.bin_width),
                      prefix + ".hist_reordered.csv");
  write_histogram_csv(mds::position_histogram(summaries, metas,
                                              mds::PositionHistogram::Axis::original_meta,
                                              opt.bin_width),
                      prefix + ".hist_original.csv");

  if (!opt.gain_against.empty()) {
    std::vector<std::string> cands_a, cands_b, refs;
    std::vector<int> doc_counts;
    auto other = read_summaries_aligned(opt.gain_against, instances);
    for (std::size_t i = 0; i < instances.size(); ++i) {
      cands_a.push_back(summary_recs[i].at("text").get<std::string>());
      cands_b.push_back(other[i].at("text").get<std::string>());
      refs.push_back(instances[i].gold_summary);
      doc_counts.push_back(static_cast<int>(instances[i].documents.size()));
    }
    auto agg_a = mds::evaluate_rouge(cands_a, refs, opt.stem);
    auto agg_b = mds::evaluate_rouge(cands_b, refs, opt.stem);
    auto rows =
        mds::gain_by_doc_count(agg_a.per_instance_r1, agg_b.per_instance_r1, doc_counts);
    std::ofstream out(prefix + ".gain_by_doc_count.csv");
    if (!out) throw std::runtime_error("cannot open output file: " + prefix);
    out << "m,mean_delta_r1,count\n";
    for (const auto& row : rows)
      out << row.m << "," << row.mean_delta_r1 << "," << row.count << "\n";
  }
  return 0;
}

int cmd_oracle_labels(const Options& opt) {
  auto instances = mds::load_jsonl(opt.input);
  std::ofstream file;
  std::ostream& out = open_output(file, opt.output);
  for (const auto& inst : instances) {
    auto meta =
        mds::build_meta_document(inst, mds::DocumentOrder::identity(inst.documents.size()));
    std::vector<mds::TokenSeq> ref;
    for (const auto& s : mds::segment_sentences(inst.gold_summary))
      ref.push_back(mds::tokenize(s));
    mds::Summary s = mds::greedy_oracle(meta, ref, opt.budget);
    // Binary labels over meta positions, PreSumm-style.
    std::vector<int> labels(meta.sentences.size(), 0);
    for (int idx : s.selected) labels[idx] = 1;
    out << json{{"id", s.instance_id}, {"selected", s.selected}, {"labels", labels},
                {"text", s.text}}
               .dump()
        << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Document-reordering extractive multi-document summarization pipeline"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", opt.input, "input JSONL of instances")->required();
    sub->add_option("--output", opt.output, "output path (default stdout)");
    sub->add_option("--seed", opt.seed, "global random seed");
  };

  CLI::App* reorder = app.add_subcommand("reorder", "score and reorder documents");
  add_common(reorder);
  reorder->add_option("--method", opt.method,
                      "none|unsup|length|random|oracle|external");
  reorder->add_option("--scores", opt.scores_file, "raw scores JSONL for method=external");

  CLI::App* summarize = app.add_subcommand("summarize", "extract summaries");
  add_common(summarize);
  summarize->add_option("--orders", opt.orders, "orders JSONL from `reorder`");
  summarize->add_option("--summarizer", opt.summarizer,
                        "lead|textrank|lexrank|pacsum|oracle");
  summarize->add_option("--k", opt.k, "sentences per summary");
  summarize->add_option("--lead-n", opt.lead_n, "lead sentences per document");
  summarize->add_option("--budget", opt.budget, "greedy oracle budget");
  summarize->add_option("--lambda1", opt.lambda1, "pacsum backward weight");
  summarize->add_option("--lambda2", opt.lambda2, "pacsum forward weight");
  summarize->add_option("--beta", opt.beta, "pacsum threshold interpolation");
  summarize->add_flag("--sweep-lead", opt.sweep_lead, "pick lead N in {1,2,3} by mean R1");
  summarize->add_flag("--stem", opt.stem, "stem tokens in the sweep evaluation");

  CLI::App* evaluate = app.add_subcommand("evaluate", "score summaries with ROUGE");
  add_common(evaluate);
  evaluate->add_option("--summaries", opt.summaries, "summaries JSONL")->required();
  evaluate->add_flag("--stem", opt.stem, "apply Porter stemming before matching");
  evaluate->add_option("--bootstrap-against", opt.bootstrap_against,
                       "second summaries JSONL for paired bootstrap");
  evaluate->add_option("--iterations", opt.iterations, "bootstrap iterations");

  CLI::App* analyze = app.add_subcommand("analyze", "position histograms and gain tables");
  add_common(analyze);
  analyze->add_option("--summaries", opt.summaries, "summaries JSONL")->required();
  analyze->add_option("--orders", opt.orders, "orders JSONL used for the summaries");
  analyze->add_option("--bin-width", opt.bin_width, "histogram bin width");
  analyze->add_option("--gain-against", opt.gain_against,
                      "second summaries JSONL for the gain-by-doc-count table");
  analyze->add_flag("--stem", opt.stem, "stemmed ROUGE in the gain table");

  CLI::App* labels = app.add_subcommand("oracle-labels", "greedy extractive oracle labels");
  add_common(labels);
  labels->add_option("--budget", opt.budget, "max sentences per oracle summary");

  CLI11_PARSE(app, argc, argv);

  try {
    if (reorder->parsed()) return cmd_reorder(opt);
    if (summarize->parsed()) return cmd_summarize(opt);
    if (evaluate->parsed()) return cmd_evaluate(opt);
    if (analyze->parsed()) return cmd_analyze(opt);
    if (labels->parsed()) return cmd_oracle_labels(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
