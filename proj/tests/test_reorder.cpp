#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "mds/corpus.hpp"
#include "mds/reorder.hpp"
#include "mds/rouge.hpp"

using namespace mds;

TEST_CASE("oracle_importance normalizes ROUGE-1 F scores") {
  Instance inst = make_instance("o1", {"the cat sat.", "dogs bark loud."}, "the cat sat.");
  auto dist = oracle_importance(inst);
  REQUIRE(dist.scores.size() == 2);
  CHECK(dist.scores[0] == doctest::Approx(1.0));
  CHECK(dist.scores[1] == doctest::Approx(0.0));
  CHECK(dist.valid());
}

TEST_CASE("oracle_importance uniform on identical documents") {
  Instance inst = make_instance("o2", {"same text.", "same text.", "same text."}, "other words.");
  auto dist = oracle_importance(inst);
  for (double s : dist.scores) CHECK(s == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("oracle_importance uniform when all raw scores are zero") {
  Instance inst = make_instance("o3", {"alpha beta.", "gamma delta."}, "unrelated words.");
  auto dist = oracle_importance(inst);
  CHECK(dist.scores[0] == doctest::Approx(0.5));
  CHECK(dist.scores[1] == doctest::Approx(0.5));
}

TEST_CASE("oracle_importance requires a reference") {
  Instance inst = make_instance("o4", {"a."}, "");
  CHECK_THROWS_WITH_AS(oracle_importance(inst), doctest::Contains("oracle requires reference"),
                       std::invalid_argument);
}

TEST_CASE("centrality is symmetric for identical documents") {
  Instance inst = make_instance("c1", {"same event text.", "same event text."}, "");
  auto scores = centrality_scores(inst);
  CHECK(scores[0] == doctest::Approx(scores[1]));
}

TEST_CASE("centrality zero for a vocabulary-disjoint document") {
  Instance inst =
      make_instance("c2", {"storm hits coast.", "storm damage coast.", "quux zorp blee."}, "");
  auto scores = centrality_scores(inst);
  CHECK(scores[2] == doctest::Approx(0.0));
  CHECK(scores[0] > scores[2]);
}

TEST_CASE("centrality favors documents sharing the event vocabulary") {
  Instance inst = make_instance(
      "c3",
      {"the flood hit town. rivers rose fast. rescue teams arrived.",
       "the flood hit town. rivers rose fast.",
       "stocks closed higher. markets liked earnings."},
      "");
  auto scores = centrality_scores(inst);
  CHECK(scores[0] > scores[2]);
  CHECK(scores[1] > scores[2]);
}

TEST_CASE("centrality undefined for m = 1") {
  Instance inst = make_instance("c4", {"only one."}, "");
  CHECK_THROWS_WITH_AS(centrality_scores(inst), doctest::Contains("centrality undefined"),
                       std::invalid_argument);
}

TEST_CASE("centrality permutation equivariance") {
  std::vector<std::string> docs = {"the flood hit town. rivers rose.",
                                   "rescue teams arrived. the flood waters fell.",
                                   "markets closed mixed."};
  Instance orig = make_instance("c5", docs, "");
  Instance perm = make_instance("c5p", {docs[2], docs[0], docs[1]}, "");
  auto s_orig = centrality_scores(orig);
  auto s_perm = centrality_scores(perm);
  CHECK(s_perm[0] == doctest::Approx(s_orig[2]));
  CHECK(s_perm[1] == doctest::Approx(s_orig[0]));
  CHECK(s_perm[2] == doctest::Approx(s_orig[1]));
}

TEST_CASE("length_scores counts tokens") {
  Instance inst = make_instance("l1", {"one two three four five six seven eight nine ten.",
                                       "just three tokens."},
                                "");
  auto scores = length_scores(inst);
  CHECK(scores[0] == doctest::Approx(10.0));
  CHECK(scores[1] == doctest::Approx(3.0));
}

TEST_CASE("make_order stable descending sort") {
  CHECK(make_order({0.2, 0.9, 0.5}).permutation == std::vector<int>{1, 2, 0});
  CHECK(make_order({1.0, 1.0, 1.0}).permutation == std::vector<int>{0, 1, 2});
  CHECK(make_order({0.5, 0.5, 0.1}).permutation == std::vector<int>{0, 1, 2});
  CHECK_THROWS_AS(make_order({0.1, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(make_order({}), std::invalid_argument);
}

TEST_CASE("make_order on already-descending scores is the identity") {
  auto order = make_order({0.9, 0.7, 0.7, 0.1});
  CHECK(order.permutation == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("random_order determinism and single-element case") {
  Instance one = make_instance("r1", {"a."}, "");
  CHECK(random_order(one, 7).permutation == std::vector<int>{0});

  Instance many = make_instance("r2", {"a.", "b.", "c.", "d."}, "");
  auto p1 = random_order(many, 123);
  auto p2 = random_order(many, 123);
  CHECK(p1.permutation == p2.permutation);
  CHECK(p1.is_permutation());
}

TEST_CASE("random_order is roughly uniform over m=3 permutations") {
  std::map<std::vector<int>, int> freq;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    Instance inst = make_instance("u" + std::to_string(t), {"a.", "b.", "c."}, "");
    ++freq[random_order(inst, 99).permutation];
  }
  CHECK(freq.size() == 6);
  for (const auto& [perm, count] : freq)
    CHECK(std::abs(count / static_cast<double>(trials) - 1.0 / 6.0) < 0.02);
}

TEST_CASE("kl_divergence closed forms") {
  ImportanceDistribution p{"x", {1.0, 0.0}}, q{"x", {0.5, 0.5}};
  CHECK(kl_divergence(p, q) == doctest::Approx(std::log(2.0)));
  CHECK(kl_divergence(q, q) == doctest::Approx(0.0));
  ImportanceDistribution u{"x", {0.5, 0.5}};
  CHECK(kl_divergence(u, q) == doctest::Approx(0.0));
  ImportanceDistribution bad{"x", {1.0}};
  CHECK_THROWS_AS(kl_divergence(bad, q), std::invalid_argument);
}

TEST_CASE("kl_divergence is nonnegative and zero on self") {
  std::vector<std::vector<double>> dists = {
      {0.1, 0.2, 0.7}, {0.25, 0.25, 0.5}, {1.0, 0.0, 0.0}, {0.6, 0.4, 0.0}};
  for (const auto& ps : dists) {
    ImportanceDistribution p{"x", ps};
    CHECK(kl_divergence(p, p) <= 1e-12);
    for (const auto& qs : dists) {
      ImportanceDistribution q{"x", qs};
      CHECK(kl_divergence(p, q) >= -1e-12);
    }
  }
}

namespace {
class VectorScorer : public ImportanceScorer {
 public:
  explicit VectorScorer(std::vector<double> raw) : raw_(std::move(raw)) {}
  std::vector<double> score(const Instance&) override { return raw_; }

 private:
  std::vector<double> raw_;
};
}  // namespace

TEST_CASE("external_scores softmax normalization") {
  Instance inst = make_instance("e1", {"a.", "b."}, "");
  VectorScorer equal({0.0, 0.0});
  auto d1 = external_scores(inst, equal);
  CHECK(d1.scores[0] == doctest::Approx(0.5));

  VectorScorer skewed({std::log(3.0), 0.0});
  auto d2 = external_scores(inst, skewed);
  CHECK(d2.scores[0] == doctest::Approx(0.75));
  CHECK(d2.scores[1] == doctest::Approx(0.25));

  VectorScorer bad({std::nan(""), 0.0});
  CHECK_THROWS_WITH_AS(external_scores(inst, bad), doctest::Contains("e1"), std::runtime_error);
}

TEST_CASE("softmax shift invariance of the induced order") {
  Instance inst = make_instance("e2", {"a.", "b.", "c."}, "");
  VectorScorer base({0.3, 1.7, 0.9});
  VectorScorer shifted({0.3 + 5.0, 1.7 + 5.0, 0.9 + 5.0});
  auto o1 = make_order(external_scores(inst, base).scores);
  auto o2 = make_order(external_scores(inst, shifted).scores);
  CHECK(o1.permutation == o2.permutation);
}

TEST_CASE("external scorer failures carry the instance id") {
  class Failing : public ImportanceScorer {
    std::vector<double> score(const Instance&) override {
      throw std::runtime_error("backend down");
    }
  } failing;
  Instance inst = make_instance("needle-id", {"a."}, "");
  CHECK_THROWS_WITH_AS(external_scores(inst, failing), doctest::Contains("needle-id"),
                       std::runtime_error);
}
