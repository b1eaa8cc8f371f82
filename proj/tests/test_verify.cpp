#include <doctest.h>

#include <cmath>

#include "lpq/error.hpp"
#include "lpq/verify.hpp"
#include "oracles.hpp"

using namespace lpq;

namespace {

CorpusSpec constant_spec() {
  CorpusSpec s;
  s.id = "constant";
  return s;
}

CorpusSpec harmonic_spec(std::int64_t freq) {
  CorpusSpec s;
  s.id = "harmonic";
  s.kind = CorpusKind::harmonic;
  s.frequency = {freq, 0};
  return s;
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("cube family") {
  CHECK(CubeFamily{}.cubes(1, 6).size() == 2 * (1 + 2 + 4 + 8));
  CHECK(CubeFamily{1, false}.cubes(2, 5).size() == 5);
}

TEST_CASE("equivalence on constants has no ratios") {
  const std::vector<CorpusSpec> corpus{constant_spec()};
  const std::vector<int> sizes{32, 64};
  const auto r = equivalence_report(corpus, 0.5, sizes);
  REQUIRE(r.rows.size() == 2);
  for (const auto& row : r.rows) {
    CHECK(row.both_zero);
    CHECK(row.q_alpha < 1e-10);
    CHECK(row.lp_morrey < 1e-10);
  }
  CHECK(r.c_low == 0.0);
  CHECK(r.notes.size() == 1);
}

TEST_CASE("equivalence of a harmonic is resolution stable") {
  const std::vector<CorpusSpec> corpus{harmonic_spec(4), constant_spec()};
  const std::vector<int> sizes{64, 128};
  const auto r = equivalence_report(corpus, 0.5, sizes);
  REQUIRE(r.rows.size() == 4);
  CHECK(r.rows[0].id == "harmonic");
  CHECK(r.rows[1].size == 128);
  CHECK(std::abs(r.rows[1].ratio / r.rows[0].ratio - 1.0) < 0.10);
  CHECK(r.rows[0].ratio > 0.0);
  CHECK_FALSE(r.trends[0].flagged);
  CHECK(r.c_low == std::min(r.rows[0].ratio, r.rows[1].ratio));
  CHECK(r.c_high == std::max(r.rows[0].ratio, r.rows[1].ratio));
  CHECK_THROWS_AS(equivalence_report(corpus, 0.5, std::vector<int>{128, 64}), ConfigError);
}

TEST_CASE("rough functions drift") {
  // slope below alpha: the Q_alpha side grows with N
  CorpusSpec rough;
  rough.id = "rough";
  rough.kind = CorpusKind::spectral_noise;
  rough.slope = 0.2;
  rough.seed = 3;
  const std::vector<CorpusSpec> corpus{rough};
  const auto r = equivalence_report(corpus, 0.7, std::vector<int>{64, 256, 1024}, CubeFamily{0, false});
  CHECK(r.rows[2].q_alpha > r.rows[0].q_alpha);
  CHECK(r.trends[0].monotone);
}

TEST_CASE("alpha outside (0,1) is noted") {
  const std::vector<CorpusSpec> corpus{harmonic_spec(1)};
  CHECK(equivalence_report(corpus, 1.2, std::vector<int>{32}).notes.size() == 1);
}

TEST_CASE("fubini sweep") {
  const auto corpus = default_corpus(1, 64, 0.5);
  const std::vector<double> alphas{0.3, 0.7};
  const auto s = fubini_sweep(corpus, alphas, 2, 3);
  // per function and alpha: level 0 has K 0..3, level 1 K 0..2, level 2 K 0..1
  CHECK(s.checks == corpus.size() * alphas.size() * (4 + 2 * 3 + 4 * 2));
  CHECK(s.max_discrepancy < 1e-12);
  const auto b = decompose(generate(constant_spec().at(1, 64)), 0);
  CHECK(fubini_identity_check(b, 0.5, Cube::unit(1), 3) == 0.0);
  CHECK(relative_discrepancy(1.0, 0.0) == doctest::Approx(1e300));
}

TEST_CASE("lemma check against the pairwise sum") {
  for (int dim : {1, 2}) {
    const auto f = generate(default_corpus(dim, dim == 1 ? 64 : 16, 0.5)[0]);
    for (double m : {2.0, 3.0}) {
      for (int K = 0; K <= 1; ++K) {
        const double fast = lemma23_lhs(f, 0.5, m, Cube::unit(dim), K);
        CHECK(fast == doctest::Approx(oracle::lemma_lhs(f, 0.5, m, Cube::unit(dim), K)).epsilon(1e-12));
      }
    }
  }
  const auto c = GridFunction::constant(1, 64, 2.0);
  const auto rec = lemma23_check(c, 0.5, 2.0, Cube::unit(1), 2);
  CHECK(rec.lhs < 1e-20);
  CHECK(rec.ratio == 0.0);
  CHECK_THROWS_AS(lemma23_lhs(c, 0.5, 1.5, Cube::unit(1), 1), ConfigError);
  CHECK_THROWS_AS(lemma23_lhs(c, -0.6, 2.0, Cube::unit(1), 1), ConfigError);
  CHECK_THROWS_AS(lemma23_lhs(c, 0.5, 2.0, Cube::unit(1), 4), ConfigError);
}

TEST_CASE("lemma sum of a harmonic saturates on coarse levels") {
  // while mJ spans whole periods the averaged |f(x) - f(y)|^2 is 1
  const auto f = generate(harmonic_spec(4).at(1, 256));
  CHECK(lemma23_lhs(f, 0.5, 2.0, Cube::unit(1), 0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(lemma23_lhs(f, 0.5, 2.0, Cube::unit(1), 2) == doctest::Approx(28.0).epsilon(1e-12));
}

TEST_CASE("kernel decay") {
  const auto d = kernel_decay_check(0.5, 2.0, 1, 300, 7);
  CHECK(d.rows.size() == 300);
  CHECK(d.subset_ok);
  CHECK(std::abs(d.slope + 2.0) < 0.15);
  CHECK(d.max_full_over_allowed >= 1.0);
  CHECK(d.max_full_product > 0.0);
  CHECK_THROWS_AS(kernel_decay_check(0.5, 1.0, 1, 10, 7), ConfigError);
}

TEST_CASE("embedding") {
  const std::vector<CorpusSpec> corpus{constant_spec().at(1, 64), harmonic_spec(4).at(1, 64)};
  const auto e = embedding_check(corpus, 0.5);
  REQUIRE(e.rows.size() == 2);
  CHECK(e.rows[0].excluded);
  CHECK_FALSE(e.violation);
  const auto f = generate(corpus[1]);
  const auto cubes = CubeFamily{}.cubes(1, 6);
  const double q = q_alpha(f, 0.5, cubes).value;
  const double mb = morrey_besov(decompose(f, 0), 0.5, 0.0, 2, 2, cubes).value;
  CHECK(e.rows[1].ratio == doctest::Approx(q / mb).epsilon(1e-14));
  CHECK(e.max_ratio == e.rows[1].ratio);
  CHECK_THROWS_AS(embedding_check(corpus, 1.0), ConfigError);
}

}  // TEST_SUITE
