#include <doctest.h>

#include <chrono>
#include <functional>

#include "qwreath/schur.hpp"

using namespace qw;

namespace {

// n×n matrices over ℕ with entry sum d, by enumeration.
std::size_t countMatrices(int n, int d) {
  std::function<std::size_t(int, int)> go = [&](int cells, int left) -> std::size_t {
    if (cells == 1) return 1;
    std::size_t s = 0;
    for (int k = 0; k <= left; ++k) s += go(cells - 1, left - k);
    return s;
  };
  return go(n * n, d);
}

std::size_t binomial(int a, int b) {
  std::size_t r = 1;
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

std::vector<Fp> unit(const TensorModule& mod, const std::vector<int>& mu) {
  std::vector<Fp> e(mod.dim());
  e[mod.indexOf(mu)] = Fp(1);
  return e;
}

const SparseMatrix& generator(const TensorModule& mod, const std::string& label) {
  for (auto& [l, m] : mod.generators)
    if (l == label) return m;
  FAIL("missing generator " << label);
  throw;
}

bool relationHolds(const TensorModule& mod, const std::string& name) {
  for (auto& r : mod.relations)
    if (r.name == name) return r.holds;
  FAIL("missing relation " << name);
  return false;
}

}  // namespace

TEST_CASE("three-case action on V(n)^{⊗d}") {
  Scalar q = Scalar::q();
  auto a = heckeTensorAction({2, 1}, 1);
  REQUIRE(a.size() == 2);
  CHECK(a[0].first == std::vector<int>{1, 2});
  CHECK(a[0].second == q);
  CHECK(a[1].first == std::vector<int>{2, 1});
  CHECK(a[1].second == q - Scalar(1));
  auto b = heckeTensorAction({1, 1}, 1);
  REQUIRE(b.size() == 1);
  CHECK(b[0].first == std::vector<int>{1, 1});
  CHECK(b[0].second == q);
  auto c = heckeTensorAction({1, 2}, 1);
  REQUIRE(c.size() == 1);
  CHECK(c[0].first == std::vector<int>{2, 1});
  CHECK(c[0].second == Scalar(1));

  Fp qv(11);
  auto mod = heckeTensorModule(2, 2, qv);
  auto img = generator(mod, "H1").apply(unit(mod, {2, 1}));
  CHECK(img[mod.indexOf({1, 2})] == qv);
  CHECK(img[mod.indexOf({2, 1})] == qv - Fp(1));
  CHECK(mod.vectorStr(img) == "11*v(1,2) + 10*v(2,1)");
}

TEST_CASE("relation probes on the finite tensor modules") {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}, {2, 4}}) {
    auto mod = heckeTensorModule(n, d, Fp(1234567));
    CHECK(mod.relationsHold());
    CHECK(mod.relations.size() == static_cast<std::size_t>((d - 1) + (d - 1) * (d - 2) / 2));
  }
  auto hu1 = huTensorModule(1, 2, Fp(987654321));
  CHECK(hu1.relationsHold());
  auto hu2 = huTensorModule(2, 4, Fp(987654321));
  CHECK(hu2.relationsHold());
  CHECK(relationHolds(hu2, "H^2 = z"));
  CHECK(relationHolds(hu2, "T1H = HT3"));
  auto wg = wreathGroupTensorModule(3, 2, 2);
  CHECK(wg.relationsHold());
  CHECK(scalarModule(3).relationsHold());
}

TEST_CASE("Ariki-Koike tensor action") {
  Fp q(5), q1(7), q2(13);
  auto mod = arikiKoikeTensorModule(2, 2, 2, q, {q1, q2});
  // v_{km+2}·X for k = 1 lands in the same block: (q1+q2) v_{km+2} - q1 q2 v_{km+1}
  auto img = generator(mod, "X").apply(unit(mod, {4, 1}));
  CHECK(img[mod.indexOf({4, 1})] == q1 + q2);
  CHECK(img[mod.indexOf({3, 1})] == -(q1 * q2));
  CHECK(generator(mod, "X").apply(unit(mod, {3, 2}))[mod.indexOf({4, 2})] == Fp(1));
  CHECK(relationHolds(mod, "prod (X - q_i) = 0"));
  CHECK(relationHolds(mod, "H1^2 = SH1 + R"));
  // with X on the first factor the type B braid relation fails
  CHECK_FALSE(relationHolds(mod, "H1XH1X = XH1XH1"));

  auto w = splittingWitness(mod);
  CHECK(w.mu == std::vector<int>{1, 3});
  CHECK(w.dimA == 8);
  CHECK(w.dimW == 8);
  CHECK(w.injective);
  CHECK(w.complement == 8);
  CHECK(w.psi.size() == 8);
}

TEST_CASE("splitting witness") {
  auto mod = heckeTensorModule(2, 2, Fp(3));
  auto w = splittingWitness(mod);
  CHECK(w.mu == std::vector<int>{1, 2});
  CHECK(w.dimW == 2);
  CHECK(w.dimA == 2);
  CHECK(w.complement == 2);
  CHECK(w.injective);
  CHECK(w.projection);
  CHECK(w.psi[0] == "v(1,2)·1 ↦ 1");

  CHECK_THROWS_AS(splittingWitness(heckeTensorModule(2, 3, Fp(3))), std::invalid_argument);

  // free rank-one summand of the Hu algebra module: explicit projection for m = 1, rank for m = 2
  auto h1 = splittingWitness(huTensorModule(1, 2, Fp(17)));
  CHECK(h1.projection);
  CHECK(h1.dimW == 2);
  auto h2 = splittingWitness(huTensorModule(2, 4, Fp(17)));
  CHECK(h2.injective);
  CHECK(h2.dimW == 8);
  CHECK(h2.complement == 248);
}

TEST_CASE("commutant dimensions against counts and a dense solve") {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    auto mod = heckeTensorModule(n, d, Fp(3));
    auto c = commutant(mod);
    CAPTURE(n);
    CAPTURE(d);
    CHECK(c.dimension == binomial(n * n + d - 1, d));
    CHECK(c.dimension == countMatrices(n, d));
    CHECK(bruteForceCommutantDimension(mod) == c.dimension);
  }
  CHECK(commutant(heckeTensorModule(2, 2, Fp(3))).dimension == 10);
  CHECK(commutant(scalarModule(2)).dimension == 4);
  CHECK(bruteForceCommutantDimension(scalarModule(2)) == 4);
  auto hu1 = huTensorModule(1, 2, Fp(29));
  CHECK(commutant(hu1).dimension == 10);
  CHECK(bruteForceCommutantDimension(hu1) == 10);
  CHECK(bruteForceCommutantDimension(wreathGroupTensorModule(2, 2, 2)) == commutant(wreathGroupTensorModule(2, 2, 2)).dimension);
}

TEST_CASE("commutant maps commute with the generators") {
  auto mod = heckeTensorModule(3, 3, Fp(101));
  auto c = commutant(mod);
  std::size_t total = 0;
  for (auto& b : c.blocks) {
    total += b.maps.size();
    const auto& ci = c.components[b.from];
    const auto& cj = c.components[b.to];
    for (auto& [l, G] : mod.generators) {
      auto gi = G.block(ci, ci), gj = G.block(cj, cj);
      for (auto& X : b.maps) {
        Matrix<Fp> lhs(ci.size(), std::vector<Fp>(cj.size())), rhs = lhs;
        for (std::size_t a = 0; a < ci.size(); ++a)
          for (std::size_t j = 0; j < cj.size(); ++j)
            for (std::size_t t = 0; t < ci.size(); ++t) lhs[a][j] += gi[a][t] * X[t][j];
        for (std::size_t a = 0; a < ci.size(); ++a)
          for (std::size_t j = 0; j < cj.size(); ++j)
            for (std::size_t t = 0; t < cj.size(); ++t) rhs[a][j] += X[a][t] * gj[t][j];
        CHECK(lhs == rhs);
      }
    }
  }
  CHECK(total == c.dimension);
}

TEST_CASE("double centralizer for Hecke algebras") {
  auto start = std::chrono::steady_clock::now();
  for (auto [n, d, comm, bic] : std::vector<std::tuple<int, int, std::size_t, std::size_t>>{{2, 2, 10, 2}, {3, 3, 165, 6}}) {
    auto rep = schurDuality({"heckeA", 0, n, d, 0}, 7, 2);
    REQUIRE(rep.points.size() == 2);
    CHECK(rep.verdict == Verdict::pass);
    for (auto& p : rep.points) {
      CHECK(p.dimCommutant == comm);
      CHECK(p.dimCommutant == binomial(n * n + d - 1, d));
      CHECK(p.dimBicommutant == bic);
      CHECK(p.dimImage == bic);
      CHECK(p.faithful);
      CHECK(p.containment);
    }
    CHECK(rep.points[0].point != rep.points[1].point);
  }
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(10));
}

TEST_CASE("double centralizer for the Hu algebra, m = 2 on V(4)^{⊗4}") {
  auto rep = schurDuality({"hu", 2, 4, 4, 0}, 11, 2);
  CHECK(rep.verdict == Verdict::pass);
  for (auto& p : rep.points) {
    CHECK(p.dimT == 256);
    CHECK(p.dimBicommutant == 8);
    CHECK(p.dimImage == 8);
    CHECK(p.containment);
  }
  auto m1 = schurDuality({"hu", 1, 2, 2, 0}, 11, 2);
  CHECK(m1.verdict == Verdict::pass);
  CHECK(m1.points[0].dimCommutant == 10);
}

TEST_CASE("image dimension equals dim A whenever the splitting exists") {
  std::mt19937_64 rng(5);
  for (SchurOptions o : std::vector<SchurOptions>{{"heckeA", 0, 3, 2, 0}, {"heckeA", 0, 3, 3, 0}, {"hu", 1, 3, 2, 0}, {"wreath-group", 2, 2, 2, 0},
                                                   {"wreath-group", 3, 2, 2, 0}, {"ariki-koike", 2, 2, 2, 0}}) {
    auto mod = buildTensorModule(o, rng);
    CAPTURE(o.instance);
    auto w = splittingWitness(mod);
    CHECK(w.injective);
    CHECK(imageDimension(mod) == mod.algebraDim);
  }
}

TEST_CASE("wreath product of a cyclic group with the symmetric group") {
  auto rep = schurDuality({"wreath-group", 2, 2, 2, 0}, 3, 2);
  CHECK(rep.verdict == Verdict::pass);
  CHECK(rep.points[0].dimBicommutant == 8);
}

TEST_CASE("preconditions, failures and guards") {
  auto skipped = schurDuality({"heckeA", 0, 1, 2, 0}, 7, 2);
  CHECK(skipped.verdict == Verdict::skipped);
  CHECK(skipped.toJson()["dim_bicommutant"].is_null());

  auto mod = heckeTensorModule(3, 3, Fp(3));
  mod.algebraBasis.pop_back();
  CHECK(doubleCentralizerCheck(mod).verdict == Verdict::fail);

  CHECK_THROWS_AS(heckeTensorModule(10, 4, Fp(3)), std::length_error);
  CHECK_THROWS_AS(huTensorModule(3, 2, Fp(3)), std::invalid_argument);
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(buildTensorModule({"type-c", 0, 2, 2, 0}, rng), std::invalid_argument);
}

TEST_CASE("windowed affine and degenerate modules") {
  auto aff = affineTensorModule(2, 2, 6, Fp(19));
  CHECK(aff.dim() == 36);
  CHECK(relationHolds(aff, "H1^2 = SH1 + R"));
  CHECK_FALSE(relationHolds(aff, "H1X1H1 = qX2"));
  auto deg = degenerateTensorModule(2, 2, 6);
  CHECK(relationHolds(deg, "H1^2 = SH1 + R"));
  CHECK_FALSE(relationHolds(deg, "H1X1 = X2H1 - 1"));
  auto report = doubleCentralizerCheck(deg);
  CHECK(report.verdict == Verdict::fail);
  CHECK(report.dimCommutant > 0);
  CHECK(report.toJson()["dim_A"].is_null());
}

TEST_CASE("same seed, same JSON") {
  SchurOptions o{"heckeA", 0, 2, 2, 0};
  CHECK(schurDuality(o, 42, 2).toJson().dump() == schurDuality(o, 42, 2).toJson().dump());
  CHECK(schurDuality(o, 42, 2).toJson().dump() != schurDuality(o, 43, 2).toJson().dump());
  auto j = schurDuality(o, 42, 2).toJson();
  for (const char* key : {"instance", "n", "d", "dim_T", "dim_commutant", "dim_bicommutant", "faithful", "verdict", "points"}) CHECK(j.contains(key));
  CHECK(j["points"][0].contains("point"));
}
