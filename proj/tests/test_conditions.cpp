#include <doctest.h>

#include <set>

#include "qwreath/conditions.hpp"

using namespace qw;

namespace {

Tensor pair(int a, int b, Scalar c = 1) { return pureTensor({a, b}, c); }

// Group algebra of C2 written out by hand: x^a x^b = x^{a xor b}.
Tensor c2mul(const Tensor& x, const Tensor& y) {
  Tensor out;
  for (auto& [k, c] : x)
    for (auto& [l, e] : y) out.add({k[0] ^ l[0], k[1] ^ l[1]}, c * e);
  return out;
}

Instance c2Flip(Tensor R, Tensor S) {
  auto base = groupAlgebraCyclic(2);
  return {"c2-flip", base, flipParams("c2-flip", std::move(R), std::move(S))};
}

}  // namespace

TEST_CASE("Hecke parameters satisfy every condition; the braid conditions are skipped for d = 2") {
  auto rep2 = checkParameterConditions(heckeInstance(), 2);
  CHECK(rep2.passed());
  CHECK(rep2.certification == "exhaustive");
  CHECK(rep2.skipped.size() == 9);
  CHECK(rep2.find("braid-sigma")->verdict == Verdict::skipped);
  auto rep3 = checkParameterConditions(heckeInstance(), 3);
  CHECK(rep3.passed());
  CHECK(rep3.skipped.empty());
  CHECK(rep3.find("braid-rho-cubed")->verdict == Verdict::pass);
  // (q-1)q + q = (q-1)^2 + q evaluated by hand for the cube condition
  Scalar q = Scalar::q();
  CHECK((q - 1) * (q - 1) + q == q * q - q + 1);
}

TEST_CASE("Hu parameters pass and reduce to R = σ(R); the perturbed R fails with a witness") {
  auto rep = checkParameterConditions(huInstance(2), 2);
  CHECK(rep.passed());
  REQUIRE(!rep.notes.empty());
  CHECK(rep.notes[0].find("only R = σ(R)") != std::string::npos);

  Instance bad = huInstance(2);
  bad.params.R += pair(1, 0);
  auto rb = checkParameterConditions(bad, 2);
  CHECK_FALSE(rb.passed());
  auto* f = rb.find("cube-linear");
  REQUIRE(f);
  CHECK(f->verdict == Verdict::fail);
  CHECK(!f->lhs.empty());
  CHECK(f->lhs != f->rhs);
  // the defect is σ(T⊗1) - T⊗1 on both sides of the cube condition
  auto flip = checkFlipSimplification(bad);
  CHECK(flip.find("R-symmetric")->verdict == Verdict::fail);
}

TEST_CASE("flip simplification over C2 agrees with a hand enumeration and with the full checker") {
  Scalar z = Scalar::variable("z");
  std::vector<Tensor> candidatesS{Tensor(), z * (pair(0, 0) + pair(1, 1)), pair(1, 0), pair(0, 1) + pair(1, 0),
                                  pair(0, 0, 2) - pair(1, 1)};
  std::vector<Tensor> candidatesR{pair(0, 0), pair(1, 0), pair(0, 1) + pair(1, 0), Tensor(), pair(1, 1, 3)};
  int agreements = 0;
  for (auto& S : candidatesS)
    for (auto& R : candidatesR) {
      Instance inst = c2Flip(R, S);
      bool flipPass = checkFlipSimplification(inst).passed();
      bool fullPass = checkParameterConditions(inst, 3).passed();
      CHECK(flipPass == fullPass);
      // hand check: R symmetric, (σS - S)R = 0, bS = Sσ(b) on the four basis pairs (C2 is commutative)
      bool expected = R == flipPair(R) && c2mul(flipPair(S) - S, R).isZero();
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          Tensor t = pair(a, b);
          if (c2mul(t, S) != c2mul(S, flipPair(t))) expected = false;
        }
      CHECK(flipPass == expected);
      agreements += flipPass == fullPass;
    }
  CHECK(agreements == 25);
  // Frobenius–Hecke: S = z Σ b⊗b^∨ is symmetric and satisfies bS = Sσ(b)
  CHECK(checkFlipSimplification(yokonumaInstance(2)).passed());
  CHECK(checkFlipSimplification(c2Flip(pair(0, 0), Tensor())).passed());
  CHECK_FALSE(checkFlipSimplification(c2Flip(pair(1, 0), Tensor())).passed());
  CHECK_THROWS_AS(checkFlipSimplification(degenerateAffineInstance(8)), std::invalid_argument);
}

TEST_CASE("a symmetric but non-central R passes the three flip conditions and is rejected everywhere else") {
  auto base = heckeSymmetric(3);
  Instance inst{"noncentral", base, flipParams("noncentral", pureTensor({1, 1}), Tensor())};
  auto flip = checkFlipSimplification(inst);
  CHECK(flip.find("R-symmetric")->verdict == Verdict::pass);
  CHECK(flip.find("S-R-annihilation")->verdict == Verdict::pass);
  CHECK(flip.find("S-twisted-commutation")->verdict == Verdict::pass);
  CHECK(flip.find("R-central")->verdict == Verdict::fail);
  auto full = checkParameterConditions(inst, 2);
  CHECK(full.find("square-constant")->verdict == Verdict::fail);
  CHECK_FALSE(associativityOracle(inst, 2).passed());
}

TEST_CASE("grand loop: Hecke d = 3 at full length") {
  auto rep = grandLoopVerify(heckeInstance(), 3, 3);
  CHECK(rep.passed());
  for (std::string id : {"W", "M", "Q", "B2", "B3", "R", "compatibility", "linearity"})
    for (int l = 0; l <= 3; ++l) {
      auto* r = rep.find(id, l);
      REQUIRE(r);
      CHECK(r->verdict == Verdict::pass);
    }
  CHECK(rep.find("B3", 3)->checked > 0);
  CHECK(associativityOracle(heckeInstance(), 3).passed());
}

TEST_CASE("grand loop: Yokonuma C2 at d = 3 and Hu m = 2 at d = 2") {
  CHECK(grandLoopVerify(yokonumaInstance(2), 3).passed());
  auto hu = grandLoopVerify(huInstance(2), 2);
  CHECK(hu.passed());
  CHECK(hu.find("B2", 1)->description.find("vacuous") != std::string::npos);
  CHECK(hu.find("B3", 1)->description.find("vacuous") != std::string::npos);
  CHECK(hu.find("B3", 1)->checked == 0);
}

TEST_CASE("grand loop on monomial bases is window-certified") {
  auto rep = grandLoopVerify(degenerateAffineInstance(8), 3);
  CHECK(rep.passed());
  CHECK(rep.certification == "window-certified");
  CHECK(rep.window == 8);
  CHECK(grandLoopVerify(nilHeckeInstance(8), 2).passed());
  CHECK(grandLoopVerify(affineInstance(8), 2).passed());
}

TEST_CASE("grand loop failures carry the level, vector and input") {
  Instance bad = yokonumaInstance(2);
  bad.params.S = pair(1, 0);
  auto rep = grandLoopVerify(bad, 2);
  CHECK_FALSE(rep.passed());
  auto* f = rep.firstFailure();
  REQUIRE(f);
  CHECK(f->witness.find("ℓ = ") != std::string::npos);
  CHECK(f->witness.find("w = ") != std::string::npos);
  CHECK(f->lhs != f->rhs);
  CHECK_THROWS_AS(grandLoopVerify(heckeInstance(), 3, 4), std::invalid_argument);
}

TEST_CASE("associativity oracle: dimension certificates") {
  auto h = associativityOracle(heckeInstance(), 2);
  CHECK(h.passed());
  CHECK(h.dimension == 2);
  auto hu = associativityOracle(huInstance(2), 2);
  CHECK(hu.passed());
  CHECK(hu.dimension == 8);
  CHECK(hu.mode == "all triples");
  auto ak = arikiKoikeOracle(2, 2, 7);
  CHECK(ak.passed());
  CHECK(ak.dimension == 8);
  auto y = associativityOracle(yokonumaInstance(3), 3);
  CHECK(y.passed());
  CHECK(y.dimension == 162);
  CHECK(y.mode == "generator triples");
  auto deg = associativityOracle(degenerateAffineInstance(8), 2);
  CHECK(deg.passed());
  CHECK(deg.certification == "window-certified");
}

TEST_CASE("checker soundness: finite instances passing the grand loop pass the oracle") {
  for (auto inst : {heckeInstance(), yokonumaInstance(2), yokonumaInstance(3), huInstance(1), huInstance(2)})
    for (int d : {2, 3}) {
      if (inst.name == "yokonuma-3" && d == 3) continue;  // covered above
      auto loop = grandLoopVerify(inst, d);
      if (loop.passed()) {
        INFO(inst.name << " d=" << d);
        CHECK(associativityOracle(inst, d).passed());
        CHECK(checkParameterConditions(inst, d).passed());
      }
    }
}

TEST_CASE("every mutant is rejected by at least one checker") {
  auto mutants = conditionMutants();
  CHECK(mutants.size() >= 8);
  std::set<std::string> names;
  for (auto& m : mutants) {
    names.insert(m.name);
    auto o = runMutant(m);
    INFO(m.name << ": " << o.detail);
    CHECK(o.rejected());
    CHECK(!o.detail.empty());
  }
  CHECK(names.size() == mutants.size());
}

TEST_CASE("the inverting σ on C3 passes for d = 2 and breaks the σ braid for d = 3") {
  Mutant cyc;
  for (auto& m : conditionMutants())
    if (m.name == "cyclic-3-inverting-sigma") cyc = m;
  REQUIRE(cyc.d == 3);
  CHECK(checkParameterConditions(cyc.instance, 2).passed());
  CHECK(grandLoopVerify(cyc.instance, 2).passed());
  auto rep = checkParameterConditions(cyc.instance, 3);
  CHECK(rep.find("braid-sigma")->verdict == Verdict::fail);
  CHECK_FALSE(grandLoopVerify(cyc.instance, 3).passed());
  CHECK_FALSE(associativityOracle(cyc.instance, 3).passed());
}

TEST_CASE("H1 H2 H1 a expands term by term at d = 3") {
  for (auto inst : {heckeInstance(), yokonumaInstance(2), degenerateAffineInstance(8), affineInstance(8)}) {
    QuantumWreathProduct A(inst, 3);
    const auto& G = A.group();
    auto Hw = [&](const Word& w) { return A.Hw(G.fromWord(w)); };
    auto times = [&](const Tensor& b, const QwpElement& x) { return A.multiply(A.fromTensor(b), x); };
    auto s1 = [&](const Tensor& b) { return A.sigmaAt(1, b); };
    auto s2 = [&](const Tensor& b) { return A.sigmaAt(2, b); };
    auto r1 = [&](const Tensor& b) { return A.rhoAt(1, b); };
    auto r2 = [&](const Tensor& b) { return A.rhoAt(2, b); };
    std::vector<TensorIndex> samples;
    if (inst.base->finite())
      samples = {{0, 0, 0}, {1, 0, 0}, {0, 1, 1}, {1, 1, 0}};
    else
      samples = {{1, 0, 0}, {0, 2, 1}, {2, 0, 1}, {1, 1, 3}};
    if (inst.base->finite() && inst.base->dimension() == 1) samples = {{0, 0, 0}};
    for (auto& idx : samples) {
      Tensor a = pureTensor(idx);
      auto lhs = A.multiply(Hw({1, 2, 1}), A.fromTensor(a));
      QwpElement rhs = times(s1(s2(s1(a))), Hw({1, 2, 1}));
      rhs = A.add(rhs, times(r1(s2(s1(a))), Hw({2, 1})));
      rhs = A.add(rhs, times(s1(r2(s1(a))), A.add(A.fromTensor(A.Si(1), G.fromWord({1})), A.fromTensor(A.Ri(1)))));
      rhs = A.add(rhs, times(r1(r2(s1(a))), Hw({1})));
      rhs = A.add(rhs, times(s1(s2(r1(a))), Hw({1, 2})));
      rhs = A.add(rhs, times(r1(s2(r1(a))), Hw({2})));
      rhs = A.add(rhs, times(s1(r2(r1(a))), Hw({1})));
      rhs = A.add(rhs, A.fromTensor(r1(r2(r1(a)))));
      INFO(inst.name << " " << A.str(A.add(lhs, A.scale(-1, rhs))));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("reports serialise to JSON with id, verdict and witness") {
  Instance bad = huInstance(2);
  bad.params.R += pair(1, 0);
  auto j = checkParameterConditions(bad, 2).toJson();
  CHECK(j["passed"] == false);
  bool sawWitness = false;
  for (auto& r : j["results"]) {
    CHECK(r.contains("id"));
    CHECK(r.contains("verdict"));
    if (r["verdict"] == "fail") sawWitness = r.contains("witness") && r.contains("lhs") && r.contains("rhs");
  }
  CHECK(sawWitness);
  auto o = associativityOracle(heckeInstance(), 2).toJson();
  CHECK(o["dimension"] == 2);
}
