#include "qwreath/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qwreath/conditions.hpp"
#include "qwreath/hecke.hpp"
#include "qwreath/qwp.hpp"
#include "qwreath/schur.hpp"

namespace qw {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Recorder {
  std::vector<CriterionCheck>& out;
  bool operator()(std::string name, bool ok, std::string detail = {}) {
    out.push_back({std::move(name), ok, std::move(detail)});
    return ok;
  }
};

std::string fmtSeconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

Scalar V(int k = 1) { return Scalar::v(k); }

HElem atVOne(const HElem& x) {
  return x.mapCoefficients<Scalar>(x.algebraPtr(), [](const Scalar& c) { return c.substitute("v", Scalar(1)); });
}

std::string mapDiff(const CoxeterGroup& g, const std::map<int, Scalar>& got, const std::map<int, Scalar>& want) {
  std::ostringstream os;
  auto label = [&](int w) { return w ? wordStr(g.word(w)) : std::string("e"); };
  for (auto& [w, c] : got)
    if (auto it = want.find(w); it == want.end() || it->second != c)
      os << label(w) << ": computed " << c.str() << ", expected " << (it == want.end() ? "0" : it->second.str()) << "; ";
  for (auto& [w, c] : want)
    if (!got.count(w)) os << label(w) << ": computed 0, expected " << c.str() << "; ";
  return os.str();
}

// ---------------------------------------------------------------- 1

void conditionsAndBasis(Recorder& rec, std::uint64_t seed) {
  struct Case {
    std::string label;
    Instance inst;
  };
  std::vector<Case> cases{{"Hecke", heckeInstance()},
                          {"Yokonuma C2", yokonumaInstance(2)},
                          {"Yokonuma C3", yokonumaInstance(3)},
                          {"degenerate K[X] window 8", degenerateAffineInstance(8)},
                          {"affine K[X^±1] window 8", affineInstance(8)},
                          {"nil Hecke window 8", nilHeckeInstance(8)},
                          {"Ariki-Koike m=2 parent K[X] window 8", affinePolynomialInstance(8)},
                          {"Hu m=2", huInstance(2)}};
  for (auto& c : cases)
    for (int d : {2, 3}) {
      std::string tag = c.label + " d=" + std::to_string(d);
      auto t = Clock::now();
      auto params = checkParameterConditions(c.inst, d);
      auto loop = grandLoopVerify(c.inst, d);
      auto fail = [](const ConditionReport& r) {
        auto* f = r.firstFailure();
        return f ? f->id + ": " + f->witness : std::string();
      };
      rec("conditions " + tag, params.passed(), fail(params));
      rec("grand loop " + tag, loop.passed(), fail(loop));
      if (c.label.rfind("Ariki-Koike", 0) == 0) {
        auto ak = arikiKoikeOracle(2, d, seed);
        rec("oracle " + tag, ak.passed(), ak.witness);
      } else {
        auto o = associativityOracle(c.inst, d);
        rec("oracle " + tag, o.passed(), o.mode + ", " + o.certification + (o.witness.empty() ? "" : ", " + o.witness));
      }
      rec("runtime " + tag, since(t) < (c.label == "Hu m=2" ? 120.0 : 60.0), fmtSeconds(since(t)));
    }
  auto mutants = conditionMutants();
  rec("at least 8 mutants", mutants.size() >= 8, std::to_string(mutants.size()));
  for (auto& m : mutants) {
    auto o = runMutant(m);
    rec("mutant " + m.name + " rejected", o.rejected(), o.detail);
  }
}

// ---------------------------------------------------------------- 2

void huDimensions(Recorder& rec) {
  const std::size_t expected[] = {2, 8, 72};
  for (int m = 1; m <= 3; ++m) {
    auto hb = huBases(m);
    std::size_t r = rankAtQ(hb.standard, Rational(3));
    rec("m=" + std::to_string(m) + " size 2(m!)^2", hb.standard.size() == expected[m - 1], std::to_string(hb.standard.size()));
    rec("m=" + std::to_string(m) + " independent at q=3", r == hb.standard.size(), "rank " + std::to_string(r));
  }
}

// ---------------------------------------------------------------- 3

void zCoefficients(Recorder& rec) {
  auto alg = huAmbient(2);
  const auto& g = alg->group();
  HElem z = zmm(2);
  Scalar q = alg->q();
  Scalar f1 = q.pow(4) + 2 * q.pow(3) - 2 * q.pow(2) + 2 * q + 1;
  Scalar f2 = q.pow(4) + 4 * q.pow(3) - 2 * q.pow(2) + 4 * q + 1;
  int i31 = g.fromWord({3, 1}), i1 = g.fromWord({1}), i3 = g.fromWord({3});
  rec("I_{31}", z.coefI(i31) == V(6) * (q - 1) * (q - 1) * f1, z.coefI(i31).str());
  rec("I_1", z.coefI(i1) == V(7) * (q - 1) * f2, z.coefI(i1).str());
  rec("I_3", z.coefI(i3) == V(7) * (q - 1) * f2, z.coefI(i3).str());
  rec("constant", z.coefI(0) == 2 * V(8) * f2, z.coefI(0).str());
  rec("no other terms", z.support().size() == 4, std::to_string(z.support().size()) + " terms");
}

// ---------------------------------------------------------------- 4

void specialization(Recorder& rec) {
  for (int m = 1; m <= 3; ++m) {
    auto alg = huAmbient(m);
    HElem expect = Scalar(1 << m) * HElem::T(alg, alg->group().indexOf(wab(m, m)));
    HElem got = atVOne(hElement(m));
    rec("h_" + std::to_string(m) + "(v=1) = 2^m w_{m,m}", got == atVOne(expect), strT(got));
  }
}

// ---------------------------------------------------------------- 5

void closedFormula(Recorder& rec, std::uint64_t seed) {
  for (int m = 1; m <= 3; ++m) {
    auto alg = huAmbient(m);
    rec("m=" + std::to_string(m) + " closed formula = star(recursion)",
        H1ClosedFormula(m).evaluate(alg) == hRecursion(m).evaluate(alg).star());
  }
  std::mt19937_64 rng(seed);
  for (int m = 1; m <= 2; ++m) {
    auto gA = CoxeterGroup::typeA(2 * m);
    for (int k = 0; k < 2; ++k) {
      Fp q = Fp::fromRaw(2 + rng() % (Fp::modulus() - 3));
      auto alg = std::make_shared<const HeckeAlgebra<Fp>>(gA, q, q.inverse(), q, q.inverse());
      auto o = hmTypeBOracle<Fp>(m, q);
      bool same = o.unique && o.coefficients == specializeEven<Fp>(hElement(m), alg, q).coefficients();
      rec("m=" + std::to_string(m) + " type B oracle at q=" + q.str(), same, o.unique ? "" : "oracle solution not unique");
    }
  }
}

// ---------------------------------------------------------------- 6

std::map<int, Scalar> printedB1Table(const CoxeterGroup& g) {
  std::map<int, Scalar> t;
  auto add = [&](const char* w, const Scalar& c) { t[g.fromWord(parseWord(w))] += c; };
  Scalar a1 = V() + V(-1), a2 = V(2) + V(-2), sq = V(2) + 2 + V(-2);
  add("2.3.1.2.3", 4);
  for (auto w : {"2.3.1.2", "2.1.2.3", "3.1.2.3"}) add(w, 2 * a1);
  for (auto w : {"2.1.2", "3.1.2"}) add(w, 4);
  add("1.2.3", 2 * a2);
  for (auto w : {"2.1", "1.2", "3.2", "2.3"}) add(w, 2 * a1);
  add("1", sq);
  add("2", 2 * sq);
  add("3", sq);
  t[0] += V(3) + V() + V(-1) + V(-3);
  return t;
}

void barInvariance(Recorder& rec) {
  for (int m = 1; m <= 3; ++m) rec("bar(b_1(" + std::to_string(m) + ")) = b_1", bar(b1(m)) == b1(m));

  auto a2 = huAmbient(1);
  BarBasisTable t2(a2);
  std::string e1 = strBasisExpansion(a2->group(), t2.expand(kDualCanonical, b1(1)), "c");
  rec("b_1(1) dual canonical expansion", e1 == "2*c[s1] + (v + v^-1)", e1);

  auto a4 = huAmbient(2);
  BarBasisTable t4(a4);
  auto got = t4.expand(kDualCanonical, b1(2));
  auto want = printedB1Table(a4->group());
  rec("b_1(2) dual canonical table", got == want, mapDiff(a4->group(), got, want));

  // b_w with off-diagonal part in vZ[v]; b_{w t1} = b_w b_1 has the same coordinates against I_y b_1.
  for (int m = 1; m <= 2; ++m) {
    auto alg = huAmbient(m);
    const auto& g = alg->group();
    BarBasisTable table(alg);
    bool unitriangular = true, positive = true;
    std::string where;
    for (int w : parabolicElements(m)) {
      const HElem& bw = table.element(BarBasisTable::Kind::upper, w);
      if (bar(bw) != bw || bw.coefI(w) != Scalar(1)) unitriangular = false;
      if (bar(bw * b1(m)) != bw * b1(m)) unitriangular = false;
      for (int y : bw.support()) {
        if (y == w) continue;
        if (!g.bruhatLeq(y, w) || !inParabolic(g, y, m)) unitriangular = false;
        Scalar c = bw.coefI(y);
        bool ok = c.minDegree(0) >= 1;
        for (auto& [mono, a] : c.terms()) ok = ok && a > 0;
        if (!ok && positive) {
          positive = false;
          where = "coefficient of I_{" + wordStr(g.word(y)) + "} in b_{" + wordStr(g.word(w)) + "} is " + c.str();
        }
      }
    }
    rec("m=" + std::to_string(m) + " bar-invariant and unitriangular", unitriangular);
    rec("m=" + std::to_string(m) + " off-diagonal entries in vN[v]", positive, where);
  }
}

// ---------------------------------------------------------------- 7

void centrality(Recorder& rec) {
  for (int m = 1; m <= 3; ++m) {
    HElem z = zmm(m), h = H1Element(m);
    std::string tag = "m=" + std::to_string(m) + " ";
    rec(tag + "H1^2 = z", h * h == z);
    bool central = true, wreath = true;
    for (int i = 1; i < 2 * m; ++i) {
      if (i == m) continue;
      central = central && z.timesT(i) == z.Ttimes(i);
      wreath = wreath && h.Ttimes(i) == h.timesT(i < m ? i + m : i - m);
    }
    rec(tag + "z commutes with T_i, i != m", central);
    rec(tag + "T_i H1 = H1 T_{i±m}", wreath);
  }
}

// ---------------------------------------------------------------- 8

void generalizedHuBraid(Recorder& rec) {
  auto g = generalizedHu(1, 3);
  const HElem &h1 = g.H.at(0), &h2 = g.H.at(1);
  Scalar q = g.algebra->q();
  HElem lhs = h1 * h2 * h1 - h2 * h1 * h2;
  HElem rhs = (q - 1) * (q - 1) * (h2 - h1);
  rec("H1H2H1 - H2H1H2 = (q-1)^2 (H2 - H1)", lhs == rhs, strT(lhs - rhs));
}

// ---------------------------------------------------------------- 9

Tensor shiftCombination(const Tensor& t, int i, const std::vector<std::pair<std::pair<int, int>, Scalar>>& shifts) {
  Tensor out;
  for (auto& [k, c] : t)
    for (auto& [s, f] : shifts) {
      TensorIndex idx = k;
      idx[i - 1] += s.first;
      idx[i] += s.second;
      out.add(idx, c * f);
    }
  return out;
}

void bernsteinLusztig(Recorder& rec, std::uint64_t seed) {
  Scalar q = Scalar::q();
  for (bool degenerate : {false, true})
    for (int d = 2; d <= 3; ++d) {
      QuantumWreathProduct A(degenerate ? degenerateAffineInstance(8) : affineInstance(8), d);
      std::size_t checked = 0;
      std::string bad;
      for (auto& [lambda, w] : A.basisKeys(4)) {
        if (w != 0) continue;
        for (int i = 1; i < d && bad.empty(); ++i) {
          TensorIndex swapped = lambda;
          std::swap(swapped[i - 1], swapped[i]);
          QwpElement lhs = A.multiply(A.H(i), A.fromTensor(pureTensor(lambda)));
          int si = A.group().fromWord({i});
          Tensor rem;
          bool shape = lhs.terms.coef({swapped, si}) == Scalar(1);
          for (auto& [k, c] : lhs.terms) {
            if (k.second == 0)
              rem.add(k.first, c);
            else if (k != QwpKey{swapped, si})
              shape = false;
          }
          Tensor scaled = degenerate ? shiftCombination(rem, i, {{{1, 0}, 1}, {{0, 1}, -1}})
                                     : shiftCombination(rem, i, {{{0, 0}, 1}, {{1, -1}, -1}});
          Tensor want = degenerate ? pureTensor(swapped) - pureTensor(lambda) : (q - 1) * (pureTensor(lambda) - pureTensor(swapped));
          if (!shape || scaled != want) bad = "H" + std::to_string(i) + " * " + A.str(A.fromTensor(pureTensor(lambda))) + " = " + A.str(lhs);
          ++checked;
        }
      }
      rec(std::string(degenerate ? "degenerate" : "affine") + " d=" + std::to_string(d) + " wreath expansion", bad.empty(),
          bad.empty() ? std::to_string(checked) + " monomials" : bad);
    }

  std::mt19937_64 rng(seed);
  auto draw = [&] { return Rational(static_cast<long long>(2 + rng() % 1000000)); };
  Specialization at;
  at.target = Specialization::Target::prime;
  at.set("q", draw()).set("q1", draw()).set("q2", draw());
  for (int d = 2; d <= 3; ++d) {
    auto ak = arikiKoikeQuotient(2, d, at);
    std::string tag = "Ariki-Koike m=2 d=" + std::to_string(d) + " ";
    rec(tag + "quotient has m^d d! dimensions", ak.exact, std::to_string(ak.algebra.dim()) + " at " + at.str());
    if (!ak.exact) continue;
    QuantumWreathProduct A(affinePolynomialInstance(ak.degreeBound + 2 * d + 2), d);
    auto coords = [&](const QwpElement& x) { return ak.reduce(x); };
    std::vector<QwpElement> L{A.X(1)};
    for (int i = 1; i < d; ++i) L.push_back(A.scale(Scalar::q(-1), A.multiply(A.multiply(A.H(i), L.back()), A.H(i))));
    bool recursion = true, commute = true, reduced = true;
    for (int i = 0; i < d; ++i) {
      auto a = coords(L[i]), b = coords(A.X(i + 1));
      reduced = reduced && a && b;
      recursion = recursion && a && b && *a == *b;
      for (int j = i + 1; j < d; ++j) {
        auto x = coords(A.multiply(L[i], L[j])), y = coords(A.multiply(L[j], L[i]));
        reduced = reduced && x && y;
        commute = commute && x && y && *x == *y;
      }
    }
    rec(tag + "L_{i+1} = q^-1 T_i L_i T_i is X^(i+1)", recursion && reduced);
    rec(tag + "L_i L_j = L_j L_i", commute && reduced);
  }
}

// ---------------------------------------------------------------- 10

std::size_t binomial(int a, int b) {
  std::size_t r = 1;
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

void schurWeyl(Recorder& rec, std::uint64_t seed) {
  auto t = Clock::now();
  for (auto [n, d, bic] : std::vector<std::tuple<int, int, std::size_t>>{{2, 2, 2}, {3, 3, 6}}) {
    auto rep = schurDuality({"heckeA", 0, n, d, 0}, seed, 2);
    std::string tag = "Hecke n=" + std::to_string(n) + " d=" + std::to_string(d) + " ";
    rec(tag + "verdict", rep.verdict == Verdict::pass, verdictStr(rep.verdict));
    for (auto& p : rep.points) {
      std::string at = " at " + p.point;
      rec(tag + "commutant = C(n^2+d-1, d)" + at, p.dimCommutant == binomial(n * n + d - 1, d), std::to_string(p.dimCommutant));
      rec(tag + "bicommutant = image = dim A" + at, p.dimBicommutant == bic && p.dimImage == bic && p.containment,
          std::to_string(p.dimBicommutant));
    }
  }
  rec("Hecke runtime < 10 s", since(t) < 10, fmtSeconds(since(t)));

  t = Clock::now();
  auto hu = schurDuality({"hu", 2, 4, 4, 0}, seed, 2);
  rec("Hu m=2 n=4 verdict", hu.verdict == Verdict::pass, verdictStr(hu.verdict));
  for (auto& p : hu.points)
    rec("Hu m=2 bicommutant 8 at " + p.point, p.dimBicommutant == 8 && p.dimImage == 8 && p.containment,
        "commutant " + std::to_string(p.dimCommutant) + ", bicommutant " + std::to_string(p.dimBicommutant));
  rec("Hu runtime < 10 min", since(t) < 600, fmtSeconds(since(t)));
}

// ---------------------------------------------------------------- 11

void augmentationQuotient(Recorder& rec) {
  QuantumWreathProduct Hu(huInstance(2), 2);
  auto hu = quotientAugmentation(Hu);
  rec("Hu m=2 quotient is valid", hu.valid, hu.note);
  rec("Hu m=2 quotient dimension 2", hu.dimension == 2, std::to_string(hu.dimension));
  HElem z = zmm(2);
  Scalar epsZ;
  for (int w : z.support()) epsZ += z.coefT(w) * Scalar::v(2 * z.group().length(w));
  Lin<int> sq = quotientMultiply(Hu, Lin<int>::term(1), Lin<int>::term(1));
  rec("Hbar^2 = eps(z_{2,2})", sq == Lin<int>::term(0, epsZ), "eps(z) = " + epsZ.str());

  for (int d : {2, 3}) {
    QuantumWreathProduct H(heckeInstance(), d);
    auto h = quotientAugmentation(H);
    const auto& g = H.group();
    bool same = h.valid && h.dimension == g.size();
    for (int x = 0; x < g.size() && same; ++x)
      for (int y = 0; y < g.size() && same; ++y) {
        QwpElement full = H.multiply(H.Hw(x), H.Hw(y));
        Lin<int> direct;
        for (auto& [k, c] : full.terms) direct.add(k.second, c);
        same = quotientMultiply(H, Lin<int>::term(x), Lin<int>::term(y)) == direct;
      }
    rec("Hecke d=" + std::to_string(d) + " quotient is the algebra itself", same);
  }
}

}  // namespace

bool CriterionResult::passed() const {
  if (checks.empty()) return false;
  for (auto& c : checks)
    if (!c.ok) return false;
  return true;
}

std::string CriterionResult::line() const {
  return "criterion " + std::to_string(id) + ": " + (passed() ? "PASS" : "FAIL") + "  " + title + " (" + fmtSeconds(seconds) + ")";
}

nlohmann::json CriterionResult::toJson() const {
  nlohmann::json j;
  j["criterion"] = id;
  j["title"] = title;
  j["verdict"] = passed() ? "pass" : "fail";
  j["checks"] = nlohmann::json::array();
  for (auto& c : checks) j["checks"].push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return j;
}

std::string criterionTitle(int id) {
  static const char* titles[] = {"conditions, grand loop, oracle and mutants",
                                 "Hu basis dimensions 2, 8, 72",
                                 "z_{2,2} coefficients",
                                 "h_m at v = 1",
                                 "closed formula and type B oracle",
                                 "bar invariance and dual canonical expansions",
                                 "centrality and wreath relations in A(m)",
                                 "modified braid relation, generalized Hu m = 1",
                                 "Bernstein-Lusztig and Ariki-Koike Jucys-Murphy elements",
                                 "double centralizer",
                                 "augmentation quotient"};
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("criterion must be between 1 and " + std::to_string(kCriterionCount));
  return titles[id - 1];
}

CriterionResult runCriterion(int id, std::uint64_t seed) {
  CriterionResult r;
  r.id = id;
  r.title = criterionTitle(id);
  Recorder rec{r.checks};
  auto t = Clock::now();
  try {
    switch (id) {
      case 1: conditionsAndBasis(rec, seed); break;
      case 2: huDimensions(rec); break;
      case 3: zCoefficients(rec); break;
      case 4: specialization(rec); break;
      case 5: closedFormula(rec, seed); break;
      case 6: barInvariance(rec); break;
      case 7: centrality(rec); break;
      case 8: generalizedHuBraid(rec); break;
      case 9: bernsteinLusztig(rec, seed); break;
      case 10: schurWeyl(rec, seed); break;
      case 11: augmentationQuotient(rec); break;
    }
  } catch (const std::exception& e) {
    rec("completed without error", false, e.what());
  }
  r.seconds = since(t);
  return r;
}

}  // namespace qw
