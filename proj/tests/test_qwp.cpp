#include <doctest.h>

#include <random>

#include "qwreath/hecke.hpp"
#include "qwreath/qwp.hpp"

using namespace qw;

namespace {

Scalar q() { return Scalar::q(); }

QwpElement tensorAt(const QuantumWreathProduct& A, TensorIndex idx, int w = 0, Scalar c = 1) {
  return A.fromTensor(pureTensor(idx, c), w);
}

QwpElement randomElement(const QuantumWreathProduct& A, std::mt19937& rng, int radius, int terms) {
  auto keys = A.basisKeys(radius);
  std::uniform_int_distribution<size_t> pick(0, keys.size() - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  QwpElement x;
  for (int t = 0; t < terms; ++t) x.terms.add(keys[pick(rng)], Scalar(coef(rng)) + (t % 2 ? q() : Scalar()));
  return x;
}

// Laurent product of a monomial-indexed tensor by (1 - X^{-α_i}) or (X_i - X_{i+1}).
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

}  // namespace

TEST_CASE("embedding and local maps") {
  auto inst = yokonumaInstance(3);
  QuantumWreathProduct A(inst, 3);
  CHECK(embedPair(A.base(), pureTensor({0, 0}, q() - 1), 2, 3) == pureTensor({0, 0, 0}, q() - 1));
  CHECK(A.sigmaAt(1, pureTensor({1, 2, 0})) == pureTensor({2, 1, 0}));
  CHECK(A.rhoAt(2, pureTensor({1, 2, 0})).isZero());
  CHECK_THROWS_AS(A.sigmaAt(3, pureTensor({1, 2, 0})), std::out_of_range);
  CHECK_THROWS_AS(A.H(0), std::out_of_range);
}

TEST_CASE("Hecke algebra as the wreath product over the ground ring") {
  QuantumWreathProduct A(heckeInstance(), 2);
  QwpElement sq = A.multiply(A.H(1), A.H(1));
  QwpElement expected = A.add(A.scale(q() - 1, A.H(1)), A.scalar(q()));
  CHECK(sq == expected);
  CHECK(A.str(sq) == "(q - 1)*H[s1] + q");

  QuantumWreathProduct A3(heckeInstance(), 3);
  auto braid = [&](int i, int j) { return A3.multiply(A3.multiply(A3.H(i), A3.H(j)), A3.H(i)); };
  CHECK(braid(1, 2) == braid(2, 1));
  CHECK(A3.multiply(A3.one(), A3.H(2)) == A3.H(2));
}

TEST_CASE("wreath relation under the flip") {
  QuantumWreathProduct A(yokonumaInstance(3), 2);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK(A.multiply(A.H(1), tensorAt(A, {a, b})) == tensorAt(A, {b, a}, 1));
  CHECK(A.str(tensorAt(A, {1, 2}, 1)) == "(x⊗x^2)*H[s1]");
}

TEST_CASE("affine instance: H (X⊗1) H = q (1⊗X)") {
  QuantumWreathProduct A(affineInstance(8), 2);
  QwpElement lhs = A.multiply(A.multiply(A.H(1), A.X(1)), A.H(1));
  CHECK(lhs == A.scale(q(), A.X(2)));
  QuantumWreathProduct A3(affineInstance(8), 3);
  for (int i = 1; i <= 2; ++i)
    CHECK(A3.multiply(A3.multiply(A3.H(i), A3.X(i)), A3.H(i)) == A3.scale(q(), A3.X(i + 1)));
}

TEST_CASE("degenerate instance: cross relations and left form") {
  QuantumWreathProduct A(degenerateAffineInstance(8), 2);
  QwpElement hx = A.multiply(A.H(1), A.X(1));
  CHECK(A.str(hx) == "(1⊗X)*H[s1] - 1");
  CHECK(A.multiply(A.H(1), A.X(2)) == A.add(tensorAt(A, {1, 0}, 1), A.scalar(1)));

  // (X⊗1)H1 rewritten with H1 on the left; multiplying back recovers the input.
  QwpElement xh = tensorAt(A, {1, 0}, 1);
  QwpElement left = A.toLeftForm(xh);
  CHECK(A.str(left) == "H[s1]*(1⊗X) - 1");
  CHECK(A.toRightForm(left) == xh);
  QwpElement rebuilt = A.add(A.multiply(A.H(1), A.X(2)), A.scalar(-1));
  CHECK(rebuilt == xh);
}

TEST_CASE("left and right forms round trip") {
  std::mt19937 rng(11);
  std::vector<std::pair<Instance, int>> cases = {
      {yokonumaInstance(2), 3}, {huInstance(2), 2}, {affineInstance(10), 3}, {degenerateAffineInstance(10), 3}};
  for (auto& [inst, d] : cases) {
    QuantumWreathProduct A(inst, d);
    for (int t = 0; t < 6; ++t) {
      QwpElement x = randomElement(A, rng, 2, 4);
      QwpElement l = A.toLeftForm(x);
      CHECK(l.form == Form::left);
      CHECK(A.toRightForm(l) == x);
    }
  }
  QuantumWreathProduct A(degenerateAffineInstance(8), 2);
  QwpElement plain = tensorAt(A, {1, 0});
  CHECK(A.toLeftForm(plain).terms == plain.terms);
}

TEST_CASE("left form is unitriangular with diagonal sigma_w") {
  QuantumWreathProduct A(affineInstance(10), 3);
  const auto& g = A.group();
  for (int w = 0; w < g.size(); ++w) {
    TensorIndex b{2, -1, 1};
    QwpElement left = A.toLeftForm(tensorAt(A, b, w));
    // b H_w = H_w σ_w^{-1}(b) + lower terms; σ is an involution on each letter.
    Tensor diag;
    for (auto& [k, c] : left.terms)
      if (k.second == w) diag.add(k.first, c);
      else CHECK(g.bruhatLeq(k.second, w));
    CHECK(A.sigmaW(g.inverse(w), pureTensor(b)) == diag);
  }
}

TEST_CASE("sigma_w along the compatible word") {
  QuantumWreathProduct A(yokonumaInstance(3), 3);
  const auto& g = A.group();
  Tensor b = pureTensor({0, 1, 2});
  CHECK(A.sigmaW(g.identity(), b) == b);
  CHECK(A.sigmaW(g.fromWord({1}), b) == pureTensor({1, 0, 2}));
  int w0 = g.longest();
  CHECK(A.sigmaW(w0, A.sigmaW(w0, b)) == b);
  CHECK(A.sigmaW(w0, b) == pureTensor({2, 1, 0}));
}

TEST_CASE("parser accepts the element text format") {
  QuantumWreathProduct A(degenerateAffineInstance(8), 2);
  CHECK(A.parse("H1 * (X⊗1)") == A.multiply(A.H(1), A.X(1)));
  CHECK(A.parse("(1⊗X) H[s1] - 1") == A.multiply(A.H(1), A.X(1)));
  CHECK(A.parse("H[[2,1]]") == A.H(1));
  CHECK(A.parse("3*(X^2⊗1) + q") == A.add(A.scale(3, tensorAt(A, {2, 0})), A.scalar(q())));
  CHECK_THROWS_AS(A.parse("H1 * (X⊗1⊗1)"), ParseError);
  CHECK_THROWS_AS(A.parse("H1 +"), ParseError);
  QuantumWreathProduct H(heckeInstance(), 3);
  CHECK(H.parse("H1 H2 H1") == H.parse("H[s2 s1 s2]"));
}

TEST_CASE("associativity on random triples") {
  std::mt19937 rng(5);
  std::vector<std::pair<Instance, int>> cases = {
      {affineInstance(12), 3}, {degenerateAffineInstance(12), 3}, {nilHeckeInstance(12), 3}, {yokonumaInstance(3), 3}};
  for (auto& [inst, d] : cases) {
    QuantumWreathProduct A(inst, d);
    for (int t = 0; t < 5; ++t) {
      QwpElement x = randomElement(A, rng, 1, 2), y = randomElement(A, rng, 1, 2), z = randomElement(A, rng, 1, 2);
      CHECK(A.multiply(A.multiply(x, y), z) == A.multiply(x, A.multiply(y, z)));
    }
  }
}

TEST_CASE("Bernstein-Lusztig relation in the affine instance") {
  for (int d = 2; d <= 3; ++d) {
    QuantumWreathProduct A(affineInstance(8), d);
    for (auto& [lambda, w] : A.basisKeys(4)) {
      if (w != 0) continue;
      for (int i = 1; i < d; ++i) {
        TensorIndex swapped = lambda;
        std::swap(swapped[i - 1], swapped[i]);
        QwpElement lhs = A.multiply(A.H(i), tensorAt(A, lambda));
        Tensor rem;
        for (auto& [k, c] : lhs.terms) {
          if (k.second == 0)
            rem.add(k.first, c);
          else
            REQUIRE(k == QwpKey{swapped, A.group().fromWord({i})});
        }
        if (lambda[i - 1] != lambda[i]) REQUIRE(lhs.terms.coef({swapped, A.group().fromWord({i})}) == Scalar(1));
        // (1 - Y^{α_i}) · remainder = (q-1)(Y^λ - Y^{s_i λ})
        Tensor scaled = shiftCombination(rem, i, {{{0, 0}, 1}, {{1, -1}, -1}});
        REQUIRE(scaled == (q() - 1) * (pureTensor(lambda) - pureTensor(swapped)));
      }
    }
  }
}

TEST_CASE("the denominator 1 - Y^{-α_i} is incompatible with H (X⊗1) H = q (1⊗X)") {
  QuantumWreathProduct A(affineInstance(8), 2);
  QwpElement lhs = A.multiply(A.H(1), A.X(1));
  Tensor rem;
  for (auto& [k, c] : lhs.terms)
    if (k.second == 0) rem.add(k.first, c);
  Tensor scaled = shiftCombination(rem, 1, {{{0, 0}, 1}, {{-1, 1}, -1}});
  CHECK_FALSE(scaled == (q() - 1) * (pureTensor({1, 0}) - pureTensor({0, 1})));
}

TEST_CASE("Bernstein-Lusztig relation in the degenerate instance") {
  for (int d = 2; d <= 3; ++d) {
    QuantumWreathProduct A(degenerateAffineInstance(8), d);
    for (auto& [lambda, w] : A.basisKeys(4)) {
      if (w != 0) continue;
      for (int i = 1; i < d; ++i) {
        TensorIndex swapped = lambda;
        std::swap(swapped[i - 1], swapped[i]);
        QwpElement lhs = A.multiply(A.H(i), tensorAt(A, lambda));
        Tensor rem;
        for (auto& [k, c] : lhs.terms)
          if (k.second == 0) rem.add(k.first, c);
        CHECK(lhs.terms.coef({swapped, A.group().fromWord({i})}) == Scalar(1));
        // (x_i - x_{i+1}) · remainder = -(x^λ - x^{s_i λ})
        Tensor scaled = shiftCombination(rem, i, {{{1, 0}, 1}, {{0, 1}, -1}});
        REQUIRE(scaled == pureTensor(swapped) - pureTensor(lambda));
      }
    }
  }
}

TEST_CASE("Jucys-Murphy elements in the affine instance") {
  for (int d = 2; d <= 3; ++d) {
    QuantumWreathProduct A(affineInstance(8), d);
    std::vector<QwpElement> L{A.X(1)};
    for (int i = 1; i < d; ++i) {
      QwpElement next = A.multiply(A.multiply(A.H(i), L.back()), A.H(i));
      CHECK(next == A.scale(q(), A.X(i + 1)));
      L.push_back(A.X(i + 1));
    }
    for (auto& a : L)
      for (auto& b : L) CHECK(A.multiply(a, b) == A.multiply(b, a));
    // type B braid relation with T_0 = X^{(1)}
    QwpElement t0 = A.X(1), t1 = A.H(1);
    CHECK(A.multiply(A.multiply(t0, t1), A.multiply(t0, t1)) == A.multiply(A.multiply(t1, t0), A.multiply(t1, t0)));
  }
}

TEST_CASE("trace form") {
  QuantumWreathProduct A(heckeInstance(), 2);
  CHECK(A.traceForm(A.H(1), A.H(1)) == q());
  CHECK(A.traceForm(A.H(1), A.one()).isZero());

  QuantumWreathProduct Y(yokonumaInstance(3), 2);
  auto C3 = groupAlgebraCyclic(3);
  for (int b = 0; b < 3; ++b)
    for (int c = 0; c < 3; ++c)
      CHECK(Y.traceForm(tensorAt(Y, {b, 0}), tensorAt(Y, {c, 0})) == C3->trace(C3->mulBasis(b, c)));

  QuantumWreathProduct D(degenerateAffineInstance(8), 2);
  CHECK_FALSE(D.traceFormObstructions().empty());
  CHECK_THROWS_AS(D.traceForm(D.H(1), D.H(1)), std::logic_error);
}

TEST_CASE("trace form on the Hu instance is symmetric and nondegenerate") {
  std::mt19937 rng(3);
  for (int m = 1; m <= 2; ++m) {
    QuantumWreathProduct A(huInstance(m), 2);
    CHECK(A.traceFormObstructions().empty());
    auto keys = A.basisKeys();
    REQUIRE(keys.size() == A.finiteDimension());
    Specialization at = Specialization::prime({{"v", Rational(std::uniform_int_distribution<int>(5, 1 << 20)(rng))}});
    Matrix<Fp> gram(keys.size(), std::vector<Fp>(keys.size()));
    for (size_t a = 0; a < keys.size(); ++a)
      for (size_t b = 0; b < keys.size(); ++b) {
        QwpElement x = tensorAt(A, keys[a].first, keys[a].second), y = tensorAt(A, keys[b].first, keys[b].second);
        Scalar xy = A.traceForm(x, y);
        CHECK(xy == A.traceForm(y, x));
        gram[a][b] = specializePrime(xy, at);
      }
    CHECK(rank(gram) == keys.size());
  }
}

TEST_CASE("augmentation quotient") {
  QuantumWreathProduct H3(heckeInstance(), 3);
  auto h = quotientAugmentation(H3);
  CHECK(h.valid);
  CHECK(h.dimension == 6);
  CHECK(h.epsS == q() - 1);
  CHECK(h.epsR == q());
  CHECK(h.quadraticHolds);
  CHECK(h.normal);
  // B = K: the reduction is injective and multiplicative, so the quotient is the algebra itself.
  const auto& g = H3.group();
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < g.size(); ++y) {
      Lin<int> lhs = quotientMultiply(H3, Lin<int>::term(x), Lin<int>::term(y));
      Lin<int> rhs = reduceThroughCounit(H3, H3.multiply(H3.Hw(x), H3.Hw(y)));
      CHECK(lhs == rhs);
      QwpElement full = H3.multiply(H3.Hw(x), H3.Hw(y));
      Lin<int> direct;
      for (auto& [k, c] : full.terms) direct.add(k.second, c);
      CHECK(lhs == direct);
    }

  QuantumWreathProduct Hu(huInstance(2), 2);
  auto hu = quotientAugmentation(Hu);
  CHECK(hu.valid);
  CHECK(hu.dimension == 2);
  // ε on H_q(Σ_4) sends T_w to q^{ℓ(w)}; applied to z_{2,2} directly.
  HElem z = zmm(2);
  Scalar epsZ;
  for (int w : z.support()) epsZ += z.coefT(w) * Scalar::v(2 * z.group().length(w));
  CHECK(hu.epsR == epsZ);
  CHECK(hu.epsS.isZero());
  CHECK(quotientMultiply(Hu, Lin<int>::term(1), Lin<int>::term(1)) == Lin<int>::term(0, epsZ));

  QuantumWreathProduct Y(yokonumaInstance(2), 2);
  auto y = quotientAugmentation(Y);
  CHECK(y.valid);
  CHECK(y.dimension == 2);
  CHECK(y.epsS == Scalar::variable("z") * 2);

  // Brute force: A·B^+ has codimension 2 inside the 8-dimensional algebra.
  Specialization at = Specialization::prime({{"z", 7}});
  auto keys = Y.basisKeys();
  std::map<QwpKey, size_t> col;
  for (size_t i = 0; i < keys.size(); ++i) col[keys[i]] = i;
  Matrix<Fp> rows;
  for (auto& k : keys)
    for (auto& b : Y.basisKeys()) {
      if (b.second != 0) continue;
      Tensor aug = pureTensor(b.first) - tensorCounit(Y.base(), pureTensor(b.first)) * Y.unit();
      QwpElement prod = Y.multiply(tensorAt(Y, k.first, k.second), Y.fromTensor(aug));
      std::vector<Fp> row(keys.size());
      for (auto& [pk, pv] : specializeElement<Fp>(prod, at)) row[col.at(pk)] = pv;
      rows.push_back(row);
    }
  CHECK(keys.size() - rank(rows) == 2);

  QuantumWreathProduct D(degenerateAffineInstance(8), 2);
  CHECK_FALSE(quotientAugmentation(D).valid);
  QuantumWreathProduct C(Instance{"cyc", cyclotomicQuotient(2), flipParams("cyc", pureTensor({0, 0}), {})}, 2);
  CHECK_THROWS_AS(quotientAugmentation(C), UndeclaredFunctional);
}

TEST_CASE("specialization of elements") {
  QuantumWreathProduct A(heckeInstance(), 2);
  QwpElement sq = A.multiply(A.H(1), A.H(1));
  auto at1 = specializeElement<Rational>(sq, Specialization::rational({{"q", 1}}));
  CHECK(at1.size() == 1);
  CHECK(at1.at({TensorIndex{0, 0}, 0}) == 1);
  auto at3 = specializeElement<Rational>(sq, Specialization::rational({{"q", 3}}));
  CHECK(at3.at({TensorIndex{0, 0}, 1}) == 2);
  CHECK(at3.at({TensorIndex{0, 0}, 0}) == 3);
  auto fp = specializeElement<Fp>(sq, Specialization::prime({{"q", 3}}));
  CHECK(fp.at({TensorIndex{0, 0}, 1}) == Fp(2));
}

TEST_CASE("Ariki-Koike algebra as a quotient of the affine instance") {
  Specialization at = Specialization::prime({{"q", 17}, {"q1", 23}, {"q2", 101}, {"q3", 5}});
  for (auto [m, d] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 2}}) {
    auto ak = arikiKoikeQuotient(m, d, at);
    REQUIRE(ak.exact);
    int expected = 1;
    for (int s = 0; s < d; ++s) expected *= m;
    expected *= d == 2 ? 2 : 1;
    CHECK(ak.algebra.dim() == expected);
    CHECK_FALSE(ak.algebra.associativityWitness().has_value());
  }

  auto ak = arikiKoikeQuotient(2, 2, at);
  QuantumWreathProduct A(affinePolynomialInstance(ak.degreeBound + 5), 2);
  auto coords = [&](const QwpElement& x) {
    auto r = ak.reduce(x);
    REQUIRE(r.has_value());
    return *r;
  };
  QwpElement f = A.multiply(A.add(A.X(1), A.scalar(-Scalar::variable("q1"))), A.add(A.X(1), A.scalar(-Scalar::variable("q2"))));
  auto zero = coords(f);
  CHECK(std::all_of(zero.begin(), zero.end(), [](Fp x) { return x.isZero(); }));
  QwpElement t0 = A.X(1), t1 = A.H(1);
  CHECK(coords(A.multiply(A.multiply(t0, t1), A.multiply(t0, t1))) ==
        coords(A.multiply(A.multiply(t1, t0), A.multiply(t1, t0))));
}

TEST_CASE("Hu algebra matches the wreath product over H_q(Sigma_m)") {
  for (int m = 1; m <= 2; ++m) {
    auto rep = huIsoToQwp(m);
    CHECK(rep.ok());
    CHECK(rep.wreathRelations);
    CHECK(rep.quadratic);
    CHECK(rep.parabolicProducts);
    CHECK(rep.dimQwp == static_cast<size_t>(m == 1 ? 2 : 8));
  }
}
