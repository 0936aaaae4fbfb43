#include <doctest.h>

#include <cstdlib>

#include "qwreath/base_alg.hpp"

using namespace qw;

namespace {

Tensor mono2(int a, int b, Scalar c = 1) { return pureTensor({a, b}, c); }

}  // namespace

TEST_CASE("monomial bases multiply by adding exponents inside the window") {
  auto L = laurentRing(8);
  CHECK(L->mulBasis(2, -3) == BaseElement::term(-1));
  CHECK(L->label(-1) == "X^-1");
  CHECK(L->parseLabel("X^-2") == -2);
  CHECK_THROWS_AS(L->mulBasis(5, 4), WindowOverflow);
  CHECK_THROWS_AS(L->parseLabel("X^9"), WindowOverflow);

  auto P = polyRing(8);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) CHECK(P->mulBasis(a, b) == BaseElement::term(a + b));
  CHECK_THROWS_AS(P->require(-1), WindowOverflow);
  CHECK(P->basisWithin(3) == std::vector<int>{0, 1, 2, 3});
  CHECK(L->basisWithin(1) == std::vector<int>{-1, 0, 1});
}

TEST_CASE("default window honours the environment") {
  unsetenv("QWREATH_WINDOW");
  CHECK(defaultWindow() == 16);
  setenv("QWREATH_WINDOW", "6", 1);
  CHECK(defaultWindow() == 6);
  CHECK(laurentRing()->window() == 6);
  setenv("QWREATH_WINDOW", "abc", 1);
  CHECK_THROWS(defaultWindow());
  unsetenv("QWREATH_WINDOW");
}

TEST_CASE("Hecke base: quadratic relation, counit character, trace") {
  auto H = heckeSymmetric(2);
  CHECK(H->dimension() == 2);
  Scalar q = Scalar::q();
  BaseElement expected;
  expected.add(1, q - 1);
  expected.add(0, q);
  CHECK(H->mulBasis(1, 1) == expected);
  CHECK(H->str(H->mulBasis(1, 1)) == "(q - 1)*T[s1] + q");
  CHECK(H->counit(H->one()) == Scalar(1));
  // ε(T_i) = q is compatible with T_i^2 = (q-1)T_i + q.
  CHECK(q * q == (q - 1) * q + q);
  auto H3 = heckeSymmetric(3);
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) {
      auto ex = H3->counit(BaseElement::term(x)), ey = H3->counit(BaseElement::term(y));
      CHECK(H3->counit(H3->mulBasis(x, y)) == ex * ey);
      CHECK(H3->trace(H3->mulBasis(x, y)) == H3->trace(H3->mulBasis(y, x)));
    }
  CHECK(H3->counit(BaseElement::term(5)) == q.pow(3));
  auto Hv = heckeSymmetric(2, true);
  CHECK(Hv->counitOf(1) == Scalar::v(2));
}

TEST_CASE("cyclic group algebra and its trace") {
  auto C2 = groupAlgebraCyclic(2);
  CHECK(C2->mulBasis(1, 1) == BaseElement::term(0));
  auto C3 = groupAlgebraCyclic(3);
  for (int g : C3->basis()) {
    CHECK(C3->trace(BaseElement::term(g)) == Scalar(g == 0 ? 1 : 0));
    for (int h : C3->basis()) CHECK(C3->trace(C3->mulBasis(g, h)) == C3->trace(C3->mulBasis(h, g)));
  }
  CHECK(C3->counit(C3->mulBasis(1, 2)) == Scalar(1));
  auto c = casimir(*C2);
  CHECK(c == mono2(0, 0) + mono2(1, 1));
  auto c3 = casimir(*C3);
  CHECK(c3 == mono2(0, 0) + mono2(1, 2) + mono2(2, 1));
}

TEST_CASE("cyclotomic quotient reduces by the product of (X - q_i)") {
  auto C = cyclotomicQuotient(2);
  Scalar q1 = Scalar::variable("q1"), q2 = Scalar::variable("q2");
  BaseElement x2;
  x2.add(1, q1 + q2);
  x2.add(0, -q1 * q2);
  CHECK(C->mulBasis(1, 1) == x2);
  CHECK(C->str(x2) == "(q1 + q2)*X - q1*q2");

  for (int m = 2; m <= 4; ++m) {
    auto Cm = cyclotomicQuotient(m);
    BaseElement prod = Cm->one();
    for (int i = 1; i <= m; ++i) {
      BaseElement factor;
      factor.add(1, 1);
      factor.add(0, -Scalar::variable("q" + std::to_string(i)));
      prod = Cm->mul(prod, factor);
    }
    CHECK(prod.isZero());
  }
  CHECK_THROWS_AS(cyclotomicQuotient(std::vector<Scalar>{Scalar::variable("q1"), Scalar::variable("q1")}),
                  std::invalid_argument);
}

TEST_CASE("structure constants are validated") {
  StructureData d;
  d.dim = 2;
  d.table = {{BaseElement::term(0), BaseElement::term(1)}, {BaseElement::term(1), BaseElement::term(0)}};
  d.trace = std::vector<Scalar>{1, 0};
  auto A = structureConstants(d);
  CHECK(A->mulBasis(1, 1) == BaseElement::term(0));
  CHECK(dualBasis(*A).has_value());

  StructureData bad = d;
  bad.dim = 3;
  bad.table.assign(3, std::vector<BaseElement>(3));
  for (int i = 0; i < 3; ++i) bad.table[0][i] = bad.table[i][0] = BaseElement::term(i);
  bad.table[1][1] = BaseElement::term(2);
  bad.table[1][2] = BaseElement::term(1);
  bad.table[2][1] = BaseElement::term(0);
  bad.table[2][2] = BaseElement::term(1);
  bad.trace.reset();
  CHECK_THROWS_AS(structureConstants(bad), std::invalid_argument);

  StructureData noUnit = d;
  noUnit.table[0][1] = BaseElement::term(0);
  CHECK_THROWS_AS(structureConstants(noUnit), std::invalid_argument);

  auto fromJson = makeInstance(R"({"kind":"structure_constants","dim":2,"table":[[0,0,[[0,1]]],[0,1,[[1,1]]],[1,0,[[1,1]]],[1,1,[[0,1]]]],"labels":["1","g"],"counit":[1,1]})");
  CHECK(fromJson->label(1) == "g");
  CHECK(fromJson->counit(fromJson->mulBasis(1, 1)) == Scalar(1));
  CHECK_THROWS_AS(makeInstance(R"({"kind":"structure_constants","dim":2,"table":[[1,1,[[1,1]]]]})"), std::invalid_argument);
  CHECK(makeInstance(R"({"kind":"hecke_symmetric","m":3})")->dimension() == 6);
  CHECK(makeInstance(R"({"kind":"laurent_ring","window":5})")->window() == 5);
  CHECK_THROWS_AS(makeInstance(R"({"kind":"nonsense"})"), ParseError);
}

TEST_CASE("undeclared functionals are reported") {
  auto C = cyclotomicQuotient(2);
  CHECK_THROWS_AS(C->trace(C->one()), UndeclaredFunctional);
  CHECK_THROWS_AS(C->counit(C->one()), UndeclaredFunctional);
  CHECK(groundRing()->dimension() == 1);
}

TEST_CASE("Demazure operator") {
  CHECK(demazure(1, 0) == mono2(0, 0));
  CHECK(demazure(0, 1) == mono2(0, 0, -1));
  CHECK(demazure(2, 0) == mono2(1, 0) + mono2(0, 1));
  auto L = laurentRing(12);
  Tensor diff = mono2(1, 0) - mono2(0, 1);
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b) {
      auto d = demazure(a, b);
      CHECK(d == -demazure(b, a));
      if (a == b) CHECK(d.isZero());
      // (X⊗1 - 1⊗X)∂(f) = f - flip(f)
      CHECK(tensorMul(*L, diff, d) == mono2(a, b) - mono2(b, a));
    }
  CHECK_THROWS_AS(demazure(*laurentRing(3), mono2(5, 0)), WindowOverflow);
}

TEST_CASE("rho = Demazure(.) beta is a flip-derivation when beta commutes with X") {
  auto L = laurentRing(12);
  Scalar q = Scalar::q();
  for (const Tensor& beta : {mono2(0, 1, -(q - 1)), mono2(0, 0, -1), mono2(1, 0, 3)}) {
    auto rho = [&](const Tensor& x) { return tensorMul(*L, demazure(*L, x), beta); };
    for (int i = -4; i <= 4; ++i)
      for (int j = -4; j <= 4; ++j)
        for (int k = -4; k <= 4; ++k)
          for (int l = -4; l <= 4; ++l) {
            Tensor a = mono2(i, j), b = mono2(k, l);
            Tensor lhs = rho(tensorMul(*L, a, b));
            Tensor rhs = tensorMul(*L, flipPair(a), rho(b)) + tensorMul(*L, rho(a), b);
            REQUIRE(lhs == rhs);
          }
  }
}

TEST_CASE("tensor helpers") {
  auto H = heckeSymmetric(2);
  Tensor z = mono2(1, 0) + mono2(0, 1, 2);
  CHECK(embedPair(*H, z, 2, 3) == pureTensor({0, 1, 0}) + pureTensor({0, 0, 1}, 2));
  CHECK_THROWS(embedPair(*H, z, 3, 3));
  CHECK(tensorStr(*H, z) == "(T[s1]⊗1) + 2*(1⊗T[s1])");
  CHECK(tensorCounit(*H, z) == Scalar::q() * 3);
  CHECK(tensorTrace(*H, unitTensor(*H, 3)) == Scalar(1));
  CHECK(embedSingle(*H, BaseElement::term(1), 3, 3) == pureTensor({0, 0, 1}));
}
