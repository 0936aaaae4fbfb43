#include <doctest.h>

#include <random>

#include "qwreath/coeff.hpp"
#include "qwreath/linalg.hpp"

using namespace qw;

namespace {

Scalar randomScalar(std::mt19937& rng) {
  std::uniform_int_distribution<int> e(-3, 3), c(-4, 4), n(0, 4);
  Scalar s;
  int terms = n(rng);
  for (int i = 0; i < terms; ++i) s += Scalar(c(rng)) * Scalar::v(e(rng)) * Scalar::variable("q1", e(rng) + 3);
  return s;
}

}  // namespace

TEST_CASE("scalar arithmetic examples") {
  Scalar v = Scalar::v();
  CHECK((v - v.pow(-1)) * (v + v.pow(-1)) == v.pow(2) - v.pow(-2));
  CHECK(Scalar() + Scalar::q() == Scalar::q());
  CHECK((Scalar::q() - 1).pow(2) == Scalar::q(2) - 2 * Scalar::q() + 1);
  CHECK(Scalar(3) - Scalar(3) == Scalar());
  CHECK(Scalar().isZero());
}

TEST_CASE("exact division") {
  Scalar q = Scalar::q();
  Scalar a = (q - 1) * (q.pow(2) + 3 * q + 1) * Scalar::v(-2);
  CHECK(a.divideExact(q - 1) == (q.pow(2) + 3 * q + 1) * Scalar::v(-2));
  CHECK(a.divideExact(Scalar::v(-2)) == (q - 1) * (q.pow(2) + 3 * q + 1));
  CHECK_THROWS_AS(a.divideExact(q + 1), ArithmeticError);
  CHECK_THROWS_AS((q + 1).divideExact(Scalar(2)), ArithmeticError);
  CHECK_THROWS_AS((q + 1).pow(-1), ArithmeticError);
}

TEST_CASE("bar involution") {
  Scalar v = Scalar::v();
  CHECK((v + v.pow(-1)).bar() == v + v.pow(-1));
  CHECK(v.pow(3).bar() == v.pow(-3));
  CHECK((2 * v - 1).bar() == 2 * v.pow(-1) - 1);
  CHECK(Scalar::variable("q1").bar() == Scalar::variable("q1"));
  std::mt19937 rng(1);
  for (int i = 0; i < 200; ++i) {
    Scalar a = randomScalar(rng), b = randomScalar(rng);
    CHECK((a * b).bar() == a.bar() * b.bar());
    CHECK((a + b).bar() == a.bar() + b.bar());
    CHECK(a.bar().bar() == a);
  }
}

TEST_CASE("specialization is a homomorphism") {
  Scalar v = Scalar::v();
  auto at1 = Specialization::rational({{"v", 1}});
  CHECK(specializeRational(v.pow(6), at1) == 1);
  CHECK(specializeRational(v - v.pow(-1), at1) == 0);
  CHECK(specializeRational(Scalar::q() - 1, Specialization::rational({{"q", 2}})) == 1);
  CHECK_THROWS_AS(specializeRational(v.pow(-1), Specialization::rational({{"v", 0}})), ArithmeticError);
  CHECK_THROWS_AS(specializeRational(v, Specialization::rational({})), ArithmeticError);

  std::mt19937 rng(2);
  auto sr = Specialization::rational({{"v", Rational(3, 2)}, {"q1", -5}});
  auto sp = Specialization::prime({{"v", 12345}, {"q1", 777}});
  for (int i = 0; i < 100; ++i) {
    Scalar a = randomScalar(rng), b = randomScalar(rng);
    CHECK(specializeRational(a * b, sr) == specializeRational(a, sr) * specializeRational(b, sr));
    CHECK(specializeRational(a - b, sr) == specializeRational(a, sr) - specializeRational(b, sr));
    CHECK(specializePrime(a * b, sp) == specializePrime(a, sp) * specializePrime(b, sp));
    CHECK(specializePrime(a + b, sp) == specializePrime(a, sp) + specializePrime(b, sp));
  }
}

TEST_CASE("printer and parser round trip") {
  Scalar v = Scalar::v();
  CHECK((v + v.pow(-1)).str() == "v + v^-1");
  CHECK((Scalar::q() - 1).str() == "q - 1");
  CHECK((-2 * v.pow(-3) + 1).str() == "1 - 2*v^-3");
  CHECK(Scalar::parse("v^2 - v^-2") == v.pow(2) - v.pow(-2));
  CHECK(Scalar::parse("(q-1)^2") == Scalar::parse("q^2 - 2q + 1"));
  CHECK(Scalar::parse("2*q1*q2^-1 + 3") == 2 * Scalar::variable("q1") * Scalar::variable("q2", -1) + 3);
  CHECK_THROWS_AS(Scalar::parse("v +"), ParseError);
  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    Scalar a = randomScalar(rng) * Scalar::q(i % 3);
    CHECK(Scalar::parse(a.str()) == a);
  }
}

TEST_CASE("prime field") {
  CHECK(isProbablePrime(Fp::kDefaultPrime));
  CHECK((Fp::kDefaultPrime >> 61) == 1);
  CHECK(!isProbablePrime(Fp::kDefaultPrime - 2));
  Fp a(123456789), b(-5);
  CHECK(a * a.inverse() == Fp(1));
  CHECK(b + Fp(5) == Fp(0));
  CHECK(rationalToFp(Rational(1, 2)) * Fp(2) == Fp(1));
}

TEST_CASE("linear algebra over Q and F_p") {
  Matrix<Rational> m = {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  CHECK(rank(m) == 2);
  auto ns = nullspace(m, 3);
  REQUIRE(ns.size() == 1);
  for (auto& row : m) {
    Rational s = 0;
    for (int j = 0; j < 3; ++j) s += row[j] * ns[0][j];
    CHECK(s == 0);
  }
  auto x = solve<Rational>({{1, 1}, {1, -1}}, {3, 1}, 2);
  REQUIRE(x);
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 1);
  CHECK(!solve<Rational>({{1, 1}, {2, 2}}, {1, 3}, 2));

  EchelonBasis<Fp> eb(3);
  CHECK(eb.add({Fp(1), Fp(2), Fp(3)}));
  CHECK(!eb.add({Fp(2), Fp(4), Fp(6)}));
  CHECK(eb.add({Fp(0), Fp(1), Fp(1)}));
  CHECK(eb.contains({Fp(1), Fp(3), Fp(4)}));
  CHECK(!eb.contains({Fp(0), Fp(0), Fp(1)}));
}
