#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qw {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct ArithmeticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxVariables = 16;

// Process-wide variable table. "v" is index 0 and is the only variable
// inverted by the bar involution; "q" is index 1.
class Variables {
 public:
  static int index(std::string_view name);
  static std::optional<int> find(std::string_view name);
  static std::string name(int i);
  static bool barred(int i) { return i == 0; }
  static int count();
};

struct Monomial {
  std::array<int16_t, kMaxVariables> exp{};

  auto operator<=>(const Monomial&) const = default;
  bool isOne() const;
  Monomial operator*(const Monomial& o) const;
  Monomial inverse() const;
  Monomial pow(int k) const;
};

class Scalar {
 public:
  using Term = std::pair<Monomial, Integer>;

  Scalar() = default;
  Scalar(int c) : Scalar(Integer(c)) {}
  Scalar(long long c) : Scalar(Integer(c)) {}
  Scalar(const Integer& c);
  Scalar(const Monomial& m, const Integer& c);

  static Scalar variable(std::string_view name, int power = 1);
  static Scalar v(int power = 1) { return variable("v", power); }
  static Scalar q(int power = 1) { return variable("q", power); }
  static Scalar parse(std::string_view text);

  bool isZero() const { return terms_.empty(); }
  bool isOne() const;
  bool isConstant() const;
  bool isMonomial() const { return terms_.size() == 1; }
  Integer constantTerm() const;
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) = default;

  // Negative powers need a unit (signed monomial).
  Scalar pow(int k) const;
  // Exact quotient in the Laurent ring; throws ArithmeticError otherwise.
  Scalar divideExact(const Scalar& d) const;
  std::optional<Scalar> tryDivide(const Scalar& d) const;

  Scalar bar() const;
  Scalar substitute(int var, const Scalar& value) const;
  Scalar substitute(std::string_view var, const Scalar& value) const;

  int maxDegree(int var) const;
  int minDegree(int var) const;
  bool involves(int var) const;
  // Coefficient of var^k viewed as a polynomial in var.
  Scalar coefficientOf(int var, int k) const;

  std::string str() const;
  // Wrapped in parentheses when it has more than one term.
  std::string factorStr() const;

 private:
  std::vector<Term> terms_;  // sorted ascending by monomial, no zeros
  void normalize();
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Prime field with a process-wide modulus (62-bit by default).
class Fp {
 public:
  static uint64_t modulus();
  static void setModulus(uint64_t p);
  static constexpr uint64_t kDefaultPrime = 4611686018427387847ULL;  // 2^62 - 57

  Fp() = default;
  Fp(int64_t x);
  static Fp fromRaw(uint64_t x) { Fp r; r.x_ = x; return r; }
  static Fp fromInteger(const Integer& x);
  uint64_t raw() const { return x_; }
  bool isZero() const { return x_ == 0; }

  Fp operator-() const { return fromRaw(x_ ? modulus() - x_ : 0); }
  friend Fp operator+(Fp a, Fp b) {
    uint64_t p = modulus(), s = a.x_ + b.x_;
    return fromRaw(s >= p ? s - p : s);
  }
  friend Fp operator-(Fp a, Fp b) { return fromRaw(a.x_ >= b.x_ ? a.x_ - b.x_ : a.x_ + modulus() - b.x_); }
  friend Fp operator*(Fp a, Fp b) {
    return fromRaw(static_cast<uint64_t>(static_cast<unsigned __int128>(a.x_) * b.x_ % modulus()));
  }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  friend bool operator==(Fp a, Fp b) { return a.x_ == b.x_; }
  Fp pow(int64_t k) const;
  Fp inverse() const;
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  std::string str() const;

 private:
  uint64_t x_ = 0;
};

bool isProbablePrime(uint64_t n);

inline bool isZeroValue(const Scalar& x) { return x.isZero(); }
inline bool isZeroValue(const Fp& x) { return x.isZero(); }
inline bool isZeroValue(const Rational& x) { return x == 0; }
inline std::string valueStr(const Scalar& x) { return x.str(); }
inline std::string valueStr(const Fp& x) { return x.str(); }
inline std::string valueStr(const Rational& x) { return x.str(); }

// Assignment of variables to values in Q or in the current prime field.
struct Specialization {
  enum class Target { rational, prime };
  Target target = Target::rational;
  std::map<int, Rational> values;

  static Specialization rational(std::initializer_list<std::pair<std::string, Rational>> vals);
  static Specialization prime(std::initializer_list<std::pair<std::string, Rational>> vals);
  Specialization& set(std::string_view var, const Rational& value);
  std::string str() const;
};

// Formats Σ coeff*label, e.g. "(q - 1)*H[s1] + q"; an empty label marks the unit term.
std::string joinTerms(const std::vector<std::pair<Scalar, std::string>>& terms);

Rational specializeRational(const Scalar& a, const Specialization& s);
Fp specializePrime(const Scalar& a, const Specialization& s);
Fp rationalToFp(const Rational& r);

}  // namespace qw
