#include "qwreath/coeff.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <mutex>
#include <ostream>
#include <sstream>

namespace qw {

namespace {

struct VariableTable {
  std::mutex mu;
  std::vector<std::string> names{"v", "q"};
};

VariableTable& table() {
  static VariableTable t;
  return t;
}

int16_t checkedExponent(int e) {
  if (e > INT16_MAX || e < INT16_MIN) throw ArithmeticError("exponent overflow");
  return static_cast<int16_t>(e);
}

}  // namespace

int Variables::index(std::string_view name) {
  auto& t = table();
  std::lock_guard lock(t.mu);
  for (size_t i = 0; i < t.names.size(); ++i)
    if (t.names[i] == name) return static_cast<int>(i);
  if (static_cast<int>(t.names.size()) >= kMaxVariables)
    throw ArithmeticError("too many variables (limit " + std::to_string(kMaxVariables) + ")");
  t.names.emplace_back(name);
  return static_cast<int>(t.names.size()) - 1;
}

std::optional<int> Variables::find(std::string_view name) {
  auto& t = table();
  std::lock_guard lock(t.mu);
  for (size_t i = 0; i < t.names.size(); ++i)
    if (t.names[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

std::string Variables::name(int i) {
  auto& t = table();
  std::lock_guard lock(t.mu);
  return t.names.at(i);
}

int Variables::count() {
  auto& t = table();
  std::lock_guard lock(t.mu);
  return static_cast<int>(t.names.size());
}

bool Monomial::isOne() const {
  for (auto e : exp)
    if (e) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVariables; ++i) r.exp[i] = checkedExponent(int(exp[i]) + o.exp[i]);
  return r;
}

Monomial Monomial::inverse() const {
  Monomial r;
  for (int i = 0; i < kMaxVariables; ++i) r.exp[i] = checkedExponent(-int(exp[i]));
  return r;
}

Monomial Monomial::pow(int k) const {
  Monomial r;
  for (int i = 0; i < kMaxVariables; ++i) r.exp[i] = checkedExponent(int(exp[i]) * k);
  return r;
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(const Integer& c) {
  if (c != 0) terms_.emplace_back(Monomial{}, c);
}

Scalar::Scalar(const Monomial& m, const Integer& c) {
  if (c != 0) terms_.emplace_back(m, c);
}

Scalar Scalar::variable(std::string_view name, int power) {
  Monomial m;
  m.exp[Variables::index(name)] = checkedExponent(power);
  return Scalar(m, 1);
}

bool Scalar::isOne() const { return terms_.size() == 1 && terms_[0].first.isOne() && terms_[0].second == 1; }

bool Scalar::isConstant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.isOne()); }

Integer Scalar::constantTerm() const {
  for (auto& [m, c] : terms_)
    if (m.isOne()) return c;
  return 0;
}

void Scalar::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  size_t out = 0;
  for (size_t i = 0; i < terms_.size();) {
    size_t j = i + 1;
    Integer c = std::move(terms_[i].second);
    while (j < terms_.size() && terms_[j].first == terms_[i].first) c += terms_[j++].second;
    if (c != 0) {
      terms_[out].first = terms_[i].first;
      terms_[out].second = std::move(c);
      ++out;
    }
    i = j;
  }
  terms_.resize(out);
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

namespace {

template <bool Subtract>
void mergeInto(std::vector<Scalar::Term>& a, const std::vector<Scalar::Term>& b) {
  if (b.empty()) return;
  if (a.empty()) {
    a = b;
    if constexpr (Subtract)
      for (auto& t : a) t.second = -t.second;
    return;
  }
  std::vector<Scalar::Term> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(std::move(a[i++]));
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
      if constexpr (Subtract) out.back().second = -out.back().second;
    } else {
      Integer c = std::move(a[i].second);
      if constexpr (Subtract)
        c -= b[j].second;
      else
        c += b[j].second;
      if (c != 0) out.emplace_back(a[i].first, std::move(c));
      ++i, ++j;
    }
  }
  a = std::move(out);
}

}  // namespace

Scalar& Scalar::operator+=(const Scalar& o) {
  mergeInto<false>(terms_, o.terms_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  mergeInto<true>(terms_, o.terms_);
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar r;
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (a.terms_.size() == 1 && a.terms_[0].first.isOne()) {
    if (a.terms_[0].second == 1) return b;
    r.terms_ = b.terms_;
    for (auto& t : r.terms_) t.second *= a.terms_[0].second;
    return r;
  }
  if (b.terms_.size() == 1 && b.terms_[0].first.isOne()) return b * a;
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (auto& [ma, ca] : a.terms_)
    for (auto& [mb, cb] : b.terms_) r.terms_.emplace_back(ma * mb, ca * cb);
  r.normalize();
  return r;
}

Scalar Scalar::pow(int k) const {
  if (k < 0) {
    if (terms_.size() != 1 || (terms_[0].second != 1 && terms_[0].second != -1))
      throw ArithmeticError("negative power of a non-unit: " + str());
    Integer c = (terms_[0].second == -1 && (k % 2)) ? -1 : 1;
    return Scalar(terms_[0].first.pow(k), c);
  }
  Scalar result(1), base = *this;
  while (k) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

std::optional<Scalar> Scalar::tryDivide(const Scalar& d) const {
  if (d.isZero()) return std::nullopt;
  if (isZero()) return Scalar();
  if (d.terms_.size() == 1) {
    Scalar r;
    Monomial inv = d.terms_[0].first.inverse();
    for (auto& [m, c] : terms_) {
      if (c % d.terms_[0].second != 0) return std::nullopt;
      r.terms_.emplace_back(m * inv, c / d.terms_[0].second);
    }
    r.normalize();
    return r;
  }
  // Exponent ranges of the quotient are forced by the Newton polytope.
  int nv = Variables::count();
  std::vector<int> lo(nv), hi(nv);
  for (int v = 0; v < nv; ++v) {
    lo[v] = minDegree(v) - d.minDegree(v);
    hi[v] = maxDegree(v) - d.maxDegree(v);
    if (lo[v] > hi[v]) return std::nullopt;
  }
  const auto& lead = d.terms_.back();
  Monomial leadInv = lead.first.inverse();
  Scalar rem = *this, quot;
  while (!rem.isZero()) {
    const auto& top = rem.terms_.back();
    if (top.second % lead.second != 0) return std::nullopt;
    Monomial m = top.first * leadInv;
    for (int v = 0; v < nv; ++v)
      if (m.exp[v] < lo[v] || m.exp[v] > hi[v]) return std::nullopt;
    Scalar t(m, top.second / lead.second);
    quot += t;
    rem -= t * d;
  }
  return quot;
}

Scalar Scalar::divideExact(const Scalar& d) const {
  auto r = tryDivide(d);
  if (!r) throw ArithmeticError("inexact division: (" + str() + ") / (" + d.str() + ")");
  return *r;
}

Scalar Scalar::bar() const {
  Scalar r = *this;
  for (auto& [m, c] : r.terms_)
    for (int i = 0; i < kMaxVariables; ++i)
      if (Variables::barred(i)) m.exp[i] = checkedExponent(-int(m.exp[i]));
  r.normalize();
  return r;
}

Scalar Scalar::substitute(int var, const Scalar& value) const {
  Scalar r;
  std::map<int, Scalar> powers;
  for (auto& [m, c] : terms_) {
    int e = m.exp[var];
    Monomial rest = m;
    rest.exp[var] = 0;
    auto it = powers.find(e);
    if (it == powers.end()) it = powers.emplace(e, value.pow(e)).first;
    r += Scalar(rest, c) * it->second;
  }
  return r;
}

Scalar Scalar::substitute(std::string_view var, const Scalar& value) const {
  auto i = Variables::find(var);
  if (!i) return *this;
  return substitute(*i, value);
}

int Scalar::maxDegree(int var) const {
  int r = INT32_MIN;
  for (auto& [m, c] : terms_) r = std::max(r, int(m.exp[var]));
  return terms_.empty() ? 0 : r;
}

int Scalar::minDegree(int var) const {
  int r = INT32_MAX;
  for (auto& [m, c] : terms_) r = std::min(r, int(m.exp[var]));
  return terms_.empty() ? 0 : r;
}

bool Scalar::involves(int var) const {
  for (auto& [m, c] : terms_)
    if (m.exp[var]) return true;
  return false;
}

Scalar Scalar::coefficientOf(int var, int k) const {
  Scalar r;
  for (auto& [m, c] : terms_)
    if (m.exp[var] == k) {
      Monomial rest = m;
      rest.exp[var] = 0;
      r.terms_.emplace_back(rest, c);
    }
  r.normalize();
  return r;
}

std::string Scalar::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    bool neg = c < 0;
    Integer a = neg ? Integer(-c) : c;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    std::string mono;
    for (int i = 0; i < kMaxVariables; ++i) {
      if (!m.exp[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += Variables::name(i);
      if (m.exp[i] != 1) mono += "^" + std::to_string(m.exp[i]);
    }
    if (mono.empty())
      out += a.str();
    else if (a == 1)
      out += mono;
    else
      out += a.str() + "*" + mono;
  }
  return out;
}

std::string Scalar::factorStr() const {
  if (terms_.size() > 1) return "(" + str() + ")";
  return str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

std::string joinTerms(const std::vector<std::pair<Scalar, std::string>>& terms) {
  std::string out;
  for (auto& [c, label] : terms) {
    if (c.isZero()) continue;
    std::string t;
    if (label.empty())
      t = c.isMonomial() ? c.str() : "(" + c.str() + ")";
    else if (c.isOne())
      t = label;
    else if ((-c).isOne())
      t = "-" + label;
    else
      t = (c.isMonomial() ? c.str() : "(" + c.str() + ")") + "*" + label;
    if (out.empty())
      out = t;
    else if (t[0] == '-')
      out += " - " + t.substr(1);
    else
      out += " + " + t;
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------- parser

namespace {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view s) : s_(s) {}

  Scalar parseAll() {
    Scalar r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  std::string_view s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("scalar parse error at " + std::to_string(pos_) + ": " + what + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool startsFactor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_';
  }

  Scalar expr() {
    Scalar r;
    bool neg = false;
    if (peek('-')) {
      ++pos_;
      neg = true;
    } else if (peek('+')) {
      ++pos_;
    }
    Scalar t = term();
    r = neg ? -t : t;
    while (true) {
      if (peek('+')) {
        ++pos_;
        r += term();
      } else if (peek('-')) {
        ++pos_;
        r -= term();
      } else {
        break;
      }
    }
    return r;
  }

  Scalar term() {
    Scalar r = power();
    while (true) {
      if (peek('*')) {
        ++pos_;
        r *= power();
      } else if (startsFactor()) {
        r *= power();
      } else {
        break;
      }
    }
    return r;
  }

  Scalar power() {
    Scalar b = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      bool neg = false;
      if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
      bool paren = peek('(');
      if (paren) {
        ++pos_;
        skip();
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = (s_[pos_++] == '-') != neg;
      }
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      if (paren) {
        if (!peek(')')) fail("expected ')'");
        ++pos_;
      }
      b = b.pow(neg ? -e : e);
    }
    return b;
  }

  Scalar atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar r = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Scalar(Integer(std::string(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return Scalar::variable(s_.substr(start, pos_ - start));
    }
    fail("unexpected character");
  }
};

}  // namespace

Scalar Scalar::parse(std::string_view text) { return ScalarParser(text).parseAll(); }

// ---------------------------------------------------------------- Fp

namespace {
std::atomic<uint64_t> g_modulus{Fp::kDefaultPrime};
}

uint64_t Fp::modulus() { return g_modulus.load(std::memory_order_relaxed); }

void Fp::setModulus(uint64_t p) {
  if (p < 3 || p >= (1ULL << 63) || !isProbablePrime(p)) throw ArithmeticError("modulus must be an odd prime below 2^63");
  g_modulus.store(p);
}

Fp::Fp(int64_t x) {
  int64_t p = static_cast<int64_t>(modulus());
  int64_t r = x % p;
  if (r < 0) r += p;
  x_ = static_cast<uint64_t>(r);
}

Fp Fp::fromInteger(const Integer& x) {
  Integer p = modulus();
  Integer r = x % p;
  if (r < 0) r += p;
  return fromRaw(static_cast<uint64_t>(r));
}

Fp Fp::pow(int64_t k) const {
  if (k < 0) return inverse().pow(-k);
  Fp r = fromRaw(1), b = *this;
  while (k) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

Fp Fp::inverse() const {
  if (x_ == 0) throw ArithmeticError("inverse of zero in prime field");
  return pow(static_cast<int64_t>(modulus() - 2));
}

std::string Fp::str() const { return std::to_string(x_); }

bool isProbablePrime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL})
    if (n % p == 0) return n == p;
  auto mulmod = [n](uint64_t a, uint64_t b) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % n);
  };
  auto powmod = [&](uint64_t a, uint64_t e) {
    uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };
  uint64_t d = n - 1;
  int s = 0;
  while (!(d & 1)) d >>= 1, ++s;
  for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s && composite; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

// ---------------------------------------------------------------- specialization

Specialization Specialization::rational(std::initializer_list<std::pair<std::string, Rational>> vals) {
  Specialization s;
  for (auto& [k, v] : vals) s.set(k, v);
  return s;
}

Specialization Specialization::prime(std::initializer_list<std::pair<std::string, Rational>> vals) {
  Specialization s = rational(vals);
  s.target = Target::prime;
  return s;
}

Specialization& Specialization::set(std::string_view var, const Rational& value) {
  values[Variables::index(var)] = value;
  return *this;
}

std::string Specialization::str() const {
  std::string out = target == Target::prime ? "F_" + std::to_string(Fp::modulus()) + ":" : "Q:";
  bool first = true;
  for (auto& [k, v] : values) {
    out += (first ? " " : ", ") + Variables::name(k) + "=" + v.str();
    first = false;
  }
  return out;
}

Fp rationalToFp(const Rational& r) {
  Fp num = Fp::fromInteger(boost::multiprecision::numerator(r));
  Fp den = Fp::fromInteger(boost::multiprecision::denominator(r));
  return num / den;
}

Rational specializeRational(const Scalar& a, const Specialization& s) {
  Rational total = 0;
  for (auto& [m, c] : a.terms()) {
    Rational t = Rational(c);
    for (int i = 0; i < kMaxVariables; ++i) {
      if (!m.exp[i]) continue;
      auto it = s.values.find(i);
      if (it == s.values.end()) throw ArithmeticError("variable " + Variables::name(i) + " not assigned");
      if (m.exp[i] < 0 && it->second == 0)
        throw ArithmeticError("non-invertible assignment for Laurent variable " + Variables::name(i));
      Rational base = m.exp[i] > 0 ? it->second : 1 / it->second;
      for (int k = 0; k < std::abs(int(m.exp[i])); ++k) t *= base;
    }
    total += t;
  }
  return total;
}

Fp specializePrime(const Scalar& a, const Specialization& s) {
  Fp total;
  std::map<int, Fp> vals;
  for (auto& [m, c] : a.terms()) {
    Fp t = Fp::fromInteger(c);
    for (int i = 0; i < kMaxVariables; ++i) {
      if (!m.exp[i]) continue;
      auto it = vals.find(i);
      if (it == vals.end()) {
        auto sv = s.values.find(i);
        if (sv == s.values.end()) throw ArithmeticError("variable " + Variables::name(i) + " not assigned");
        it = vals.emplace(i, rationalToFp(sv->second)).first;
      }
      if (m.exp[i] < 0 && it->second.isZero())
        throw ArithmeticError("non-invertible assignment for Laurent variable " + Variables::name(i));
      t *= it->second.pow(m.exp[i]);
    }
    total += t;
  }
  return total;
}

}  // namespace qw
