#include "qwreath/hecke.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

namespace qw {

namespace {

template <class Make>
HeckeAlgebraPtr<Scalar> cached(std::map<int, HeckeAlgebraPtr<Scalar>>& cache, std::mutex& mu, int n, Make make) {
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto alg = make();
  cache.emplace(n, alg);
  return alg;
}

std::string labelOf(const CoxeterGroup& g, int w, const std::string& symbol) {
  if (w == 0) return "";
  return symbol + "[" + wordStr(g.word(w)) + "]";
}

Scalar degreePart(const Scalar& s, bool positive) {
  Scalar r;
  for (auto& [m, c] : s.terms())
    if (positive ? m.exp[0] > 0 : m.exp[0] < 0) r += Scalar(m, c);
  return r;
}

template <class F>
F fieldPow(F x, int k) {
  if (k < 0) {
    x = fieldInverse(x);
    k = -k;
  }
  F r(1);
  while (k) {
    if (k & 1) r = r * x;
    x = x * x;
    k >>= 1;
  }
  return r;
}

template <class F>
F integerTo(const Integer& c);
template <>
Rational integerTo<Rational>(const Integer& c) {
  return Rational(c);
}
template <>
Fp integerTo<Fp>(const Integer& c) {
  return Fp::fromInteger(c);
}

int vParity(const HElem& x) {
  int parity = -1;
  for (auto& c : x.coefficients())
    for (auto& [m, a] : c.terms()) {
      for (int i = 1; i < kMaxVariables; ++i)
        if (m.exp[i]) throw std::invalid_argument("element involves variables other than v");
      int p = ((m.exp[0] % 2) + 2) % 2;
      if (parity < 0)
        parity = p;
      else if (parity != p)
        throw std::invalid_argument("element mixes even and odd powers of v");
    }
  return parity < 0 ? 0 : parity;
}

template <class F>
F evenValue(const Scalar& c, int shift, const F& q) {
  F r(0);
  for (auto& [m, a] : c.terms()) r = r + integerTo<F>(a) * fieldPow(q, (m.exp[0] - shift) / 2);
  return r;
}

Fp evalAtV(const Scalar& c, Fp v) {
  Fp r(0);
  for (auto& [m, a] : c.terms()) r = r + Fp::fromInteger(a) * v.pow(m.exp[0]);
  return r;
}

}  // namespace

HeckeAlgebraPtr<Scalar> symbolicHeckeA(int n) {
  static std::map<int, HeckeAlgebraPtr<Scalar>> cache;
  static std::mutex mu;
  return cached(cache, mu, n, [n] {
    return std::make_shared<const HeckeAlgebra<Scalar>>(CoxeterGroup::typeA(n), Scalar::v(2), Scalar::v(-2), Scalar::v(2),
                                                        Scalar::v(-2), Scalar::v(), Scalar::v(-1));
  });
}

HeckeAlgebraPtr<Scalar> symbolicHeckeB(int n) {
  static std::map<int, HeckeAlgebraPtr<Scalar>> cache;
  static std::mutex mu;
  return cached(cache, mu, n, [n] {
    return std::make_shared<const HeckeAlgebra<Scalar>>(CoxeterGroup::typeB(n), Scalar::v(2), Scalar::v(-2), Scalar(1),
                                                        Scalar(1), Scalar::v(), Scalar::v(-1));
  });
}

HeckeAlgebraPtr<Scalar> symbolicHeckeAq(int n) {
  static std::map<int, HeckeAlgebraPtr<Scalar>> cache;
  static std::mutex mu;
  return cached(cache, mu, n, [n] {
    return std::make_shared<const HeckeAlgebra<Scalar>>(CoxeterGroup::typeA(n), Scalar::q(), Scalar::q(-1), Scalar::q(),
                                                        Scalar::q(-1));
  });
}

// ---------------------------------------------------------------- IWord

IWord IWord::plain(const Word& w) {
  IWord r;
  for (int s : w) r.letters.emplace_back(s, false);
  return r;
}

IWord IWord::inverted(const Word& w) {
  IWord r;
  for (int s : w) r.letters.emplace_back(s, true);
  return r;
}

IWord IWord::parse(std::string_view text) {
  std::string t(text);
  auto lb = t.find('[');
  if (lb != std::string::npos) {
    auto rb = t.find(']', lb);
    if (rb == std::string::npos) throw ParseError("unterminated I[...]");
    t = t.substr(lb + 1, rb - lb - 1);
  }
  IWord r;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, '.')) {
    bool inv = false;
    while (!item.empty() && (item[0] == '~' || item[0] == ' ')) {
      if (item[0] == '~') inv = true;
      item.erase(0, 1);
    }
    if (item.empty()) continue;
    try {
      r.letters.emplace_back(std::stoi(item), inv);
    } catch (const std::exception&) {
      throw ParseError("bad generator in I-word: " + item);
    }
  }
  return r;
}

IWord IWord::operator+(const IWord& o) const {
  IWord r = *this;
  r.letters.insert(r.letters.end(), o.letters.begin(), o.letters.end());
  return r;
}

IWord IWord::shifted(int offset) const {
  IWord r = *this;
  for (auto& l : r.letters) l.first += offset;
  return r;
}

IWord IWord::reversed() const {
  IWord r = *this;
  std::reverse(r.letters.begin(), r.letters.end());
  return r;
}

std::string IWord::str() const {
  if (letters.empty()) return "1";
  std::string out = "I[";
  for (size_t i = 0; i < letters.size(); ++i) {
    if (i) out += ".";
    if (letters[i].second) out += "~";
    out += std::to_string(letters[i].first);
  }
  return out + "]";
}

HElem WordSum::evaluate(HeckeAlgebraPtr<Scalar> alg) const {
  HElem r(alg);
  for (auto& t : terms) r += t.evaluate(alg);
  return scale * r;
}

WordSum WordSum::star() const {
  WordSum r{scale, {}};
  for (auto& t : terms) r.terms.push_back(t.reversed());
  return r;
}

std::string WordSum::str() const {
  std::string inner;
  for (size_t i = 0; i < terms.size(); ++i) inner += (i ? " + " : "") + terms[i].str();
  if (scale.isOne()) return inner;
  return scale.factorStr() + "*(" + inner + ")";
}

// ---------------------------------------------------------------- bar and printing

HElem bar(const HElem& x) {
  const auto& g = x.group();
  auto alg = x.algebraPtr();
  HElem r(alg);
  auto nz = x.support();
  if (nz.empty()) return r;
  int N = g.size();
  std::vector<char> needed(N, 0);
  for (int w : nz) needed[w] = 1;
  for (int w = N - 1; w > 0; --w)
    if (needed[w]) needed[g.parent(w)] = 1;
  std::vector<std::pair<int, HElem>> stack;
  stack.emplace_back(0, HElem::one(alg));
  while (!stack.empty()) {
    auto [w, bw] = std::move(stack.back());
    stack.pop_back();
    if (!x.coefT(w).isZero()) r += x.coefT(w).bar() * bw;
    for (int c : g.children(w))
      if (needed[c]) stack.emplace_back(c, bw.timesTInverse(g.lastLetter(c)));
  }
  return r;
}

std::string strT(const HElem& x, const std::string& symbol) {
  std::vector<std::pair<Scalar, std::string>> terms;
  for (int w = x.group().size() - 1; w >= 0; --w)
    if (!x.coefT(w).isZero()) terms.emplace_back(x.coefT(w), labelOf(x.group(), w, symbol));
  return joinTerms(terms);
}

std::string strI(const HElem& x) {
  std::vector<std::pair<Scalar, std::string>> terms;
  const auto& g = x.group();
  for (int w = g.size() - 1; w >= 0; --w)
    if (!x.coefT(w).isZero()) terms.emplace_back(x.coefI(w), w ? IWord::plain(g.word(w)).str() : "");
  return joinTerms(terms);
}

std::string strBasisExpansion(const CoxeterGroup& g, const std::map<int, Scalar>& coeffs, const std::string& symbol) {
  std::vector<std::pair<Scalar, std::string>> terms;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) terms.emplace_back(it->second, labelOf(g, it->first, symbol));
  return joinTerms(terms);
}

// ---------------------------------------------------------------- BarBasisTable

BarBasisTable::BarBasisTable(HeckeAlgebraPtr<Scalar> alg) : alg_(std::move(alg)) {}

const HElem& BarBasisTable::barOfI(int w) {
  std::lock_guard lock(mu_);
  auto it = bar_.find(w);
  if (it != bar_.end()) return it->second;
  const auto& g = alg_->group();
  HElem r = w == 0 ? HElem::one(alg_) : barOfI(g.parent(w)).timesIInverse(g.lastLetter(w));
  return bar_.emplace(w, std::move(r)).first->second;
}

const HElem& BarBasisTable::element(Kind kind, int w) {
  std::lock_guard lock(mu_);
  auto key = std::make_pair(static_cast<int>(kind), w);
  auto it = basis_.find(key);
  if (it != basis_.end()) return it->second;
  const auto& g = alg_->group();
  std::vector<int> ideal;
  for (int z = w; z >= 0; --z)
    if (g.bruhatLeq(z, w)) ideal.push_back(z);  // decreasing index, hence non-increasing length
  std::map<int, Scalar> p;
  p[w] = 1;
  for (size_t k = 1; k < ideal.size(); ++k) {
    int z = ideal[k];
    Scalar s;
    for (auto& [y, py] : p) {
      if (y == z || !g.bruhatLeq(z, y)) continue;
      Scalar r = barOfI(y).coefI(z);
      if (!r.isZero()) s += py.bar() * r;
    }
    if (!(s.bar() == -s)) throw ArithmeticError("bar-invariant basis: non-antisymmetric defect");
    Scalar pz = degreePart(s, kind == Kind::upper);
    if (!pz.isZero()) p[z] = pz;
  }
  HElem r(alg_);
  for (auto& [y, py] : p) r.addI(y, py);
  return basis_.emplace(key, std::move(r)).first->second;
}

std::map<int, Scalar> BarBasisTable::expand(Kind kind, const HElem& x) {
  if (!(bar(x) == x)) throw std::invalid_argument("expansion requested for a non-bar-invariant element");
  std::map<int, Scalar> out;
  HElem rest = x;
  while (true) {
    auto s = rest.support();
    if (s.empty()) break;
    int w = s.back();
    Scalar a = rest.coefI(w);
    out[w] = a;
    rest -= a * element(kind, w);
  }
  return out;
}

// ---------------------------------------------------------------- Jucys–Murphy

template <class R>
HeckeElement<R> jucysMurphyFactor(HeckeAlgebraPtr<R> alg, int i, int sign) {
  Word w;
  for (int k = i; k >= 0; --k) w.push_back(k);
  for (int k = 1; k <= i; ++k) w.push_back(k);
  R qi(1);
  for (int k = 0; k < i; ++k) qi = qi * alg->q();
  auto t = HeckeElement<R>::T(alg, alg->group().fromWord(w));
  auto c = HeckeElement<R>::scalar(alg, qi);
  return sign > 0 ? c + t : c - t;
}

template <class R>
HeckeElement<R> jucysMurphy(HeckeAlgebraPtr<R> alg, int k, int sign) {
  if (alg->group().type() != CoxeterType::B || k < 0 || k > alg->group().rank())
    throw std::out_of_range("Jucys-Murphy index out of range");
  auto u = HeckeElement<R>::one(alg);
  for (int i = 0; i < k; ++i) u = u * jucysMurphyFactor(alg, i, sign);
  return u;
}

template HeckeElement<Scalar> jucysMurphy(HeckeAlgebraPtr<Scalar>, int, int);
template HeckeElement<Fp> jucysMurphy(HeckeAlgebraPtr<Fp>, int, int);
template HeckeElement<Rational> jucysMurphy(HeckeAlgebraPtr<Rational>, int, int);
template HeckeElement<Scalar> jucysMurphyFactor(HeckeAlgebraPtr<Scalar>, int, int);
template HeckeElement<Fp> jucysMurphyFactor(HeckeAlgebraPtr<Fp>, int, int);
template HeckeElement<Rational> jucysMurphyFactor(HeckeAlgebraPtr<Rational>, int, int);

std::vector<IdentityCheck> lemmaUIdentities(int N) {
  auto alg = symbolicHeckeB(N);
  std::vector<IdentityCheck> out;
  std::vector<HElem> u;
  for (int k = 0; k <= N; ++k) u.push_back(jucysMurphy(alg, k, +1));
  for (int j = 0; j <= N; ++j)
    for (int i = 0; i < N; ++i) {
      if (i == j) continue;
      out.push_back({"u" + std::to_string(j) + "+ commutes with T" + std::to_string(i), u[j].timesT(i) == u[j].Ttimes(i)});
    }
  Scalar q = alg->q();
  for (int i = 1; i < N; ++i) {
    HElem lhs = u[i];
    for (int k = i; k >= 0; --k) lhs = lhs.timesT(k);
    HElem rhs = u[i + 1] - q.pow(i) * u[i];
    for (int k = i; k >= 1; --k) rhs = rhs.timesTInverse(k);
    out.push_back({"u" + std::to_string(i) + "+ T(" + std::to_string(i) + "->0) expansion", lhs == rhs});
  }
  return out;
}

// ---------------------------------------------------------------- Hu toolchain

HeckeAlgebraPtr<Scalar> huAmbient(int m) {
  if (m < 1 || 2 * m > 8) throw std::out_of_range("Hu algebra needs 1 <= m <= 4");
  return symbolicHeckeA(2 * m);
}

IWord signedChain(int a, int b, bool barred) {
  return barred ? IWord::inverted(chainWord(a, b)) : IWord::plain(chainWord(a, b));
}

IWord cWord(int m, int i) {
  if (i == 0) return {};
  return IWord::plain(chainWord(m + i, m + 1)) + IWord::plain(chainWord(m + 1, m + i));
}

WordSum hRecursion(int m) {
  WordSum h{Scalar::v(m), {signedChain(m, 1, false), signedChain(m, 1, true)}};
  for (int i = 1; i < m; ++i) {
    WordSum next{h.scale * Scalar::v(m + 2 * i), {}};
    for (auto& t : h.terms) next.terms.push_back(t + signedChain(i + m, i + 1, false));
    for (auto& t : h.terms) next.terms.push_back(cWord(m, i) + t + signedChain(i + m, i + 1, true));
    h = std::move(next);
  }
  return h;
}

WordSum H1ClosedFormula(int m) {
  WordSum h{Scalar::v(m * (2 * m - 1)), {}};
  for (int mask = 0; mask < (1 << m); ++mask) {
    IWord t;
    for (int k = 1; k <= m; ++k) t = t + signedChain(m + 1 - k, 2 * m - k, (mask >> (m - k)) & 1);
    for (int i = 1; i <= m; ++i)
      if ((mask >> (m - i)) & 1) t = t + cWord(m, m - i);
    h.terms.push_back(t);
  }
  return h;
}

WordSum hDisplayed2() {
  IWord c = IWord::parse("3.3");
  return WordSum{Scalar::v(6),
                 {IWord::parse("2.1.3.2"), IWord::parse("2.1.~3.~2"), c + IWord::parse("~2.~1.3.2"),
                  c + IWord::parse("~2.~1.~3.~2")}};
}

namespace {

template <class Fn>
const HElem& memo(std::map<int, HElem>& cache, std::mutex& mu, int m, Fn fn) {
  {
    std::lock_guard lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  HElem x = fn();
  std::lock_guard lock(mu);
  return cache.emplace(m, std::move(x)).first->second;
}

}  // namespace

HElem hElement(int m) {
  static std::map<int, HElem> cache;
  static std::mutex mu;
  return memo(cache, mu, m, [m] { return hRecursion(m).evaluate(huAmbient(m)); });
}

HElem H1Element(int m) {
  static std::map<int, HElem> cache;
  static std::mutex mu;
  return memo(cache, mu, m, [m] { return H1ClosedFormula(m).evaluate(huAmbient(m)); });
}

HElem zmm(int m) {
  static std::map<int, HElem> cache;
  static std::mutex mu;
  return memo(cache, mu, m, [m] {
    HElem h = H1Element(m);
    return h * h;
  });
}

bool inParabolic(const CoxeterGroup& g, int w, int m) {
  const auto& p = g.element(w);
  for (int i = 0; i < m; ++i)
    if (p.img[i] > m) return false;
  return true;
}

std::vector<int> parabolicElements(int m) {
  auto alg = huAmbient(m);
  std::vector<int> out;
  for (int w = 0; w < alg->group().size(); ++w)
    if (inParabolic(alg->group(), w, m)) out.push_back(w);
  return out;
}

HElem CEpsilon(int m, const std::vector<bool>& minusSigns) {
  auto alg = huAmbient(m);
  IWord t;
  for (int i = 1; i <= m; ++i)
    if (minusSigns.at(i - 1)) t = t + cWord(m, m - i);
  return t.evaluate(alg);
}

GammaC gammaAndC(int m) {
  auto alg = huAmbient(m);
  auto small = CoxeterGroup::typeA(m);
  GammaC out;
  out.gamma = IWord::plain(small->word(small->longest())).shifted(m).evaluate(alg);
  out.C = CEpsilon(m, std::vector<bool>(m, true));
  out.CisGammaSquared = out.C == out.gamma * out.gamma;
  if (m == 1) {
    out.longestFactorization = true;
  } else {
    auto am = symbolicHeckeA(m);
    auto prev = CoxeterGroup::typeA(m - 1);
    HElem lhs = HElem::I(am, am->group().longest());
    HElem rhs = IWord::plain(prev->word(prev->longest())).evaluate(am) * IWord::plain(chainWord(m - 1, 1)).evaluate(am);
    out.longestFactorization = lhs == rhs;
  }
  return out;
}

HElem b1(int m) {
  static std::map<int, HElem> cache;
  static std::mutex mu;
  return memo(cache, mu, m, [m] {
    auto gc = gammaAndC(m);
    return Scalar::v(-m * (2 * m - 1)) * (H1Element(m) * bar(gc.gamma));
  });
}

HuBases huBases(int m) {
  auto alg = huAmbient(m);
  const auto& g = alg->group();
  HuBases out;
  out.m = m;
  out.parabolic = parabolicElements(m);
  HElem b = b1(m);
  BarBasisTable table(alg);
  for (int pass = 0; pass < 2; ++pass)
    for (int w : out.parabolic) {
      HElem iw = HElem::I(alg, w);
      const HElem& bw = table.element(kCanonical, w);
      out.standard.push_back(pass ? iw * b : iw);
      out.barInvariant.push_back(pass ? bw * b : bw);
      std::string lbl = w ? wordStr(g.word(w)) : "e";
      out.labels.push_back(pass ? lbl + " t1" : lbl);
    }
  return out;
}

std::size_t rankAtQ(const std::vector<HElem>& xs, const Rational& qValue) {
  Matrix<Rational> rows;
  for (auto& x : xs) {
    int e = vParity(x);
    std::vector<Rational> row;
    for (auto& c : x.coefficients()) row.push_back(evenValue<Rational>(c, e, qValue));
    rows.push_back(std::move(row));
  }
  return rank(rows);
}

template <class F>
HeckeElement<F> specializeEven(const HElem& x, HeckeAlgebraPtr<F> target, const F& qValue, int* parityShift) {
  int e = vParity(x);
  if (parityShift) *parityShift = e;
  return x.mapCoefficients<F>(target, [&](const Scalar& c) { return evenValue<F>(c, e, qValue); });
}

template HeckeElement<Fp> specializeEven(const HElem&, HeckeAlgebraPtr<Fp>, const Fp&, int*);
template HeckeElement<Rational> specializeEven(const HElem&, HeckeAlgebraPtr<Rational>, const Rational&, int*);

Membership huMembership(const HElem& x, int m, uint64_t seed) {
  static std::map<int, HuBases> cache;
  static std::mutex mu;
  const HuBases* bases;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, huBases(m)).first;
    bases = &it->second;
  }
  const auto& basis = bases->standard;
  size_t n = basis.size(), N = x.group().size();
  if (static_cast<int>(N) != huAmbient(m)->group().size()) throw std::invalid_argument("element not in H_q(S_2m)");

  std::mt19937_64 rng(seed);
  auto solveAt = [&](Fp v, bool& full) -> std::optional<std::vector<Fp>> {
    Matrix<Fp> a(N, std::vector<Fp>(n));
    std::vector<Fp> rhs(N);
    for (size_t j = 0; j < n; ++j)
      for (size_t w = 0; w < N; ++w) a[w][j] = evalAtV(basis[j].coefT(w), v);
    for (size_t w = 0; w < N; ++w) rhs[w] = evalAtV(x.coefT(w), v);
    full = rank(a) == n;
    return solve(a, rhs, n);
  };
  auto randomPoint = [&] { return Fp::fromRaw(2 + rng() % (Fp::modulus() - 3)); };

  Membership out;
  bool full = false;
  auto first = solveAt(randomPoint(), full);
  if (!first) {
    out.note = "inconsistent at a random point of v";
    return out;
  }
  if (!full) {
    out.note = "basis degenerate at the sample point";
    return out;
  }

  auto spread = [](const HElem& e) {
    int s = 0;
    for (auto& c : e.coefficients())
      if (!c.isZero()) s = std::max({s, std::abs(c.maxDegree(0)), std::abs(c.minDegree(0))});
    return s;
  };
  int bound = spread(x);
  for (auto& b : basis) bound = std::max(bound, spread(b));
  for (int D = bound + 2; D <= 8 * bound + 64; D *= 2) {
    int K = 2 * D + 1;
    std::vector<Fp> pts;
    std::vector<std::vector<Fp>> vals;
    bool ok = true;
    while (static_cast<int>(pts.size()) < K) {
      Fp v = randomPoint();
      if (std::find(pts.begin(), pts.end(), v) != pts.end()) continue;
      auto s = solveAt(v, full);
      if (!s || !full) {
        ok = false;
        break;
      }
      pts.push_back(v);
      // interpolate v^D * c(v)
      for (auto& y : *s) y = y * v.pow(D);
      vals.push_back(*s);
    }
    if (!ok) continue;
    std::vector<Scalar> coords(n);
    for (size_t j = 0; j < n; ++j) {
      // Newton divided differences then expansion into monomials
      std::vector<Fp> dd(K);
      for (int t = 0; t < K; ++t) dd[t] = vals[t][j];
      for (int level = 1; level < K; ++level)
        for (int t = K - 1; t >= level; --t) dd[t] = (dd[t] - dd[t - 1]) / (pts[t] - pts[t - level]);
      std::vector<Fp> poly(K, Fp(0));
      for (int t = K - 1; t >= 0; --t) {
        std::vector<Fp> next(K, Fp(0));
        for (int k = 0; k + 1 < K; ++k) {
          next[k + 1] = next[k + 1] + poly[k];
          next[k] = next[k] - poly[k] * pts[t];
        }
        next[0] = next[0] + dd[t];
        poly = next;
      }
      Scalar c;
      for (int k = 0; k < K; ++k) {
        uint64_t r = poly[k].raw();
        if (!r) continue;
        Integer val = r > Fp::modulus() / 2 ? Integer(r) - Integer(Fp::modulus()) : Integer(r);
        c += Scalar(Scalar::v(k - D).terms()[0].first, val);
      }
      coords[j] = c;
    }
    HElem combo(x.algebraPtr());
    for (size_t j = 0; j < n; ++j)
      if (!coords[j].isZero()) combo += coords[j] * basis[j];
    if (combo == x) {
      out.member = true;
      out.coordinates = std::move(coords);
      out.note = "coordinates verified symbolically";
      return out;
    }
  }
  out.note = "consistent at sample points but no Laurent coordinates reconstructed";
  return out;
}

template <class F>
TypeBOracle<F> hmTypeBOracle(int m, const F& q) {
  int n = 2 * m;
  auto gB = CoxeterGroup::typeB(n);
  auto gA = CoxeterGroup::typeA(n);
  auto alg = std::make_shared<const HeckeAlgebra<F>>(gB, q, fieldInverse(q), F(1), F(1));
  using E = HeckeElement<F>;
  int NA = gA->size(), NB = gB->size();

  // T_x y for every x in Σ_{2m}, built by left multiplication along first letters
  auto leftOrbit = [&](const E& y) {
    std::vector<E> out(NA);
    out[0] = y;
    for (int x = 1; x < NA; ++x) {
      int s = gA->word(x).front();
      out[x] = out[gA->lmul(s, x)].Ttimes(s);
    }
    return out;
  };
  auto rightOrbit = [&](const E& y) {
    std::vector<E> out(NA);
    out[0] = y;
    for (int x = 1; x < NA; ++x) out[x] = out[gA->parent(x)].timesT(gA->lastLetter(x));
    return out;
  };
  auto vec = [&](const E& e) { return e.coefficients(); };

  EchelonBasis<F> ideal(NB);
  for (int b = m + 1; b <= n; ++b) {
    auto ub = jucysMurphy<F>(alg, b, +1);
    for (auto& right : rightOrbit(ub))
      for (auto& both : leftOrbit(right)) ideal.add(vec(both));
  }
  E um = jucysMurphy<F>(alg, m, +1);
  E target = um * E::T(alg, gB->indexOf(wab(m, m))) * jucysMurphy<F>(alg, m, -1);
  auto columns = rightOrbit(um);
  Matrix<F> a(NB, std::vector<F>(NA));
  for (int x = 0; x < NA; ++x) {
    auto c = vec(columns[x]);
    ideal.reduce(c);
    for (int r = 0; r < NB; ++r) a[r][x] = c[r];
  }
  auto t = vec(target);
  ideal.reduce(t);
  TypeBOracle<F> out;
  out.unique = rank(a) == static_cast<size_t>(NA);
  auto sol = solve(a, t, NA);
  if (sol) out.coefficients = *sol;
  else out.unique = false;
  return out;
}

template TypeBOracle<Fp> hmTypeBOracle(int, const Fp&);
template TypeBOracle<Rational> hmTypeBOracle(int, const Rational&);

GeneralizedHu generalizedHu(int m, int d) {
  if (m < 1 || d < 2 || m * d > 8) throw std::out_of_range("generalized Hu algebra needs m >= 1, d >= 2, md <= 8");
  GeneralizedHu out;
  out.m = m;
  out.d = d;
  out.algebra = symbolicHeckeA(m * d);
  HElem base = H1Element(m);
  for (int j = 0; j + 1 < d; ++j) out.H.push_back(shiftElement(base, out.algebra, j * m));
  for (int i = 0; i + 2 < d; ++i) {
    const HElem &a = out.H[i], &b = out.H[i + 1];
    out.braidDefects.push_back(a * b * a - b * a * b);
  }
  if (m == 1) {
    Scalar qm1 = out.algebra->q() - Scalar(1);
    bool ok = true;
    for (int i = 0; i + 2 < d; ++i) ok = ok && out.braidDefects[i] == (qm1 * qm1) * (out.H[i + 1] - out.H[i]);
    out.modifiedBraidHolds = ok;
  }
  return out;
}

}  // namespace qw
