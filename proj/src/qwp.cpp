#include "qwreath/qwp.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <stdexcept>

#include "qwreath/hecke.hpp"

namespace qw {

// ---------------------------------------------------------------- parameters

namespace {

Tensor applyPairMap(const Tensor& x, const ParamChoice::PairMap& f) {
  Tensor out;
  for (auto& [k, c] : x) {
    if (k.size() != 2) throw std::invalid_argument("parameter maps act on B⊗B");
    out.addScaled(f(k[0], k[1]), c);
  }
  return out;
}

Tensor flipBasis(int a, int b) { return pureTensor({b, a}); }

}  // namespace

Tensor ParamChoice::applySigma(const Tensor& x) const { return applyPairMap(x, sigma); }

Tensor ParamChoice::applyRho(const Tensor& x) const {
  if (rhoIsZero) return {};
  return applyPairMap(x, rho);
}

Tensor ParamChoice::applySigmaInverse(const Tensor& x) const {
  if (!sigmaInverse) throw std::logic_error("inverse of sigma is not declared for '" + name + "'");
  return applyPairMap(x, sigmaInverse);
}

ParamChoice flipParams(std::string name, Tensor R, Tensor S) {
  ParamChoice q;
  q.name = std::move(name);
  q.R = std::move(R);
  q.S = std::move(S);
  q.sigma = flipBasis;
  q.sigmaInverse = flipBasis;
  q.rho = [](int, int) { return Tensor(); };
  q.sigmaIsFlip = true;
  q.rhoIsZero = true;
  return q;
}

ParamChoice demazureParams(std::string name, BaseAlgebraPtr base, Tensor R, Tensor S, Tensor beta) {
  if (!base->monomial()) throw std::invalid_argument("Demazure parameters need a monomial base");
  ParamChoice q = flipParams(std::move(name), std::move(R), std::move(S));
  q.rhoIsZero = false;
  q.demazureBeta = beta;
  q.rho = [base, beta](int a, int b) { return tensorMul(*base, demazure(*base, pureTensor({a, b})), beta); };
  return q;
}

// ---------------------------------------------------------------- instances

namespace {

Tensor scalarPair(const Scalar& c) { return pureTensor({0, 0}, c); }

}  // namespace

Tensor splitParabolic(const HElem& z, int m) {
  const auto& big = z.group();
  auto small = CoxeterGroup::typeA(m);
  Tensor out;
  for (int w : z.support()) {
    Word left, right;
    for (int s : big.word(w)) {
      if (s < m)
        left.push_back(s);
      else if (s > m)
        right.push_back(s - m);
      else
        throw std::logic_error("element does not lie in the parabolic subalgebra");
    }
    out.add({small->fromWord(left), small->fromWord(right)}, z.coefT(w));
  }
  return out;
}

Instance heckeInstance() {
  Scalar q = Scalar::q();
  auto base = groundRing();
  return {"hecke", base, flipParams("hecke", scalarPair(q), scalarPair(q - 1))};
}

Instance yokonumaInstance(int m) {
  auto base = groupAlgebraCyclic(m);
  Scalar z = Scalar::variable("z");
  std::string name = "yokonuma-" + std::to_string(m);
  return {name, base, flipParams(name, scalarPair(1), z * casimir(*base))};
}

Instance degenerateAffineInstance(int window) {
  auto base = polyRing(window);
  return {"degenerate", base, demazureParams("degenerate", base, scalarPair(1), Tensor(), scalarPair(-1))};
}

Instance nilHeckeInstance(int window) {
  auto base = polyRing(window);
  return {"nil-hecke", base, demazureParams("nil-hecke", base, Tensor(), Tensor(), scalarPair(-1))};
}

namespace {

Instance affineOn(std::string name, BaseAlgebraPtr base) {
  Scalar q = Scalar::q();
  Tensor beta = pureTensor({0, 1}, -(q - 1));
  return {name, base, demazureParams(name, base, scalarPair(q), scalarPair(q - 1), beta)};
}

}  // namespace

Instance affineInstance(int window) { return affineOn("affine", laurentRing(window)); }
Instance affinePolynomialInstance(int window) { return affineOn("affine-poly", polyRing(window)); }

Instance huInstance(int m) {
  auto base = heckeSymmetric(m, true);
  std::string name = "hu-" + std::to_string(m);
  return {name, base, flipParams(name, splitParabolic(zmm(m), m), Tensor())};
}

Instance cyclotomicNaiveInstance(int m) {
  auto base = cyclotomicQuotient(m);
  Scalar q = Scalar::q();
  auto power = [base](int e) {
    BaseElement x = base->one();
    for (int k = 0; k < e; ++k) x = base->mul(x, BaseElement::term(1));
    return x;
  };
  auto pushDown = [base, power](const Tensor& t) {
    Tensor out;
    for (auto& [k, c] : t) {
      BaseElement a = power(k[0]), b = power(k[1]);
      for (auto& [i, ci] : a)
        for (auto& [j, cj] : b) out.add({i, j}, c * ci * cj);
    }
    return out;
  };
  std::string name = "cyclotomic-naive-" + std::to_string(m);
  ParamChoice p = flipParams(name, scalarPair(q), scalarPair(q - 1));
  p.rhoIsZero = false;
  Tensor beta = pureTensor({0, 1}, -(q - 1));
  p.rho = [pushDown, beta](int a, int b) {
    Tensor raw;
    for (auto& [k, c] : demazure(a, b)) raw.add({k[0], k[1] + 1}, c * beta.coef({0, 1}));
    return pushDown(raw);
  };
  return {name, base, p};
}

std::vector<std::string> instanceNames() {
  return {"hecke", "yokonuma-2", "yokonuma-3", "degenerate", "nil-hecke", "affine", "affine-poly",
          "hu-1", "hu-2", "hu-3", "cyclotomic-naive-2"};
}

Instance namedInstance(const std::string& name, int window) {
  auto suffix = [&](const std::string& prefix) -> std::optional<int> {
    if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return std::nullopt;
    return std::stoi(name.substr(prefix.size()));
  };
  if (name == "hecke") return heckeInstance();
  if (name == "degenerate") return degenerateAffineInstance(window);
  if (name == "nil-hecke") return nilHeckeInstance(window);
  if (name == "affine") return affineInstance(window);
  if (name == "affine-poly") return affinePolynomialInstance(window);
  if (auto m = suffix("yokonuma-")) return yokonumaInstance(*m);
  if (auto m = suffix("hu-")) return huInstance(*m);
  if (name == "hu") return huInstance(2);
  if (auto m = suffix("cyclotomic-naive-")) return cyclotomicNaiveInstance(*m);
  throw std::invalid_argument("unknown instance '" + name + "'");
}

// ---------------------------------------------------------------- the algebra

QuantumWreathProduct::QuantumWreathProduct(BaseAlgebraPtr base, ParamChoice params, int d)
    : base_(std::move(base)), q_(std::move(params)), d_(d) {
  if (d < 1) throw std::invalid_argument("d must be at least 1");
  if (!q_.sigma || !q_.rho) throw std::invalid_argument("parameter choice needs sigma and rho");
  group_ = CoxeterGroup::typeA(d);
  for (int i = 1; i < d; ++i) {
    R_[i] = embedPair(*base_, q_.R, i, d);
    S_[i] = embedPair(*base_, q_.S, i, d);
  }
}

Tensor QuantumWreathProduct::applyLocal(int i, const Tensor& b, const ParamChoice::PairMap& f) const {
  if (i < 1 || i >= d_) throw std::out_of_range("generator index " + std::to_string(i) + " out of range");
  Tensor out;
  for (auto& [k, c] : b) {
    Tensor local = f(k[i - 1], k[i]);
    for (auto& [lk, lc] : local) {
      TensorIndex idx = k;
      idx[i - 1] = lk[0];
      idx[i] = lk[1];
      out.add(idx, c * lc);
    }
  }
  return out;
}

Tensor QuantumWreathProduct::sigmaAt(int i, const Tensor& b) const { return applyLocal(i, b, q_.sigma); }

Tensor QuantumWreathProduct::rhoAt(int i, const Tensor& b) const {
  if (q_.rhoIsZero) {
    if (i < 1 || i >= d_) throw std::out_of_range("generator index out of range");
    return {};
  }
  return applyLocal(i, b, q_.rho);
}

Tensor QuantumWreathProduct::sigmaInverseAt(int i, const Tensor& b) const {
  if (!q_.sigmaInverse) throw std::logic_error("inverse of sigma is not declared for '" + q_.name + "'");
  return applyLocal(i, b, q_.sigmaInverse);
}

Tensor QuantumWreathProduct::sigmaW(int w, const Tensor& b) const {
  const Word& word = group_->word(w);
  Tensor x = b;
  for (auto it = word.rbegin(); it != word.rend(); ++it) x = sigmaAt(*it, x);
  return x;
}

QwpElement QuantumWreathProduct::fromTensor(const Tensor& b, int w) const {
  QwpElement x;
  for (auto& [k, c] : b) {
    if (static_cast<int>(k.size()) != d_) throw std::invalid_argument("tensor has the wrong number of factors");
    for (int i : k) base_->require(i);
    x.terms.add({k, w}, c);
  }
  return x;
}

QwpElement QuantumWreathProduct::H(int i) const {
  if (i < 1 || i >= d_) throw std::out_of_range("generator index out of range");
  return fromTensor(unit(), group_->rmul(group_->identity(), i));
}

QwpElement QuantumWreathProduct::Hw(int w) const { return fromTensor(unit(), w); }

QwpElement QuantumWreathProduct::scalar(const Scalar& c) const { return fromTensor(c * unit()); }

QwpElement QuantumWreathProduct::X(int slot, int exponent) const {
  if (!base_->monomial()) throw std::logic_error("X is defined on monomial bases only");
  if (slot < 1 || slot > d_) throw std::out_of_range("slot out of range");
  TensorIndex idx(d_, 0);
  idx[slot - 1] = exponent;
  return fromTensor(pureTensor(idx));
}

QwpElement QuantumWreathProduct::add(const QwpElement& x, const QwpElement& y) const {
  QwpElement a = toRightForm(x), b = toRightForm(y);
  a.terms += b.terms;
  return a;
}

QwpElement QuantumWreathProduct::scale(const Scalar& c, const QwpElement& x) const {
  QwpElement r;
  r.form = x.form;
  r.terms = c * x.terms;
  return r;
}

const QwpTerms& QuantumWreathProduct::leftMulHTerm(int i, const TensorIndex& b, int w) const {
  auto key = std::make_tuple(i, b, w);
  {
    std::lock_guard lock(cacheMu_);
    auto it = leftCache_.find(key);
    if (it != leftCache_.end()) return it->second;
  }
  // H_i b H_w = σ_i(b) H_i H_w + ρ_i(b) H_w
  Tensor c = pureTensor(b);
  Tensor sc = sigmaAt(i, c), rc = rhoAt(i, c);
  QwpTerms out;
  int up = group_->lmul(i, w);
  auto put = [&](const Tensor& t, int v) {
    for (auto& [k, x] : t) out.add({k, v}, x);
  };
  if (group_->length(up) > group_->length(w)) {
    put(sc, up);
  } else {
    // H_i H_w = S_i H_w + R_i H_{s_i w}
    put(mulTensor(sc, S_.at(i)), w);
    put(mulTensor(sc, R_.at(i)), up);
  }
  put(rc, w);
  std::lock_guard lock(cacheMu_);
  return leftCache_.try_emplace(key, std::move(out)).first->second;
}

QwpElement QuantumWreathProduct::leftMulH(int i, const QwpElement& x) const {
  QwpElement r;
  for (auto& [k, c] : toRightForm(x).terms) r.terms.addScaled(leftMulHTerm(i, k.first, k.second), c);
  return r;
}

QwpElement QuantumWreathProduct::multiply(const QwpElement& xIn, const QwpElement& yIn) const {
  QwpElement x = toRightForm(xIn), y = toRightForm(yIn);
  std::map<int, Tensor> byPerm;
  for (auto& [k, c] : x.terms) byPerm[k.second].add(k.first, c);
  QwpElement out;
  for (auto& [w, a] : byPerm) {
    QwpElement z = y;
    const Word& word = group_->word(w);
    for (auto it = word.rbegin(); it != word.rend(); ++it) z = leftMulH(*it, z);
    for (auto& [k, c] : z.terms) {
      Tensor prod = mulTensor(a, pureTensor(k.first, c));
      for (auto& [pk, pc] : prod) out.terms.add({pk, k.second}, pc);
    }
  }
  return out;
}

QwpElement QuantumWreathProduct::rightMulH(const QwpElement& x, int i) const { return multiply(x, H(i)); }

QwpTerms QuantumWreathProduct::rightMulHLeft(const TensorIndex& b, int u, int i, int) const {
  // H_u b H_i with b H_i = H_i σ^{-1}(b) - ρ(σ^{-1}(b))
  QwpTerms out;
  auto put = [&](int v, const Tensor& t, const Scalar& sign) {
    for (auto& [k, c] : t) out.add({k, v}, sign * c);
  };
  Tensor c = sigmaInverseAt(i, pureTensor(b));
  put(u, rhoAt(i, c), -1);
  int us = group_->rmul(u, i);
  if (group_->length(us) > group_->length(u)) {
    put(us, c, 1);
  } else {
    // H_u H_i = H_{us}(S_i H_i + R_i) and S_i H_i = H_i σ^{-1}(S_i) - ρ(σ^{-1}(S_i))
    Tensor sInv = sigmaInverseAt(i, S_.at(i));
    put(u, mulTensor(sInv, c), 1);
    put(us, mulTensor(rhoAt(i, sInv), c), -1);
    put(us, mulTensor(R_.at(i), c), 1);
  }
  return out;
}

QwpElement QuantumWreathProduct::toLeftForm(const QwpElement& x) const {
  if (x.form == Form::left) return x;
  QwpElement out;
  out.form = Form::left;
  for (auto& [k, c] : x.terms) {
    QwpTerms cur = QwpTerms::term({k.first, group_->identity()}, c);
    for (int s : group_->word(k.second)) {
      QwpTerms next;
      for (auto& [lk, lc] : cur) next.addScaled(rightMulHLeft(lk.first, lk.second, s, 0), lc);
      cur = std::move(next);
    }
    out.terms += cur;
  }
  return out;
}

QwpElement QuantumWreathProduct::toRightForm(const QwpElement& x) const {
  if (x.form == Form::right) return x;
  QwpElement out;
  for (auto& [k, c] : x.terms) {
    QwpElement t = fromTensor(pureTensor(k.first, c));
    const Word& word = group_->word(k.second);
    for (auto it = word.rbegin(); it != word.rend(); ++it) t = leftMulH(*it, t);
    out.terms += t.terms;
  }
  return out;
}

Scalar QuantumWreathProduct::trace(const QwpElement& xIn) const {
  QwpElement x = toRightForm(xIn);
  Scalar t;
  for (auto& [k, c] : x.terms)
    if (k.second == group_->identity()) t += c * tensorTrace(*base_, pureTensor(k.first));
  return t;
}

Scalar QuantumWreathProduct::traceForm(const QwpElement& x, const QwpElement& y) const {
  if (auto obs = traceFormObstructions(); !obs.empty()) throw std::logic_error("trace form unavailable: " + obs.front());
  return trace(multiply(x, y));
}

std::vector<std::string> QuantumWreathProduct::traceFormObstructions() const {
  std::vector<std::string> out;
  if (!base_->hasTrace()) {
    out.push_back("base algebra has no declared trace");
    return out;
  }
  if (q_.R.isZero()) out.push_back("R is zero");
  if (!base_->finite()) return out;
  for (int a : base_->basis())
    for (int b : base_->basis()) {
      Tensor p = pureTensor({a, b});
      if (tensorTrace(*base_, q_.applySigma(p)) != tensorTrace(*base_, p)) {
        out.push_back("sigma does not preserve the trace at (" + base_->label(a) + "⊗" + base_->label(b) + ")");
        return out;
      }
      if (!q_.applyRho(p).isZero()) {
        out.push_back("rho is nonzero at (" + base_->label(a) + "⊗" + base_->label(b) + ")");
        return out;
      }
    }
  return out;
}

std::vector<QwpKey> QuantumWreathProduct::basisKeys(int radius) const {
  std::vector<int> idx = base_->finite() ? base_->basis() : base_->basisWithin(radius);
  std::vector<TensorIndex> tensors{{}};
  for (int s = 0; s < d_; ++s) {
    std::vector<TensorIndex> next;
    for (auto& t : tensors)
      for (int i : idx) {
        auto u = t;
        u.push_back(i);
        next.push_back(std::move(u));
      }
    tensors = std::move(next);
  }
  std::vector<QwpKey> out;
  for (int w = 0; w < group_->size(); ++w)
    for (auto& t : tensors) out.emplace_back(t, w);
  return out;
}

std::size_t QuantumWreathProduct::finiteDimension() const {
  if (!base_->finite()) throw std::logic_error("base algebra is infinite-dimensional");
  std::size_t n = 1;
  for (int s = 0; s < d_; ++s) n *= base_->dimension();
  return n * group_->size();
}

std::string QuantumWreathProduct::keyStr(const QwpKey& k, Form form) const {
  std::string t = tensorIndexStr(*base_, k.first);
  std::string h = k.second == group_->identity() ? "" : "H[" + wordStr(group_->word(k.second)) + "]";
  if (t.empty() || h.empty()) return t + h;
  return form == Form::right ? t + "*" + h : h + "*" + t;
}

std::string QuantumWreathProduct::str(const QwpElement& x) const {
  std::vector<std::pair<QwpKey, Scalar>> terms(x.terms.begin(), x.terms.end());
  std::stable_sort(terms.begin(), terms.end(), [&](auto& a, auto& b) {
    int la = group_->length(a.first.second), lb = group_->length(b.first.second);
    if (la != lb) return la > lb;
    if (a.first.second != b.first.second) return a.first.second < b.first.second;
    return a.first.first > b.first.first;
  });
  std::vector<std::pair<Scalar, std::string>> parts;
  for (auto& [k, c] : terms) parts.emplace_back(c, keyStr(k, x.form));
  return joinTerms(parts);
}

// ---------------------------------------------------------------- parser

namespace {

class ElementParser {
 public:
  ElementParser(const QuantumWreathProduct& A, std::string_view s) : A_(A), s_(s) {}

  QwpElement run() {
    QwpElement x = expr();
    skip();
    if (p_ != s_.size()) fail("unexpected '" + std::string(s_.substr(p_, 1)) + "'");
    return x;
  }

 private:
  const QuantumWreathProduct& A_;
  std::string_view s_;
  size_t p_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("element: " + msg + " at offset " + std::to_string(p_));
  }
  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool peek(char c) {
    skip();
    return p_ < s_.size() && s_[p_] == c;
  }
  bool startsFactor() {
    skip();
    if (p_ >= s_.size()) return false;
    char c = s_[p_];
    return c == '(' || std::isalnum(static_cast<unsigned char>(c));
  }

  QwpElement expr() {
    QwpElement x;
    bool first = true;
    while (true) {
      Scalar sign = 1;
      if (peek('-')) {
        ++p_;
        sign = -1;
      } else if (peek('+')) {
        ++p_;
      } else if (!first) {
        break;
      }
      QwpElement t = term();
      x = A_.add(x, A_.scale(sign, t));
      first = false;
      skip();
      if (p_ >= s_.size() || (s_[p_] != '+' && s_[p_] != '-')) break;
    }
    return x;
  }

  QwpElement term() {
    QwpElement x = factor();
    while (true) {
      if (peek('*')) {
        ++p_;
        x = A_.multiply(x, factor());
      } else if (startsFactor()) {
        x = A_.multiply(x, factor());
      } else {
        return x;
      }
    }
  }

  static bool hasTopLevelTensor(std::string_view body) {
    int depth = 0;
    for (size_t i = 0; i < body.size(); ++i) {
      char c = body[i];
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') --depth;
      if (depth == 0 && body.substr(i, 3) == "⊗") return true;
    }
    return false;
  }

  static std::string trim(std::string_view t) {
    size_t a = 0, b = t.size();
    while (a < b && std::isspace(static_cast<unsigned char>(t[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(t[b - 1]))) --b;
    return std::string(t.substr(a, b - a));
  }

  QwpElement tensorBody(std::string_view body) {
    TensorIndex idx;
    size_t start = 0;
    int depth = 0;
    for (size_t i = 0; i <= body.size(); ++i) {
      bool end = i == body.size();
      if (!end) {
        char c = body[i];
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
      }
      if (end || (depth == 0 && body.substr(i, 3) == "⊗")) {
        idx.push_back(A_.base().parseLabel(trim(body.substr(start, i - start))));
        if (!end) {
          i += 2;
          start = i + 1;
        }
      }
    }
    if (static_cast<int>(idx.size()) != A_.d()) fail("tensor needs " + std::to_string(A_.d()) + " factors");
    return A_.fromTensor(pureTensor(idx));
  }

  QwpElement factor() {
    skip();
    if (p_ >= s_.size()) fail("unexpected end");
    char c = s_[p_];
    if (c == '(') {
      size_t close = matching(p_, '(', ')');
      std::string_view body = s_.substr(p_ + 1, close - p_ - 1);
      p_ = close + 1;
      if (hasTopLevelTensor(body)) return tensorBody(body);
      if (A_.d() == 1) {
        try {
          return tensorBody(body);
        } catch (const std::exception&) {
        }
      }
      return ElementParser(A_, body).run();
    }
    if (c == 'H') {
      ++p_;
      if (p_ < s_.size() && s_[p_] == '[') {
        size_t close = matching(p_, '[', ']');
        std::string body = trim(s_.substr(p_ + 1, close - p_ - 1));
        p_ = close + 1;
        const auto& g = A_.group();
        if (!body.empty() && body[0] == '[') {
          Perm w = Perm::parse(body);
          if (w.size() != A_.d()) fail("permutation has the wrong size");
          return A_.Hw(g.indexOf(w));
        }
        Word word = parseWord(body);
        for (int s : word)
          if (!g.isGenerator(s)) fail("generator s" + std::to_string(s) + " out of range");
        return A_.Hw(g.fromWord(word));
      }
      size_t q = p_;
      while (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) ++q;
      if (q == p_) fail("expected generator index after H");
      int i = std::stoi(std::string(s_.substr(p_, q - p_)));
      p_ = q;
      return A_.H(i);
    }
    if (std::isalnum(static_cast<unsigned char>(c))) {
      size_t q = p_;
      while (q < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[q])) || s_[q] == '_')) ++q;
      if (q < s_.size() && s_[q] == '^') {
        ++q;
        if (q < s_.size() && s_[q] == '-') ++q;
        while (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) ++q;
      }
      std::string tok(s_.substr(p_, q - p_));
      p_ = q;
      return A_.scalar(Scalar::parse(tok));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  size_t matching(size_t open, char o, char c) const {
    int depth = 0;
    for (size_t i = open; i < s_.size(); ++i) {
      if (s_[i] == o) ++depth;
      if (s_[i] == c && --depth == 0) return i;
    }
    throw ParseError("element: unbalanced '" + std::string(1, o) + "'");
  }
};

}  // namespace

QwpElement QuantumWreathProduct::parse(std::string_view text) const { return ElementParser(*this, text).run(); }

template <class F>
std::map<QwpKey, F> specializeElement(const QwpElement& x, const Specialization& s) {
  std::map<QwpKey, F> out;
  for (auto& [k, c] : x.terms) {
    F v;
    if constexpr (std::is_same_v<F, Fp>)
      v = specializePrime(c, s);
    else
      v = specializeRational(c, s);
    if (!isZeroValue(v)) out.emplace(k, v);
  }
  return out;
}
template std::map<QwpKey, Fp> specializeElement<Fp>(const QwpElement&, const Specialization&);
template std::map<QwpKey, Rational> specializeElement<Rational>(const QwpElement&, const Specialization&);

// ---------------------------------------------------------------- augmentation quotient

namespace {

Lin<int> counitReduce(const QuantumWreathProduct& A, const QwpElement& x) {
  Lin<int> out;
  for (auto& [k, c] : x.terms) out.add(k.second, c * tensorCounit(A.base(), pureTensor(k.first)));
  return out;
}

std::vector<int> sampleBasis(const BaseAlgebra& B) { return B.finite() ? B.basis() : B.basisWithin(std::min(3, B.window() / 2)); }

}  // namespace

Lin<int> reduceThroughCounit(const QuantumWreathProduct& A, const QwpElement& x) {
  if (A.params().sigmaInverse) return counitReduce(A, A.toLeftForm(x));
  return counitReduce(A, A.toRightForm(x));
}

AugmentationQuotient quotientAugmentation(const QuantumWreathProduct& A, std::optional<Scalar> h) {
  const BaseAlgebra& B = A.base();
  if (!B.hasCounit()) throw UndeclaredFunctional("augmentation quotient needs a counit on " + B.kind());
  const auto& Q = A.params();
  AugmentationQuotient out;
  out.epsS = tensorCounit(B, Q.S);
  out.epsR = tensorCounit(B, Q.R);
  auto basis = sampleBasis(B);

  // h(ε(b) - εσ(b)) = ερ(b) on basis pairs, solving for h when it is not given.
  bool identity = true, scalarFlip = true;
  std::string why;
  for (int a : basis)
    for (int b : basis) {
      Tensor p = pureTensor({a, b});
      Tensor s = Q.applySigma(p);
      if (s.size() != 1 || s.begin()->first != TensorIndex{b, a}) scalarFlip = false;
      Scalar delta = tensorCounit(B, p) - tensorCounit(B, s), rho = tensorCounit(B, Q.applyRho(p));
      if (!h && !delta.isZero()) {
        h = rho.tryDivide(delta);
        if (!h) {
          identity = false;
          why = "no scalar h solves the augmentation identity";
        }
      }
      Scalar lhs = h ? *h * delta : Scalar();
      if (identity && lhs != rho) {
        identity = false;
        why = "augmentation identity fails at (" + B.label(a) + "⊗" + B.label(b) + ")";
      }
    }
  out.valid = identity && scalarFlip;
  if (!identity)
    out.note = why;
  else if (!scalarFlip)
    out.note = "sigma is not a scalar multiple of the flip";
  if (!out.valid) return out;

  const auto& g = A.group();
  out.dimension = g.size();
  out.quadraticHolds = true;
  for (int i = 1; i < A.d(); ++i) {
    Lin<int> lhs = reduceThroughCounit(A, A.multiply(A.H(i), A.H(i)));
    Lin<int> rhs;
    rhs.add(g.rmul(0, i), out.epsS);
    rhs.add(0, out.epsR);
    if (lhs != rhs) out.quadraticHolds = false;
  }
  // B^+ A = A B^+ on generators: both reductions of H_i b and b H_i agree.
  out.normal = true;
  for (int i = 1; i < A.d() && out.normal; ++i)
    for (auto& key : A.basisKeys(std::min(2, B.monomial() ? B.window() / 2 : 0))) {
      if (key.second != 0) continue;
      QwpElement b = A.fromTensor(pureTensor(key.first));
      for (const QwpElement& x : {A.multiply(A.H(i), b), A.multiply(b, A.H(i))})
        if (counitReduce(A, A.toRightForm(x)) != reduceThroughCounit(A, x)) out.normal = false;
    }
  if (!out.quadraticHolds) out.note = "quadratic relation does not descend";
  return out;
}

Lin<int> quotientMultiply(const QuantumWreathProduct& A, const Lin<int>& x, const Lin<int>& y) {
  QwpElement lx, ly;
  for (auto& [w, c] : x) lx.terms.addScaled(A.Hw(w).terms, c);
  for (auto& [w, c] : y) ly.terms.addScaled(A.Hw(w).terms, c);
  return reduceThroughCounit(A, A.multiply(lx, ly));
}

// ---------------------------------------------------------------- finite algebras over Fp

std::vector<Fp> FiniteAlgebraFp::basisVector(int a) const {
  std::vector<Fp> v(dim());
  v[a] = Fp(1);
  return v;
}

std::vector<Fp> FiniteAlgebraFp::mul(const std::vector<Fp>& x, const std::vector<Fp>& y) const {
  int n = dim();
  std::vector<Fp> out(n);
  for (int a = 0; a < n; ++a) {
    if (x[a].isZero()) continue;
    for (int b = 0; b < n; ++b) {
      if (y[b].isZero()) continue;
      Fp f = x[a] * y[b];
      const auto& row = table[a][b];
      for (int k = 0; k < n; ++k)
        if (!row[k].isZero()) out[k] += f * row[k];
    }
  }
  return out;
}

std::optional<std::array<int, 3>> FiniteAlgebraFp::associativityWitness() const {
  int n = dim();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const auto& ab = table[a][b];
      for (int c = 0; c < n; ++c) {
        std::vector<Fp> left(n), right = mul(basisVector(a), table[b][c]);
        for (int k = 0; k < n; ++k) {
          if (ab[k].isZero()) continue;
          for (int l = 0; l < n; ++l)
            if (!table[k][c][l].isZero()) left[l] += ab[k] * table[k][c][l];
        }
        if (left != right) return std::array<int, 3>{a, b, c};
      }
    }
  return std::nullopt;
}

// ---------------------------------------------------------------- Ariki–Koike quotient

namespace {

int degree(const TensorIndex& t) { return std::accumulate(t.begin(), t.end(), 0); }

std::vector<TensorIndex> monomialsUpTo(int d, int maxDeg) {
  std::vector<TensorIndex> out;
  TensorIndex cur(d, 0);
  std::function<void(int, int)> rec = [&](int slot, int left) {
    if (slot == d) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[slot] = e;
      rec(slot + 1, left - e);
    }
    cur[slot] = 0;
  };
  rec(0, maxDeg);
  return out;
}

}  // namespace

CyclotomicQuotient arikiKoikeQuotient(int m, int d, const Specialization& point) {
  if (m < 1 || d < 1 || d > 3) throw std::invalid_argument("Ariki-Koike quotient supports m >= 1 and d <= 3");
  CyclotomicQuotient out;
  out.m = m;
  out.d = d;
  out.degreeBound = 2 * d * (m - 1);
  const int D = out.degreeBound;
  const int slack = 3;
  auto inst = affinePolynomialInstance(D + slack + 2);
  auto A = std::make_shared<QuantumWreathProduct>(inst, d);
  const auto& g = A->group();

  // f(X^{(1)}) = ∏ (X^{(1)} - q_i)
  Tensor f = unitTensor(A->base(), d);
  for (int i = 1; i <= m; ++i) {
    TensorIndex x(d, 0);
    x[0] = 1;
    Tensor factor = pureTensor(x) - pureTensor(TensorIndex(d, 0), Scalar::variable("q" + std::to_string(i)));
    f = A->mulTensor(f, factor);
  }
  std::vector<QwpElement> cores;  // H_x f H_y
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < g.size(); ++y) cores.push_back(A->multiply(A->Hw(x), A->fromTensor(f, y)));

  auto isCandidate = [m](const TensorIndex& t) {
    return std::all_of(t.begin(), t.end(), [m](int e) { return e < m; });
  };

  for (int Dg = std::max(D, m); Dg <= D + slack; ++Dg) {
    // Columns: degree > D first, then the rest of V_D, then the candidate basis.
    std::vector<QwpKey> cols;
    auto monos = monomialsUpTo(d, Dg);
    for (int pass = 0; pass < 3; ++pass)
      for (auto& t : monos)
        for (int w = 0; w < g.size(); ++w) {
          int block = degree(t) > D ? 0 : isCandidate(t) ? 2 : 1;
          if (block == pass) cols.emplace_back(t, w);
        }
    std::map<QwpKey, size_t> colOf;
    for (size_t i = 0; i < cols.size(); ++i) colOf[cols[i]] = i;
    size_t firstLow = 0;
    while (firstLow < cols.size() && degree(cols[firstLow].first) > D) ++firstLow;

    auto toVector = [A, point, colOf = std::make_shared<const std::map<QwpKey, size_t>>(colOf)](
                        const QwpElement& x) -> std::optional<std::vector<Fp>> {
      std::vector<Fp> v(colOf->size());
      for (auto& [k, val] : specializeElement<Fp>(A->toRightForm(x), point)) {
        auto it = colOf->find(k);
        if (it == colOf->end()) return std::nullopt;
        v[it->second] += val;
      }
      return v;
    };

    auto ideal = std::make_shared<EchelonBasis<Fp>>(cols.size());
    for (auto& t : monomialsUpTo(d, Dg - m))
      for (auto& core : cores) {
        QwpElement row;
        for (auto& [k, c] : core.terms) {
          TensorIndex shifted = k.first;
          for (int s = 0; s < d; ++s) shifted[s] += t[s];
          row.terms.add({shifted, k.second}, c);
        }
        auto v = toVector(row);
        if (!v) throw std::logic_error("ideal generator exceeds the degree bound");
        ideal->add(std::move(*v));
      }

    // J ∩ V_D: reduced rows with no entries of degree > D.
    std::vector<bool> pivot(cols.size(), false);
    for (size_t c = 0; c < cols.size(); ++c) {
      std::vector<Fp> e(cols.size());
      e[c] = Fp(1);
      std::vector<Fp> r = e;
      ideal->reduce(r);
      pivot[c] = r[c].isZero();
    }
    size_t freeLow = 0, candidates = 0;
    bool candidatesFree = true;
    for (size_t c = firstLow; c < cols.size(); ++c) {
      if (!pivot[c]) ++freeLow;
      if (isCandidate(cols[c].first)) {
        ++candidates;
        if (pivot[c]) candidatesFree = false;
      }
    }
    size_t expected = 1;
    for (int s = 0; s < d; ++s) expected *= m;
    expected *= g.size();
    if (!(candidatesFree && freeLow == expected && candidates == expected)) continue;

    out.exact = true;
    out.generatorDegree = Dg;
    std::vector<size_t> candCols;
    for (size_t c = firstLow; c < cols.size(); ++c)
      if (isCandidate(cols[c].first)) {
        candCols.push_back(c);
        out.keys.push_back(cols[c]);
      }
    out.reduce = [toVector, ideal, candCols, firstLow](const QwpElement& x) -> std::optional<std::vector<Fp>> {
      auto v = toVector(x);
      if (!v) return std::nullopt;
      for (size_t c = 0; c < firstLow; ++c)
        if (!(*v)[c].isZero()) return std::nullopt;
      ideal->reduce(*v);
      std::vector<Fp> coords;
      std::set<size_t> cand(candCols.begin(), candCols.end());
      for (size_t c = 0; c < v->size(); ++c)
        if (!(*v)[c].isZero() && !cand.count(c)) return std::nullopt;
      for (size_t c : candCols) coords.push_back((*v)[c]);
      return coords;
    };

    auto& alg = out.algebra;
    for (auto& k : out.keys) alg.labels.push_back(A->keyStr(k, Form::right).empty() ? "1" : A->keyStr(k, Form::right));
    int n = static_cast<int>(out.keys.size());
    for (int a = 0; a < n; ++a)
      if (out.keys[a] == QwpKey{TensorIndex(d, 0), 0}) alg.unit = a;
    alg.table.assign(n, std::vector<std::vector<Fp>>(n));
    for (int a = 0; a < n; ++a) {
      QwpElement ea = A->fromTensor(pureTensor(out.keys[a].first), out.keys[a].second);
      for (int b = 0; b < n; ++b) {
        QwpElement eb = A->fromTensor(pureTensor(out.keys[b].first), out.keys[b].second);
        auto r = out.reduce(A->multiply(ea, eb));
        if (!r) throw std::logic_error("product left the truncated quotient");
        alg.table[a][b] = std::move(*r);
      }
    }
    return out;
  }
  return out;
}

// ---------------------------------------------------------------- Hu isomorphism

HuIsoReport huIsoToQwp(int m) {
  if (m < 1 || m > 3) throw std::invalid_argument("Hu isomorphism check supports 1 <= m <= 3");
  HuIsoReport rep;
  rep.m = m;
  QuantumWreathProduct A(huInstance(m), 2);
  rep.dimQwp = A.finiteDimension();
  rep.dimHu = huBases(m).standard.size();

  auto alg = huAmbient(m);
  const auto& big = alg->group();
  auto small = CoxeterGroup::typeA(m);
  HElem h1 = H1Element(m);
  auto shifted = [&](int w, int offset) {
    Word word = small->word(w);
    for (int& s : word) s += offset;
    return HElem::T(alg, big.fromWord(word));
  };
  QwpElement H = A.H(1);

  rep.wreathRelations = true;
  for (int x = 0; x < small->size(); ++x)
    for (int y = 0; y < small->size(); ++y) {
      HElem lhs = h1 * shifted(x, 0) * shifted(y, m), rhs = shifted(y, 0) * shifted(x, m) * h1;
      if (!(lhs - rhs).isZero()) {
        rep.wreathRelations = false;
        rep.failures.push_back("Hu side: H1 T_x T_y' != T_y T_x' H1 at x=" + std::to_string(x) + ", y=" + std::to_string(y));
      }
      QwpElement ql = A.multiply(H, A.fromTensor(pureTensor({x, y})));
      QwpElement qr = A.fromTensor(pureTensor({y, x}), 1);
      if (!(ql == qr)) {
        rep.wreathRelations = false;
        rep.failures.push_back("wreath side: H1 (T_x⊗T_y) != (T_y⊗T_x) H1");
      }
    }

  HElem z = zmm(m);
  bool huQuad = (h1 * h1 - z).isZero();
  bool qwpQuad = A.multiply(H, H) == A.fromTensor(splitParabolic(z, m));
  rep.quadratic = huQuad && qwpQuad;
  if (!huQuad) rep.failures.push_back("Hu side: H1^2 != z");
  if (!qwpQuad) rep.failures.push_back("wreath side: H1^2 != image of z");

  rep.parabolicProducts = true;
  auto parabolic = parabolicElements(m);
  for (int u : parabolic)
    for (int s = 1; s < 2 * m; ++s) {
      if (s == m) continue;
      HElem prod = HElem::T(alg, u).timesT(s);
      Tensor img = A.mulTensor(splitParabolic(HElem::T(alg, u), m), splitParabolic(HElem::T(alg, big.fromWord({s})), m));
      if (!(splitParabolic(prod, m) == img)) {
        rep.parabolicProducts = false;
        rep.failures.push_back("parabolic product mismatch");
      }
    }
  return rep;
}

}  // namespace qw
