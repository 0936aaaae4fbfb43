#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwreath/coeff.hpp"
#include "qwreath/perm.hpp"

namespace qw {

// Iwahori–Hecke algebra of a type A or B Coxeter group over a ring R.
// T_s^2 = (q_s - 1) T_s + q_s with q_0 = Q (type B) and q_s = q otherwise.
template <class R>
class HeckeAlgebra {
 public:
  HeckeAlgebra(std::shared_ptr<const CoxeterGroup> g, R q, R qInverse, R Q, R QInverse, std::optional<R> v = {},
               std::optional<R> vInverse = {})
      : group_(std::move(g)), q_(std::move(q)), qInv_(std::move(qInverse)), Q_(std::move(Q)), QInv_(std::move(QInverse)),
        v_(std::move(v)), vInv_(std::move(vInverse)) {
    qm1_ = q_ - R(1);
    Qm1_ = Q_ - R(1);
  }

  const CoxeterGroup& group() const { return *group_; }
  std::shared_ptr<const CoxeterGroup> groupPtr() const { return group_; }
  const R& param(int s) const { return s == 0 && group_->type() == CoxeterType::B ? Q_ : q_; }
  const R& paramMinusOne(int s) const { return s == 0 && group_->type() == CoxeterType::B ? Qm1_ : qm1_; }
  const R& paramInverse(int s) const { return s == 0 && group_->type() == CoxeterType::B ? QInv_ : qInv_; }
  const R& q() const { return q_; }
  bool hasV() const { return v_.has_value(); }
  const R& v() const {
    if (!v_) throw std::logic_error("Hecke algebra has no square root v of q");
    return *v_;
  }
  const R& vInverse() const {
    if (!vInv_) throw std::logic_error("Hecke algebra has no square root v of q");
    return *vInv_;
  }
  // v^k for any integer k.
  R vPower(int k) const {
    R base = k >= 0 ? v() : vInverse();
    R r(1);
    for (int i = 0; i < (k >= 0 ? k : -k); ++i) r = r * base;
    return r;
  }

 private:
  std::shared_ptr<const CoxeterGroup> group_;
  R q_, qInv_, Q_, QInv_, qm1_, Qm1_;
  std::optional<R> v_, vInv_;
};

template <class R>
using HeckeAlgebraPtr = std::shared_ptr<const HeckeAlgebra<R>>;

// Symbolic type A algebra over Z[v, v^-1] with q = v^2.
HeckeAlgebraPtr<Scalar> symbolicHeckeA(int n);
// Type B with parameters (Q, q) = (1, v^2).
HeckeAlgebraPtr<Scalar> symbolicHeckeB(int n);
// Type A over Z[q, q^-1] with no square root.
HeckeAlgebraPtr<Scalar> symbolicHeckeAq(int n);

// Element stored in the standard basis T_w as a dense coefficient vector.
template <class R>
class HeckeElement {
 public:
  HeckeElement() = default;
  explicit HeckeElement(HeckeAlgebraPtr<R> alg) : alg_(std::move(alg)), c_(alg_->group().size()) {}

  static HeckeElement scalar(HeckeAlgebraPtr<R> alg, const R& c) {
    HeckeElement x(std::move(alg));
    x.c_[0] = c;
    return x;
  }
  static HeckeElement one(HeckeAlgebraPtr<R> alg) { return scalar(std::move(alg), R(1)); }
  static HeckeElement T(HeckeAlgebraPtr<R> alg, int w) {
    HeckeElement x(std::move(alg));
    x.c_[w] = R(1);
    return x;
  }
  static HeckeElement I(HeckeAlgebraPtr<R> alg, int w) {
    R c = alg->vPower(-alg->group().length(w));
    HeckeElement x(std::move(alg));
    x.c_[w] = c;
    return x;
  }
  static HeckeElement TWord(HeckeAlgebraPtr<R> alg, const Word& w) {
    HeckeElement x = one(alg);
    for (int s : w) x = x.timesT(s);
    return x;
  }

  const HeckeAlgebra<R>& algebra() const { return *alg_; }
  HeckeAlgebraPtr<R> algebraPtr() const { return alg_; }
  const CoxeterGroup& group() const { return alg_->group(); }
  const std::vector<R>& coefficients() const { return c_; }
  const R& coefT(int w) const { return c_[w]; }
  R coefI(int w) const { return c_[w] * alg_->vPower(group().length(w)); }
  void addT(int w, const R& c) { c_[w] = c_[w] + c; }
  void addI(int w, const R& c) { c_[w] = c_[w] + c * alg_->vPower(-group().length(w)); }
  bool isZero() const {
    for (auto& x : c_)
      if (!isZeroValue(x)) return false;
    return true;
  }
  std::vector<int> support() const {
    std::vector<int> s;
    for (int i = 0; i < static_cast<int>(c_.size()); ++i)
      if (!isZeroValue(c_[i])) s.push_back(i);
    return s;
  }

  HeckeElement& operator+=(const HeckeElement& o) {
    check(o);
    for (size_t i = 0; i < c_.size(); ++i)
      if (!isZeroValue(o.c_[i])) c_[i] = c_[i] + o.c_[i];
    return *this;
  }
  HeckeElement& operator-=(const HeckeElement& o) {
    check(o);
    for (size_t i = 0; i < c_.size(); ++i)
      if (!isZeroValue(o.c_[i])) c_[i] = c_[i] - o.c_[i];
    return *this;
  }
  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
  friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }
  friend HeckeElement operator-(HeckeElement a) {
    for (auto& x : a.c_)
      if (!isZeroValue(x)) x = R(0) - x;
    return a;
  }
  friend HeckeElement operator*(const R& s, HeckeElement a) {
    for (auto& x : a.c_)
      if (!isZeroValue(x)) x = s * x;
    return a;
  }
  friend bool operator==(const HeckeElement& a, const HeckeElement& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }

  // x T_s
  HeckeElement timesT(int s) const {
    const auto& g = group();
    HeckeElement r(alg_);
    const R& p = alg_->param(s);
    const R& pm1 = alg_->paramMinusOne(s);
    for (int w = 0; w < static_cast<int>(c_.size()); ++w) {
      if (isZeroValue(c_[w])) continue;
      int ws = g.rmul(w, s);
      if (g.length(ws) > g.length(w)) {
        r.c_[ws] = r.c_[ws] + c_[w];
      } else {
        r.c_[w] = r.c_[w] + pm1 * c_[w];
        r.c_[ws] = r.c_[ws] + p * c_[w];
      }
    }
    return r;
  }
  // T_s x
  HeckeElement Ttimes(int s) const {
    const auto& g = group();
    HeckeElement r(alg_);
    const R& p = alg_->param(s);
    const R& pm1 = alg_->paramMinusOne(s);
    for (int w = 0; w < static_cast<int>(c_.size()); ++w) {
      if (isZeroValue(c_[w])) continue;
      int sw = g.lmul(s, w);
      if (g.length(sw) > g.length(w)) {
        r.c_[sw] = r.c_[sw] + c_[w];
      } else {
        r.c_[w] = r.c_[w] + pm1 * c_[w];
        r.c_[sw] = r.c_[sw] + p * c_[w];
      }
    }
    return r;
  }
  // x T_s^{-1}, using T_s^{-1} = q_s^{-1} T_s - (1 - q_s^{-1}).
  HeckeElement timesTInverse(int s) const {
    const R& pi = alg_->paramInverse(s);
    return pi * timesT(s) - (R(1) - pi) * (*this);
  }
  HeckeElement TInverseTimes(int s) const {
    const R& pi = alg_->paramInverse(s);
    return pi * Ttimes(s) - (R(1) - pi) * (*this);
  }
  // Multiplication by I_s = v^{-1} T_s and I_s^{-1} = I_s - (v - v^{-1}).
  HeckeElement timesI(int s) const { return alg_->vInverse() * timesT(s); }
  HeckeElement Itimes(int s) const { return alg_->vInverse() * Ttimes(s); }
  HeckeElement timesIInverse(int s) const { return timesI(s) - (alg_->v() - alg_->vInverse()) * (*this); }
  HeckeElement IInverseTimes(int s) const { return Itimes(s) - (alg_->v() - alg_->vInverse()) * (*this); }

  friend HeckeElement operator*(const HeckeElement& x, const HeckeElement& y) {
    x.check(y);
    const auto& g = x.group();
    auto nz = y.support();
    HeckeElement r(x.alg_);
    if (nz.empty()) return r;
    if (nz.size() == 1) {
      HeckeElement t = x;
      for (int s : g.word(nz[0])) t = t.timesT(s);
      return y.c_[nz[0]] * t;
    }
    // Depth-first walk of the reduced-word tree, visiting only subtrees
    // that contain support of y: x T_w = (x T_{parent(w)}) T_{last letter}.
    int N = g.size();
    std::vector<char> needed(N, 0);
    for (int w : nz) needed[w] = 1;
    for (int w = N - 1; w > 0; --w)
      if (needed[w]) needed[g.parent(w)] = 1;
    std::vector<std::pair<int, HeckeElement>> stack;
    stack.emplace_back(0, x);
    while (!stack.empty()) {
      auto [w, xw] = std::move(stack.back());
      stack.pop_back();
      if (!isZeroValue(y.c_[w])) r += y.c_[w] * xw;
      for (int c : g.children(w))
        if (needed[c]) stack.emplace_back(c, xw.timesT(g.lastLetter(c)));
    }
    return r;
  }

  // Anti-automorphism T_w -> T_{w^{-1}}.
  HeckeElement star() const {
    HeckeElement r(alg_);
    for (int w = 0; w < static_cast<int>(c_.size()); ++w)
      if (!isZeroValue(c_[w])) r.c_[group().inverse(w)] = c_[w];
    return r;
  }

  template <class S, class F>
  HeckeElement<S> mapCoefficients(HeckeAlgebraPtr<S> target, F f) const {
    if (target->group().size() != group().size()) throw std::invalid_argument("group mismatch in coefficient map");
    HeckeElement<S> r(target);
    for (int w = 0; w < static_cast<int>(c_.size()); ++w)
      if (!isZeroValue(c_[w])) r.addT(w, f(c_[w]));
    return r;
  }

 private:
  HeckeAlgebraPtr<R> alg_;
  std::vector<R> c_;

  void check(const HeckeElement& o) const {
    if (alg_->group().size() != o.alg_->group().size() || &alg_->group() != &o.alg_->group())
      throw std::invalid_argument("Hecke elements from different algebras");
  }
};

using HElem = HeckeElement<Scalar>;

// Product of I_s^{±1} along a signed word; printed as I[2.1.~3.~2].
struct IWord {
  std::vector<std::pair<int, bool>> letters;  // (generator, inverted)

  static IWord plain(const Word& w);
  static IWord inverted(const Word& w);  // each letter inverted, same order
  static IWord parse(std::string_view text);
  IWord operator+(const IWord& o) const;
  IWord shifted(int offset) const;
  IWord reversed() const;                 // image under the star anti-automorphism
  std::string str() const;
  template <class R>
  HeckeElement<R> evaluate(HeckeAlgebraPtr<R> alg) const {
    HeckeElement<R> x = HeckeElement<R>::one(alg);
    for (auto [s, inv] : letters) x = inv ? x.timesIInverse(s) : x.timesI(s);
    return x;
  }
};

// Embedding of H(Σ_m) into H(Σ_n) induced by s_i -> s_{i+offset}.
template <class R>
HeckeElement<R> shiftElement(const HeckeElement<R>& x, HeckeAlgebraPtr<R> target, int offset) {
  const auto& g = x.group();
  HeckeElement<R> r(target);
  for (int w : x.support()) {
    Word word = g.word(w);
    for (int& s : word) s += offset;
    r.addT(target->group().fromWord(word), x.coefT(w));
  }
  return r;
}

HElem bar(const HElem& x);
// Printers: terms ordered by decreasing length; e.g. "2*T[s1] + (1 - q)".
std::string strT(const HElem& x, const std::string& symbol = "T");
std::string strI(const HElem& x);

}  // namespace qw
