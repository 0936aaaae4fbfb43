#pragma once

#include <functional>
#include <map>
#include <vector>

#include "qwreath/coeff.hpp"

namespace qw {

// Finite linear combination Σ c_k [k] with Scalar coefficients and no zero terms.
template <class K>
class Lin {
 public:
  using Map = std::map<K, Scalar>;

  Lin() = default;
  static Lin term(const K& k, const Scalar& c = Scalar(1)) {
    Lin x;
    x.add(k, c);
    return x;
  }

  void add(const K& k, const Scalar& c) {
    if (c.isZero()) return;
    auto [it, inserted] = m_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.isZero()) m_.erase(it);
    }
  }
  void addScaled(const Lin& o, const Scalar& c) {
    if (c.isZero()) return;
    for (auto& [k, x] : o.m_) add(k, c * x);
  }

  const Map& terms() const { return m_; }
  bool isZero() const { return m_.empty(); }
  std::size_t size() const { return m_.size(); }
  Scalar coef(const K& k) const {
    auto it = m_.find(k);
    return it == m_.end() ? Scalar() : it->second;
  }
  auto begin() const { return m_.begin(); }
  auto end() const { return m_.end(); }

  Lin& operator+=(const Lin& o) {
    for (auto& [k, c] : o.m_) add(k, c);
    return *this;
  }
  Lin& operator-=(const Lin& o) {
    for (auto& [k, c] : o.m_) add(k, -c);
    return *this;
  }
  friend Lin operator+(Lin a, const Lin& b) { return a += b; }
  friend Lin operator-(Lin a, const Lin& b) { return a -= b; }
  friend Lin operator-(Lin a) {
    for (auto& [k, c] : a.m_) c = -c;
    return a;
  }
  friend Lin operator*(const Scalar& s, const Lin& a) {
    Lin r;
    r.addScaled(a, s);
    return r;
  }
  friend bool operator==(const Lin& a, const Lin& b) = default;

  // Linear extension of a map on keys.
  template <class K2, class F>
  Lin<K2> mapTerms(F f) const {
    Lin<K2> r;
    for (auto& [k, c] : m_) r.addScaled(f(k), c);
    return r;
  }
  Lin mapCoefficients(const std::function<Scalar(const Scalar&)>& f) const {
    Lin r;
    for (auto& [k, c] : m_) r.add(k, f(c));
    return r;
  }

 private:
  Map m_;
};

}  // namespace qw
