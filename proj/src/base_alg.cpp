#include "qwreath/base_alg.hpp"

#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "qwreath/hecke_algebra.hpp"
#include "qwreath/perm.hpp"

namespace qw {

int defaultWindow() {
  if (const char* env = std::getenv("QWREATH_WINDOW")) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0 && n < 10000) return static_cast<int>(n);
    throw std::invalid_argument("QWREATH_WINDOW must be a positive integer");
  }
  return 16;
}

BaseAlgebra::BaseAlgebra(std::string kind, Domain d, int dimOrWindow, int unit)
    : kind_(std::move(kind)), domain_(d), size_(dimOrWindow), unit_(unit) {
  if (d == Domain::finite) {
    if (dimOrWindow < 1) throw std::invalid_argument("base algebra dimension must be positive");
  } else {
    if (dimOrWindow < 1) throw std::invalid_argument("window must be positive");
    window_ = dimOrWindow;
  }
}

int BaseAlgebra::dimension() const {
  if (!finite()) throw std::logic_error(kind_ + " is infinite-dimensional");
  return size_;
}

bool BaseAlgebra::contains(int i) const {
  switch (domain_) {
    case Domain::finite: return i >= 0 && i < size_;
    case Domain::laurent: return i >= -window_ && i <= window_;
    case Domain::polynomial: return i >= 0 && i <= window_;
  }
  return false;
}

void BaseAlgebra::require(int i) const {
  if (contains(i)) return;
  if (finite()) throw std::out_of_range(kind_ + ": basis index " + std::to_string(i) + " out of range");
  throw WindowOverflow(kind_ + ": exponent " + std::to_string(i) + " leaves the window [" +
                       std::to_string(domain_ == Domain::laurent ? -window_ : 0) + ", " + std::to_string(window_) +
                       "]");
}

std::vector<int> BaseAlgebra::basisWithin(int radius) const {
  std::vector<int> r;
  switch (domain_) {
    case Domain::finite:
      for (int i = 0; i < size_; ++i) r.push_back(i);
      break;
    case Domain::laurent:
      radius = std::min(radius, window_);
      for (int e = -radius; e <= radius; ++e) r.push_back(e);
      break;
    case Domain::polynomial:
      radius = std::min(radius, window_);
      for (int e = 0; e <= radius; ++e) r.push_back(e);
      break;
  }
  return r;
}

std::vector<int> BaseAlgebra::generators() const {
  switch (domain_) {
    case Domain::laurent: return {1, -1};
    case Domain::polynomial: return {1};
    default: return basis();
  }
}

BaseElement BaseAlgebra::mul(const BaseElement& x, const BaseElement& y) const {
  BaseElement r;
  for (auto& [i, a] : x)
    for (auto& [j, b] : y) r.addScaled(mulBasis(i, j), a * b);
  return r;
}

Scalar BaseAlgebra::counit(const BaseElement& x) const {
  Scalar r;
  for (auto& [i, c] : x) {
    auto e = counitOf(i);
    if (!e) throw UndeclaredFunctional(kind_ + " declares no counit");
    r += c * *e;
  }
  return r;
}

Scalar BaseAlgebra::trace(const BaseElement& x) const {
  Scalar r;
  for (auto& [i, c] : x) {
    auto t = traceOf(i);
    if (!t) throw UndeclaredFunctional(kind_ + " declares no trace");
    r += c * *t;
  }
  return r;
}

int BaseAlgebra::parseLabel(std::string_view text) const {
  for (int i : basis())
    if (label(i) == text) return i;
  throw ParseError("unknown basis label '" + std::string(text) + "' for " + kind_);
}

std::string BaseAlgebra::str(const BaseElement& x) const {
  std::vector<std::pair<Scalar, std::string>> terms;
  for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it)
    terms.emplace_back(it->second, it->first == unit_ ? "" : label(it->first));
  return joinTerms(terms);
}

namespace {

std::string powerLabel(const char* symbol, int e) {
  if (e == 0) return "1";
  if (e == 1) return symbol;
  return std::string(symbol) + "^" + std::to_string(e);
}

int parsePowerLabel(std::string_view text, char symbol) {
  if (text == "1") return 0;
  if (text.empty() || text[0] != symbol) throw ParseError("bad monomial '" + std::string(text) + "'");
  if (text.size() == 1) return 1;
  if (text[1] != '^') throw ParseError("bad monomial '" + std::string(text) + "'");
  try {
    size_t used = 0;
    int e = std::stoi(std::string(text.substr(2)), &used);
    if (used != text.size() - 2) throw ParseError("bad exponent");
    return e;
  } catch (const std::logic_error&) {
    throw ParseError("bad exponent in '" + std::string(text) + "'");
  }
}

class MonomialAlgebra final : public BaseAlgebra {
 public:
  MonomialAlgebra(bool laurent, int window)
      : BaseAlgebra(laurent ? "laurent_ring" : "poly_ring", laurent ? Domain::laurent : Domain::polynomial, window, 0) {}
  BaseElement mulBasis(int i, int j) const override {
    require(i);
    require(j);
    require(i + j);
    return BaseElement::term(i + j);
  }
  std::optional<Scalar> counitOf(int) const override { return Scalar(1); }
  std::string label(int i) const override { return powerLabel("X", i); }
  int parseLabel(std::string_view text) const override {
    int e = parsePowerLabel(text, 'X');
    require(e);
    return e;
  }
};

class CyclotomicAlgebra final : public BaseAlgebra {
 public:
  explicit CyclotomicAlgebra(std::vector<Scalar> params)
      : BaseAlgebra("cyclotomic_quotient", Domain::finite, static_cast<int>(params.size()), 0) {
    int m = static_cast<int>(params.size());
    // X^m = Σ_k c_k X^k from ∏(X - q_i) = 0.
    std::vector<Scalar> poly{Scalar(1)};  // coefficients of ∏(X - q_i), low degree first
    for (auto& p : params) {
      std::vector<Scalar> next(poly.size() + 1);
      for (size_t k = 0; k < poly.size(); ++k) {
        next[k + 1] += poly[k];
        next[k] -= p * poly[k];
      }
      poly = std::move(next);
    }
    // Reduced forms of X^e for e < 2m - 1.
    powers_.resize(2 * m);
    for (int e = 0; e < 2 * m; ++e) {
      if (e < m) {
        powers_[e] = BaseElement::term(e);
        continue;
      }
      BaseElement prev = powers_[e - 1], r;
      for (auto& [k, c] : prev) {
        if (k + 1 < m) {
          r.add(k + 1, c);
        } else {
          for (int j = 0; j < m; ++j) r.add(j, -c * poly[j]);
        }
      }
      powers_[e] = r;
    }
  }
  BaseElement mulBasis(int i, int j) const override {
    require(i);
    require(j);
    return powers_[i + j];
  }
  std::string label(int i) const override { return powerLabel("X", i); }

 private:
  std::vector<BaseElement> powers_;
};

class CyclicGroupAlgebra final : public BaseAlgebra {
 public:
  explicit CyclicGroupAlgebra(int m) : BaseAlgebra(m == 1 ? "ground" : "group_algebra_cyclic", Domain::finite, m, 0) {}
  BaseElement mulBasis(int i, int j) const override {
    require(i);
    require(j);
    return BaseElement::term((i + j) % size_);
  }
  std::optional<Scalar> counitOf(int) const override { return Scalar(1); }
  std::optional<Scalar> traceOf(int i) const override { return Scalar(i == 0 ? 1 : 0); }
  std::string label(int i) const override { return powerLabel("x", i); }
};

class HeckeBase final : public BaseAlgebra {
 public:
  HeckeBase(int m, bool sqrtV) : BaseAlgebra("hecke_symmetric", Domain::finite, 1, 0) {
    alg_ = sqrtV ? symbolicHeckeA(m) : symbolicHeckeAq(m);
    const auto& g = alg_->group();
    size_ = g.size();
    q_ = alg_->q();
    table_.assign(size_, std::vector<BaseElement>(size_));
    for (int x = 0; x < size_; ++x) {
      auto tx = HElem::T(alg_, x);
      for (int y = 0; y < size_; ++y) {
        auto p = tx * HElem::T(alg_, y);
        for (int w : p.support()) table_[x][y].add(w, p.coefT(w));
      }
    }
  }
  BaseElement mulBasis(int i, int j) const override {
    require(i);
    require(j);
    return table_[i][j];
  }
  std::optional<Scalar> counitOf(int i) const override { return q_.pow(alg_->group().length(i)); }
  std::optional<Scalar> traceOf(int i) const override { return Scalar(i == 0 ? 1 : 0); }
  std::string label(int i) const override {
    if (i == 0) return "1";
    std::string s = "T[";
    const auto& w = alg_->group().word(i);
    for (size_t k = 0; k < w.size(); ++k) s += (k ? " s" : "s") + std::to_string(w[k]);
    return s + "]";
  }

 private:
  HeckeAlgebraPtr<Scalar> alg_;
  Scalar q_;
  std::vector<std::vector<BaseElement>> table_;
};

class TableAlgebra final : public BaseAlgebra {
 public:
  TableAlgebra(StructureData data, std::string kind)
      : BaseAlgebra(std::move(kind), Domain::finite, data.dim, data.unit), d_(std::move(data)) {
    int n = d_.dim;
    if (d_.unit < 0 || d_.unit >= n) throw std::invalid_argument("structure constants: unit index out of range");
    if (static_cast<int>(d_.table.size()) != n) throw std::invalid_argument("structure constants: table has wrong size");
    for (auto& row : d_.table) {
      if (static_cast<int>(row.size()) != n) throw std::invalid_argument("structure constants: table has wrong size");
      for (auto& e : row)
        for (auto& [k, c] : e)
          if (k < 0 || k >= n) throw std::invalid_argument("structure constants: product index out of range");
    }
    if (d_.counit && static_cast<int>(d_.counit->size()) != n) throw std::invalid_argument("counit has wrong length");
    if (d_.trace && static_cast<int>(d_.trace->size()) != n) throw std::invalid_argument("trace has wrong length");
    for (int i = 0; i < n; ++i)
      if (d_.table[d_.unit][i] != BaseElement::term(i) || d_.table[i][d_.unit] != BaseElement::term(i))
        throw std::invalid_argument("structure constants: basis element " + std::to_string(unit_) +
                                    " is not a two-sided unit (fails at " + std::to_string(i) + ")");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (mul(d_.table[i][j], BaseElement::term(k)) != mul(BaseElement::term(i), d_.table[j][k]))
            throw std::invalid_argument("structure constants are not associative at (" + std::to_string(i) + ", " +
                                        std::to_string(j) + ", " + std::to_string(k) + ")");
  }
  BaseElement mulBasis(int i, int j) const override {
    require(i);
    require(j);
    return d_.table[i][j];
  }
  std::optional<Scalar> counitOf(int i) const override {
    if (!d_.counit) return std::nullopt;
    return (*d_.counit)[i];
  }
  std::optional<Scalar> traceOf(int i) const override {
    if (!d_.trace) return std::nullopt;
    return (*d_.trace)[i];
  }
  std::string label(int i) const override {
    if (i < static_cast<int>(d_.labels.size())) return d_.labels[i];
    return i == unit_ ? "1" : "b" + std::to_string(i);
  }

 private:
  StructureData d_;
};

}  // namespace

BaseAlgebraPtr laurentRing(int window) { return std::make_shared<MonomialAlgebra>(true, window); }
BaseAlgebraPtr polyRing(int window) { return std::make_shared<MonomialAlgebra>(false, window); }
BaseAlgebraPtr cyclotomicQuotient(const std::vector<Scalar>& params) {
  if (params.empty()) throw std::invalid_argument("cyclotomic quotient needs m >= 1 parameters");
  for (size_t i = 0; i < params.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (params[i] == params[j]) throw std::invalid_argument("cyclotomic parameters must be distinct");
  return std::make_shared<CyclotomicAlgebra>(params);
}
BaseAlgebraPtr cyclotomicQuotient(int m) {
  std::vector<Scalar> ps;
  for (int i = 1; i <= m; ++i) ps.push_back(Scalar::variable("q" + std::to_string(i)));
  return cyclotomicQuotient(ps);
}
BaseAlgebraPtr groupAlgebraCyclic(int m) {
  if (m < 1) throw std::invalid_argument("cyclic group order must be positive");
  return std::make_shared<CyclicGroupAlgebra>(m);
}
BaseAlgebraPtr heckeSymmetric(int m, bool sqrtV) {
  if (m < 1 || m > 5) throw std::invalid_argument("hecke_symmetric supports 1 <= m <= 5");
  return std::make_shared<HeckeBase>(m, sqrtV);
}
BaseAlgebraPtr groundRing() { return std::make_shared<CyclicGroupAlgebra>(1); }
BaseAlgebraPtr structureConstants(StructureData data, std::string kind) {
  return std::make_shared<TableAlgebra>(std::move(data), std::move(kind));
}

namespace {

// Inverse of a square matrix over the Laurent ring when every pivot met is a unit.
std::optional<std::vector<std::vector<Scalar>>> invertOverUnits(std::vector<std::vector<Scalar>> a) {
  size_t n = a.size();
  std::vector<std::vector<Scalar>> inv(n, std::vector<Scalar>(n));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    std::optional<Scalar> pivInv;
    for (; p < n; ++p) {
      if (a[p][c].isZero()) continue;
      pivInv = Scalar(1).tryDivide(a[p][c]);
      if (pivInv) break;
    }
    if (!pivInv) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    for (size_t k = 0; k < n; ++k) {
      a[c][k] = a[c][k] * *pivInv;
      inv[c][k] = inv[c][k] * *pivInv;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].isZero()) continue;
      Scalar f = a[r][c];
      for (size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

}  // namespace

std::optional<std::vector<BaseElement>> dualBasis(const BaseAlgebra& b) {
  if (!b.finite() || !b.hasTrace()) return std::nullopt;
  int n = b.dimension();
  std::vector<std::vector<Scalar>> gram(n, std::vector<Scalar>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram[i][j] = b.trace(b.mulBasis(i, j));
  auto inv = invertOverUnits(gram);
  if (!inv) return std::nullopt;
  // b_j^∨ = Σ_k D_kj b_k with D^T = G^{-1}.
  std::vector<BaseElement> dual(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) dual[j].add(k, (*inv)[j][k]);
  return dual;
}

Tensor casimir(const BaseAlgebra& b) {
  auto dual = dualBasis(b);
  if (!dual) throw std::invalid_argument(b.kind() + ": no dual basis (trace missing or degenerate)");
  Tensor r;
  for (int i = 0; i < b.dimension(); ++i)
    for (auto& [k, c] : (*dual)[i]) r.add({i, k}, c);
  return r;
}

BaseAlgebraPtr makeInstance(const std::string& jsonText) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(jsonText);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("instance description: ") + e.what());
  }
  std::string kind = j.value("kind", "");
  int window = j.value("window", defaultWindow());
  if (kind == "laurent_ring") return laurentRing(window);
  if (kind == "poly_ring") return polyRing(window);
  if (kind == "ground") return groundRing();
  if (kind == "group_algebra_cyclic") return groupAlgebraCyclic(j.at("m").get<int>());
  if (kind == "hecke_symmetric") return heckeSymmetric(j.at("m").get<int>(), j.value("sqrt", false));
  if (kind == "cyclotomic_quotient") {
    if (j.contains("params")) {
      std::vector<Scalar> ps;
      for (auto& p : j["params"]) ps.push_back(Scalar::parse(p.get<std::string>()));
      return cyclotomicQuotient(ps);
    }
    return cyclotomicQuotient(j.at("m").get<int>());
  }
  if (kind == "structure_constants") {
    StructureData d;
    d.dim = j.at("dim").get<int>();
    d.unit = j.value("unit", 0);
    d.table.assign(d.dim, std::vector<BaseElement>(d.dim));
    for (auto& entry : j.at("table")) {
      int a = entry.at(0).get<int>(), b = entry.at(1).get<int>();
      if (a < 0 || a >= d.dim || b < 0 || b >= d.dim) throw std::invalid_argument("table entry out of range");
      for (auto& t : entry.at(2)) {
        auto& c = t.at(1);
        d.table[a][b].add(t.at(0).get<int>(), c.is_string() ? Scalar::parse(c.get<std::string>()) : Scalar(c.get<int>()));
      }
    }
    if (j.contains("labels")) d.labels = j["labels"].get<std::vector<std::string>>();
    auto readVec = [&](const char* key) -> std::optional<std::vector<Scalar>> {
      if (!j.contains(key)) return std::nullopt;
      std::vector<Scalar> v;
      for (auto& c : j[key]) v.push_back(c.is_string() ? Scalar::parse(c.get<std::string>()) : Scalar(c.get<int>()));
      return v;
    };
    d.counit = readVec("counit");
    d.trace = readVec("trace");
    return structureConstants(std::move(d));
  }
  throw ParseError("unknown base algebra kind '" + kind + "'");
}

// ---- tensors

Tensor pureTensor(const TensorIndex& idx, const Scalar& c) { return Tensor::term(idx, c); }

Tensor unitTensor(const BaseAlgebra& b, int n) { return Tensor::term(TensorIndex(n, b.unitIndex())); }

Tensor tensorMul(const BaseAlgebra& b, const Tensor& x, const Tensor& y) {
  Tensor r;
  for (auto& [i, a] : x) {
    for (auto& [j, c] : y) {
      if (i.size() != j.size()) throw std::invalid_argument("tensor length mismatch");
      // Expand Π_k b_{i_k} b_{j_k} slot by slot.
      std::vector<std::pair<TensorIndex, Scalar>> partial{{TensorIndex{}, a * c}};
      for (size_t k = 0; k < i.size() && !partial.empty(); ++k) {
        BaseElement p = b.mulBasis(i[k], j[k]);
        std::vector<std::pair<TensorIndex, Scalar>> next;
        next.reserve(partial.size() * p.size());
        for (auto& [idx, coeff] : partial)
          for (auto& [e, pc] : p) {
            TensorIndex t = idx;
            t.push_back(e);
            next.emplace_back(std::move(t), coeff * pc);
          }
        partial = std::move(next);
      }
      for (auto& [idx, coeff] : partial) r.add(idx, coeff);
    }
  }
  return r;
}

Tensor embedPair(const BaseAlgebra& b, const Tensor& z, int i, int n) {
  if (i < 1 || i > n - 1) throw std::out_of_range("pair slot " + std::to_string(i) + " out of range for d=" + std::to_string(n));
  Tensor r;
  for (auto& [idx, c] : z) {
    if (idx.size() != 2) throw std::invalid_argument("embedPair expects an element of B⊗B");
    TensorIndex t(n, b.unitIndex());
    t[i - 1] = idx[0];
    t[i] = idx[1];
    r.add(t, c);
  }
  return r;
}

Tensor embedSingle(const BaseAlgebra& b, const BaseElement& x, int j, int n) {
  if (j < 1 || j > n) throw std::out_of_range("slot out of range");
  Tensor r;
  for (auto& [i, c] : x) {
    TensorIndex t(n, b.unitIndex());
    t[j - 1] = i;
    r.add(t, c);
  }
  return r;
}

Scalar tensorCounit(const BaseAlgebra& b, const Tensor& x) {
  Scalar r;
  for (auto& [idx, c] : x) {
    Scalar p = c;
    for (int i : idx) p = p * b.counit(BaseElement::term(i));
    r += p;
  }
  return r;
}

Scalar tensorTrace(const BaseAlgebra& b, const Tensor& x) {
  Scalar r;
  for (auto& [idx, c] : x) {
    Scalar p = c;
    for (int i : idx) p = p * b.trace(BaseElement::term(i));
    r += p;
  }
  return r;
}

Tensor flipPair(const Tensor& x) {
  Tensor r;
  for (auto& [idx, c] : x) r.add({idx.at(1), idx.at(0)}, c);
  return r;
}

std::string tensorIndexStr(const BaseAlgebra& b, const TensorIndex& idx) {
  bool allUnit = true;
  for (int i : idx) allUnit = allUnit && i == b.unitIndex();
  if (allUnit) return "";
  std::string s = "(";
  for (size_t k = 0; k < idx.size(); ++k) s += (k ? "⊗" : "") + b.label(idx[k]);
  return s + ")";
}

std::string tensorStr(const BaseAlgebra& b, const Tensor& x) {
  std::vector<std::pair<Scalar, std::string>> terms;
  for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) terms.emplace_back(it->second, tensorIndexStr(b, it->first));
  return joinTerms(terms);
}

Tensor demazure(int a, int b) {
  Tensor r;
  if (a == b) return r;
  int hi = std::max(a, b), lo = std::min(a, b), sign = a > b ? 1 : -1;
  for (int k = 0; k < hi - lo; ++k) r.add({lo + k, hi - 1 - k}, sign);
  return r;
}

Tensor demazure(const BaseAlgebra& b, const Tensor& x) {
  if (!b.monomial()) throw std::invalid_argument("the Demazure operator needs a monomial base");
  Tensor r;
  for (auto& [idx, c] : x) {
    b.require(idx.at(0));
    b.require(idx.at(1));
    for (auto& [k, dc] : demazure(idx[0], idx[1])) {
      b.require(k[0]);
      b.require(k[1]);
      r.add(k, c * dc);
    }
  }
  return r;
}

}  // namespace qw
