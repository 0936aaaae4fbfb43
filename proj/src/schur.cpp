#include "qwreath/schur.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qwreath/hecke.hpp"

namespace qw {

// ---------------------------------------------------------------- sparse matrices

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n);
  for (std::size_t a = 0; a < n; ++a) m.rows_[a] = {{static_cast<int>(a), Fp(1)}};
  return m;
}

void SparseMatrix::setRow(std::size_t a, Row r) {
  std::sort(r.begin(), r.end(), [](auto& x, auto& y) { return x.first < y.first; });
  Row out;
  for (auto& [c, x] : r) {
    if (!out.empty() && out.back().first == c)
      out.back().second += x;
    else
      out.emplace_back(c, x);
    if (out.back().second.isZero()) out.pop_back();
  }
  rows_[a] = std::move(out);
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t k = 0;
  for (auto& r : rows_) k += r.size();
  return k;
}

bool SparseMatrix::isZero() const { return nonzeros() == 0; }

SparseMatrix operator*(const SparseMatrix& x, const SparseMatrix& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("matrix size mismatch");
  std::size_t n = x.dim();
  SparseMatrix out(n);
  std::vector<Fp> acc(n);
  std::vector<char> seen(n, 0);
  std::vector<int> touched;
  for (std::size_t a = 0; a < n; ++a) {
    touched.clear();
    for (auto& [b, xb] : x.rows_[a])
      for (auto& [c, yc] : y.rows_[b]) {
        if (!seen[c]) {
          seen[c] = 1;
          touched.push_back(c);
        }
        acc[c] += xb * yc;
      }
    std::sort(touched.begin(), touched.end());
    SparseMatrix::Row r;
    for (int c : touched) {
      if (!acc[c].isZero()) r.emplace_back(c, acc[c]);
      acc[c] = Fp(0);
      seen[c] = 0;
    }
    out.rows_[a] = std::move(r);
  }
  return out;
}

static SparseMatrix combine(const SparseMatrix& x, const SparseMatrix& y, Fp cy) {
  if (x.dim() != y.dim()) throw std::invalid_argument("matrix size mismatch");
  SparseMatrix out(x.dim());
  for (std::size_t a = 0; a < x.dim(); ++a) {
    SparseMatrix::Row r = x.row(a);
    for (auto& [c, v] : y.row(a)) r.emplace_back(c, cy * v);
    out.setRow(a, std::move(r));
  }
  return out;
}

SparseMatrix operator+(const SparseMatrix& x, const SparseMatrix& y) { return combine(x, y, Fp(1)); }
SparseMatrix operator-(const SparseMatrix& x, const SparseMatrix& y) { return combine(x, y, Fp(-1)); }

SparseMatrix operator*(Fp c, const SparseMatrix& x) {
  SparseMatrix out(x.dim());
  if (c.isZero()) return out;
  for (std::size_t a = 0; a < x.dim(); ++a) {
    auto r = x.rows_[a];
    for (auto& e : r) e.second *= c;
    out.rows_[a] = std::move(r);
  }
  return out;
}

std::vector<Fp> SparseMatrix::apply(const std::vector<Fp>& v) const {
  std::vector<Fp> out(dim());
  for (std::size_t a = 0; a < dim(); ++a) {
    if (v[a].isZero()) continue;
    for (auto& [c, x] : rows_[a]) out[c] += v[a] * x;
  }
  return out;
}

Matrix<Fp> SparseMatrix::block(const std::vector<int>& rows, const std::vector<int>& cols) const {
  std::vector<int> local(dim(), -1);
  for (std::size_t j = 0; j < cols.size(); ++j) local[cols[j]] = static_cast<int>(j);
  Matrix<Fp> out(rows.size(), std::vector<Fp>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (auto& [c, x] : rows_[rows[i]])
      if (local[c] >= 0) out[i][local[c]] = x;
  return out;
}

std::vector<Fp> SparseMatrix::flatten() const {
  std::vector<Fp> out(dim() * dim());
  for (std::size_t a = 0; a < dim(); ++a)
    for (auto& [c, x] : rows_[a]) out[a * dim() + c] = x;
  return out;
}

// ---------------------------------------------------------------- modules

bool TensorModule::relationsHold() const {
  return std::all_of(relations.begin(), relations.end(), [](auto& r) { return r.holds; });
}

std::size_t TensorModule::indexOf(const std::vector<int>& mu) const {
  if (static_cast<int>(mu.size()) != d) throw std::invalid_argument("index tuple has the wrong length");
  std::size_t idx = 0;
  for (int x : mu) {
    if (x < 1 || x > factorDim) throw std::out_of_range("factor index out of range");
    idx = idx * factorDim + (x - 1);
  }
  return idx;
}

static std::string tupleStr(const std::vector<int>& mu) {
  std::string s = "v(";
  for (std::size_t i = 0; i < mu.size(); ++i) s += (i ? "," : "") + std::to_string(mu[i]);
  return s + ")";
}

std::string TensorModule::vectorStr(const std::vector<Fp>& v) const {
  std::string s;
  for (std::size_t a = 0; a < v.size(); ++a) {
    if (v[a].isZero()) continue;
    if (!s.empty()) s += " + ";
    s += (v[a] == Fp(1) ? "" : v[a].str() + "*") + tupleStr(basis[a]);
  }
  return s.empty() ? "0" : s;
}

namespace {

using Dense = Matrix<Fp>;

Fp randomPoint(std::mt19937_64& rng) {
  uint64_t p = Fp::modulus();
  return Fp::fromRaw(2 + rng() % (p - 4));
}

void fillBasis(TensorModule& mod) {
  std::size_t total = 1;
  for (int j = 0; j < mod.d; ++j) total *= mod.factorDim;
  if (total > kCommutantSizeGuard) throw std::length_error("tensor space of dimension " + std::to_string(total) + " exceeds the size guard");
  mod.basis.resize(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<int> mu(mod.d);
    std::size_t r = idx;
    for (int j = mod.d - 1; j >= 0; --j) {
      mu[j] = static_cast<int>(r % mod.factorDim) + 1;
      r /= mod.factorDim;
    }
    mod.basis[idx] = std::move(mu);
  }
}

// Matrix of an operator given on basis tuples.
SparseMatrix tupleOperator(const TensorModule& mod,
                           const std::function<void(const std::vector<int>&, SparseMatrix::Row&)>& f) {
  SparseMatrix out(mod.dim());
  for (std::size_t a = 0; a < mod.dim(); ++a) {
    SparseMatrix::Row r;
    f(mod.basis[a], r);
    out.setRow(a, std::move(r));
  }
  return out;
}

// The three-case rule with q on equal indices; q = 1 gives the place permutation.
SparseMatrix heckeGenerator(const TensorModule& mod, int i, Fp q) {
  return tupleOperator(mod, [&](const std::vector<int>& mu, SparseMatrix::Row& r) {
    std::vector<int> sw = mu;
    std::swap(sw[i - 1], sw[i]);
    int to = static_cast<int>(mod.indexOf(sw)), self = static_cast<int>(mod.indexOf(mu));
    if (mu[i - 1] < mu[i]) {
      r.emplace_back(to, Fp(1));
    } else if (mu[i - 1] == mu[i]) {
      r.emplace_back(to, q);
    } else {
      r.emplace_back(to, q);
      r.emplace_back(self, q - Fp(1));
    }
  });
}

// Acts on one tensor slot by a factor matrix; entries sending outside are dropped.
SparseMatrix slotOperator(const TensorModule& mod, int slot, const std::vector<SparseMatrix::Row>& factor) {
  return tupleOperator(mod, [&](const std::vector<int>& mu, SparseMatrix::Row& r) {
    for (auto& [t, c] : factor[mu[slot - 1] - 1]) {
      std::vector<int> nu = mu;
      nu[slot - 1] = t + 1;
      r.emplace_back(static_cast<int>(mod.indexOf(nu)), c);
    }
  });
}

SparseMatrix power(const SparseMatrix& x, int k) {
  SparseMatrix r = SparseMatrix::identity(x.dim());
  for (int i = 0; i < k; ++i) r = r * x;
  return r;
}

void probe(TensorModule& mod, std::string name, const SparseMatrix& lhs, const SparseMatrix& rhs) {
  mod.relations.push_back({std::move(name), lhs == rhs});
}

const SparseMatrix& gen(const TensorModule& mod, const std::string& label) {
  for (auto& [l, m] : mod.generators)
    if (l == label) return m;
  throw std::logic_error("no generator " + label);
}

// Quadratic, braid and distant commutation among H_first .. H_last.
void heckeProbes(TensorModule& mod, const std::vector<int>& idx, const std::string& sym, Fp S, Fp R) {
  auto I = SparseMatrix::identity(mod.dim());
  auto G = [&](int i) -> const SparseMatrix& { return gen(mod, sym + std::to_string(i)); };
  for (int i : idx) probe(mod, sym + std::to_string(i) + "^2 = S" + sym + std::to_string(i) + " + R", G(i) * G(i), S * G(i) + R * I);
  for (int i : idx)
    for (int j : idx) {
      if (j <= i) continue;
      std::string a = sym + std::to_string(i), b = sym + std::to_string(j);
      if (j == i + 1)
        probe(mod, a + b + a + " = " + b + a + b, G(i) * G(j) * G(i), G(j) * G(i) * G(j));
      else
        probe(mod, a + b + " = " + b + a, G(i) * G(j), G(j) * G(i));
    }
}

// Matrices of H_w for all w, built along the compatible reduced words.
std::vector<SparseMatrix> wordMatrices(const CoxeterGroup& g, const std::vector<SparseMatrix>& gens) {
  std::vector<SparseMatrix> out(g.size());
  out[0] = SparseMatrix::identity(gens.at(1).dim());
  for (int w = 1; w < g.size(); ++w) out[w] = out[g.parent(w)] * gens[g.lastLetter(w)];
  return out;
}

std::string wordLabel(const CoxeterGroup& g, int w) {
  if (w == 0) return "1";
  std::string s = "H[";
  for (std::size_t k = 0; k < g.word(w).size(); ++k) s += (k ? " s" : "s") + std::to_string(g.word(w)[k]);
  return s + "]";
}

std::string fpStr(Fp x) { return x.str(); }

}  // namespace

std::vector<std::pair<std::vector<int>, Scalar>> heckeTensorAction(const std::vector<int>& mu, int i) {
  if (i < 1 || i >= static_cast<int>(mu.size())) throw std::out_of_range("generator index out of range");
  std::vector<int> sw = mu;
  std::swap(sw[i - 1], sw[i]);
  Scalar q = Scalar::q();
  if (mu[i - 1] < mu[i]) return {{sw, Scalar(1)}};
  if (mu[i - 1] == mu[i]) return {{sw, q}};
  return {{sw, q}, {mu, q - Scalar(1)}};
}

TensorModule heckeTensorModule(int n, int d, Fp q) {
  if (n < 1 || d < 2) throw std::invalid_argument("heckeA needs n >= 1 and d >= 2");
  TensorModule mod;
  mod.instance = "heckeA";
  mod.n = n, mod.d = d, mod.factorDim = n;
  mod.point = "q=" + fpStr(q);
  fillBasis(mod);
  auto g = CoxeterGroup::typeA(d);
  std::vector<SparseMatrix> H(d);
  for (int i = 1; i < d; ++i) {
    H[i] = heckeGenerator(mod, i, q);
    mod.generators.emplace_back("H" + std::to_string(i), H[i]);
  }
  std::vector<int> all(d - 1);
  std::iota(all.begin(), all.end(), 1);
  heckeProbes(mod, all, "H", q - Fp(1), q);
  mod.algebraBasis = wordMatrices(*g, H);
  for (int w = 0; w < g->size(); ++w) mod.algebraLabels.push_back(wordLabel(*g, w));
  mod.algebraDim = g->size();
  if (n >= d) {
    std::vector<int> mu(d);
    std::iota(mu.begin(), mu.end(), 1);
    mod.splittingTuple = mu;
  }
  return mod;
}

TensorModule huTensorModule(int m, int n, Fp v) {
  if (m < 1 || m > 2) throw std::invalid_argument("Hu tensor modules are built for m = 1, 2");
  TensorModule mod;
  mod.instance = "hu";
  mod.m = m, mod.n = n, mod.d = 2 * m, mod.factorDim = n;
  Fp q = v * v;
  mod.point = "v=" + fpStr(v) + ", q=" + fpStr(q);
  fillBasis(mod);
  auto alg = huAmbient(m);
  const auto& g = alg->group();
  std::vector<SparseMatrix> T(2 * m);
  for (int i = 1; i < 2 * m; ++i) T[i] = heckeGenerator(mod, i, q);
  auto TW = wordMatrices(g, T);
  Specialization at = Specialization::prime({{"v", Rational(Integer(v.raw()))}});
  auto image = [&](const HElem& x) {
    SparseMatrix out(mod.dim());
    for (int w : x.support()) out = out + specializePrime(x.coefT(w), at) * TW[w];
    return out;
  };
  for (int i = 1; i < 2 * m; ++i)
    if (i != m) mod.generators.emplace_back("T" + std::to_string(i), T[i]);
  SparseMatrix H = image(H1Element(m));
  mod.generators.emplace_back("H", H);

  std::vector<int> parabolic;
  for (int i = 1; i < 2 * m; ++i)
    if (i != m) parabolic.push_back(i);
  std::vector<int> left, right;
  for (int i : parabolic) (i < m ? left : right).push_back(i);
  heckeProbes(mod, left, "T", q - Fp(1), q);
  heckeProbes(mod, right, "T", q - Fp(1), q);
  for (int i : left)
    for (int j : right) probe(mod, "T" + std::to_string(i) + "T" + std::to_string(j) + " = T" + std::to_string(j) + "T" + std::to_string(i), T[i] * T[j], T[j] * T[i]);
  probe(mod, "H^2 = z", H * H, image(zmm(m)));
  for (int i : left) probe(mod, "T" + std::to_string(i) + "H = HT" + std::to_string(i + m), T[i] * H, H * T[i + m]);

  auto bases = huBases(m);
  for (std::size_t k = 0; k < bases.standard.size(); ++k) {
    mod.algebraBasis.push_back(image(bases.standard[k]));
    mod.algebraLabels.push_back(bases.labels[k]);
  }
  mod.algebraDim = bases.standard.size();
  if (n >= 2 * m) {
    std::vector<int> mu(2 * m);
    std::iota(mu.begin(), mu.end(), 1);
    mod.splittingTuple = mu;
  }
  mod.notes.push_back("A(m) acts through the Hecke algebra of the symmetric group on 2m letters");
  return mod;
}

TensorModule arikiKoikeTensorModule(int m, int n, int d, Fp q, const std::vector<Fp>& qs) {
  if (m < 1 || n < 1 || d < 2 || static_cast<int>(qs.size()) != m) throw std::invalid_argument("Ariki-Koike module needs m parameters");
  TensorModule mod;
  mod.instance = "ariki-koike";
  mod.m = m, mod.n = n, mod.d = d, mod.factorDim = m * n;
  mod.point = "q=" + fpStr(q);
  for (int i = 0; i < m; ++i) mod.point += ", q" + std::to_string(i + 1) + "=" + fpStr(qs[i]);
  fillBasis(mod);

  // e_i(q_1..q_m)
  std::vector<Fp> e(m + 1);
  e[0] = Fp(1);
  for (Fp x : qs)
    for (int i = m; i >= 1; --i) e[i] += e[i - 1] * x;
  std::vector<SparseMatrix::Row> X(m * n);
  for (int k = 0; k < n; ++k)
    for (int j = 1; j <= m; ++j) {
      int t = k * m + j;  // 1-based
      if (j < m) {
        X[t - 1].emplace_back(t, Fp(1));
      } else {
        for (int i = 1; i <= m; ++i) X[t - 1].emplace_back(k * m + m + 1 - i - 1, (i % 2 ? Fp(1) : Fp(-1)) * e[i]);
      }
    }
  SparseMatrix X1 = slotOperator(mod, 1, X);
  std::vector<SparseMatrix> H(d);
  for (int i = 1; i < d; ++i) {
    H[i] = heckeGenerator(mod, i, q);
    mod.generators.emplace_back("H" + std::to_string(i), H[i]);
  }
  mod.generators.emplace_back("X", X1);

  std::vector<int> all(d - 1);
  std::iota(all.begin(), all.end(), 1);
  heckeProbes(mod, all, "H", q - Fp(1), q);
  auto I = SparseMatrix::identity(mod.dim());
  SparseMatrix f = I;
  for (Fp x : qs) f = f * (X1 - x * I);
  probe(mod, "prod (X - q_i) = 0", f, SparseMatrix(mod.dim()));
  for (int i = 2; i < d; ++i) probe(mod, "XH" + std::to_string(i) + " = H" + std::to_string(i) + "X", X1 * H[i], H[i] * X1);
  probe(mod, "H1XH1X = XH1XH1", H[1] * X1 * H[1] * X1, X1 * H[1] * X1 * H[1]);

  // X^(i) = q^{-(i-1)} H_{i-1}..H_1 X H_1..H_{i-1}
  std::vector<SparseMatrix> Xs{X1};
  Fp qinv = q.inverse();
  for (int i = 1; i < d; ++i) Xs.push_back(qinv * (H[i] * Xs.back() * H[i]));
  auto g = CoxeterGroup::typeA(d);
  auto HW = wordMatrices(*g, H);
  std::vector<int> lam(d, 0);
  while (true) {
    SparseMatrix mono = I;
    std::string label;
    for (int i = 0; i < d; ++i) {
      mono = mono * power(Xs[i], lam[i]);
      if (lam[i]) label += "X" + std::to_string(i + 1) + (lam[i] > 1 ? "^" + std::to_string(lam[i]) : "");
    }
    for (int w = 0; w < g->size(); ++w) {
      mod.algebraBasis.push_back(mono * HW[w]);
      std::string h = w ? wordLabel(*g, w) : "";
      mod.algebraLabels.push_back(label.empty() && h.empty() ? "1" : label + h);
    }
    int k = 0;
    while (k < d && ++lam[k] == m) lam[k++] = 0;
    if (k == d) break;
  }
  mod.algebraDim = mod.algebraBasis.size();
  if (n >= d) {
    std::vector<int> mu(d);
    for (int j = 0; j < d; ++j) mu[j] = j * m + 1;
    mod.splittingTuple = mu;
  }
  return mod;
}

TensorModule wreathGroupTensorModule(int m, int n, int d) {
  if (m < 1 || n < 1 || d < 2) throw std::invalid_argument("wreath-group module needs m, n >= 1 and d >= 2");
  TensorModule mod;
  mod.instance = "wreath-group";
  mod.m = m, mod.n = n, mod.d = d, mod.factorDim = m * n;
  mod.point = "q=1";
  fillBasis(mod);
  // factor index (i-1)*m + g + 1 stands for v_i·x^g
  std::vector<SparseMatrix::Row> x(m * n);
  for (int i = 0; i < n; ++i)
    for (int g = 0; g < m; ++g) x[i * m + g].emplace_back(i * m + (g + 1) % m, Fp(1));
  std::vector<SparseMatrix> H(d), xs(d + 1);
  for (int i = 1; i < d; ++i) {
    H[i] = tupleOperator(mod, [&](const std::vector<int>& mu, SparseMatrix::Row& r) {
      std::vector<int> sw = mu;
      std::swap(sw[i - 1], sw[i]);
      r.emplace_back(static_cast<int>(mod.indexOf(sw)), Fp(1));
    });
    mod.generators.emplace_back("H" + std::to_string(i), H[i]);
  }
  for (int j = 1; j <= d; ++j) {
    xs[j] = slotOperator(mod, j, x);
    mod.generators.emplace_back("x" + std::to_string(j), xs[j]);
  }
  std::vector<int> all(d - 1);
  std::iota(all.begin(), all.end(), 1);
  heckeProbes(mod, all, "H", Fp(0), Fp(1));
  auto I = SparseMatrix::identity(mod.dim());
  for (int j = 1; j <= d; ++j) probe(mod, "x" + std::to_string(j) + "^m = 1", power(xs[j], m), I);
  for (int i = 1; i < d; ++i)
    for (int j = 1; j <= d; ++j) {
      int k = j == i ? i + 1 : j == i + 1 ? i : j;
      probe(mod, "H" + std::to_string(i) + "x" + std::to_string(j) + " = x" + std::to_string(k) + "H" + std::to_string(i), H[i] * xs[j], xs[k] * H[i]);
    }
  auto g = CoxeterGroup::typeA(d);
  auto HW = wordMatrices(*g, H);
  std::vector<int> lam(d, 0);
  while (true) {
    SparseMatrix mono = I;
    std::string label;
    for (int j = 0; j < d; ++j) {
      mono = mono * power(xs[j + 1], lam[j]);
      if (lam[j]) label += "x" + std::to_string(j + 1) + (lam[j] > 1 ? "^" + std::to_string(lam[j]) : "");
    }
    for (int w = 0; w < g->size(); ++w) {
      mod.algebraBasis.push_back(mono * HW[w]);
      std::string h = w ? wordLabel(*g, w) : "";
      mod.algebraLabels.push_back(label.empty() && h.empty() ? "1" : label + h);
    }
    int k = 0;
    while (k < d && ++lam[k] == m) lam[k++] = 0;
    if (k == d) break;
  }
  mod.algebraDim = mod.algebraBasis.size();
  if (n >= d) {
    std::vector<int> mu(d);
    for (int j = 0; j < d; ++j) mu[j] = j * m + 1;
    mod.splittingTuple = mu;
  }
  return mod;
}

namespace {

// v_i·X = v_{i+n} on the window, with the wreath relation of the instance probed.
TensorModule shiftModule(const std::string& name, int n, int d, int window, Fp q, bool degenerate) {
  if (n < 1 || d < 2) throw std::invalid_argument(name + " module needs n >= 1 and d >= 2");
  if (window <= 0) window = n * (d + 1);
  if (window < n) throw std::invalid_argument("window smaller than n");
  TensorModule mod;
  mod.instance = name;
  mod.n = n, mod.d = d, mod.window = window, mod.factorDim = window;
  mod.point = degenerate ? "q=1" : "q=" + fpStr(q);
  fillBasis(mod);
  std::vector<SparseMatrix::Row> X(window);
  for (int i = 1; i + n <= window; ++i) X[i - 1].emplace_back(i + n - 1, Fp(1));
  std::vector<SparseMatrix> H(d), Xs(d + 1);
  for (int i = 1; i < d; ++i) {
    H[i] = heckeGenerator(mod, i, degenerate ? Fp(1) : q);
    mod.generators.emplace_back("H" + std::to_string(i), H[i]);
  }
  for (int j = 1; j <= d; ++j) {
    Xs[j] = slotOperator(mod, j, X);
    mod.generators.emplace_back("X" + std::to_string(j), Xs[j]);
  }
  std::vector<int> all(d - 1);
  std::iota(all.begin(), all.end(), 1);
  if (degenerate)
    heckeProbes(mod, all, "H", Fp(0), Fp(1));
  else
    heckeProbes(mod, all, "H", q - Fp(1), q);
  auto I = SparseMatrix::identity(mod.dim());
  for (int i = 1; i < d; ++i) {
    std::string a = "H" + std::to_string(i), x = "X" + std::to_string(i), y = "X" + std::to_string(i + 1);
    if (degenerate)
      probe(mod, a + x + " = " + y + a + " - 1", H[i] * Xs[i], Xs[i + 1] * H[i] - I);
    else
      probe(mod, a + x + a + " = q" + y, H[i] * Xs[i] * H[i], q * Xs[i + 1]);
    for (int j = 1; j <= d; ++j)
      if (j != i && j != i + 1) probe(mod, a + "X" + std::to_string(j) + " = X" + std::to_string(j) + a, H[i] * Xs[j], Xs[j] * H[i]);
  }
  mod.notes.push_back("quotient by tensors with a factor index above " + std::to_string(window) + "; X acts factorwise");
  if (n >= d) {
    std::vector<int> mu(d);
    std::iota(mu.begin(), mu.end(), 1);
    mod.splittingTuple = mu;
  }
  return mod;
}

}  // namespace

TensorModule affineTensorModule(int n, int d, int window, Fp q) { return shiftModule("affine", n, d, window, q, false); }
TensorModule degenerateTensorModule(int n, int d, int window) { return shiftModule("degenerate", n, d, window, Fp(1), true); }

TensorModule scalarModule(int dimension) {
  TensorModule mod;
  mod.instance = "scalar";
  mod.n = dimension, mod.d = 1, mod.factorDim = dimension;
  mod.point = "-";
  fillBasis(mod);
  mod.generators.emplace_back("1", SparseMatrix::identity(mod.dim()));
  mod.algebraBasis.push_back(SparseMatrix::identity(mod.dim()));
  mod.algebraLabels.push_back("1");
  mod.algebraDim = 1;
  mod.splittingTuple = std::vector<int>{1};
  return mod;
}

std::vector<std::string> schurInstances() { return {"heckeA", "hu", "ariki-koike", "wreath-group", "affine", "degenerate", "scalar"}; }

TensorModule buildTensorModule(const SchurOptions& opt, std::mt19937_64& rng) {
  const std::string& s = opt.instance;
  if (s == "heckeA" || s == "hecke") return heckeTensorModule(opt.n, opt.d, randomPoint(rng));
  if (s == "hu") return huTensorModule(opt.m, opt.n, randomPoint(rng));
  if (s == "ariki-koike" || s == "ak") {
    Fp q = randomPoint(rng);
    std::vector<Fp> qs;
    for (int i = 0; i < opt.m; ++i) qs.push_back(randomPoint(rng));
    return arikiKoikeTensorModule(opt.m, opt.n, opt.d, q, qs);
  }
  if (s == "wreath-group") return wreathGroupTensorModule(opt.m, opt.n, opt.d);
  if (s == "affine") return affineTensorModule(opt.n, opt.d, opt.window, randomPoint(rng));
  if (s == "degenerate") return degenerateTensorModule(opt.n, opt.d, opt.window);
  if (s == "scalar") return scalarModule(opt.n);
  throw std::invalid_argument("unknown tensor module '" + s + "'");
}

// ---------------------------------------------------------------- linear algebra on blocks

namespace {

Dense zeros(std::size_t r, std::size_t c) { return Dense(r, std::vector<Fp>(c)); }

Dense mul(const Dense& a, const Dense& b) {
  std::size_t r = a.size(), k = b.size(), c = k ? b[0].size() : 0;
  Dense out = zeros(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t].isZero()) continue;
      Fp x = a[i][t];
      for (std::size_t j = 0; j < c; ++j)
        if (!b[t][j].isZero()) out[i][j] += x * b[t][j];
    }
  return out;
}

std::vector<Fp> rowTimes(const std::vector<Fp>& v, const Dense& b) {
  std::vector<Fp> out(b.empty() ? 0 : b[0].size());
  for (std::size_t t = 0; t < v.size(); ++t) {
    if (v[t].isZero()) continue;
    for (std::size_t j = 0; j < out.size(); ++j)
      if (!b[t][j].isZero()) out[j] += v[t] * b[t][j];
  }
  return out;
}

Dense inverse(const Dense& a) {
  std::size_t n = a.size();
  Dense aug = a;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n);
    aug[i][n + i] = Fp(1);
  }
  auto piv = rowReduce(aug);
  if (piv.size() != n || (n && piv.back() >= n)) throw std::logic_error("singular change of basis");
  Dense out(n);
  for (std::size_t i = 0; i < n; ++i) out[i].assign(aug[i].begin() + n, aug[i].end());
  return out;
}

template <class Fn>
void parallelFor(std::size_t count, Fn fn) {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, count); ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// Hom_Λ(U, N) for an algebra Λ spanned by the given operators (identity in the span):
// Y is fixed by w_k = u_k·Y on Λ-generators u_k of U, subject to consistency on the
// spanning rows u_k·op_l.
std::vector<Dense> homViaGenerators(const std::vector<Dense>& opsU, const std::vector<Dense>& opsN) {
  std::size_t p = opsU.at(0).size(), q = opsN.at(0).size(), L = opsU.size();
  if (p == 0 || q == 0) return {};
  EchelonBasis<Fp> span(p);
  std::vector<std::size_t> gens;
  std::vector<std::pair<std::size_t, std::size_t>> chosen;
  Dense B;
  for (std::size_t a = 0; a < p && span.rank() < p; ++a) {
    std::vector<Fp> e(p);
    e[a] = Fp(1);
    if (span.contains(e)) continue;
    std::size_t k = gens.size();
    gens.push_back(a);
    for (std::size_t l = 0; l < L; ++l)
      if (span.add(opsU[l][a])) {
        chosen.emplace_back(k, l);
        B.push_back(opsU[l][a]);
      }
  }
  if (span.rank() != p) throw std::logic_error("operators do not span an algebra with unit");
  Dense Binv = inverse(B);
  std::size_t r = gens.size(), cols = r * q;
  EchelonBasis<Fp> eqs(cols);
  std::vector<Fp> row(cols);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = 0; l < L; ++l) {
      auto c = rowTimes(opsU[l][gens[k]], Binv);
      // coefficient of w_{k'}[b] in component j
      std::vector<Dense> coef(r, zeros(q, q));
      for (std::size_t t = 0; t < p; ++t) {
        if (c[t].isZero()) continue;
        auto [kt, lt] = chosen[t];
        for (std::size_t b = 0; b < q; ++b)
          for (std::size_t j = 0; j < q; ++j)
            if (!opsN[lt][b][j].isZero()) coef[kt][b][j] += c[t] * opsN[lt][b][j];
      }
      for (std::size_t b = 0; b < q; ++b)
        for (std::size_t j = 0; j < q; ++j) coef[k][b][j] -= opsN[l][b][j];
      for (std::size_t j = 0; j < q; ++j) {
        bool any = false;
        for (std::size_t kk = 0; kk < r; ++kk)
          for (std::size_t b = 0; b < q; ++b) {
            row[kk * q + b] = coef[kk][b][j];
            any = any || !row[kk * q + b].isZero();
          }
        if (any && eqs.rank() < cols) eqs.add(row);
      }
    }
  std::vector<Dense> out;
  for (auto& w : eqs.kernel()) {
    Dense images(p);
    for (std::size_t t = 0; t < p; ++t) {
      auto [kt, lt] = chosen[t];
      std::vector<Fp> wk(w.begin() + kt * q, w.begin() + (kt + 1) * q);
      images[t] = rowTimes(wk, opsN[lt]);
    }
    out.push_back(mul(Binv, images));
  }
  return out;
}

// {Y : G_U Y = Y G_N for every pair of generator blocks}, dense.
std::vector<Dense> homDirect(const std::vector<Dense>& gU, const std::vector<Dense>& gN) {
  std::size_t p = gU.at(0).size(), q = gN.at(0).size(), cols = p * q;
  EchelonBasis<Fp> eqs(cols);
  std::vector<Fp> row(cols);
  for (std::size_t g = 0; g < gU.size() && eqs.rank() < cols; ++g)
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t j = 0; j < q; ++j) {
        std::fill(row.begin(), row.end(), Fp(0));
        // (G_U Y)[a][j] - (Y G_N)[a][j]
        for (std::size_t t = 0; t < p; ++t) row[t * q + j] += gU[g][a][t];
        for (std::size_t t = 0; t < q; ++t) row[a * q + t] -= gN[g][t][j];
        eqs.add(row);
      }
  std::vector<Dense> out;
  for (auto& y : eqs.kernel()) {
    Dense Y = zeros(p, q);
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t j = 0; j < q; ++j) Y[a][j] = y[a * q + j];
    out.push_back(std::move(Y));
  }
  return out;
}

std::vector<std::vector<int>> findComponents(const TensorModule& mod) {
  std::size_t n = mod.dim();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto unite = [&](const SparseMatrix& M) {
    for (std::size_t a = 0; a < n; ++a)
      for (auto& [b, x] : M.row(a)) parent[find(static_cast<int>(a))] = find(b);
  };
  for (auto& [l, M] : mod.generators) unite(M);
  for (auto& M : mod.algebraBasis) unite(M);
  std::map<int, std::vector<int>> groups;
  for (std::size_t a = 0; a < n; ++a) groups[find(static_cast<int>(a))].push_back(static_cast<int>(a));
  std::vector<std::vector<int>> out;
  for (auto& [r, g] : groups) out.push_back(std::move(g));
  return out;
}

struct Structure {
  std::vector<std::vector<int>> comps;
  std::vector<std::vector<Dense>> ops;  // algebra (or generator) blocks per component
  bool algebraOps = false;
  std::vector<std::vector<std::vector<Dense>>> hom;  // hom[i][j]
  std::size_t dimension = 0;
};

Structure commutantStructure(const TensorModule& mod) {
  if (mod.dim() > kCommutantSizeGuard) throw std::length_error("tensor space exceeds the commutant size guard");
  Structure s;
  s.comps = findComponents(mod);
  s.algebraOps = !mod.algebraBasis.empty();
  std::size_t k = s.comps.size();
  s.ops.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    if (s.algebraOps)
      for (auto& M : mod.algebraBasis) s.ops[c].push_back(M.block(s.comps[c], s.comps[c]));
    else
      for (auto& [l, M] : mod.generators) s.ops[c].push_back(M.block(s.comps[c], s.comps[c]));
  }
  s.hom.assign(k, std::vector<std::vector<Dense>>(k));
  parallelFor(k * k, [&](std::size_t idx) {
    std::size_t i = idx / k, j = idx % k;
    s.hom[i][j] = s.algebraOps ? homViaGenerators(s.ops[i], s.ops[j]) : homDirect(s.ops[i], s.ops[j]);
  });
  for (auto& r : s.hom)
    for (auto& h : r) s.dimension += h.size();
  return s;
}

// Dimension of End_S(T) for S = ⊕ hom[i][j]. S contains the block projections, so
// Y = ⊕ Y_i; Y is fixed by its blocks on components G whose S-images cover T.
std::size_t bicommutantDimension(const Structure& s, std::vector<std::string>& notes) {
  std::size_t k = s.comps.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return s.comps[a].size() > s.comps[b].size(); });
  std::vector<EchelonBasis<Fp>> cover;
  for (auto& c : s.comps) cover.emplace_back(c.size());
  std::vector<std::size_t> G;
  std::vector<char> inG(k, 0);
  for (std::size_t c : order) {
    if (cover[c].rank() == s.comps[c].size()) continue;
    G.push_back(c);
    inG[c] = 1;
    for (std::size_t j = 0; j < k; ++j)
      for (auto& X : s.hom[c][j])
        for (auto& row : X) {
          if (cover[j].rank() == s.comps[j].size()) break;
          cover[j].add(row);
        }
  }
  notes.push_back("bicommutant determined on " + std::to_string(G.size()) + " generating block(s)");

  // parameters: bases of End_{End_A(C_g)}(C_g)
  std::vector<std::vector<Dense>> local(k);
  std::vector<std::size_t> offset(k, 0);
  std::size_t P = 0;
  for (std::size_t g : G) {
    local[g] = homViaGenerators(s.hom[g][g], s.hom[g][g]);
    offset[g] = P;
    P += local[g].size();
  }
  if (P == 0) return 0;
  EchelonBasis<Fp> eqs(P);
  auto addResiduals = [&](const std::vector<std::pair<std::size_t, Dense>>& residuals, std::size_t rows, std::size_t cols) {
    std::vector<Fp> row(P);
    for (std::size_t a = 0; a < rows && eqs.rank() < P; ++a)
      for (std::size_t b = 0; b < cols; ++b) {
        std::fill(row.begin(), row.end(), Fp(0));
        bool any = false;
        for (auto& [param, R] : residuals) {
          row[param] = R[a][b];
          any = any || !R[a][b].isZero();
        }
        if (any) eqs.add(row);
      }
  };
  // Y_g X = X Y_g' between generating blocks
  for (std::size_t g : G)
    for (std::size_t h : G) {
      if (g == h) continue;
      for (auto& X : s.hom[g][h]) {
        std::vector<std::pair<std::size_t, Dense>> res;
        for (std::size_t t = 0; t < local[g].size(); ++t) res.emplace_back(offset[g] + t, mul(local[g][t], X));
        for (std::size_t t = 0; t < local[h].size(); ++t) {
          Dense R = mul(X, local[h][t]);
          for (auto& r : R)
            for (auto& x : r) x = -x;
          res.emplace_back(offset[h] + t, std::move(R));
        }
        addResiduals(res, s.comps[g].size(), s.comps[h].size());
      }
    }
  // every other block: Y_j(e_a X) = (e_a Y_g) X must be well defined
  for (std::size_t j = 0; j < k; ++j) {
    if (inG[j] || eqs.rank() == P) continue;
    std::size_t q = s.comps[j].size();
    struct Src {
      std::size_t g, x, a;
    };
    std::vector<Src> rowsSrc;
    EchelonBasis<Fp> span(q);
    std::vector<Src> chosen;
    Dense B;
    for (std::size_t g : G)
      for (std::size_t x = 0; x < s.hom[g][j].size(); ++x)
        for (std::size_t a = 0; a < s.comps[g].size(); ++a) {
          const auto& r = s.hom[g][j][x][a];
          if (std::all_of(r.begin(), r.end(), [](Fp v) { return v.isZero(); })) continue;
          rowsSrc.push_back({g, x, a});
          if (span.add(r)) {
            chosen.push_back({g, x, a});
            B.push_back(r);
          }
        }
    Dense Binv = inverse(B);
    // residual for each source row, one column per parameter
    std::vector<Dense> Yj(P);
    for (std::size_t g : G)
      for (std::size_t t = 0; t < local[g].size(); ++t) {
        Dense images(q);
        for (std::size_t c = 0; c < q; ++c) {
          auto& src = chosen[c];
          images[c] = src.g == g ? rowTimes(local[g][t][src.a], s.hom[g][j][src.x]) : std::vector<Fp>(q);
        }
        Yj[offset[g] + t] = mul(Binv, images);
      }
    std::vector<Fp> row(P);
    for (auto& src : rowsSrc) {
      const auto& r = s.hom[src.g][j][src.x][src.a];
      std::vector<std::vector<Fp>> res(P);
      for (std::size_t g : G)
        for (std::size_t t = 0; t < local[g].size(); ++t) {
          std::size_t pi = offset[g] + t;
          res[pi] = rowTimes(r, Yj[pi]);
          if (g == src.g) {
            auto direct = rowTimes(local[g][t][src.a], s.hom[g][j][src.x]);
            for (std::size_t b = 0; b < q; ++b) res[pi][b] -= direct[b];
          }
        }
      for (std::size_t b = 0; b < q && eqs.rank() < P; ++b) {
        bool any = false;
        for (std::size_t pi = 0; pi < P; ++pi) {
          row[pi] = res[pi][b];
          any = any || !row[pi].isZero();
        }
        if (any) eqs.add(row);
      }
    }
  }
  return P - eqs.rank();
}

std::size_t imageDimensionOn(const TensorModule& mod, const std::vector<std::vector<int>>& comps) {
  std::size_t cols = 0;
  for (auto& c : comps) cols += c.size() * c.size();
  EchelonBasis<Fp> span(cols);
  for (auto& M : mod.algebraBasis) {
    std::vector<Fp> v;
    v.reserve(cols);
    for (auto& c : comps)
      for (auto& r : M.block(c, c)) v.insert(v.end(), r.begin(), r.end());
    span.add(std::move(v));
  }
  return span.rank();
}

}  // namespace

Commutant commutant(const TensorModule& mod) {
  Structure s = commutantStructure(mod);
  Commutant c;
  c.components = s.comps;
  c.dimension = s.dimension;
  for (std::size_t i = 0; i < s.comps.size(); ++i)
    for (std::size_t j = 0; j < s.comps.size(); ++j)
      if (!s.hom[i][j].empty()) c.blocks.push_back({static_cast<int>(i), static_cast<int>(j), s.hom[i][j]});
  return c;
}

std::size_t bruteForceCommutantDimension(const TensorModule& mod) {
  if (mod.dim() > 40) throw std::length_error("brute-force commutant is limited to dim T <= 40");
  std::vector<int> all(mod.dim());
  std::iota(all.begin(), all.end(), 0);
  std::vector<Dense> g;
  for (auto& [l, M] : mod.generators) g.push_back(M.block(all, all));
  return homDirect(g, g).size();
}

std::size_t imageDimension(const TensorModule& mod) { return imageDimensionOn(mod, findComponents(mod)); }

SplittingWitness splittingWitness(const TensorModule& mod) {
  if (!mod.splittingTuple) throw std::invalid_argument("no index tuple over distinct summands (needs n >= d)");
  if (mod.algebraBasis.empty()) throw std::invalid_argument("splitting witness needs a finite-dimensional algebra");
  SplittingWitness w;
  w.mu = *mod.splittingTuple;
  w.dimA = mod.algebraDim;
  std::size_t u = mod.indexOf(w.mu);
  std::vector<Fp> e(mod.dim());
  e[u] = Fp(1);
  EchelonBasis<Fp> W(mod.dim());
  for (std::size_t l = 0; l < mod.algebraBasis.size(); ++l) {
    W.add(mod.algebraBasis[l].apply(e));
    w.psi.push_back(tupleStr(w.mu) + "·" + mod.algebraLabels[l] + " ↦ " + mod.algebraLabels[l]);
  }
  w.dimW = W.rank();
  w.injective = w.dimW == w.dimA;
  w.complement = mod.dim() - w.dimW;

  // idempotent π ∈ End_A(C) with C·π = W and π|_W = id, C the block containing v_μ
  auto comps = findComponents(mod);
  std::size_t c = 0;
  while (std::find(comps[c].begin(), comps[c].end(), static_cast<int>(u)) == comps[c].end()) ++c;
  const auto& C = comps[c];
  std::vector<Dense> ops;
  for (auto& M : mod.algebraBasis) ops.push_back(M.block(C, C));
  auto E = homViaGenerators(ops, ops);
  std::size_t p = C.size(), P = E.size();
  std::vector<int> local(mod.dim(), -1);
  for (std::size_t a = 0; a < p; ++a) local[C[a]] = static_cast<int>(a);
  EchelonBasis<Fp> Wloc(p);
  for (auto& r : W.rows()) {
    std::vector<Fp> x(p);
    for (std::size_t a = 0; a < mod.dim(); ++a)
      if (!r[a].isZero()) x[local[a]] = r[a];
    Wloc.add(std::move(x));
  }
  std::vector<std::size_t> pivots;
  for (auto& r : Wloc.rows()) {
    std::size_t k = 0;
    while (r[k].isZero()) ++k;
    pivots.push_back(k);
  }
  // x ∈ W iff x - Σ x[pivot_t] w_t = 0
  auto outsideW = [&](const std::vector<Fp>& x) {
    std::vector<Fp> y = x;
    for (std::size_t t = 0; t < pivots.size(); ++t) {
      Fp f = x[pivots[t]];
      if (f.isZero()) continue;
      for (std::size_t b = 0; b < p; ++b) y[b] -= f * Wloc.rows()[t][b];
    }
    return y;
  };
  Dense A;
  std::vector<Fp> rhs;
  for (auto& wr : Wloc.rows()) {
    std::vector<std::vector<Fp>> img(P);
    for (std::size_t t = 0; t < P; ++t) img[t] = rowTimes(wr, E[t]);
    for (std::size_t b = 0; b < p; ++b) {
      std::vector<Fp> eq(P);
      for (std::size_t t = 0; t < P; ++t) eq[t] = img[t][b];
      A.push_back(std::move(eq));
      rhs.push_back(wr[b]);
    }
  }
  for (std::size_t a = 0; a < p; ++a) {
    std::vector<std::vector<Fp>> out(P);
    for (std::size_t t = 0; t < P; ++t) out[t] = outsideW(E[t][a]);
    for (std::size_t b = 0; b < p; ++b) {
      std::vector<Fp> eq(P);
      bool any = false;
      for (std::size_t t = 0; t < P; ++t) {
        eq[t] = out[t][b];
        any = any || !eq[t].isZero();
      }
      if (!any) continue;
      A.push_back(std::move(eq));
      rhs.push_back(Fp(0));
    }
  }
  w.projection = w.injective && solve(A, rhs, P).has_value();
  return w;
}

nlohmann::json DoubleCentralizer::toJson() const {
  nlohmann::json j;
  j["instance"] = instance;
  j["n"] = n;
  j["d"] = d;
  if (m) j["m"] = m;
  j["point"] = point;
  j["dim_T"] = dimT;
  j["dim_A"] = dimA ? nlohmann::json(dimA) : nlohmann::json(nullptr);
  j["dim_image"] = dimImage;
  j["dim_commutant"] = dimCommutant;
  j["dim_bicommutant"] = verdict == Verdict::skipped && !splitting ? nlohmann::json(nullptr) : nlohmann::json(dimBicommutant);
  j["relations"] = relations;
  j["faithful"] = faithful;
  j["containment"] = containment;
  if (splitting) {
    nlohmann::json s;
    s["mu"] = splitting->mu;
    s["dim_W"] = splitting->dimW;
    s["complement"] = splitting->complement;
    s["projection"] = splitting->projection;
    j["splitting"] = s;
  }
  j["notes"] = notes;
  j["verdict"] = verdictStr(verdict);
  return j;
}

DoubleCentralizer doubleCentralizerCheck(const TensorModule& mod) {
  DoubleCentralizer r;
  r.instance = mod.instance;
  r.point = mod.point;
  r.n = mod.n, r.d = mod.d, r.m = mod.m;
  r.dimT = mod.dim();
  r.dimA = mod.algebraDim;
  r.relations = mod.relationsHold();
  for (auto& p : mod.relations)
    if (!p.holds) r.notes.push_back("relation fails: " + p.name);
  r.notes.insert(r.notes.end(), mod.notes.begin(), mod.notes.end());

  Structure s = commutantStructure(mod);
  r.dimCommutant = s.dimension;
  if (mod.algebraBasis.empty()) {
    r.dimBicommutant = bicommutantDimension(s, r.notes);
    r.notes.push_back("A is infinite-dimensional; dimensions reported without a reference value");
    r.verdict = r.relations ? Verdict::skipped : Verdict::fail;
    return r;
  }
  try {
    r.splitting = splittingWitness(mod);
  } catch (const std::invalid_argument& e) {
    r.notes.push_back(std::string("faithfulness precondition fails: ") + e.what());
    r.dimImage = imageDimensionOn(mod, s.comps);
    r.verdict = Verdict::skipped;
    return r;
  }
  r.dimImage = imageDimensionOn(mod, s.comps);
  r.faithful = r.dimImage == r.dimA && r.splitting->injective;
  r.dimBicommutant = bicommutantDimension(s, r.notes);

  // every basis image is block diagonal and commutes with S
  r.containment = true;
  for (std::size_t l = 0; l < mod.algebraBasis.size() && r.containment; ++l) {
    const auto& M = mod.algebraBasis[l];
    std::vector<int> comp(mod.dim());
    for (std::size_t c = 0; c < s.comps.size(); ++c)
      for (int a : s.comps[c]) comp[a] = static_cast<int>(c);
    for (std::size_t a = 0; a < mod.dim() && r.containment; ++a)
      for (auto& [b, x] : M.row(a))
        if (comp[a] != comp[b]) r.containment = false;
    std::vector<Dense> blocks;
    for (auto& c : s.comps) blocks.push_back(M.block(c, c));
    for (std::size_t i = 0; i < s.comps.size() && r.containment; ++i)
      for (std::size_t j = 0; j < s.comps.size() && r.containment; ++j)
        for (auto& X : s.hom[i][j])
          if (mul(blocks[i], X) != mul(X, blocks[j])) {
            r.containment = false;
            r.notes.push_back("image of " + mod.algebraLabels[l] + " does not commute with the commutant");
            break;
          }
  }
  bool ok = r.relations && r.faithful && r.containment && r.dimBicommutant == r.dimImage;
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  return r;
}

nlohmann::json SchurReport::toJson() const {
  nlohmann::json j;
  j["instance"] = options.instance;
  j["n"] = points.empty() ? options.n : points[0].n;
  j["d"] = points.empty() ? options.d : points[0].d;
  j["seed"] = seed;
  j["points"] = nlohmann::json::array();
  for (auto& p : points) j["points"].push_back(p.toJson());
  if (!points.empty()) {
    j["dim_T"] = points[0].dimT;
    j["dim_commutant"] = points[0].dimCommutant;
    j["dim_bicommutant"] = points[0].toJson()["dim_bicommutant"];
    j["faithful"] = std::all_of(points.begin(), points.end(), [](auto& p) { return p.faithful; });
  }
  j["verdict"] = verdictStr(verdict);
  return j;
}

SchurReport schurDuality(const SchurOptions& opt, std::uint64_t seed, int points) {
  SchurReport rep;
  rep.options = opt;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < points; ++k) rep.points.push_back(doubleCentralizerCheck(buildTensorModule(opt, rng)));
  bool anyFail = false, allPass = !rep.points.empty();
  for (auto& p : rep.points) {
    anyFail = anyFail || p.verdict == Verdict::fail;
    allPass = allPass && p.verdict == Verdict::pass;
  }
  for (auto& p : rep.points)
    if (p.dimCommutant != rep.points[0].dimCommutant || p.dimBicommutant != rep.points[0].dimBicommutant) {
      anyFail = true;
      rep.points[0].notes.push_back("dimensions differ between points");
    }
  rep.verdict = anyFail ? Verdict::fail : allPass ? Verdict::pass : Verdict::skipped;
  return rep;
}

}  // namespace qw
