#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qwreath/base_alg.hpp"
#include "qwreath/hecke_algebra.hpp"
#include "qwreath/linalg.hpp"
#include "qwreath/perm.hpp"

namespace qw {

// Q = (R, S, ρ, σ). σ and ρ are given on basis pairs of B⊗B and extended linearly.
struct ParamChoice {
  using PairMap = std::function<Tensor(int, int)>;

  std::string name;
  Tensor R, S;
  PairMap sigma, rho;
  PairMap sigmaInverse;  // optional; the flip is its own inverse
  bool sigmaIsFlip = false;
  bool rhoIsZero = false;
  std::optional<Tensor> demazureBeta;  // ρ = ∂(·)β

  Tensor applySigma(const Tensor& x) const;
  Tensor applyRho(const Tensor& x) const;
  Tensor applySigmaInverse(const Tensor& x) const;
};

// σ = flip, ρ = 0.
ParamChoice flipParams(std::string name, Tensor R, Tensor S);
// σ = flip, ρ(X^a⊗X^b) = ∂(X^a⊗X^b)β on a monomial base.
ParamChoice demazureParams(std::string name, BaseAlgebraPtr base, Tensor R, Tensor S, Tensor beta);

struct Instance {
  std::string name;
  BaseAlgebraPtr base;
  ParamChoice params;
};

Instance heckeInstance();                       // B = K, R = q, S = q-1
Instance yokonumaInstance(int m);               // B = KC_m, R = 1⊗1, S = z Σ b⊗b^∨
Instance degenerateAffineInstance(int window);  // K[X], R = 1⊗1, S = 0, ρ = -∂
Instance nilHeckeInstance(int window);          // K[X], R = 0, S = 0, ρ = -∂
Instance affineInstance(int window);            // K[X^{±1}], R = q, S = q-1, ρ = -(q-1)∂(·)(1⊗X)
Instance affinePolynomialInstance(int window);  // the same parameters on K[X]
Instance huInstance(int m);                     // H_q(Σ_m), R = z_{m,m}, S = 0, flip, ρ = 0
// The affine parameters pushed to K[X]/∏(X - q_i) termwise; not a flat choice in general.
Instance cyclotomicNaiveInstance(int m);
Instance namedInstance(const std::string& name, int window = defaultWindow());
std::vector<std::string> instanceNames();

using QwpKey = std::pair<TensorIndex, int>;  // (b_λ, w)
using QwpTerms = Lin<QwpKey>;

enum class Form { right, left };  // right: b·H_w, left: H_w·b

struct QwpElement {
  Form form = Form::right;
  QwpTerms terms;

  bool isZero() const { return terms.isZero(); }
  friend bool operator==(const QwpElement& a, const QwpElement& b) { return a.form == b.form && a.terms == b.terms; }
};

struct NormalFormDivergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class QuantumWreathProduct {
 public:
  QuantumWreathProduct(BaseAlgebraPtr base, ParamChoice params, int d);
  QuantumWreathProduct(const Instance& inst, int d) : QuantumWreathProduct(inst.base, inst.params, d) {}

  const BaseAlgebra& base() const { return *base_; }
  BaseAlgebraPtr basePtr() const { return base_; }
  const ParamChoice& params() const { return q_; }
  int d() const { return d_; }
  const CoxeterGroup& group() const { return *group_; }

  // Z_i and φ_i of the local data, acting on B^{⊗d}.
  const Tensor& Ri(int i) const { return R_.at(i); }
  const Tensor& Si(int i) const { return S_.at(i); }
  Tensor sigmaAt(int i, const Tensor& b) const;
  Tensor rhoAt(int i, const Tensor& b) const;
  Tensor sigmaInverseAt(int i, const Tensor& b) const;
  Tensor mulTensor(const Tensor& x, const Tensor& y) const { return tensorMul(*base_, x, y); }
  Tensor unit() const { return unitTensor(*base_, d_); }
  // σ_w = σ_{i1}∘…∘σ_{iN} along the compatible reduced word of w.
  Tensor sigmaW(int w, const Tensor& b) const;

  QwpElement one() const { return fromTensor(unit()); }
  QwpElement fromTensor(const Tensor& b, int w = 0) const;
  QwpElement H(int i) const;
  QwpElement Hw(int w) const;
  QwpElement scalar(const Scalar& c) const;
  QwpElement X(int slot, int exponent = 1) const;  // X^{(slot)} on a monomial base

  QwpElement add(const QwpElement& x, const QwpElement& y) const;
  QwpElement scale(const Scalar& c, const QwpElement& x) const;
  QwpElement multiply(const QwpElement& x, const QwpElement& y) const;
  // H_i · x and x · H_i (right forms).
  QwpElement leftMulH(int i, const QwpElement& x) const;
  QwpElement rightMulH(const QwpElement& x, int i) const;

  QwpElement toLeftForm(const QwpElement& x) const;
  QwpElement toRightForm(const QwpElement& x) const;

  // tr(b H_w) = tr(b) if w = 1, else 0; β_A(x, y) = tr(xy).
  Scalar trace(const QwpElement& x) const;
  Scalar traceForm(const QwpElement& x, const QwpElement& y) const;
  // Preconditions of the symmetric trace form; empty when all hold.
  std::vector<std::string> traceFormObstructions() const;

  // Basis {b_λ H_w}; monomial bases use exponents with |e| <= radius.
  std::vector<QwpKey> basisKeys(int radius = 0) const;
  std::size_t finiteDimension() const;  // |I|^d d! for finite B

  std::string str(const QwpElement& x) const;
  std::string keyStr(const QwpKey& k, Form form) const;
  // Products and sums of H1, H[s1 s2], H[[2,1,3]], (a⊗b⊗…), scalars and parentheses.
  QwpElement parse(std::string_view text) const;

 private:
  BaseAlgebraPtr base_;
  ParamChoice q_;
  int d_;
  std::shared_ptr<const CoxeterGroup> group_;
  std::map<int, Tensor> R_, S_;

  mutable std::mutex cacheMu_;
  mutable std::map<std::tuple<int, TensorIndex, int>, QwpTerms> leftCache_;

  Tensor applyLocal(int i, const Tensor& b, const ParamChoice::PairMap& f) const;
  const QwpTerms& leftMulHTerm(int i, const TensorIndex& b, int w) const;
  QwpTerms rightMulHLeft(const TensorIndex& b, int u, int i, int depth) const;
};

using QwpPtr = std::shared_ptr<const QuantumWreathProduct>;

template <class F>
std::map<QwpKey, F> specializeElement(const QwpElement& x, const Specialization& s);

// ---- augmentation quotient A // B^{⊗d}

struct AugmentationQuotient {
  bool valid = false;
  std::string note;
  int dimension = 0;
  Scalar epsS, epsR;  // T̄_i^2 = ε(S) T̄_i + ε(R)
  bool quadraticHolds = false;
  bool normal = false;  // π(H_i b) = ε(b) π(H_i) on basis b
};
// Reduction π(b H_w) = ε(b) T̄_w, coefficients indexed by w.
Lin<int> reduceThroughCounit(const QuantumWreathProduct& A, const QwpElement& x);
AugmentationQuotient quotientAugmentation(const QuantumWreathProduct& A, std::optional<Scalar> h = std::nullopt);
// Product in A//B computed by lifting T̄_w to H_w.
Lin<int> quotientMultiply(const QuantumWreathProduct& A, const Lin<int>& x, const Lin<int>& y);

// ---- finite quotients specialised to a prime field

struct FiniteAlgebraFp {
  std::vector<std::string> labels;
  std::vector<std::vector<std::vector<Fp>>> table;  // table[a][b] = coordinates of e_a e_b
  int unit = 0;
  int dim() const { return static_cast<int>(labels.size()); }
  std::vector<Fp> mul(const std::vector<Fp>& x, const std::vector<Fp>& y) const;
  std::vector<Fp> basisVector(int a) const;
  // First failing triple, or nullopt when associative.
  std::optional<std::array<int, 3>> associativityWitness() const;
};

struct CyclotomicQuotient {
  int m = 0, d = 0;
  bool exact = false;        // quotient of V_D has exactly m^d d! dimensions
  int degreeBound = 0;       // D
  int generatorDegree = 0;   // D' used for the ideal
  FiniteAlgebraFp algebra;   // basis X^λ H_w with 0 <= λ_i < m
  std::vector<QwpKey> keys;
  // Coordinates of an element of the polynomial affine algebra in the quotient.
  std::function<std::optional<std::vector<Fp>>(const QwpElement&)> reduce;
};
// Ariki–Koike algebra as the quotient of K[X] ≀ H(d) (affine parameters) by the
// two-sided ideal generated by ∏(X - q_i) ⊗ 1^{⊗ d-1}, at a prime-field point.
CyclotomicQuotient arikiKoikeQuotient(int m, int d, const Specialization& point);

// ---- Hu algebra A(m) against H_q(Σ_m) ≀ H(2)

// T_w for w ∈ Σ_m × Σ_m ⊂ Σ_{2m} mapped to T_u ⊗ T_{u'} (symbolic, q = v^2).
Tensor splitParabolic(const HeckeElement<Scalar>& x, int m);

struct HuIsoReport {
  int m = 0;
  std::size_t dimQwp = 0, dimHu = 0;
  bool wreathRelations = false;  // H1 (T_x⊗T_y) = (T_y⊗T_x) H1 on both sides
  bool quadratic = false;        // H1^2 = z_{m,m} on both sides
  bool parabolicProducts = false;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty() && dimQwp == dimHu; }
};
HuIsoReport huIsoToQwp(int m);

}  // namespace qw
