#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qwreath/coeff.hpp"
#include "qwreath/sparse.hpp"

namespace qw {

struct WindowOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UndeclaredFunctional : std::logic_error {
  using std::logic_error::logic_error;
};

using BaseElement = Lin<int>;
// Element of B^{⊗n}: keys are index vectors of length n.
using TensorIndex = std::vector<int>;
using Tensor = Lin<TensorIndex>;

// Exponent bound N for infinite monomial bases: QWREATH_WINDOW, else 16.
int defaultWindow();

// Base algebra with a distinguished basis indexed by integers. Finite kinds
// use 0..dim-1; monomial kinds use the exponent of X, bounded by a window.
class BaseAlgebra {
 public:
  enum class Domain { finite, laurent, polynomial };

  virtual ~BaseAlgebra() = default;

  const std::string& kind() const { return kind_; }
  Domain domain() const { return domain_; }
  bool finite() const { return domain_ == Domain::finite; }
  bool monomial() const { return !finite(); }
  int dimension() const;
  int window() const { return window_; }
  int unitIndex() const { return unit_; }
  bool contains(int i) const;
  void require(int i) const;  // throws WindowOverflow outside the domain

  // Finite: all basis indices. Monomial: exponents with |e| <= radius (and e >= 0 for polynomials).
  std::vector<int> basis() const { return basisWithin(window_); }
  std::vector<int> basisWithin(int radius) const;
  // Algebra generators as basis indices (X, and X^-1 for Laurent; all of the basis otherwise).
  virtual std::vector<int> generators() const;

  virtual BaseElement mulBasis(int i, int j) const = 0;
  BaseElement mul(const BaseElement& x, const BaseElement& y) const;
  BaseElement one() const { return BaseElement::term(unit_); }

  virtual std::optional<Scalar> counitOf(int) const { return std::nullopt; }
  virtual std::optional<Scalar> traceOf(int) const { return std::nullopt; }
  bool hasCounit() const { return counitOf(unit_).has_value(); }
  bool hasTrace() const { return traceOf(unit_).has_value(); }
  Scalar counit(const BaseElement& x) const;
  Scalar trace(const BaseElement& x) const;

  virtual std::string label(int i) const = 0;
  virtual int parseLabel(std::string_view text) const;
  std::string str(const BaseElement& x) const;

 protected:
  BaseAlgebra(std::string kind, Domain d, int dimOrWindow, int unit);
  std::string kind_;
  Domain domain_;
  int size_ = 0;  // dimension (finite) or window (monomial)
  int window_ = 0;
  int unit_ = 0;
};

using BaseAlgebraPtr = std::shared_ptr<const BaseAlgebra>;

// K[X^{±1}] and K[X], basis X^e.
BaseAlgebraPtr laurentRing(int window = defaultWindow());
BaseAlgebraPtr polyRing(int window = defaultWindow());
// K[X]/∏(X - params_i), basis 1, X, ..., X^{m-1}.
BaseAlgebraPtr cyclotomicQuotient(const std::vector<Scalar>& params);
BaseAlgebraPtr cyclotomicQuotient(int m);  // parameters q1..qm
// Group algebra of C_m with counit x -> 1 and trace δ_{g,1}.
BaseAlgebraPtr groupAlgebraCyclic(int m);
// H_q(Σ_m) with basis T_w (group index order), counit T_i -> q, trace T_w -> δ_{w,1}.
// With sqrtV the parameter is q = v^2.
BaseAlgebraPtr heckeSymmetric(int m, bool sqrtV = false);
// The ground ring K.
BaseAlgebraPtr groundRing();

// Generic finite-dimensional algebra. table[i][j] = b_i b_j. Rejects tables that are
// not associative or whose unit is not two-sided (std::invalid_argument).
struct StructureData {
  int dim = 0;
  int unit = 0;
  std::vector<std::vector<BaseElement>> table;
  std::vector<std::string> labels;
  std::optional<std::vector<Scalar>> counit, trace;
};
BaseAlgebraPtr structureConstants(StructureData data, std::string kind = "structure_constants");
// Frobenius data: dual basis {b^∨} with tr(b_i^∨ b_j) = δ_ij. Finite kinds with a trace
// whose Gram matrix is invertible over the coefficient ring; nullopt otherwise.
std::optional<std::vector<BaseElement>> dualBasis(const BaseAlgebra& b);
// Σ_b b ⊗ b^∨.
Tensor casimir(const BaseAlgebra& b);

// Instance from a JSON description: {"kind": ..., params}.
BaseAlgebraPtr makeInstance(const std::string& jsonText);

// ---- tensor powers B^{⊗n}

Tensor pureTensor(const TensorIndex& idx, const Scalar& c = Scalar(1));
Tensor unitTensor(const BaseAlgebra& b, int n);
Tensor tensorMul(const BaseAlgebra& b, const Tensor& x, const Tensor& y);
// Z ∈ B⊗B placed at slots (i, i+1) of B^{⊗n} (1-based i).
Tensor embedPair(const BaseAlgebra& b, const Tensor& z, int i, int n);
// x ∈ B placed at slot j.
Tensor embedSingle(const BaseAlgebra& b, const BaseElement& x, int j, int n);
Scalar tensorCounit(const BaseAlgebra& b, const Tensor& x);
Scalar tensorTrace(const BaseAlgebra& b, const Tensor& x);
Tensor flipPair(const Tensor& x);
std::string tensorStr(const BaseAlgebra& b, const Tensor& x);
std::string tensorIndexStr(const BaseAlgebra& b, const TensorIndex& idx);

// Demazure operator ∂(X^a ⊗ X^b) = (X^a⊗X^b - X^b⊗X^a)/(X⊗1 - 1⊗X) on exponent pairs.
Tensor demazure(int a, int b);
// Linear extension of ∂ to B⊗B for a monomial base (checks the window).
Tensor demazure(const BaseAlgebra& b, const Tensor& x);

}  // namespace qw
