#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qwreath/hecke_algebra.hpp"
#include "qwreath/linalg.hpp"

namespace qw {

// Linear combination scale * Σ words, kept unexpanded for display.
struct WordSum {
  Scalar scale = 1;
  std::vector<IWord> terms;

  HElem evaluate(HeckeAlgebraPtr<Scalar> alg) const;
  WordSum star() const;
  std::string str() const;
};

// Bar involution data for a symbolic type A algebra, computed lazily on
// Bruhat lower ideals. Two bar-invariant unitriangular bases are offered:
//   upper: b ∈ I_w + Σ_{y<w} vZ[v] I_y
//   lower: b ∈ I_w + Σ_{y<w} v^-1 Z[v^-1] I_y
class BarBasisTable {
 public:
  enum class Kind { upper, lower };
  explicit BarBasisTable(HeckeAlgebraPtr<Scalar> alg);

  const HElem& barOfI(int w);
  const HElem& element(Kind kind, int w);
  // Expansion of a bar-invariant element; throws if x is not bar-invariant.
  std::map<int, Scalar> expand(Kind kind, const HElem& x);

 private:
  HeckeAlgebraPtr<Scalar> alg_;
  std::recursive_mutex mu_;
  std::map<int, HElem> bar_;
  std::map<std::pair<int, int>, HElem> basis_;
};

// Paper-facing names: the canonical basis b_w uses the lower normalization
// and the dual canonical basis c_w the upper one.
inline constexpr BarBasisTable::Kind kCanonical = BarBasisTable::Kind::lower;
inline constexpr BarBasisTable::Kind kDualCanonical = BarBasisTable::Kind::upper;

std::string strBasisExpansion(const CoxeterGroup& g, const std::map<int, Scalar>& coeffs, const std::string& symbol);

// ---- type B Jucys–Murphy elements in H_{(Q,q)}(W(B_N))

template <class R>
HeckeElement<R> jucysMurphy(HeckeAlgebraPtr<R> alg, int k, int sign);
template <class R>
HeckeElement<R> jucysMurphyFactor(HeckeAlgebraPtr<R> alg, int i, int sign);

struct IdentityCheck {
  std::string name;
  bool holds = false;
};
// Commutation of u_j^+ with T_i (i != j) and u_i^+ T_{i→0} = (u_{i+1}^+ - q^i u_i^+) T_{1→i}^{-1}.
std::vector<IdentityCheck> lemmaUIdentities(int N);

// ---- Hu algebra toolchain in H_q(Σ_{2m}) with q = v^2

HeckeAlgebraPtr<Scalar> huAmbient(int m);
IWord signedChain(int a, int b, bool barred);   // I^{±}_{a→b}
IWord cWord(int m, int i);                       // c_{m,i}
WordSum hRecursion(int m);
WordSum H1ClosedFormula(int m);
WordSum hDisplayed2();                           // the h_2 display as printed in the literature
HElem hElement(int m);
HElem H1Element(int m);
HElem zmm(int m);
std::vector<int> parabolicElements(int m);       // Σ_m × Σ_m inside Σ_{2m}
bool inParabolic(const CoxeterGroup& g, int w, int m);

struct GammaC {
  HElem gamma, C;
  bool CisGammaSquared = false;
  bool longestFactorization = false;  // I_{w0(m)} = I_{w0(m-1)} I_{m-1→1}
};
GammaC gammaAndC(int m);
HElem CEpsilon(int m, const std::vector<bool>& minusSigns);
HElem b1(int m);

struct HuBases {
  int m = 0;
  std::vector<int> parabolic;           // w ∈ Σ_m × Σ_m
  std::vector<HElem> standard;          // I_w then I_w b_1
  std::vector<HElem> barInvariant;      // b_w then b_w b_1
  std::vector<std::string> labels;
};
HuBases huBases(int m);

// Rank over Q of Laurent-coefficient vectors after normalizing each by its
// v-parity and substituting v^2 = q -> qValue. Throws when an element mixes parities.
std::size_t rankAtQ(const std::vector<HElem>& xs, const Rational& qValue);
template <class F>
HeckeElement<F> specializeEven(const HElem& x, HeckeAlgebraPtr<F> target, const F& qValue, int* parityShift = nullptr);

struct Membership {
  bool member = false;
  std::vector<Scalar> coordinates;  // w.r.t. huBases(m).standard
  std::string note;
};
Membership huMembership(const HElem& x, int m, uint64_t seed = 1);

// h_m from its defining property inside H_{(1,q)}(W(B_{2m})) at a field point.
template <class F>
struct TypeBOracle {
  bool unique = false;
  std::vector<F> coefficients;  // T-basis of Σ_{2m}, group index order
};
template <class F>
TypeBOracle<F> hmTypeBOracle(int m, const F& q);

struct GeneralizedHu {
  int m = 0, d = 0;
  HeckeAlgebraPtr<Scalar> algebra;
  std::vector<HElem> H;  // H_1 .. H_{d-1}
  std::optional<bool> modifiedBraidHolds;  // m == 1 only
  std::vector<HElem> braidDefects;         // H_iH_{i+1}H_i - H_{i+1}H_iH_{i+1}
};
GeneralizedHu generalizedHu(int m, int d);

}  // namespace qw
