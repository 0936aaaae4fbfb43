#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qwreath/conditions.hpp"
#include "qwreath/linalg.hpp"

namespace qw {

// Square sparse matrix over the prime field acting on row vectors: v_a·M = Σ_b M[a][b] v_b.
class SparseMatrix {
 public:
  using Row = std::vector<std::pair<int, Fp>>;

  explicit SparseMatrix(std::size_t n = 0) : rows_(n) {}
  static SparseMatrix identity(std::size_t n);

  std::size_t dim() const { return rows_.size(); }
  const Row& row(std::size_t a) const { return rows_[a]; }
  // Replaces row a; entries may repeat and are merged.
  void setRow(std::size_t a, Row r);
  std::size_t nonzeros() const;
  bool isZero() const;

  friend SparseMatrix operator*(const SparseMatrix& x, const SparseMatrix& y);  // v·x·y
  friend SparseMatrix operator+(const SparseMatrix& x, const SparseMatrix& y);
  friend SparseMatrix operator-(const SparseMatrix& x, const SparseMatrix& y);
  friend SparseMatrix operator*(Fp c, const SparseMatrix& x);
  friend bool operator==(const SparseMatrix& x, const SparseMatrix& y) = default;

  std::vector<Fp> apply(const std::vector<Fp>& v) const;  // v·M
  Matrix<Fp> block(const std::vector<int>& rows, const std::vector<int>& cols) const;
  std::vector<Fp> flatten() const;  // row-major dense entries

 private:
  std::vector<Row> rows_;
};

struct RelationProbe {
  std::string name;
  bool holds = false;
};

// V^{⊗d} with generator matrices at one prime-field point. Windowed modules are the
// quotient by tensors with a factor index above the window.
struct TensorModule {
  std::string instance;
  int n = 0, d = 0, m = 0;
  int factorDim = 0;
  int window = 0;
  std::string point;
  std::vector<std::vector<int>> basis;  // factor indices μ, 1-based
  std::vector<std::pair<std::string, SparseMatrix>> generators;
  std::vector<SparseMatrix> algebraBasis;  // images of a basis of A; empty for infinite A
  std::vector<std::string> algebraLabels;
  std::size_t algebraDim = 0;              // dim A, 0 when infinite
  std::optional<std::vector<int>> splittingTuple;  // μ spread over distinct summands
  std::vector<RelationProbe> relations;
  std::vector<std::string> notes;

  std::size_t dim() const { return basis.size(); }
  bool relationsHold() const;
  std::size_t indexOf(const std::vector<int>& mu) const;
  std::string vectorStr(const std::vector<Fp>& v) const;
};

// v_μ·H_i in V(n)^{⊗d} with the root r = q on equal indices.
std::vector<std::pair<std::vector<int>, Scalar>> heckeTensorAction(const std::vector<int>& mu, int i);

TensorModule heckeTensorModule(int n, int d, Fp q);
TensorModule huTensorModule(int m, int n, Fp v);  // V(n)^{⊗2m}, q = v^2
TensorModule arikiKoikeTensorModule(int m, int n, int d, Fp q, const std::vector<Fp>& qs);
TensorModule wreathGroupTensorModule(int m, int n, int d);  // B = KC_m, S = 0, R = 1⊗1
TensorModule affineTensorModule(int n, int d, int window, Fp q);
TensorModule degenerateTensorModule(int n, int d, int window);
TensorModule scalarModule(int dimension);  // K acting by scalars

struct SchurOptions {
  std::string instance = "heckeA";
  int m = 2, n = 2, d = 2;
  int window = 0;  // windowed instances; 0 picks n*(d+1)
};
// Module at a random point drawn from rng.
TensorModule buildTensorModule(const SchurOptions& opt, std::mt19937_64& rng);
std::vector<std::string> schurInstances();

struct SplittingWitness {
  std::vector<int> mu;
  std::size_t dimW = 0, dimA = 0, complement = 0;
  bool injective = false;   // a ↦ v_μ·a has rank dim A
  bool projection = false;  // an A-linear idempotent of T with image W(μ) exists
  std::vector<std::string> psi;  // "v_μ·a ↦ a" on the algebra basis
};
// Throws std::invalid_argument when no μ with distinct summands exists.
SplittingWitness splittingWitness(const TensorModule& mod);

struct HomBlock {
  int from = 0, to = 0;         // components
  std::vector<Matrix<Fp>> maps;  // |C_from| × |C_to|
};
struct Commutant {
  std::vector<std::vector<int>> components;  // A-stable coordinate blocks
  std::vector<HomBlock> blocks;
  std::size_t dimension = 0;
};
constexpr std::size_t kCommutantSizeGuard = 5000;
Commutant commutant(const TensorModule& mod);
// Dense solve of X M_g = M_g X over all of End(T); small modules only.
std::size_t bruteForceCommutantDimension(const TensorModule& mod);
std::size_t imageDimension(const TensorModule& mod);

struct DoubleCentralizer {
  std::string instance, point;
  int n = 0, d = 0, m = 0;
  std::size_t dimT = 0, dimA = 0, dimImage = 0, dimCommutant = 0, dimBicommutant = 0;
  bool relations = false, faithful = false, containment = false;
  Verdict verdict = Verdict::skipped;
  std::optional<SplittingWitness> splitting;
  std::vector<std::string> notes;

  nlohmann::json toJson() const;
};
DoubleCentralizer doubleCentralizerCheck(const TensorModule& mod);

struct SchurReport {
  SchurOptions options;
  std::uint64_t seed = 0;
  std::vector<DoubleCentralizer> points;
  Verdict verdict = Verdict::skipped;

  nlohmann::json toJson() const;
};
SchurReport schurDuality(const SchurOptions& opt, std::uint64_t seed, int points = 2);

}  // namespace qw
