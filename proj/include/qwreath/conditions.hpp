#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qwreath/qwp.hpp"

namespace qw {

enum class Verdict { pass, fail, skipped };
std::string verdictStr(Verdict v);

struct ConditionResult {
  std::string id;
  std::string description;
  Verdict verdict = Verdict::pass;
  int level = -1;  // ℓ for grand-loop statements
  std::size_t checked = 0;
  // Set on failure: the input and both sides.
  std::string witness, lhs, rhs;
};

struct ConditionReport {
  std::string instance;
  std::string checker;
  int d = 0;
  int window = 0;  // truncation of a monomial base, 0 for finite bases
  int radius = 0;  // exponent bound of the inputs
  std::string certification;  // "exhaustive" or "window-certified"
  std::vector<ConditionResult> results;
  std::vector<std::string> skipped;
  std::vector<std::string> notes;

  bool passed() const;
  const ConditionResult* find(const std::string& id, int level = -1) const;
  const ConditionResult* firstFailure() const;
  nlohmann::json toJson() const;
};

// Direct evaluation of the defining conditions on Q. Infinite bases are sampled
// on monomials with exponents up to `radius` (default window/2).
ConditionReport checkParameterConditions(const Instance& inst, int d, std::optional<int> radius = std::nullopt);

// σ = flip and ρ = 0: R = σ(R), (σ(S) - S)R = 0, bS = Sσ(b), and bR = Rb.
ConditionReport checkFlipSimplification(const Instance& inst, std::optional<int> radius = std::nullopt);

// The operators f_a, T_i on V = B^{⊗d} ⊗ KΣ_d built recursively from a compatible
// family of reduced words, checked against W, M, Q, B2, B3, R on 1⊗w with ℓ(w) <= ℓ,
// together with compatibility of the levels and linearity in a.
// lmax < 0 means ℓ(w_0).
ConditionReport grandLoopVerify(const Instance& inst, int d, int lmax = -1, std::optional<int> radius = std::nullopt);

struct OracleReport {
  std::string instance;
  int d = 0;
  std::string mode;           // "all triples", "generator triples", "quotient"
  std::string certification;  // "exhaustive", "window-certified", "prime-field point"
  std::size_t dimension = 0;  // |I|^d d!, or the quotient dimension; 0 for infinite bases
  std::size_t keys = 0;       // basis elements used
  std::size_t checked = 0;
  bool associative = false, unital = false, relations = false;
  std::string witness, lhs, rhs;
  std::vector<std::string> notes;

  bool passed() const { return associative && unital && relations; }
  nlohmann::json toJson() const;
};

// Multiplication on the proposed basis {b H_w} via the normal form, checked for
// associativity, the unit and the defining relations. For finite B with more than
// 66 basis elements, triples (x, y, g) with g in a generating set are checked; this
// is equivalent because every basis element is a left-nested product of generators.
OracleReport associativityOracle(const Instance& inst, int d, std::optional<int> radius = std::nullopt);
// Ariki–Koike algebra at prime-field points chosen from the seed.
OracleReport arikiKoikeOracle(int m, int d, std::uint64_t seed = 1, int points = 2);

struct Mutant {
  std::string name;
  std::string description;
  Instance instance;
  int d = 2;
};
std::vector<Mutant> conditionMutants();

struct MutantOutcome {
  std::string name;
  bool parameterRejected = false, grandLoopRejected = false, oracleRejected = false;
  std::string detail;  // first failing condition
  bool rejected() const { return parameterRejected || grandLoopRejected || oracleRejected; }
};
MutantOutcome runMutant(const Mutant& m);

}  // namespace qw
