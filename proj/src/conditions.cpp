#include "qwreath/conditions.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

namespace qw {

std::string verdictStr(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::skipped: return "skipped";
  }
  return "?";
}

bool ConditionReport::passed() const {
  return std::none_of(results.begin(), results.end(), [](auto& r) { return r.verdict == Verdict::fail; });
}

const ConditionResult* ConditionReport::find(const std::string& id, int level) const {
  for (auto& r : results)
    if (r.id == id && (level < 0 || r.level == level)) return &r;
  return nullptr;
}

const ConditionResult* ConditionReport::firstFailure() const {
  for (auto& r : results)
    if (r.verdict == Verdict::fail) return &r;
  return nullptr;
}

nlohmann::json ConditionReport::toJson() const {
  nlohmann::json j;
  j["instance"] = instance;
  j["checker"] = checker;
  j["d"] = d;
  j["window"] = window;
  j["radius"] = radius;
  j["certification"] = certification;
  j["passed"] = passed();
  auto& rs = j["results"] = nlohmann::json::array();
  for (auto& r : results) {
    nlohmann::json x{{"id", r.id}, {"description", r.description}, {"verdict", verdictStr(r.verdict)}, {"checked", r.checked}};
    if (r.level >= 0) x["level"] = r.level;
    if (r.verdict == Verdict::fail) {
      x["witness"] = r.witness;
      x["lhs"] = r.lhs;
      x["rhs"] = r.rhs;
    }
    rs.push_back(std::move(x));
  }
  j["skipped"] = skipped;
  j["notes"] = notes;
  return j;
}

nlohmann::json OracleReport::toJson() const {
  nlohmann::json j{{"instance", instance},   {"d", d},
                   {"mode", mode},           {"certification", certification},
                   {"dimension", dimension}, {"keys", keys},
                   {"checked", checked},     {"associative", associative},
                   {"unital", unital},       {"relations", relations},
                   {"passed", passed()},     {"notes", notes}};
  if (!witness.empty()) {
    j["witness"] = witness;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
  }
  return j;
}

namespace {

struct Failure {
  std::string witness, lhs, rhs;
};

// Runs fn(0..n-1) on all hardware threads; returns the failure with the smallest index.
std::optional<Failure> firstFailing(std::size_t n, const std::function<std::optional<Failure>(std::size_t)>& fn) {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{n};
  std::mutex mu;
  std::optional<Failure> found;
  std::exception_ptr error;
  auto work = [&] {
    try {
      for (;;) {
        std::size_t k = next++;
        if (k >= n || k > best.load()) return;
        if (auto f = fn(k)) {
          std::lock_guard lock(mu);
          if (k < best) {
            best = k;
            found = std::move(f);
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!error) error = std::current_exception();
      next = n;
    }
  };
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return found;
}

std::vector<TensorIndex> tensorsOver(const std::vector<int>& idx, int n) {
  std::vector<TensorIndex> out{{}};
  for (int s = 0; s < n; ++s) {
    std::vector<TensorIndex> next;
    for (auto& t : out)
      for (int i : idx) {
        auto u = t;
        u.push_back(i);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<int> sampleIndices(const BaseAlgebra& B, int radius) { return B.finite() ? B.basis() : B.basisWithin(radius); }

// b placed in one slot, 1 elsewhere, for every non-unit algebra generator b.
std::vector<TensorIndex> slotGenerators(const BaseAlgebra& B, int n) {
  std::vector<TensorIndex> out;
  for (int s = 0; s < n; ++s)
    for (int g : B.generators()) {
      if (g == B.unitIndex()) continue;
      TensorIndex t(n, B.unitIndex());
      t[s] = g;
      out.push_back(std::move(t));
    }
  return out;
}

int defaultRadius(const BaseAlgebra& B, int divisor) { return B.finite() ? 0 : std::max(1, B.window() / divisor); }

bool flipShaped(const ParamChoice& q) { return q.sigmaIsFlip && q.rhoIsZero; }

// ------------------------------------------------------------ parameter conditions

class EquationRunner {
 public:
  EquationRunner(ConditionReport& rep, const BaseAlgebra& B) : rep_(rep), B_(B) {}

  template <class In>
  void run(const std::string& id, const std::string& desc, const std::vector<In>& inputs,
           const std::function<std::pair<Tensor, Tensor>(const In&)>& eval,
           const std::function<std::string(const In&)>& show) {
    ConditionResult r;
    r.id = id;
    r.description = desc;
    r.checked = inputs.size();
    auto f = firstFailing(inputs.size(), [&](std::size_t k) -> std::optional<Failure> {
      auto [lhs, rhs] = eval(inputs[k]);
      if (lhs == rhs) return std::nullopt;
      return Failure{show(inputs[k]), tensorStr(B_, lhs), tensorStr(B_, rhs)};
    });
    if (f) {
      r.verdict = Verdict::fail;
      r.witness = f->witness;
      r.lhs = f->lhs.empty() ? "0" : f->lhs;
      r.rhs = f->rhs.empty() ? "0" : f->rhs;
    }
    rep_.results.push_back(std::move(r));
  }

  void single(const std::string& id, const std::string& desc, const std::function<std::pair<Tensor, Tensor>()>& eval,
              const std::string& witness = "parameters") {
    std::vector<int> one{0};
    run<int>(id, desc, one, [&](const int&) { return eval(); }, [&](const int&) { return witness; });
  }

 private:
  ConditionReport& rep_;
  const BaseAlgebra& B_;
};

const std::vector<std::string>& braidIds() {
  static const std::vector<std::string> ids{"braid-sigma",    "braid-rho-sigma", "braid-rho-sigma-rho",
                                            "braid-rho-cubed", "braid-S",        "braid-R",
                                            "braid-rho-kills", "braid-rho-S-sum", "braid-rho-R-sum"};
  return ids;
}

std::string ijStr(int i, int j) { return "(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

}  // namespace

ConditionReport checkParameterConditions(const Instance& inst, int d, std::optional<int> radius) {
  if (d < 2) throw std::invalid_argument("conditions need d >= 2");
  const BaseAlgebra& B = *inst.base;
  ConditionReport rep;
  rep.instance = inst.name;
  rep.checker = "parameters";
  rep.d = d;
  rep.window = B.finite() ? 0 : B.window();
  rep.radius = radius.value_or(defaultRadius(B, 2));
  rep.certification = B.finite() ? "exhaustive" : "window-certified";
  const int r = rep.radius, rHalf = std::max(1, r / 2);

  QuantumWreathProduct A2(inst, 2);
  auto sig = [&](const Tensor& x) { return A2.sigmaAt(1, x); };
  auto rho = [&](const Tensor& x) { return A2.rhoAt(1, x); };
  auto mul = [&](const Tensor& x, const Tensor& y) { return A2.mulTensor(x, y); };
  const Tensor& S = A2.Si(1);
  const Tensor& R = A2.Ri(1);
  const Tensor one = A2.unit();

  std::vector<TensorIndex> singles = tensorsOver(sampleIndices(B, r), 2);
  std::vector<std::pair<TensorIndex, TensorIndex>> pairs;
  {
    auto small = B.finite() ? singles : tensorsOver(sampleIndices(B, rHalf), 2);
    for (auto& a : small)
      for (auto& b : small) pairs.emplace_back(a, b);
    if (!B.finite())
      for (auto& g : slotGenerators(B, 2))
        for (auto& b : singles) {
          pairs.emplace_back(g, b);
          pairs.emplace_back(b, g);
        }
  }
  auto showOne = [&](const TensorIndex& a) { return "b = " + tensorIndexStr(B, a); };
  auto showPair = [&](const std::pair<TensorIndex, TensorIndex>& p) {
    return "a = " + tensorIndexStr(B, p.first) + ", b = " + tensorIndexStr(B, p.second);
  };

  EquationRunner run(rep, B);
  using P = std::pair<TensorIndex, TensorIndex>;
  run.single("sigma-unit", "σ(1⊗1) = 1⊗1", [&] { return std::pair{sig(one), one}; });
  run.single("rho-unit", "ρ(1⊗1) = 0", [&] { return std::pair{rho(one), Tensor()}; });
  run.run<P>(
      "sigma-multiplicative", "σ(ab) = σ(a)σ(b)", pairs,
      [&](const P& p) {
        Tensor a = pureTensor(p.first), b = pureTensor(p.second);
        return std::pair{sig(mul(a, b)), mul(sig(a), sig(b))};
      },
      showPair);
  run.run<P>(
      "rho-twisted-derivation", "ρ(ab) = σ(a)ρ(b) + ρ(a)b", pairs,
      [&](const P& p) {
        Tensor a = pureTensor(p.first), b = pureTensor(p.second);
        return std::pair{rho(mul(a, b)), mul(sig(a), rho(b)) + mul(rho(a), b)};
      },
      showPair);
  run.single("cube-linear", "σ(S)S + ρ(S) + σ(R) = S² + R",
             [&] { return std::pair{mul(sig(S), S) + rho(S) + sig(R), mul(S, S) + R}; });
  run.single("cube-constant", "ρ(R) + σ(S)R = SR", [&] { return std::pair{rho(R) + mul(sig(S), R), mul(S, R)}; });
  run.run<TensorIndex>(
      "square-linear", "σ²(b)S + ρσ(b) + σρ(b) = Sσ(b)", singles,
      [&](const TensorIndex& i) {
        Tensor b = pureTensor(i);
        return std::pair{mul(sig(sig(b)), S) + rho(sig(b)) + sig(rho(b)), mul(S, sig(b))};
      },
      showOne);
  run.run<TensorIndex>(
      "square-constant", "σ²(b)R + ρ²(b) = Sρ(b) + Rb", singles,
      [&](const TensorIndex& i) {
        Tensor b = pureTensor(i);
        return std::pair{mul(sig(sig(b)), R) + rho(rho(b)), mul(S, rho(b)) + mul(R, b)};
      },
      showOne);

  if (d == 2) {
    rep.skipped = braidIds();
    for (auto& id : rep.skipped) {
      ConditionResult s;
      s.id = id;
      s.description = "only required for d >= 3";
      s.verdict = Verdict::skipped;
      rep.results.push_back(std::move(s));
    }
  } else {
    QuantumWreathProduct A3(inst, 3);
    auto sg = [&](int i, const Tensor& x) { return A3.sigmaAt(i, x); };
    auto rh = [&](int i, const Tensor& x) { return A3.rhoAt(i, x); };
    auto m3 = [&](const Tensor& x, const Tensor& y) { return A3.mulTensor(x, y); };
    std::vector<std::tuple<int, int, TensorIndex>> triples;
    for (auto [i, j] : {std::pair{1, 2}, std::pair{2, 1}})
      for (auto& t : tensorsOver(sampleIndices(B, r), 3)) triples.emplace_back(i, j, t);
    using T3 = std::tuple<int, int, TensorIndex>;
    auto show3 = [&](const T3& t) {
      return ijStr(std::get<0>(t), std::get<1>(t)) + ", b = " + tensorIndexStr(B, std::get<2>(t));
    };
    auto op3 = [&](const std::string& id, const std::string& desc,
                   std::function<std::pair<Tensor, Tensor>(int, int, const Tensor&)> f) {
      run.run<T3>(
          id, desc, triples, [&](const T3& t) { return f(std::get<0>(t), std::get<1>(t), pureTensor(std::get<2>(t))); },
          show3);
    };
    op3("braid-sigma", "σ_iσ_jσ_i = σ_jσ_iσ_j", [&](int i, int j, const Tensor& b) {
      return std::pair{sg(i, sg(j, sg(i, b))), sg(j, sg(i, sg(j, b)))};
    });
    op3("braid-rho-sigma", "ρ_iσ_jσ_i = σ_jσ_iρ_j", [&](int i, int j, const Tensor& b) {
      return std::pair{rh(i, sg(j, sg(i, b))), sg(j, sg(i, rh(j, b)))};
    });
    op3("braid-rho-sigma-rho", "ρ_iσ_jρ_i(b) = σ_jρ_iσ_j(b)S_j + ρ_jρ_iσ_j(b) + σ_jρ_iρ_j(b)",
        [&](int i, int j, const Tensor& b) {
          Tensor rhs = m3(sg(j, rh(i, sg(j, b))), A3.Si(j)) + rh(j, rh(i, sg(j, b))) + sg(j, rh(i, rh(j, b)));
          return std::pair{rh(i, sg(j, rh(i, b))), rhs};
        });
    op3("braid-rho-cubed", "ρ_iρ_jρ_i(b) + σ_iρ_jσ_i(b)R_i = ρ_jρ_iρ_j(b) + σ_jρ_iσ_j(b)R_j",
        [&](int i, int j, const Tensor& b) {
          Tensor lhs = rh(i, rh(j, rh(i, b))) + m3(sg(i, rh(j, sg(i, b))), A3.Ri(i));
          Tensor rhs = rh(j, rh(i, rh(j, b))) + m3(sg(j, rh(i, sg(j, b))), A3.Ri(j));
          return std::pair{lhs, rhs};
        });
    std::vector<std::pair<int, int>> ij{{1, 2}, {2, 1}};
    auto showIj = [](const std::pair<int, int>& p) { return ijStr(p.first, p.second); };
    auto onIj = [&](const std::string& id, const std::string& desc,
                    std::function<std::pair<Tensor, Tensor>(int, int)> f) {
      run.run<std::pair<int, int>>(id, desc, ij, [&](const std::pair<int, int>& p) { return f(p.first, p.second); },
                                   showIj);
    };
    onIj("braid-S", "S_i = σ_jσ_i(S_j)", [&](int i, int j) { return std::pair{A3.Si(i), sg(j, sg(i, A3.Si(j)))}; });
    onIj("braid-R", "R_i = σ_jσ_i(R_j)", [&](int i, int j) { return std::pair{A3.Ri(i), sg(j, sg(i, A3.Ri(j)))}; });
    onIj("braid-rho-kills", "ρ_jσ_i(S_j) = 0 = ρ_jσ_i(R_j)", [&](int i, int j) {
      Tensor a = rh(j, sg(i, A3.Si(j))), b = rh(j, sg(i, A3.Ri(j)));
      // both must vanish; report the first non-zero one
      return a.isZero() ? std::pair{b, Tensor()} : std::pair{a, Tensor()};
    });
    onIj("braid-rho-S-sum", "σ_jρ_i(S_j)S_j + ρ_jρ_i(S_j) + σ_jρ_i(R_j) = 0", [&](int i, int j) {
      const Tensor &Sj = A3.Si(j), &Rj = A3.Ri(j);
      return std::pair{m3(sg(j, rh(i, Sj)), Sj) + rh(j, rh(i, Sj)) + sg(j, rh(i, Rj)), Tensor()};
    });
    onIj("braid-rho-R-sum", "ρ_jρ_i(R_j) + σ_jρ_i(S_j)R_j = 0", [&](int i, int j) {
      const Tensor &Sj = A3.Si(j), &Rj = A3.Ri(j);
      return std::pair{rh(j, rh(i, Rj)) + m3(sg(j, rh(i, Sj)), Rj), Tensor()};
    });
  }

  if (flipShaped(inst.params)) {
    std::string n = "σ is the flip and ρ = 0, so the conditions reduce to R = σ(R), (σ(S) - S)R = 0, bS = Sσ(b) and bR = Rb";
    if (inst.params.S.isZero()) n += "; with S = 0 only R = σ(R) and bR = Rb remain";
    rep.notes.push_back(n);
  }
  return rep;
}

ConditionReport checkFlipSimplification(const Instance& inst, std::optional<int> radius) {
  if (!flipShaped(inst.params)) throw std::invalid_argument("the flip simplification needs σ = flip and ρ = 0");
  const BaseAlgebra& B = *inst.base;
  ConditionReport rep;
  rep.instance = inst.name;
  rep.checker = "flip";
  rep.d = 2;
  rep.window = B.finite() ? 0 : B.window();
  rep.radius = radius.value_or(defaultRadius(B, 2));
  rep.certification = B.finite() ? "exhaustive" : "window-certified";
  QuantumWreathProduct A(inst, 2);
  auto mul = [&](const Tensor& x, const Tensor& y) { return A.mulTensor(x, y); };
  const Tensor &S = A.Si(1), &R = A.Ri(1);
  auto singles = tensorsOver(sampleIndices(B, rep.radius), 2);
  auto show = [&](const TensorIndex& a) { return "b = " + tensorIndexStr(B, a); };

  EquationRunner run(rep, B);
  run.single("R-symmetric", "R = σ(R)", [&] { return std::pair{R, flipPair(R)}; });
  run.single("S-R-annihilation", "(σ(S) - S)R = 0", [&] { return std::pair{mul(flipPair(S) - S, R), Tensor()}; });
  run.run<TensorIndex>(
      "S-twisted-commutation", "bS = Sσ(b)", singles,
      [&](const TensorIndex& i) {
        Tensor b = pureTensor(i);
        return std::pair{mul(b, S), mul(S, flipPair(b))};
      },
      show);
  run.run<TensorIndex>(
      "R-central", "bR = Rb", singles,
      [&](const TensorIndex& i) {
        Tensor b = pureTensor(i);
        return std::pair{mul(b, R), mul(R, b)};
      },
      show);
  rep.notes.push_back("bR = Rb is forced by σ²(b)R + ρ²(b) = Sρ(b) + Rb and is checked with the three flip conditions");
  return rep;
}

// ------------------------------------------------------------ grand loop

namespace {

struct LevelError : std::logic_error {
  using std::logic_error::logic_error;
};

// V = B^{⊗d} ⊗ KΣ_d with b⊗w stored under the key (b, w).
class GrandLoop {
 public:
  using Vec = QwpTerms;
  static constexpr int families = 2;

  GrandLoop(const Instance& inst, int d) : A_(inst, d), G_(A_.group()), top_(G_.length(G_.longest())) {
    unitIdx_ = TensorIndex(d, A_.base().unitIndex());
  }

  const QuantumWreathProduct& algebra() const { return A_; }
  int top() const { return top_; }

  // r(w) = r(w s) s: family 0 takes the smallest right descent, family 1 the largest.
  int lastLetter(int fam, int w) const {
    if (fam == 0) return G_.lastLetter(w);
    for (int s = G_.lastGenerator(); s >= G_.firstGenerator(); --s)
      if (G_.length(G_.rmul(w, s)) < G_.length(w)) return s;
    return -1;
  }

  Vec e(int w, const TensorIndex* b = nullptr) const { return Vec::term({b ? *b : unitIdx_, w}); }

  Vec leftTimes(const TensorIndex& b, const Vec& v) const {
    if (b == unitIdx_) return v;
    Vec out;
    Tensor bt = pureTensor(b);
    for (auto& [k, c] : v)
      for (auto& [pk, pc] : A_.mulTensor(bt, pureTensor(k.first))) out.add({pk, k.second}, c * pc);
    return out;
  }

  // (1⊗w)·f_a^{(lvl)}
  const Vec& fUnit(int fam, int lvl, const TensorIndex& a, int w) {
    auto key = std::make_tuple(fam, lvl, a, w);
    if (auto* hit = lookup(fMemo_, key)) return *hit;
    if (G_.length(w) > lvl) throw LevelError("f applied outside its level");
    Vec out;
    if (w == G_.identity()) {
      out = e(w, &a);
    } else {
      int s = lastLetter(fam, w), u = G_.rmul(w, s);
      Tensor at = pureTensor(a);
      out = applyT(fam, lvl - 1, s, applyF(fam, lvl - 1, A_.sigmaAt(s, at), e(u)));
      out += applyF(fam, lvl - 1, A_.rhoAt(s, at), e(u));
    }
    return store(fMemo_, key, std::move(out));
  }

  // (1⊗w)·T_i^{(lvl)}
  const Vec& tUnit(int fam, int lvl, int i, int w) {
    auto key = std::make_tuple(fam, lvl, i, w);
    if (auto* hit = lookup(tMemo_, key)) return *hit;
    if (G_.length(w) > lvl) throw LevelError("T applied outside its level");
    int u = G_.rmul(w, i);
    Vec out;
    if (G_.length(u) > G_.length(w)) {
      out = e(u);
    } else {
      out = applyT(fam, lvl - 1, i, applyF(fam, lvl - 1, A_.Si(i), e(u)));
      out += applyF(fam, lvl - 1, A_.Ri(i), e(u));
    }
    return store(tMemo_, key, std::move(out));
  }

  Vec applyF(int fam, int lvl, const Tensor& a, const Vec& v) {
    Vec out;
    for (auto& [k, c] : v)
      for (auto& [ak, ac] : a) out.addScaled(leftTimes(k.first, fUnit(fam, lvl, ak, k.second)), c * ac);
    return out;
  }

  Vec applyT(int fam, int lvl, int i, const Vec& v) {
    Vec out;
    for (auto& [k, c] : v) out.addScaled(leftTimes(k.first, tUnit(fam, lvl, i, k.second)), c);
    return out;
  }

  Vec F(const Tensor& a, const Vec& v, int fam = 0) { return applyF(fam, top_, a, v); }
  Vec T(int i, const Vec& v, int fam = 0) { return applyT(fam, top_, i, v); }

  // The defining recursion applied to a as a whole, without splitting it into basis tensors.
  Vec fWhole(const Tensor& a, int w) {
    if (w == G_.identity()) {
      Vec out;
      for (auto& [k, c] : a) out.add({k, w}, c);
      return out;
    }
    int s = lastLetter(0, w), u = G_.rmul(w, s);
    return T(s, F(A_.sigmaAt(s, a), e(u))) + F(A_.rhoAt(s, a), e(u));
  }

  std::string str(const Vec& v) const {
    std::string s = A_.str(QwpElement{Form::right, v});
    return s.empty() ? "0" : s;
  }

 private:
  QuantumWreathProduct A_;
  const CoxeterGroup& G_;
  int top_;
  TensorIndex unitIdx_;
  std::mutex mu_;
  std::map<std::tuple<int, int, TensorIndex, int>, Vec> fMemo_;
  std::map<std::tuple<int, int, int, int>, Vec> tMemo_;

  template <class M, class K>
  const Vec* lookup(M& m, const K& k) {
    std::lock_guard lock(mu_);
    auto it = m.find(k);
    return it == m.end() ? nullptr : &it->second;
  }
  template <class M, class K>
  const Vec& store(M& m, const K& k, Vec v) {
    std::lock_guard lock(mu_);
    return m.try_emplace(k, std::move(v)).first->second;
  }
};

std::string wStr(const CoxeterGroup& G, int w) {
  return w == G.identity() ? "1" : wordStr(G.word(w));
}

}  // namespace

ConditionReport grandLoopVerify(const Instance& inst, int d, int lmax, std::optional<int> radius) {
  if (d < 2) throw std::invalid_argument("the grand loop needs d >= 2");
  const BaseAlgebra& B = *inst.base;
  GrandLoop L(inst, d);
  const QuantumWreathProduct& A = L.algebra();
  const CoxeterGroup& G = A.group();
  if (lmax < 0) lmax = L.top();
  if (lmax > L.top()) throw std::invalid_argument("lmax exceeds the length of the longest element");

  ConditionReport rep;
  rep.instance = inst.name;
  rep.checker = "grand-loop";
  rep.d = d;
  rep.window = B.finite() ? 0 : B.window();
  rep.radius = radius.value_or(defaultRadius(B, 4));
  rep.certification = B.finite() ? "exhaustive" : "window-certified";

  std::vector<TensorIndex> as = tensorsOver(sampleIndices(B, rep.radius), d);
  auto tStr = [&](const TensorIndex& t) { return tensorIndexStr(B, t); };
  std::vector<std::vector<int>> byLength(L.top() + 1);
  for (int w = 0; w < G.size(); ++w) byLength[G.length(w)].push_back(w);
  std::vector<int> gens;
  for (int i = G.firstGenerator(); i <= G.lastGenerator(); ++i) gens.push_back(i);

  using Check = std::function<std::optional<Failure>(std::size_t)>;
  auto cmp = [&](const GrandLoop::Vec& x, const GrandLoop::Vec& y, std::string witness) -> std::optional<Failure> {
    if (x == y) return std::nullopt;
    return Failure{std::move(witness), L.str(x), L.str(y)};
  };
  auto at = [&](int l, int w) { return "ℓ = " + std::to_string(l) + ", w = " + wStr(G, w); };

  // Runs a statement for every ℓ <= lmax; count(w) inputs per vector 1⊗w.
  auto statement = [&](const std::string& id, const std::string& desc, std::size_t perVector,
                       const std::function<std::optional<Failure>(int w, std::size_t k)>& check) {
    std::optional<Failure> carried;
    std::size_t checked = 0;
    for (int l = 0; l <= lmax; ++l) {
      const auto& ws = byLength[l];
      if (!carried && perVector > 0) {
        Check c = [&](std::size_t n) { return check(ws[n / perVector], n % perVector); };
        carried = firstFailing(ws.size() * perVector, c);
      }
      checked += ws.size() * perVector;
      ConditionResult r;
      r.id = id;
      r.description = desc + (perVector == 0 ? " (vacuous)" : "");
      r.level = l;
      r.checked = checked;
      if (carried) {
        r.verdict = Verdict::fail;
        r.witness = carried->witness;
        r.lhs = carried->lhs;
        r.rhs = carried->rhs;
      }
      rep.results.push_back(std::move(r));
    }
  };

  // compatibility of the levels: f^{(ℓ)} and T^{(ℓ)} restrict to f^{(j)}, T^{(j)}
  statement("compatibility", "f_a^{(ℓ)}|V^j = f_a^{(j)} and T_i^{(ℓ)}|V^j = T_i^{(j)}", as.size() + gens.size(),
            [&](int w, std::size_t k) -> std::optional<Failure> {
              int lw = G.length(w);
              for (int l = lw + 1; l <= L.top(); ++l) {
                if (k < as.size()) {
                  if (auto f = cmp(L.fUnit(0, l, as[k], w), L.fUnit(0, lw, as[k], w),
                                   at(l, w) + ", a = " + tStr(as[k]) + ", j = " + std::to_string(lw)))
                    return f;
                } else {
                  int i = gens[k - as.size()];
                  if (auto f = cmp(L.tUnit(0, l, i, w), L.tUnit(0, lw, i, w),
                                   at(l, w) + ", i = " + std::to_string(i) + ", j = " + std::to_string(lw)))
                    return f;
                }
              }
              return std::nullopt;
            });

  // linearity: f_{a + c b} = f_a + c f_b
  std::vector<std::pair<TensorIndex, TensorIndex>> linPairs;
  for (std::size_t k = 0; k < as.size() && linPairs.size() < 12; k += std::max<std::size_t>(1, as.size() / 12))
    linPairs.emplace_back(as[k], as[(k * 7 + 3) % as.size()]);
  const Scalar coeffs[] = {Scalar(-2), Scalar::q() + 1};
  statement("linearity", "f_{a + cb} = f_a + c f_b", linPairs.size() * 2, [&](int w, std::size_t k) {
    auto& [a, b] = linPairs[k / 2];
    const Scalar& c = coeffs[k % 2];
    Tensor sum = pureTensor(a) + c * pureTensor(b);
    GrandLoop::Vec rhs = L.fUnit(0, L.top(), a, w);
    rhs.addScaled(L.fUnit(0, L.top(), b, w), c);
    return cmp(L.fWhole(sum, w), rhs, at(G.length(w), w) + ", a = " + tStr(a) + ", b = " + tStr(b) + ", c = " + c.str());
  });

  statement("W", "T_i f_a = f_{σ_i(a)} T_i + f_{ρ_i(a)}", as.size() * gens.size(), [&](int w, std::size_t k) {
    const TensorIndex& a = as[k / gens.size()];
    int i = gens[k % gens.size()];
    Tensor at0 = pureTensor(a);
    auto v = L.e(w);
    auto lhs = L.F(at0, L.T(i, v));
    auto rhs = L.T(i, L.F(A.sigmaAt(i, at0), v)) + L.F(A.rhoAt(i, at0), v);
    return cmp(lhs, rhs, at(G.length(w), w) + ", i = " + std::to_string(i) + ", a = " + tStr(a));
  });

  statement("M", "f_a f_b = f_{ab}", as.size() * as.size(), [&](int w, std::size_t k) {
    const TensorIndex &a = as[k / as.size()], &b = as[k % as.size()];
    Tensor ta = pureTensor(a), tb = pureTensor(b);
    auto v = L.e(w);
    return cmp(L.F(tb, L.F(ta, v)), L.F(A.mulTensor(ta, tb), v),
               at(G.length(w), w) + ", a = " + tStr(a) + ", b = " + tStr(b));
  });

  statement("Q", "T_i T_i = f_{S_i} T_i + f_{R_i}", gens.size(), [&](int w, std::size_t k) {
    int i = gens[k];
    auto v = L.e(w);
    return cmp(L.T(i, L.T(i, v)), L.T(i, L.F(A.Si(i), v)) + L.F(A.Ri(i), v),
               at(G.length(w), w) + ", i = " + std::to_string(i));
  });

  std::vector<std::pair<int, int>> far, near;
  for (int i : gens)
    for (int j : gens) {
      if (std::abs(i - j) > 1) far.emplace_back(i, j);
      if (std::abs(i - j) == 1) near.emplace_back(i, j);
    }
  statement("B2", "T_i T_j = T_j T_i for |i - j| > 1", far.size(), [&](int w, std::size_t k) {
    auto [i, j] = far[k];
    auto v = L.e(w);
    return cmp(L.T(j, L.T(i, v)), L.T(i, L.T(j, v)), at(G.length(w), w) + ", " + ijStr(i, j));
  });
  statement("B3", "T_i T_j T_i = T_j T_i T_j for |i - j| = 1", near.size(), [&](int w, std::size_t k) {
    auto [i, j] = near[k];
    auto v = L.e(w);
    return cmp(L.T(i, L.T(j, L.T(i, v))), L.T(j, L.T(i, L.T(j, v))), at(G.length(w), w) + ", " + ijStr(i, j));
  });

  // R: f_a agrees for two families of reduced words, and satisfies the recursion at every right descent.
  statement("R", "f_a does not depend on the reduced words", as.size(), [&](int w, std::size_t k) -> std::optional<Failure> {
    const TensorIndex& a = as[k];
    std::string base = at(G.length(w), w) + ", a = " + tStr(a);
    const auto& f0 = L.fUnit(0, L.top(), a, w);
    if (auto f = cmp(f0, L.fUnit(1, L.top(), a, w), base + ", second reduced-word family")) return f;
    Tensor ta = pureTensor(a);
    for (int s : gens) {
      int u = G.rmul(w, s);
      if (G.length(u) > G.length(w)) continue;
      auto rhs = L.T(s, L.F(A.sigmaAt(s, ta), L.e(u))) + L.F(A.rhoAt(s, ta), L.e(u));
      if (auto f = cmp(f0, rhs, base + ", descent s" + std::to_string(s))) return f;
    }
    return std::nullopt;
  });

  if (far.empty() || near.empty())
    rep.notes.push_back("B2 and B3 have no generator pairs for d = " + std::to_string(d) + " where marked vacuous");
  if (lmax == L.top()) rep.notes.push_back("all statements checked up to ℓ(w_0) = " + std::to_string(L.top()));
  return rep;
}

// ------------------------------------------------------------ associativity oracle

namespace {

class ProductTable {
 public:
  explicit ProductTable(std::shared_ptr<const QuantumWreathProduct> A) : A_(std::move(A)) {}

  const QwpTerms& product(const QwpKey& x, const QwpKey& y) {
    auto key = std::make_pair(x, y);
    {
      std::lock_guard lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    QwpTerms p = A_->multiply(elem(x), elem(y)).terms;
    std::lock_guard lock(mu_);
    return memo_.try_emplace(key, std::move(p)).first->second;
  }

  QwpTerms timesKey(const QwpTerms& x, const QwpKey& g) {
    QwpTerms out;
    for (auto& [k, c] : x) out.addScaled(product(k, g), c);
    return out;
  }
  QwpTerms keyTimes(const QwpKey& g, const QwpTerms& y) {
    QwpTerms out;
    for (auto& [k, c] : y) out.addScaled(product(g, k), c);
    return out;
  }

  QwpElement elem(const QwpKey& k) const { return QwpElement{Form::right, QwpTerms::term(k)}; }
  std::string str(const QwpTerms& t) const {
    auto s = A_->str(QwpElement{Form::right, t});
    return s.empty() ? "0" : s;
  }
  std::string keyStr(const QwpKey& k) const {
    auto s = A_->keyStr(k, Form::right);
    return s.empty() ? "1" : s;
  }

 private:
  std::shared_ptr<const QuantumWreathProduct> A_;
  std::mutex mu_;
  std::map<std::pair<QwpKey, QwpKey>, QwpTerms> memo_;
};

// Every key is reached from the unit by right multiplication with generators, each step
// producing exactly that key.
bool generatesByNestedProducts(ProductTable& P, const std::vector<QwpKey>& keys, const std::vector<QwpKey>& gens,
                               const QwpKey& unit) {
  std::set<QwpKey> wanted(keys.begin(), keys.end()), seen{unit};
  std::vector<QwpKey> frontier{unit};
  while (!frontier.empty()) {
    std::vector<QwpKey> next;
    for (auto& x : frontier)
      for (auto& g : gens) {
        const auto& p = P.product(x, g);
        if (p.size() != 1 || !p.begin()->second.isOne()) continue;
        const QwpKey& k = p.begin()->first;
        if (wanted.count(k) && seen.insert(k).second) next.push_back(k);
      }
    frontier = std::move(next);
  }
  return seen.size() == wanted.size();
}

}  // namespace

OracleReport associativityOracle(const Instance& inst, int d, std::optional<int> radius) {
  auto A = std::make_shared<const QuantumWreathProduct>(inst, d);
  const BaseAlgebra& B = A->base();
  const CoxeterGroup& G = A->group();
  OracleReport rep;
  rep.instance = inst.name;
  rep.d = d;
  int r = radius.value_or(B.finite() ? 0 : (d <= 2 ? 2 : 1));
  std::vector<QwpKey> keys = A->basisKeys(r);
  rep.keys = keys.size();
  rep.dimension = B.finite() ? A->finiteDimension() : 0;
  rep.certification = B.finite() ? "exhaustive" : "window-certified";
  if (!B.finite())
    rep.notes.push_back("basis elements with exponents up to " + std::to_string(r) + " in a window of " +
                        std::to_string(B.window()));

  ProductTable P(A);
  const QwpKey unit{TensorIndex(d, B.unitIndex()), G.identity()};
  std::vector<QwpKey> gens;
  for (auto& t : slotGenerators(B, d)) gens.emplace_back(t, G.identity());
  for (int i = G.firstGenerator(); i <= G.lastGenerator(); ++i) gens.emplace_back(unit.first, G.rmul(G.identity(), i));

  auto record = [&](const std::optional<Failure>& f) {
    if (!f) return true;
    rep.witness = f->witness;
    rep.lhs = f->lhs;
    rep.rhs = f->rhs;
    return false;
  };

  // unit
  rep.unital = record(firstFailing(keys.size(), [&](std::size_t k) -> std::optional<Failure> {
    const auto& x = keys[k];
    const auto& l = P.product(unit, x);
    const auto& rr = P.product(x, unit);
    QwpTerms e = QwpTerms::term(x);
    if (l == e && rr == e) return std::nullopt;
    return Failure{"unit against " + P.keyStr(x), P.str(l), P.str(rr)};
  }));

  // defining relations on generators
  {
    std::vector<std::function<std::optional<Failure>()>> rel;
    for (int i = G.firstGenerator(); i <= G.lastGenerator(); ++i) {
      rel.push_back([&, i]() -> std::optional<Failure> {
        QwpElement h = A->H(i);
        auto lhs = A->multiply(h, h);
        auto rhs = A->add(A->fromTensor(A->Si(i), G.rmul(G.identity(), i)), A->fromTensor(A->Ri(i)));
        if (lhs == rhs) return std::nullopt;
        return Failure{"H_" + std::to_string(i) + "^2", A->str(lhs), A->str(rhs)};
      });
      for (auto& g : slotGenerators(B, d))
        rel.push_back([&, i, g]() -> std::optional<Failure> {
          Tensor b = pureTensor(g);
          auto lhs = A->multiply(A->H(i), A->fromTensor(b));
          auto rhs = A->add(A->fromTensor(A->sigmaAt(i, b), G.rmul(G.identity(), i)), A->fromTensor(A->rhoAt(i, b)));
          if (lhs == rhs) return std::nullopt;
          return Failure{"H_" + std::to_string(i) + " " + tensorIndexStr(B, g), A->str(lhs), A->str(rhs)};
        });
      for (int j = G.firstGenerator(); j <= G.lastGenerator(); ++j) {
        if (j == i) continue;
        rel.push_back([&, i, j]() -> std::optional<Failure> {
          QwpElement hi = A->H(i), hj = A->H(j), lhs, rhs;
          if (std::abs(i - j) == 1) {
            lhs = A->multiply(A->multiply(hi, hj), hi);
            rhs = A->multiply(A->multiply(hj, hi), hj);
          } else {
            lhs = A->multiply(hi, hj);
            rhs = A->multiply(hj, hi);
          }
          if (lhs == rhs) return std::nullopt;
          return Failure{"braid relation " + ijStr(i, j), A->str(lhs), A->str(rhs)};
        });
      }
    }
    rep.relations = record(firstFailing(rel.size(), [&](std::size_t k) { return rel[k](); }));
  }

  const std::size_t n = keys.size();
  bool allTriples = n <= 66;
  if (!allTriples && B.finite() && !generatesByNestedProducts(P, keys, gens, unit)) allTriples = true;
  rep.mode = allTriples ? "all triples" : "generator triples";
  const std::vector<QwpKey>& third = allTriples ? keys : gens;
  rep.checked = n * n * third.size();
  rep.associative = record(firstFailing(rep.checked, [&](std::size_t k) -> std::optional<Failure> {
    const QwpKey& x = keys[k / (n * third.size())];
    const QwpKey& y = keys[(k / third.size()) % n];
    const QwpKey& z = third[k % third.size()];
    auto lhs = P.timesKey(P.product(x, y), z);
    auto rhs = P.keyTimes(x, P.product(y, z));
    if (lhs == rhs) return std::nullopt;
    return Failure{"(" + P.keyStr(x) + ", " + P.keyStr(y) + ", " + P.keyStr(z) + ")", P.str(lhs), P.str(rhs)};
  }));
  if (rep.mode == "generator triples" && B.finite())
    rep.notes.push_back("every basis element is a left-nested product of generators, so generator triples decide associativity");
  return rep;
}

OracleReport arikiKoikeOracle(int m, int d, std::uint64_t seed, int points) {
  OracleReport rep;
  rep.instance = "ariki-koike-" + std::to_string(m);
  rep.d = d;
  rep.mode = "quotient";
  rep.certification = "prime-field point";
  rep.associative = rep.unital = rep.relations = true;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(2, 1 << 20);
  for (int p = 0; p < points; ++p) {
    Specialization at = Specialization::prime({{"q", Rational(pick(rng))}});
    for (int i = 1; i <= m; ++i) at.set("q" + std::to_string(i), Rational(pick(rng)));
    auto ak = arikiKoikeQuotient(m, d, at);
    rep.dimension = static_cast<std::size_t>(ak.algebra.dim());
    rep.keys = ak.keys.size();
    std::size_t dim = rep.dimension;
    rep.checked += dim * dim * dim;
    rep.notes.push_back("point " + at.str() + ": dimension " + std::to_string(dim) +
                        (ak.exact ? "" : " (quotient not exact)"));
    if (!ak.exact) rep.relations = false;
    if (auto w = ak.algebra.associativityWitness()) {
      rep.associative = false;
      rep.witness = "(" + ak.algebra.labels[(*w)[0]] + ", " + ak.algebra.labels[(*w)[1]] + ", " +
                    ak.algebra.labels[(*w)[2]] + ") at " + at.str();
    }
    for (int a = 0; a < ak.algebra.dim(); ++a) {
      auto e = ak.algebra.basisVector(a), u = ak.algebra.basisVector(ak.algebra.unit);
      if (ak.algebra.mul(u, e) != e || ak.algebra.mul(e, u) != e) rep.unital = false;
    }
  }
  std::size_t expected = 1;
  for (int k = 0; k < d; ++k) expected *= static_cast<std::size_t>(m) * static_cast<std::size_t>(k + 1);
  if (rep.dimension != expected) rep.relations = false;
  return rep;
}

// ------------------------------------------------------------ mutants

namespace {

Tensor pair0(const Scalar& c) { return pureTensor({0, 0}, c); }

Instance withParams(const Instance& base, std::string name, const std::function<void(ParamChoice&)>& edit) {
  Instance out = base;
  out.name = name;
  out.params.name = std::move(name);
  edit(out.params);
  return out;
}

}  // namespace

std::vector<Mutant> conditionMutants() {
  std::vector<Mutant> out;
  const int window = 8;
  Scalar q = Scalar::q();
  Instance hu = huInstance(2);
  out.push_back({"hu-R-asymmetric", "Hu m=2 with R = z_{2,2} + T_{s1}⊗1",
                 withParams(hu, "hu-R-asymmetric", [](ParamChoice& p) { p.R += pureTensor({1, 0}); }), 2});
  out.push_back({"hu-S-one-sided", "Hu m=2 with S = T_{s1}⊗1",
                 withParams(hu, "hu-S-one-sided", [](ParamChoice& p) { p.S = pureTensor({1, 0}); }), 2});
  out.push_back({"yokonuma-negated-flip", "Yokonuma C2 with σ = -flip",
                 withParams(yokonumaInstance(2), "yokonuma-negated-flip",
                            [](ParamChoice& p) {
                              p.sigma = [](int a, int b) { return pureTensor({b, a}, -1); };
                              p.sigmaInverse = p.sigma;
                              p.sigmaIsFlip = false;
                            }),
                 2});
  Instance deg = degenerateAffineInstance(window);
  out.push_back({"degenerate-rho-unit", "degenerate affine with ρ(1⊗1) = 1⊗1",
                 withParams(deg, "degenerate-rho-unit",
                            [](ParamChoice& p) {
                              auto old = p.rho;
                              p.rho = [old](int a, int b) {
                                Tensor t = old(a, b);
                                if (a == 0 && b == 0) t += pair0(1);
                                return t;
                              };
                              p.demazureBeta.reset();
                            }),
                 2});
  out.push_back({"degenerate-rho-not-derivation", "degenerate affine with ρ(X^a⊗X^b) = -(a - b)(1⊗1)",
                 withParams(deg, "degenerate-rho-not-derivation",
                            [](ParamChoice& p) {
                              p.rho = [](int a, int b) { return pair0(-(a - b)); };
                              p.demazureBeta.reset();
                            }),
                 2});
  Instance aff = affineInstance(window);
  out.push_back({"affine-S-scalar", "affine Hecke with S = q",
                 withParams(aff, "affine-S-scalar", [q](ParamChoice& p) { p.S = pair0(q); }), 2});
  {
    auto base = aff.base;
    Tensor beta = pureTensor({0, 1}, q - 1);
    out.push_back({"affine-beta-sign", "affine Hecke with ρ = (q - 1)∂(·)(1⊗X)",
                   withParams(aff, "affine-beta-sign",
                              [base, beta](ParamChoice& p) {
                                p.rho = [base, beta](int a, int b) {
                                  return tensorMul(*base, demazure(*base, pureTensor({a, b})), beta);
                                };
                                p.demazureBeta = beta;
                              }),
                   2});
  }
  {
    auto base = groupAlgebraCyclic(3);
    ParamChoice p = flipParams("cyclic-3-inverting-sigma", pair0(1), Tensor());
    p.sigma = [](int a, int b) { return pureTensor({a, (3 - b) % 3}); };
    p.sigmaInverse = p.sigma;
    p.sigmaIsFlip = false;
    out.push_back({"cyclic-3-inverting-sigma", "KC3 with σ(x^a⊗x^b) = x^a⊗x^{-b}, R = 1⊗1, S = 0, d = 3",
                   Instance{"cyclic-3-inverting-sigma", base, p}, 3});
  }
  out.push_back({"nil-hecke-S-one", "nil Hecke with S = 1⊗1",
                 withParams(nilHeckeInstance(window), "nil-hecke-S-one", [](ParamChoice& p) { p.S = pair0(1); }), 2});
  out.push_back({"cyclotomic-naive-2", "affine parameters pushed termwise to K[X]/(X - q1)(X - q2)",
                 cyclotomicNaiveInstance(2), 2});
  return out;
}

MutantOutcome runMutant(const Mutant& m) {
  MutantOutcome o;
  o.name = m.name;
  auto note = [&](const std::string& s) {
    if (o.detail.empty()) o.detail = s;
  };
  try {
    auto rep = checkParameterConditions(m.instance, m.d);
    o.parameterRejected = !rep.passed();
    if (auto f = rep.firstFailure()) note("parameters: " + f->id + " at " + f->witness);
  } catch (const std::exception& e) {
    o.parameterRejected = true;
    note(std::string("parameters: ") + e.what());
  }
  try {
    auto rep = grandLoopVerify(m.instance, m.d);
    o.grandLoopRejected = !rep.passed();
    if (auto f = rep.firstFailure()) note("grand loop: " + f->id + " at " + f->witness);
  } catch (const std::exception& e) {
    o.grandLoopRejected = true;
    note(std::string("grand loop: ") + e.what());
  }
  try {
    auto rep = associativityOracle(m.instance, m.d);
    o.oracleRejected = !rep.passed();
    if (!rep.passed()) note("oracle: " + rep.witness);
  } catch (const std::exception& e) {
    o.oracleRejected = true;
    note(std::string("oracle: ") + e.what());
  }
  return o;
}

}  // namespace qw
