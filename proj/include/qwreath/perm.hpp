#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qw {

using Word = std::vector<int>;

// One-line notation; negative entries are allowed for signed permutations.
// Products compose left to right, (x*y)(i) = y(x(i)), so w s_i swaps the
// values i and i+1 in the one-line notation of w and w s_0 negates the value ±1.
struct Perm {
  std::vector<int> img;

  Perm() = default;
  explicit Perm(std::vector<int> v) : img(std::move(v)) {}

  static Perm identity(int n);
  static Perm fromWord(int n, const Word& w);
  static Perm parse(std::string_view text);  // "[3,4,1,2]"

  int size() const { return static_cast<int>(img.size()); }
  int operator()(int i) const;  // image of ±i
  bool isSigned() const;
  bool valid() const;

  Perm operator*(const Perm& o) const;  // (x*y)(i) = y(x(i))
  Perm inverse() const;
  Perm timesGenerator(int s) const;       // w s
  Perm generatorTimes(int s) const;       // s w

  int lengthA() const;
  int lengthB() const;
  int length() const { return isSigned() ? lengthB() : lengthA(); }

  friend bool operator==(const Perm& a, const Perm& b) = default;
  friend auto operator<=>(const Perm& a, const Perm& b) = default;

  std::string str() const;  // "[3,4,1,2]"
};

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ULL;
    for (int x : p.img) h = (h ^ static_cast<std::size_t>(x + 64)) * 1099511628211ULL;
    return h;
  }
};

// Type flag: A uses generators 1..n-1 on Σ_n, B uses 0..n-1 on W(B_n).
enum class CoxeterType { A, B };

std::vector<int> rightDescents(const Perm& w, CoxeterType t);
std::vector<int> leftDescents(const Perm& w, CoxeterType t);
// Compatible reduced word: r(w) = r(w s) s with s the minimal right descent.
Word reducedWord(const Perm& w, CoxeterType t);
bool bruhatLeq(const Perm& x, const Perm& y, CoxeterType t);
std::string wordStr(const Word& w);       // "s3 s2 s1"
Word parseWord(std::string_view text);    // accepts "s3 s2 s1", "3.2.1", "3,2,1"

// Special elements of Σ_n (indices 1-based, as permutations of size n).
Perm chain(int n, int a, int b);           // s_{a→b}
Perm chainOutBack(int n, int a, int b);    // s_{a→b→a}
Word chainWord(int a, int b);
Perm wab(int a, int b);                    // w_{a,b} in Σ_{a+b}
Perm longestA(int n);
Perm embedWreath(const Perm& w, int m);    // Σ_d → Σ_{md}, blocks of size m
Perm shiftEmbed(const Perm& w, int offset, int n);  // s_i ↦ s_{i+offset} inside Σ_n

// Enumerated finite Coxeter group with multiplication tables.
class CoxeterGroup {
 public:
  static std::shared_ptr<const CoxeterGroup> get(CoxeterType t, int n);
  static std::shared_ptr<const CoxeterGroup> typeA(int n) { return get(CoxeterType::A, n); }
  static std::shared_ptr<const CoxeterGroup> typeB(int n) { return get(CoxeterType::B, n); }

  CoxeterType type() const { return type_; }
  int rank() const { return n_; }
  int size() const { return static_cast<int>(elems_.size()); }
  int firstGenerator() const { return type_ == CoxeterType::A ? 1 : 0; }
  int lastGenerator() const { return n_ - 1; }
  bool isGenerator(int s) const { return s >= firstGenerator() && s <= lastGenerator(); }

  const Perm& element(int i) const { return elems_[i]; }
  int indexOf(const Perm& p) const;
  int identity() const { return 0; }
  int longest() const { return longest_; }
  int length(int i) const { return len_[i]; }
  int rmul(int i, int s) const { return right_[i * (n_ + 1) + s]; }
  int lmul(int s, int i) const { return left_[i * (n_ + 1) + s]; }
  int inverse(int i) const { return inv_[i]; }
  int mul(int x, int y) const;
  const Word& word(int i) const { return words_[i]; }
  int parent(int i) const { return parent_[i]; }
  const std::vector<int>& children(int i) const { return children_[i]; }
  int lastLetter(int i) const { return words_[i].empty() ? -1 : words_[i].back(); }
  int fromWord(const Word& w) const;
  bool bruhatLeq(int x, int y) const;

 private:
  CoxeterGroup(CoxeterType t, int n);
  void buildBruhat() const;

  CoxeterType type_;
  int n_;
  int longest_ = 0;
  std::vector<Perm> elems_;
  std::unordered_map<Perm, int, PermHash> index_;
  std::vector<int> len_, right_, left_, inv_, parent_;
  std::vector<Word> words_;
  std::vector<std::vector<int>> children_;
  mutable std::vector<std::vector<uint64_t>> bruhat_;
  mutable std::once_flag bruhatOnce_;
};

}  // namespace qw
