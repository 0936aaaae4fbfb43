#include "qwreath/perm.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <stdexcept>

namespace qw {

Perm Perm::identity(int n) {
  Perm p;
  p.img.resize(n);
  for (int i = 0; i < n; ++i) p.img[i] = i + 1;
  return p;
}

Perm Perm::fromWord(int n, const Word& w) {
  Perm p = identity(n);
  for (int s : w) p = p.timesGenerator(s);
  return p;
}

Perm Perm::parse(std::string_view text) {
  Perm p;
  std::string cur;
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      cur += c;
    } else if (!cur.empty()) {
      p.img.push_back(std::stoi(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) p.img.push_back(std::stoi(cur));
  if (!p.valid()) throw std::invalid_argument("not a (signed) permutation: " + std::string(text));
  return p;
}

int Perm::operator()(int i) const {
  int a = i < 0 ? -i : i;
  if (a < 1 || a > size()) throw std::out_of_range("permutation argument out of range");
  return i < 0 ? -img[a - 1] : img[a - 1];
}

bool Perm::isSigned() const {
  return std::any_of(img.begin(), img.end(), [](int x) { return x < 0; });
}

bool Perm::valid() const {
  std::vector<bool> seen(img.size() + 1, false);
  for (int x : img) {
    int a = std::abs(x);
    if (a < 1 || a > size() || seen[a]) return false;
    seen[a] = true;
  }
  return true;
}

Perm Perm::operator*(const Perm& o) const {
  if (o.size() != size()) throw std::invalid_argument("permutation size mismatch");
  Perm r;
  r.img.resize(img.size());
  for (int i = 0; i < size(); ++i) r.img[i] = o(img[i]);
  return r;
}

Perm Perm::inverse() const {
  Perm r;
  r.img.resize(img.size());
  for (int i = 0; i < size(); ++i) {
    int x = img[i];
    r.img[std::abs(x) - 1] = x < 0 ? -(i + 1) : (i + 1);
  }
  return r;
}

Perm Perm::timesGenerator(int s) const {
  if (s < 0 || s >= size()) throw std::out_of_range("generator index out of range");
  Perm r = *this;
  for (int& x : r.img) {
    if (s == 0) {
      if (std::abs(x) == 1) x = -x;
    } else if (std::abs(x) == s) {
      x = x < 0 ? -(s + 1) : s + 1;
    } else if (std::abs(x) == s + 1) {
      x = x < 0 ? -s : s;
    }
  }
  return r;
}

Perm Perm::generatorTimes(int s) const {
  if (s < 0 || s >= size()) throw std::out_of_range("generator index out of range");
  Perm r = *this;
  if (s == 0)
    r.img[0] = -r.img[0];
  else
    std::swap(r.img[s - 1], r.img[s]);
  return r;
}

int Perm::lengthA() const {
  int inv = 0;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      if (img[i] > img[j]) ++inv;
  return inv;
}

int Perm::lengthB() const {
  int inv = 0, neg = 0, nsp = 0;
  for (int i = 0; i < size(); ++i) {
    if (img[i] < 0) ++neg;
    for (int j = i + 1; j < size(); ++j) {
      if (img[i] > img[j]) ++inv;
      if (img[i] + img[j] < 0) ++nsp;
    }
  }
  return inv + neg + nsp;
}

std::string Perm::str() const {
  std::string s = "[";
  for (int i = 0; i < size(); ++i) s += (i ? "," : "") + std::to_string(img[i]);
  return s + "]";
}

namespace {

int lengthOf(const Perm& w, CoxeterType t) { return t == CoxeterType::B ? w.lengthB() : w.lengthA(); }

}  // namespace

std::vector<int> rightDescents(const Perm& w, CoxeterType t) {
  std::vector<int> d;
  int l = lengthOf(w, t);
  for (int s = (t == CoxeterType::A ? 1 : 0); s < w.size(); ++s)
    if (lengthOf(w.timesGenerator(s), t) < l) d.push_back(s);
  return d;
}

std::vector<int> leftDescents(const Perm& w, CoxeterType t) {
  std::vector<int> d;
  int l = lengthOf(w, t);
  for (int s = (t == CoxeterType::A ? 1 : 0); s < w.size(); ++s)
    if (lengthOf(w.generatorTimes(s), t) < l) d.push_back(s);
  return d;
}

Word reducedWord(const Perm& w, CoxeterType t) {
  Word rev;
  Perm cur = w;
  while (true) {
    auto d = rightDescents(cur, t);
    if (d.empty()) break;
    rev.push_back(d.front());
    cur = cur.timesGenerator(d.front());
  }
  return Word(rev.rbegin(), rev.rend());
}

bool bruhatLeq(const Perm& x, const Perm& y, CoxeterType t) {
  // Subword criterion along the reduced word of y: x ≤ y iff x is the
  // product of a subword. Scan letters right to left, stripping from x.
  Word wy = reducedWord(y, t);
  Perm cur = x;
  // Greedy from the right is exact (lifting property): at letter s of
  // y = y' s, x ≤ y iff min(x, xs) ≤ y'.
  for (auto it = wy.rbegin(); it != wy.rend(); ++it) {
    Perm xs = cur.timesGenerator(*it);
    if (lengthOf(xs, t) < lengthOf(cur, t)) cur = xs;
  }
  return cur == Perm::identity(x.size());
}

std::string wordStr(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) s += (i ? " s" : "s") + std::to_string(w[i]);
  return s;
}

Word parseWord(std::string_view text) {
  Word w;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) w.push_back(std::stoi(cur));
    cur.clear();
  };
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c)))
      cur += c;
    else
      flush();
  }
  flush();
  return w;
}

Word chainWord(int a, int b) {
  Word w;
  if (a >= b)
    for (int i = a; i >= b; --i) w.push_back(i);
  else
    for (int i = a; i <= b; ++i) w.push_back(i);
  return w;
}

Perm chain(int n, int a, int b) {
  if (a < 1 || b < 1 || a >= n || b >= n) throw std::out_of_range("chain index out of range");
  return Perm::fromWord(n, chainWord(a, b));
}

Perm chainOutBack(int n, int a, int b) {
  if (a < 1 || b < 1 || a >= n || b >= n) throw std::out_of_range("chain index out of range");
  Word w = chainWord(a, b);
  Word back = chainWord(a, b);
  back.pop_back();
  w.insert(w.end(), back.rbegin(), back.rend());
  return Perm::fromWord(n, w);
}

Perm wab(int a, int b) {
  if (a < 0 || b < 0) throw std::out_of_range("w_{a,b} needs a, b >= 0");
  Perm p;
  for (int i = 1; i <= a; ++i) p.img.push_back(b + i);
  for (int j = 1; j <= b; ++j) p.img.push_back(j);
  return p;
}

Perm longestA(int n) {
  Perm p;
  for (int i = n; i >= 1; --i) p.img.push_back(i);
  return p;
}

Perm embedWreath(const Perm& w, int m) {
  int d = w.size();
  Perm p;
  p.img.resize(d * m);
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= m; ++j) p.img[(i - 1) * m + j - 1] = (w(i) - 1) * m + j;
  return p;
}

Perm shiftEmbed(const Perm& w, int offset, int n) {
  if (offset < 0 || offset + w.size() > n) throw std::out_of_range("shift embedding out of range");
  Perm p = Perm::identity(n);
  for (int i = 1; i <= w.size(); ++i) p.img[offset + i - 1] = w(i) + offset;
  return p;
}

// ---------------------------------------------------------------- CoxeterGroup

std::shared_ptr<const CoxeterGroup> CoxeterGroup::get(CoxeterType t, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const CoxeterGroup>> cache;
  if (n < 1 || n > 8) throw std::out_of_range("Coxeter group rank must be in 1..8");
  std::lock_guard lock(mu);
  auto key = std::make_pair(static_cast<int>(t), n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const CoxeterGroup> g(new CoxeterGroup(t, n));
  cache.emplace(key, g);
  return g;
}

CoxeterGroup::CoxeterGroup(CoxeterType t, int n) : type_(t), n_(n) {
  int stride = n_ + 1;
  elems_.push_back(Perm::identity(n));
  index_.emplace(elems_[0], 0);
  len_.push_back(0);
  parent_.push_back(-1);
  words_.push_back({});
  // Breadth-first by length; the first generator found lowering a new
  // element is the minimal right descent, giving the compatible family.
  for (size_t head = 0; head < elems_.size(); ++head) {
    for (int s = firstGenerator(); s <= lastGenerator(); ++s) {
      Perm p = elems_[head].timesGenerator(s);
      if (index_.count(p)) continue;
      int idx = static_cast<int>(elems_.size());
      index_.emplace(p, idx);
      elems_.push_back(p);
      len_.push_back(len_[head] + 1);
      parent_.push_back(-1);
      words_.push_back({});
    }
  }
  int N = size();
  right_.assign(N * stride, -1);
  left_.assign(N * stride, -1);
  inv_.assign(N, -1);
  for (int i = 0; i < N; ++i) {
    for (int s = firstGenerator(); s <= lastGenerator(); ++s) {
      right_[i * stride + s] = index_.at(elems_[i].timesGenerator(s));
      left_[i * stride + s] = index_.at(elems_[i].generatorTimes(s));
    }
    inv_[i] = index_.at(elems_[i].inverse());
    if (len_[i] > len_[longest_]) longest_ = i;
  }
  for (int i = 1; i < N; ++i) {
    for (int s = firstGenerator(); s <= lastGenerator(); ++s) {
      int p = right_[i * stride + s];
      if (len_[p] < len_[i]) {
        parent_[i] = p;
        break;
      }
    }
  }
  children_.assign(N, {});
  for (int i = 1; i < N; ++i) {
    // parents have smaller length, hence smaller BFS index
    int p = parent_[i];
    children_[p].push_back(i);
    words_[i] = words_[p];
    for (int s = firstGenerator(); s <= lastGenerator(); ++s)
      if (right_[p * stride + s] == i) {
        words_[i].push_back(s);
        break;
      }
  }
}

int CoxeterGroup::indexOf(const Perm& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) throw std::out_of_range("element not in group: " + p.str());
  return it->second;
}

int CoxeterGroup::mul(int x, int y) const {
  for (int s : words_[y]) x = rmul(x, s);
  return x;
}

int CoxeterGroup::fromWord(const Word& w) const {
  int x = 0;
  for (int s : w) {
    if (!isGenerator(s)) throw std::out_of_range("generator index out of range");
    x = rmul(x, s);
  }
  return x;
}

void CoxeterGroup::buildBruhat() const {
  int N = size();
  size_t words = (N + 63) / 64;
  bruhat_.assign(N, std::vector<uint64_t>(words, 0));
  bruhat_[0][0] = 1;
  for (int y = 1; y < N; ++y) {
    int s = words_[y].back();
    int yp = parent_[y];
    auto& row = bruhat_[y];
    const auto& prev = bruhat_[yp];
    for (int x = 0; x < N; ++x) {
      if (len_[x] > len_[y]) continue;
      int xs = rmul(x, s);
      int m = len_[xs] < len_[x] ? xs : x;
      if (prev[m / 64] >> (m % 64) & 1) row[x / 64] |= 1ULL << (x % 64);
    }
  }
}

bool CoxeterGroup::bruhatLeq(int x, int y) const {
  std::call_once(bruhatOnce_, [this] { buildBruhat(); });
  return bruhat_[y][x / 64] >> (x % 64) & 1;
}

}  // namespace qw
