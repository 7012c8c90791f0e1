#pragma once

// Exact arithmetic on freely reduced words over a finitely generated free
// group, and endomorphisms given by one image word per generator.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace endofold {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A letter is a signed generator index: +k is generator k-1, -k its inverse.
using Letter = std::int32_t;

inline Letter inverse_letter(Letter x) { return -x; }

// Ordering used everywhere a deterministic enumeration of letters is needed:
// a < a^-1 < b < b^-1 < ...
inline bool letter_less(Letter x, Letter y) {
  int gx = std::abs(x), gy = std::abs(y);
  if (gx != gy) return gx < gy;
  return x > y;  // positive before negative
}

class Basis {
 public:
  Basis() = default;
  explicit Basis(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() < 2) throw Error("basis: rank must be at least 2");
    std::set<std::string> seen(names_.begin(), names_.end());
    if (seen.size() != names_.size()) throw Error("basis: duplicate generator names");
  }
  static Basis of_rank(int r) {
    std::vector<std::string> names;
    for (int i = 0; i < r; ++i) names.push_back(std::string(1, char('a' + i)));
    return Basis(std::move(names));
  }
  int rank() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& names() const { return names_; }
  bool contains(Letter x) const { return x != 0 && std::abs(x) <= rank(); }
  bool operator==(const Basis&) const = default;

 private:
  std::vector<std::string> names_;
};

// Freely reduced word. The empty word is the identity.
class Word {
 public:
  Word() = default;

  // Free reduction of a raw letter sequence; single stack pass.
  static Word reduce(const std::vector<Letter>& raw) {
    std::vector<Letter> out;
    out.reserve(raw.size());
    for (Letter x : raw) {
      if (x == 0) throw Error("word: zero letter");
      if (!out.empty() && out.back() == -x)
        out.pop_back();
      else
        out.push_back(x);
    }
    return Word(std::move(out), Reduced{});
  }

  static Word generator(int index) { return Word({static_cast<Letter>(index + 1)}, Reduced{}); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter at(std::size_t i) const { return letters_[i]; }

  Word inverse() const {
    std::vector<Letter> out(letters_.rbegin(), letters_.rend());
    for (Letter& x : out) x = -x;
    return Word(std::move(out), Reduced{});
  }

  friend Word operator*(const Word& a, const Word& b) {
    std::vector<Letter> raw = a.letters_;
    raw.insert(raw.end(), b.letters_.begin(), b.letters_.end());
    return reduce(raw);
  }

  Word pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    Word r;
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  bool operator==(const Word&) const = default;
  bool operator<(const Word& o) const {
    if (length() != o.length()) return length() < o.length();
    for (std::size_t i = 0; i < length(); ++i)
      if (letters_[i] != o.letters_[i]) return letter_less(letters_[i], o.letters_[i]);
    return false;
  }

 private:
  struct Reduced {};
  Word(std::vector<Letter> reduced, Reduced) : letters_(std::move(reduced)) {}
  std::vector<Letter> letters_;

  friend Word rotate(const Word&, std::size_t);
};

// Rotation of a cyclically reduced word (no reduction can occur).
inline Word rotate(const Word& w, std::size_t r) {
  std::vector<Letter> out;
  out.reserve(w.length());
  for (std::size_t i = 0; i < w.length(); ++i) out.push_back(w.at((i + r) % w.length()));
  return Word::reduce(out);
}

struct CyclicForm {
  Word core;        // cyclically reduced
  Word conjugator;  // w = conjugator * core * conjugator^-1
};

inline CyclicForm cyclic_reduce(const Word& w) {
  std::size_t lo = 0, hi = w.length();
  while (hi - lo >= 2 && w.at(lo) == -w.at(hi - 1)) {
    ++lo;
    --hi;
  }
  std::vector<Letter> core(w.letters().begin() + static_cast<std::ptrdiff_t>(lo),
                           w.letters().begin() + static_cast<std::ptrdiff_t>(hi));
  std::vector<Letter> conj(w.letters().begin(), w.letters().begin() + static_cast<std::ptrdiff_t>(lo));
  return {Word::reduce(core), Word::reduce(conj)};
}

inline bool is_cyclically_reduced(const Word& w) {
  return w.length() < 2 || w.at(0) != -w.at(w.length() - 1);
}

// True iff u and v are conjugate: their cyclic cores are rotations of each
// other (found by substring search in the doubled core).
inline bool conjugate_test(const Word& u, const Word& v) {
  Word cu = cyclic_reduce(u).core, cv = cyclic_reduce(v).core;
  if (cu.length() != cv.length()) return false;
  if (cu.empty()) return true;
  std::vector<Letter> doubled = cv.letters();
  doubled.insert(doubled.end(), cv.letters().begin(), cv.letters().end());
  const auto& pat = cu.letters();
  return std::search(doubled.begin(), doubled.end(), pat.begin(), pat.end()) != doubled.end();
}

// Primitive root r of a nontrivial word: w = r^k with k maximal. The
// centralizer of w is the cyclic group generated by r.
inline Word primitive_root(const Word& w) {
  if (w.empty()) throw Error("primitive_root: trivial word");
  CyclicForm cf = cyclic_reduce(w);
  std::size_t n = cf.core.length();
  std::size_t period = n;
  for (std::size_t d = 1; d <= n / 2; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = cf.core.at(i) == cf.core.at(i % d);
    if (ok) {
      period = d;
      break;
    }
  }
  std::vector<Letter> root(cf.core.letters().begin(),
                           cf.core.letters().begin() + static_cast<std::ptrdiff_t>(period));
  return cf.conjugator * Word::reduce(root) * cf.conjugator.inverse();
}

// One solution x of x^-1 u x = w for each matching rotation; empty if not
// conjugate. The full solution set is x * <primitive_root(w)> for any single
// solution x (so distinct rotation solutions differ by root powers).
inline std::vector<Word> conjugator_solutions(const Word& u, const Word& w) {
  std::vector<Word> out;
  CyclicForm cu = cyclic_reduce(u), cw = cyclic_reduce(w);
  if (cu.core.length() != cw.core.length()) return out;
  if (cu.core.empty()) {
    out.push_back(Word());
    return out;
  }
  std::size_t n = cu.core.length();
  for (std::size_t r = 0; r < n; ++r) {
    if (rotate(cu.core, r) == cw.core) {
      // u = p c p^-1 with c = s t, w = q (t s) q^-1, s = prefix of length r
      std::vector<Letter> pre(cu.core.letters().begin(),
                              cu.core.letters().begin() + static_cast<std::ptrdiff_t>(r));
      out.push_back(cu.conjugator * Word::reduce(pre) * cw.conjugator.inverse());
    }
  }
  return out;
}

// Single conjugator x with x^-1 u_i x = w_i for all i, if one exists.
inline std::optional<Word> tuple_conjugator(const std::vector<Word>& us,
                                            const std::vector<Word>& ws) {
  if (us.size() != ws.size()) return std::nullopt;
  std::size_t pivot = us.size();
  for (std::size_t i = 0; i < us.size(); ++i) {
    if (!us[i].empty() || !ws[i].empty()) {
      pivot = i;
      break;
    }
  }
  if (pivot == us.size()) return Word();  // all trivial
  if (us[pivot].empty() != ws[pivot].empty()) return std::nullopt;

  auto check = [&](const Word& x) {
    for (std::size_t i = 0; i < us.size(); ++i)
      if (x.inverse() * us[i] * x != ws[i]) return false;
    return true;
  };

  Word root = primitive_root(ws[pivot]);
  for (const Word& x0 : conjugator_solutions(us[pivot], ws[pivot])) {
    // remaining freedom: x = x0 * root^m; bound |m| by the longest word involved
    std::size_t longest = 0;
    for (const Word& w : us) longest = std::max(longest, w.length());
    for (const Word& w : ws) longest = std::max(longest, w.length());
    int bound = static_cast<int>(2 * longest / std::max<std::size_t>(1, root.length()) + 2);
    for (int m = -bound; m <= bound; ++m) {
      Word x = x0 * root.pow(m);
      if (check(x)) return x;
    }
  }
  return std::nullopt;
}

class Endomorphism {
 public:
  Endomorphism() = default;
  Endomorphism(Basis basis, std::vector<Word> images)
      : basis_(std::move(basis)), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != basis_.rank())
      throw Error("endomorphism: image count differs from rank");
    for (const Word& w : images_)
      for (Letter x : w.letters())
        if (!basis_.contains(x)) throw Error("endomorphism: image uses unknown generator");
  }

  const Basis& basis() const { return basis_; }
  int rank() const { return basis_.rank(); }
  const Word& image(int gen) const { return images_.at(static_cast<std::size_t>(gen)); }
  const std::vector<Word>& images() const { return images_; }

  Word apply(const Word& w) const {
    std::vector<Letter> raw;
    for (Letter x : w.letters()) {
      const Word& img = images_[static_cast<std::size_t>(std::abs(x) - 1)];
      if (x > 0)
        raw.insert(raw.end(), img.letters().begin(), img.letters().end());
      else {
        Word inv = img.inverse();
        raw.insert(raw.end(), inv.letters().begin(), inv.letters().end());
      }
    }
    return Word::reduce(raw);
  }

  Word apply_iter(const Word& w, int n) const {
    Word r = w;
    for (int i = 0; i < n; ++i) r = apply(r);
    return r;
  }

  bool operator==(const Endomorphism&) const = default;

 private:
  Basis basis_;
  std::vector<Word> images_;
};

// second o first, as endomorphisms of the same basis.
inline Endomorphism compose(const Endomorphism& first, const Endomorphism& second) {
  if (first.basis() != second.basis()) throw Error("compose: basis mismatch");
  std::vector<Word> images;
  for (int i = 0; i < first.rank(); ++i) images.push_back(second.apply(first.image(i)));
  return Endomorphism(first.basis(), std::move(images));
}

inline Endomorphism iterate(const Endomorphism& e, int n) {
  Endomorphism r = e;
  for (int i = 1; i < n; ++i) r = compose(r, e);
  return r;
}

// lambda^-i * |cyclic core of e^i(w)| for i = 1..n.
inline std::vector<double> translation_lengths(const Endomorphism& e, const Word& w, int n,
                                               double lambda) {
  if (lambda <= 1.0) throw Error("translation_lengths: lambda must exceed 1");
  if (n < 1) throw Error("translation_lengths: need at least one iterate");
  std::vector<double> out;
  Word cur = w;
  double scale = 1.0;
  for (int i = 1; i <= n; ++i) {
    cur = e.apply(cur);
    scale /= lambda;
    out.push_back(scale * static_cast<double>(cyclic_reduce(cur).core.length()));
  }
  return out;
}

// --- text form ------------------------------------------------------------
// Tokens are generator names; the uppercase form of a name is its inverse.

inline std::string upper_of(const std::string& s) {
  std::string t = s;
  for (char& c : t) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return t;
}

inline std::optional<Letter> letter_of_token(const Basis& basis, const std::string& tok) {
  for (int i = 0; i < basis.rank(); ++i) {
    if (tok == basis.name(i)) return static_cast<Letter>(i + 1);
    if (tok == upper_of(basis.name(i))) return static_cast<Letter>(-(i + 1));
  }
  return std::nullopt;
}

inline Word parse_word(const Basis& basis, const std::string& text) {
  std::istringstream in(text);
  std::vector<Letter> raw;
  std::string tok;
  while (in >> tok) {
    // allow run-together single-character tokens like "abA"
    bool all_single = true;
    for (int i = 0; i < basis.rank(); ++i)
      if (basis.name(i).size() != 1) all_single = false;
    if (all_single && tok.size() > 1) {
      for (char c : tok) {
        auto l = letter_of_token(basis, std::string(1, c));
        if (!l) throw Error("unknown letter '" + std::string(1, c) + "' in word");
        raw.push_back(*l);
      }
    } else {
      auto l = letter_of_token(basis, tok);
      if (!l) throw Error("unknown token '" + tok + "' in word");
      raw.push_back(*l);
    }
  }
  return Word::reduce(raw);
}

inline std::string to_string(const Basis& basis, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (Letter x : w.letters()) {
    const std::string& n = basis.name(std::abs(x) - 1);
    out += (x > 0) ? n : upper_of(n);
  }
  return out;
}

}  // namespace endofold
