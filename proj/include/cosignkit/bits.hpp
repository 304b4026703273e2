#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace cosignkit {

// Subset of a ground set {0..n-1}. One machine word covers n <= 64;
// larger grounds spill into extra words.
class Bits {
 public:
  Bits() = default;
  explicit Bits(int n) : n_(n) {
    if (n_ > 64) hi_.assign(word_count() - 1, 0);
  }

  static Bits full_set(int n) {
    Bits b(n);
    for (std::size_t w = 0; w < b.word_count(); ++w) b.word(w) = ~0ull;
    b.trim();
    return b;
  }

  static Bits of(int n, std::initializer_list<int> xs) {
    Bits b(n);
    for (int x : xs) b.set(x);
    return b;
  }

  static Bits single(int n, int i) {
    Bits b(n);
    b.set(i);
    return b;
  }

  int ground_size() const { return n_; }

  bool test(int i) const { return (word(static_cast<std::size_t>(i) >> 6) >> (i & 63)) & 1ull; }
  void set(int i) { word(static_cast<std::size_t>(i) >> 6) |= 1ull << (i & 63); }
  void reset(int i) { word(static_cast<std::size_t>(i) >> 6) &= ~(1ull << (i & 63)); }

  int count() const {
    int c = std::popcount(w0_);
    for (std::uint64_t w : hi_) c += std::popcount(w);
    return c;
  }
  bool none() const {
    if (w0_) return false;
    for (std::uint64_t w : hi_)
      if (w) return false;
    return true;
  }
  bool any() const { return !none(); }
  bool is_full() const { return count() == n_; }

  Bits operator&(const Bits& o) const { return zip(o, [](std::uint64_t a, std::uint64_t b) { return a & b; }); }
  Bits operator|(const Bits& o) const { return zip(o, [](std::uint64_t a, std::uint64_t b) { return a | b; }); }
  Bits operator^(const Bits& o) const { return zip(o, [](std::uint64_t a, std::uint64_t b) { return a ^ b; }); }
  // set difference
  Bits minus(const Bits& o) const { return zip(o, [](std::uint64_t a, std::uint64_t b) { return a & ~b; }); }
  Bits complement() const {
    Bits r = *this;
    for (std::size_t w = 0; w < r.word_count(); ++w) r.word(w) = ~r.word(w);
    r.trim();
    return r;
  }

  bool operator==(const Bits& o) const {
    if (n_ != o.n_ || w0_ != o.w0_) return false;
    return hi_ == o.hi_;
  }
  bool operator!=(const Bits& o) const { return !(*this == o); }

  bool subset_of(const Bits& o) const { return minus(o).none(); }
  bool intersects(const Bits& o) const { return (*this & o).any(); }

  // lowest set element, -1 when empty
  int first() const {
    for (std::size_t w = 0; w < word_count(); ++w)
      if (word(w)) return static_cast<int>(w * 64) + std::countr_zero(word(w));
    return -1;
  }

  bool has_above(int i) const {
    for (int e : elements())
      if (e > i) return true;
    return false;
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (std::size_t w = 0; w < word_count(); ++w) {
      std::uint64_t x = word(w);
      while (x) {
        int b = std::countr_zero(x);
        out.push_back(static_cast<int>(w * 64) + b);
        x &= x - 1;
      }
    }
    return out;
  }

  // lexicographic order on the ascending element sequences
  bool lex_less(const Bits& o) const {
    Bits d = *this ^ o;
    if (d.none()) return false;
    int i = d.first();
    if (test(i)) return o.has_above(i);
    return !has_above(i);
  }

 private:
  std::size_t word_count() const { return n_ <= 64 ? 1 : static_cast<std::size_t>((n_ + 63) / 64); }
  std::uint64_t& word(std::size_t w) { return w == 0 ? w0_ : hi_[w - 1]; }
  const std::uint64_t& word(std::size_t w) const { return w == 0 ? w0_ : hi_[w - 1]; }
  void trim() {
    int tail = n_ & 63;
    if (n_ == 0) {
      w0_ = 0;
      return;
    }
    if (tail != 0) word(word_count() - 1) &= (~0ull) >> (64 - tail);
  }
  template <class F>
  Bits zip(const Bits& o, F f) const {
    Bits r(n_);
    for (std::size_t w = 0; w < word_count(); ++w) r.word(w) = f(word(w), o.word(w));
    return r;
  }

  int n_ = 0;
  std::uint64_t w0_ = 0;
  std::vector<std::uint64_t> hi_;
};

}  // namespace cosignkit
