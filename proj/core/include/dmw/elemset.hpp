#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace dmw {

using Elem = std::uint16_t;

// A subset of {0, ..., n-1} stored as packed 64-bit words.
class ElemSet {
 public:
  ElemSet() = default;
  explicit ElemSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}
  ElemSet(std::size_t n, std::initializer_list<Elem> members) : ElemSet(n) {
    for (Elem e : members) set(e);
  }

  static ElemSet full(std::size_t n) {
    ElemSet s(n);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  static ElemSet from_vector(std::size_t n, const std::vector<Elem>& members) {
    ElemSet s(n);
    for (Elem e : members) s.set(e);
    return s;
  }

  std::size_t universe() const { return n_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }
  bool is_full() const { return count() == n_; }

  bool subset_of(const ElemSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool intersects(const ElemSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  ElemSet& operator&=(const ElemSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  ElemSet& operator|=(const ElemSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  ElemSet& operator-=(const ElemSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend ElemSet operator&(ElemSet a, const ElemSet& b) { return a &= b; }
  friend ElemSet operator|(ElemSet a, const ElemSet& b) { return a |= b; }
  friend ElemSet operator-(ElemSet a, const ElemSet& b) { return a -= b; }
  ElemSet complement() const {
    ElemSet s = *this;
    for (auto& w : s.words_) w = ~w;
    s.trim();
    return s;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w != 0) {
        int bit = std::countr_zero(w);
        f(static_cast<Elem>(wi * 64 + static_cast<std::size_t>(bit)));
        w &= w - 1;
      }
    }
  }

  std::vector<Elem> to_vector() const {
    std::vector<Elem> out;
    out.reserve(count());
    for_each([&](Elem e) { out.push_back(e); });
    return out;
  }

  // Least member, or universe() when empty.
  std::size_t first() const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi)
      if (words_[wi] != 0) return wi * 64 + static_cast<std::size_t>(std::countr_zero(words_[wi]));
    return n_;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  bool operator==(const ElemSet&) const = default;
  auto operator<=>(const ElemSet& o) const {
    if (auto c = n_ <=> o.n_; c != 0) return c;
    return words_ <=> o.words_;
  }

  std::size_t hash() const {
    std::size_t h = n_;
    for (auto w : words_) h = h * 1000003U ^ std::hash<std::uint64_t>{}(w);
    return h;
  }

 private:
  void trim() {
    if (n_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElemSetHash {
  std::size_t operator()(const ElemSet& s) const { return s.hash(); }
};

}  // namespace dmw
