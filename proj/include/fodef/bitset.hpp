#pragma once
// Dense bitsets and binary relations over a fixed universe [0, n).
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace fodef {

class BitSet {
 public:
  BitSet() = default;
  explicit BitSet(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  size_t size() const { return n_; }
  bool test(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(size_t i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
  void reset(size_t i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
  void assign(size_t i, bool v) { v ? set(i) : reset(i); }
  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  bool any() const {
    for (auto x : w_) if (x) return true;
    return false;
  }
  bool none() const { return !any(); }
  size_t count() const {
    size_t c = 0;
    for (auto x : w_) c += std::popcount(x);
    return c;
  }
  // first set bit at or after i, or size() if none
  size_t next(size_t i) const {
    if (i >= n_) return n_;
    size_t wi = i >> 6;
    uint64_t x = w_[wi] & (~uint64_t(0) << (i & 63));
    while (true) {
      if (x) {
        size_t r = (wi << 6) + std::countr_zero(x);
        return r < n_ ? r : n_;
      }
      if (++wi >= w_.size()) return n_;
      x = w_[wi];
    }
  }
  size_t first() const { return next(0); }

  template <class F>
  void for_each(F&& f) const {
    for (size_t wi = 0; wi < w_.size(); ++wi) {
      uint64_t x = w_[wi];
      while (x) {
        f((wi << 6) + std::countr_zero(x));
        x &= x - 1;
      }
    }
  }
  std::vector<int> members() const {
    std::vector<int> r;
    for_each([&](size_t i) { r.push_back(int(i)); });
    return r;
  }

  BitSet& operator|=(const BitSet& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  BitSet& operator&=(const BitSet& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  BitSet& minus(const BitSet& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }
  friend BitSet operator|(BitSet a, const BitSet& b) { return a |= b; }
  friend BitSet operator&(BitSet a, const BitSet& b) { return a &= b; }
  bool intersects(const BitSet& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }
  bool subset_of(const BitSet& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool operator==(const BitSet& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator<(const BitSet& o) const { return w_ < o.w_; }

  size_t hash() const {
    size_t h = n_ * 0x9e3779b97f4a7c15ULL;
    for (auto x : w_) h = (h ^ x) * 0x100000001b3ULL + (h >> 29);
    return h;
  }
  const std::vector<uint64_t>& words() const { return w_; }

 private:
  size_t n_ = 0;
  std::vector<uint64_t> w_;
};

struct BitSetHash {
  size_t operator()(const BitSet& b) const { return b.hash(); }
};

// Binary relation on [0, n). Composition is diagrammatic: (r ∘ s)(x,z) iff
// r(x,y) and s(y,z) for some y.
class Relation {
 public:
  Relation() = default;
  explicit Relation(size_t n) : n_(n), rows_(n, BitSet(n)) {}
  static Relation identity(size_t n) {
    Relation r(n);
    for (size_t i = 0; i < n; ++i) r.set(i, i);
    return r;
  }

  size_t size() const { return n_; }
  bool test(size_t i, size_t j) const { return rows_[i].test(j); }
  void set(size_t i, size_t j) { rows_[i].set(j); }
  const BitSet& row(size_t i) const { return rows_[i]; }
  BitSet& row(size_t i) { return rows_[i]; }
  bool empty() const {
    for (auto& r : rows_) if (r.any()) return false;
    return true;
  }
  size_t count() const {
    size_t c = 0;
    for (auto& r : rows_) c += r.count();
    return c;
  }

  Relation compose(const Relation& s) const {
    Relation out(n_);
    for (size_t i = 0; i < n_; ++i)
      rows_[i].for_each([&](size_t k) { out.rows_[i] |= s.rows_[k]; });
    return out;
  }
  Relation& operator|=(const Relation& o) {
    for (size_t i = 0; i < n_; ++i) rows_[i] |= o.rows_[i];
    return *this;
  }
  friend Relation operator|(Relation a, const Relation& b) { return a |= b; }

  // reflexive-transitive closure
  Relation closure() const {
    Relation r = *this;
    for (size_t i = 0; i < n_; ++i) r.set(i, i);
    // Warshall on bit rows
    for (size_t k = 0; k < n_; ++k)
      for (size_t i = 0; i < n_; ++i)
        if (r.rows_[i].test(k)) r.rows_[i] |= r.rows_[k];
    return r;
  }
  // image of a set under the relation
  BitSet image(const BitSet& s) const {
    BitSet out(n_);
    s.for_each([&](size_t i) { out |= rows_[i]; });
    return out;
  }

  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> p;
    for (size_t i = 0; i < n_; ++i)
      rows_[i].for_each([&](size_t j) { p.emplace_back(int(i), int(j)); });
    return p;
  }

  bool operator==(const Relation& o) const { return rows_ == o.rows_; }
  bool operator<(const Relation& o) const { return rows_ < o.rows_; }
  size_t hash() const {
    size_t h = n_;
    for (auto& r : rows_) h = h * 1000003u ^ r.hash();
    return h;
  }

 private:
  size_t n_ = 0;
  std::vector<BitSet> rows_;
};

struct RelationHash {
  size_t operator()(const Relation& r) const { return r.hash(); }
};

}  // namespace fodef
