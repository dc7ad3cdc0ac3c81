#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

namespace mq {

// 64-bit mixer used for all hashing in this library (splitmix64 finalizer).
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t v) {
  return mix64(seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::uint64_t h = 0x12345678abcdef01ULL;
    for (int x : v) h = hash_combine(h, static_cast<std::uint64_t>(x));
    return static_cast<std::size_t>(h);
  }
};

// Least nonnegative integer not in vals.
inline int mex_of(std::vector<int> vals) {
  std::vector<char> seen(vals.size() + 1, 0);
  for (int v : vals)
    if (v >= 0 && static_cast<std::size_t>(v) < seen.size()) seen[v] = 1;
  int m = 0;
  while (seen[m]) ++m;
  return m;
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Merges the classes of a and b; the smaller root index survives.
  // Returns the dead root, or -1 if already merged.
  int unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return -1;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return b;
  }

  void reset(int n) {
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  // Extends the universe without touching existing unions.
  void grow(int n) {
    int old = static_cast<int>(parent_.size());
    if (n <= old) return;
    parent_.resize(n);
    std::iota(parent_.begin() + old, parent_.end(), old);
  }

  int size() const { return static_cast<int>(parent_.size()); }

 private:
  std::vector<int> parent_;
};

}  // namespace mq
