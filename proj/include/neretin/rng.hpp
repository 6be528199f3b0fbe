#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace neretin {

// Explicit seeded generator passed by reference; never ambient state.
// mt19937_64 output is pinned by the standard, and the bounded draw below
// avoids std::uniform_int_distribution, so streams are identical across
// platforms.
struct SeededRng {
  std::mt19937_64 eng;

  explicit SeededRng(std::uint64_t seed) : eng(seed) {}

  std::uint64_t next() { return eng(); }

  int uniform(int n) {
    return n <= 1 ? 0 : static_cast<int>(eng() % static_cast<std::uint64_t>(n));
  }

  bool coin() { return (eng() >> 17) & 1u; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(uniform(static_cast<int>(i)))]);
    }
  }
};

}  // namespace neretin
