#pragma once

// Eventually periodic ends of the tree and the visual metric, kept exact as
// integer exponents (distance e^-n, with a separate marker for distance 0).

#include <optional>
#include <string>

#include "neretin/tree.hpp"

namespace neretin {

// An end, as the stream pre.per.per..., stored in normal form: minimal
// preperiod first, then minimal period.
struct Ray {
  std::string pre;
  std::string per;  // nonempty

  char at(std::size_t i) const {
    return i < pre.size() ? pre[i] : per[(i - pre.size()) % per.size()];
  }

  friend bool operator==(const Ray&, const Ray&) = default;
  friend auto operator<=>(const Ray&, const Ray&) = default;
};

Ray normalize_ray(std::string pre, std::string per, int q);

// Length of the longest common prefix of the two streams; nullopt when the
// streams coincide.
std::optional<int> gromov_product(const Ray& a, const Ray& b);

bool rays_equal(const Ray& a, const Ray& b);

// The value e^-exponent; `zero` set means distance 0 (the +infinity marker
// on the exponent side).
struct LogDistance {
  bool zero = false;
  int exponent = 0;

  friend bool operator==(const LogDistance&, const LogDistance&) = default;
};

// a <= b as real distances
inline bool distance_le(const LogDistance& a, const LogDistance& b) {
  if (a.zero) return true;
  if (b.zero) return false;
  return a.exponent >= b.exponent;
}

inline LogDistance distance_max(const LogDistance& a, const LogDistance& b) {
  return distance_le(a, b) ? b : a;
}

LogDistance visual_distance(const Ray& a, const Ray& b);

// The unique leaf of a complete antichain that is a prefix of the stream.
Address leaf_containing(const Antichain& l, const Ray& xi);

// The stream with its first n symbols removed, renormalized.
Ray drop_stream_prefix(const Ray& xi, int n, int q);

std::string render_ray(const Ray& r);
std::string render_distance(const LogDistance& d);

}  // namespace neretin
