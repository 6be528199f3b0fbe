#include "neretin/ray.hpp"

#include <algorithm>
#include <numeric>

namespace neretin {

namespace {

void check_stream_alphabet(const std::string& pre, const std::string& per, int q) {
  for (std::size_t i = 0; i < pre.size(); ++i) {
    const int v = letter_value(pre[i]);
    const int bound = i == 0 ? q : q - 1;
    if (v < 0 || v > bound) throw SemanticError("ray: preperiod letter out of range");
  }
  for (char c : per) {
    // every period letter recurs, so none may use the basepoint-only letter q
    const int v = letter_value(c);
    if (v < 0 || v > q - 1) throw SemanticError("ray: period letter out of range");
  }
}

}  // namespace

Ray normalize_ray(std::string pre, std::string per, int q) {
  check_degree(q);
  if (per.empty()) throw SemanticError("ray: empty period");
  check_stream_alphabet(pre, per, q);

  // minimal period: the smallest divisor d of |per| with per = (per[0..d))^k
  const std::size_t n = per.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = per[i] == per[i - d];
    if (ok) {
      per.resize(d);
      break;
    }
  }
  // minimal preperiod: absorb trailing symbols into a rotated period
  while (!pre.empty() && pre.back() == per.back()) {
    pre.pop_back();
    per.insert(per.begin(), per.back());
    per.pop_back();
  }
  return Ray{std::move(pre), std::move(per)};
}

std::optional<int> gromov_product(const Ray& a, const Ray& b) {
  const std::size_t m = std::max(a.pre.size(), b.pre.size());
  const std::size_t l = std::lcm(a.per.size(), b.per.size());
  const std::size_t horizon = m + l;
  for (std::size_t i = 0; i < horizon; ++i) {
    if (a.at(i) != b.at(i)) return static_cast<int>(i);
  }
  return std::nullopt;  // streams agree on a full period window past both preperiods
}

bool rays_equal(const Ray& a, const Ray& b) { return !gromov_product(a, b).has_value(); }

LogDistance visual_distance(const Ray& a, const Ray& b) {
  auto g = gromov_product(a, b);
  if (!g) return LogDistance{true, 0};
  return LogDistance{false, *g};
}

Address leaf_containing(const Antichain& l, const Ray& xi) {
  Address cur = Address::root();
  const int max_depth = l.leaves.empty() ? 0 : l.leaves.back().depth() + 1;
  for (int d = 0; d <= max_depth + 1; ++d) {
    if (l.contains(cur)) return cur;
    cur.word.push_back(xi.at(static_cast<std::size_t>(d)));
  }
  // a complete antichain meets every stream
  throw DomainError("leaf_containing: antichain does not cover the ray");
}

Ray drop_stream_prefix(const Ray& xi, int n, int q) {
  const std::size_t k = static_cast<std::size_t>(n);
  if (k <= xi.pre.size()) {
    return normalize_ray(xi.pre.substr(k), xi.per, q);
  }
  const std::size_t shift = (k - xi.pre.size()) % xi.per.size();
  std::string rotated = xi.per.substr(shift) + xi.per.substr(0, shift);
  return normalize_ray("", std::move(rotated), q);
}

std::string render_ray(const Ray& r) {
  return "ray{" + r.pre + ".(" + r.per + ")}";
}

std::string render_distance(const LogDistance& d) {
  if (d.zero) return "0";
  return "e^-" + std::to_string(d.exponent);
}

}  // namespace neretin
