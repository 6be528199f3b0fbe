#pragma once

// Shared pair-diagram engine. A diagram is (domain antichain, range
// antichain, positional bijection); it denotes the homeomorphism sending the
// stream v.x to bijection(v).x for each domain leaf v. The same machinery
// drives both the based-tree elements and the planar-forest elements; the
// context type supplies the arity profile and the minimal antichain.

#include <algorithm>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "neretin/errors.hpp"
#include "neretin/rng.hpp"

namespace neretin {

template <class Ctx>
bool prefix_free_sorted(const std::vector<typename Ctx::Addr>& leaves) {
  for (std::size_t i = 0; i + 1 < leaves.size(); ++i) {
    if (leaves[i] == leaves[i + 1] || is_prefix(leaves[i], leaves[i + 1])) return false;
  }
  return true;
}

// Replaces full sibling families (in letter order) by their parent until no
// family remains. Input sorted prefix-free; output sorted.
template <class Ctx>
std::vector<typename Ctx::Addr> collapse_balls_t(const Ctx& ctx,
                                                 std::vector<typename Ctx::Addr> sorted) {
  std::vector<typename Ctx::Addr> stack;
  stack.reserve(sorted.size());
  for (auto& a : sorted) {
    stack.push_back(std::move(a));
    for (;;) {
      const auto& top = stack.back();
      if (!top.has_parent()) break;
      auto p = top.parent();
      const int k = ctx.arity_below(p);
      if (top.last_letter() != k - 1 || static_cast<int>(stack.size()) < k) break;
      bool full = true;
      for (int j = 0; j < k; ++j) {
        if (stack[stack.size() - k + j] != p.child(j)) {
          full = false;
          break;
        }
      }
      if (!full) break;
      stack.resize(stack.size() - k);
      stack.push_back(std::move(p));
    }
  }
  return stack;
}

template <class Ctx>
bool complete_antichain_t(const Ctx& ctx, std::vector<typename Ctx::Addr> leaves) {
  for (const auto& a : leaves) {
    if (!ctx.valid(a)) return false;
  }
  std::sort(leaves.begin(), leaves.end());
  if (!prefix_free_sorted<Ctx>(leaves)) return false;
  return collapse_balls_t(ctx, std::move(leaves)) == ctx.min_leaves();
}

template <class Ctx>
std::vector<typename Ctx::Addr> expand_leaves_t(const Ctx& ctx,
                                                std::vector<typename Ctx::Addr> leaves,
                                                std::size_t index) {
  const auto v = leaves[index];
  const int k = ctx.arity_below(v);
  std::vector<typename Ctx::Addr> kids;
  kids.reserve(k);
  for (int j = 0; j < k; ++j) kids.push_back(v.child(j));
  leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(index));
  leaves.insert(leaves.begin() + static_cast<std::ptrdiff_t>(index), kids.begin(), kids.end());
  return leaves;
}

// Coarsest common refinement of two sorted complete antichains: for each
// comparable pair of leaves, the deeper one survives.
template <class Ctx>
std::vector<typename Ctx::Addr> refine_t(const Ctx&,
                                         const std::vector<typename Ctx::Addr>& a,
                                         const std::vector<typename Ctx::Addr>& b) {
  std::vector<typename Ctx::Addr> out;
  out.reserve(std::max(a.size(), b.size()));
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      out.push_back(a[i]);
      ++i, ++j;
    } else if (is_prefix(a[i], b[j])) {
      while (j < b.size() && is_prefix(a[i], b[j])) out.push_back(b[j++]);
      ++i;
    } else if (is_prefix(b[j], a[i])) {
      while (i < a.size() && is_prefix(b[j], a[i])) out.push_back(a[i++]);
      ++j;
    } else {
      // both complete, so leaves must pairwise cover each other
      throw DomainError("refinement of incompatible antichains");
    }
  }
  return out;
}

template <class Ctx>
struct PairDiagram {
  Ctx ctx;
  std::vector<typename Ctx::Addr> dom;  // strictly increasing
  std::vector<typename Ctx::Addr> ran;  // ran[i] = image of dom[i]

  int size() const { return static_cast<int>(dom.size()); }

  friend bool operator==(const PairDiagram&, const PairDiagram&) = default;
};

template <class Ctx>
PairDiagram<Ctx> identity_diagram(const Ctx& ctx) {
  auto m = ctx.min_leaves();
  return PairDiagram<Ctx>{ctx, m, m};
}

template <class Ctx>
PairDiagram<Ctx> make_diagram(const Ctx& ctx, std::vector<typename Ctx::Addr> dom,
                              std::vector<typename Ctx::Addr> ran) {
  if (dom.size() != ran.size()) throw SemanticError("domain and range sizes differ");
  if (dom.empty()) throw SemanticError("empty diagram");
  std::vector<std::size_t> idx(dom.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return dom[x] < dom[y]; });
  PairDiagram<Ctx> d{ctx, {}, {}};
  d.dom.reserve(dom.size());
  d.ran.reserve(ran.size());
  for (auto k : idx) {
    d.dom.push_back(std::move(dom[k]));
    d.ran.push_back(std::move(ran[k]));
  }
  for (const auto& a : d.dom) {
    if (!ctx.valid(a)) throw SemanticError("invalid domain address");
  }
  for (const auto& a : d.ran) {
    if (!ctx.valid(a)) throw SemanticError("invalid range address");
  }
  if (!prefix_free_sorted<Ctx>(d.dom) ||
      collapse_balls_t(ctx, d.dom) != ctx.min_leaves()) {
    throw SemanticError("domain is not a complete antichain");
  }
  auto rs = d.ran;
  std::sort(rs.begin(), rs.end());
  if (!prefix_free_sorted<Ctx>(rs) || collapse_balls_t(ctx, std::move(rs)) != ctx.min_leaves()) {
    throw SemanticError("range is not a complete antichain");
  }
  return d;
}

// Canonical form: repeatedly collapse any full sibling family in the domain
// mapped in letter order onto a full sibling family in the range. The result
// is unique, independent of collapse order.
template <class Ctx>
void reduce_in_place(PairDiagram<Ctx>& d) {
  std::vector<typename Ctx::Addr> sd, sr;
  sd.reserve(d.dom.size());
  sr.reserve(d.ran.size());
  for (std::size_t i = 0; i < d.dom.size(); ++i) {
    sd.push_back(std::move(d.dom[i]));
    sr.push_back(std::move(d.ran[i]));
    for (;;) {
      const auto& td = sd.back();
      const auto& tr = sr.back();
      if (!td.has_parent() || !tr.has_parent()) break;
      auto p = td.parent();
      auto pp = tr.parent();
      const int k = d.ctx.arity_below(p);
      if (d.ctx.arity_below(pp) != k) break;
      if (td.last_letter() != k - 1 || tr.last_letter() != k - 1) break;
      if (static_cast<int>(sd.size()) < k) break;
      bool full = true;
      for (int j = 0; j < k && full; ++j) {
        const std::size_t at = sd.size() - static_cast<std::size_t>(k) + static_cast<std::size_t>(j);
        full = sd[at] == p.child(j) && sr[at] == pp.child(j);
      }
      if (!full) break;
      sd.resize(sd.size() - static_cast<std::size_t>(k));
      sr.resize(sr.size() - static_cast<std::size_t>(k));
      sd.push_back(std::move(p));
      sr.push_back(std::move(pp));
    }
  }
  d.dom = std::move(sd);
  d.ran = std::move(sr);
}

template <class Ctx>
PairDiagram<Ctx> reduced(PairDiagram<Ctx> d) {
  reduce_in_place(d);
  return d;
}

// a(b(.)): refine b's range against a's domain, pull the refinement back
// through b and push it forward through a.
template <class Ctx>
PairDiagram<Ctx> compose(const PairDiagram<Ctx>& a, const PairDiagram<Ctx>& b) {
  if (!(a.ctx == b.ctx)) throw DomainError("composing elements of different degree");
  const std::size_t n = b.ran.size();
  std::vector<std::size_t> bidx(n);
  std::iota(bidx.begin(), bidx.end(), 0u);
  std::sort(bidx.begin(), bidx.end(),
            [&](std::size_t x, std::size_t y) { return b.ran[x] < b.ran[y]; });
  std::vector<typename Ctx::Addr> bran_sorted;
  bran_sorted.reserve(n);
  for (auto k : bidx) bran_sorted.push_back(b.ran[k]);

  const auto mid = refine_t(a.ctx, bran_sorted, a.dom);
  PairDiagram<Ctx> out{a.ctx, {}, {}};
  out.dom.reserve(mid.size());
  out.ran.reserve(mid.size());
  std::size_t bi = 0, ai = 0;
  std::vector<std::pair<typename Ctx::Addr, typename Ctx::Addr>> rows;
  rows.reserve(mid.size());
  for (const auto& r : mid) {
    while (!is_prefix(bran_sorted[bi], r)) ++bi;
    while (!is_prefix(a.dom[ai], r)) ++ai;
    auto pull = b.dom[bidx[bi]].descend(suffix_after(bran_sorted[bi], r));
    auto push = a.ran[ai].descend(suffix_after(a.dom[ai], r));
    rows.emplace_back(std::move(pull), std::move(push));
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& row : rows) {
    out.dom.push_back(std::move(row.first));
    out.ran.push_back(std::move(row.second));
  }
  reduce_in_place(out);
  return out;
}

template <class Ctx>
PairDiagram<Ctx> inverse(const PairDiagram<Ctx>& a) {
  const std::size_t n = a.dom.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t x, std::size_t y) { return a.ran[x] < a.ran[y]; });
  PairDiagram<Ctx> out{a.ctx, {}, {}};
  out.dom.reserve(n);
  out.ran.reserve(n);
  for (auto k : idx) {
    out.dom.push_back(a.ran[k]);
    out.ran.push_back(a.dom[k]);
  }
  reduce_in_place(out);
  return out;
}

template <class Ctx>
bool equal(const PairDiagram<Ctx>& a, const PairDiagram<Ctx>& b) {
  if (!(a.ctx == b.ctx)) throw DomainError("comparing elements of different degree");
  return reduced(a) == reduced(b);
}

template <class Ctx>
bool is_identity(const PairDiagram<Ctx>& a) {
  return equal(a, identity_diagram(a.ctx));
}

// Expands the i-th piece on both sides; the element is unchanged.
template <class Ctx>
PairDiagram<Ctx> expand_pair_at(const PairDiagram<Ctx>& d, std::size_t index) {
  const auto v = d.dom[index];
  const auto w = d.ran[index];
  const int k = d.ctx.arity_below(v);
  if (d.ctx.arity_below(w) != k) throw DomainError("piece arity mismatch");
  PairDiagram<Ctx> out{d.ctx, {}, {}};
  out.dom.reserve(d.dom.size() + static_cast<std::size_t>(k) - 1);
  out.ran.reserve(out.dom.capacity());
  for (std::size_t i = 0; i < d.dom.size(); ++i) {
    if (i == index) {
      for (int j = 0; j < k; ++j) {
        out.dom.push_back(v.child(j));
        out.ran.push_back(w.child(j));
      }
    } else {
      out.dom.push_back(d.dom[i]);
      out.ran.push_back(d.ran[i]);
    }
  }
  return out;
}

template <class Ctx>
std::vector<typename Ctx::Addr> moved_leaves(const PairDiagram<Ctx>& d) {
  std::vector<typename Ctx::Addr> out;
  for (std::size_t i = 0; i < d.dom.size(); ++i) {
    if (d.dom[i] != d.ran[i]) out.push_back(d.dom[i]);
  }
  return out;
}

// Index of the leaf whose ball contains the ball at x, if x is at or below
// a leaf.
template <class Ctx>
std::optional<std::size_t> leaf_over(const PairDiagram<Ctx>& d, const typename Ctx::Addr& x) {
  auto it = std::upper_bound(d.dom.begin(), d.dom.end(), x);
  if (it == d.dom.begin()) return std::nullopt;
  const std::size_t i = static_cast<std::size_t>(it - d.dom.begin()) - 1;
  if (!is_prefix(d.dom[i], x)) return std::nullopt;
  return i;
}

// Exact image ball of the ball at x, defined when x is at or below a domain
// leaf.
template <class Ctx>
std::optional<typename Ctx::Addr> exact_ball_image(const PairDiagram<Ctx>& d,
                                                   const typename Ctx::Addr& x) {
  auto i = leaf_over(d, x);
  if (!i) return std::nullopt;
  return d.ran[*i].descend(suffix_after(d.dom[*i], x));
}

// Leaf-ball decomposition of the image of the ball at x: a single exact ball
// when x sits at or below a leaf, otherwise the images of all leaves under x.
template <class Ctx>
std::vector<typename Ctx::Addr> ball_image_leaves(const PairDiagram<Ctx>& d,
                                                  const typename Ctx::Addr& x) {
  if (auto one = exact_ball_image(d, x)) return {*one};
  std::vector<typename Ctx::Addr> out;
  auto lo = std::lower_bound(d.dom.begin(), d.dom.end(), x);
  for (auto it = lo; it != d.dom.end() && is_prefix(x, *it); ++it) {
    out.push_back(d.ran[static_cast<std::size_t>(it - d.dom.begin())]);
  }
  return out;
}

// Smallest complete antichain having every (pairwise incomparable) target as
// a leaf: expand from the minimal antichain along target prefixes.
template <class Ctx>
std::vector<typename Ctx::Addr> min_antichain_containing_t(
    const Ctx& ctx, const std::vector<typename Ctx::Addr>& targets) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!ctx.valid(targets[i])) throw SemanticError("invalid target address");
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      if (targets[i] == targets[j] || is_prefix(targets[i], targets[j]) ||
          is_prefix(targets[j], targets[i])) {
        throw DomainError("targets must be pairwise incomparable");
      }
    }
  }
  auto leaves = ctx.min_leaves();
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < leaves.size() && !grew; ++i) {
      for (const auto& t : targets) {
        if (leaves[i] != t && is_prefix(leaves[i], t)) {
          leaves = expand_leaves_t(ctx, std::move(leaves), i);
          grew = true;
          break;
        }
      }
    }
  }
  return leaves;
}

// Random diagram: the stated number of independent leaf expansions on each
// side from the minimal antichain, then a uniformly shuffled bijection.
template <class Ctx>
PairDiagram<Ctx> random_diagram(const Ctx& ctx, SeededRng& rng, int expansions,
                                int depth_cap = 1 << 20) {
  auto grow = [&](int n) {
    auto leaves = ctx.min_leaves();
    for (int t = 0; t < n; ++t) {
      std::vector<std::size_t> ok;
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (leaves[i].depth() < depth_cap) ok.push_back(i);
      }
      if (ok.empty()) break;
      leaves = expand_leaves_t(ctx, std::move(leaves),
                               ok[static_cast<std::size_t>(rng.uniform(static_cast<int>(ok.size())))]);
    }
    return leaves;
  };
  PairDiagram<Ctx> d{ctx, grow(expansions), grow(expansions)};
  if (d.dom.size() != d.ran.size()) throw DomainError("random growth size mismatch");
  rng.shuffle(d.ran);
  reduce_in_place(d);
  return d;
}

}  // namespace neretin
