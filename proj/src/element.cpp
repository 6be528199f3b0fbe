#include "neretin/element.hpp"

#include <algorithm>
#include <set>

namespace neretin {

TreePair identity_element(int q) {
  check_degree(q);
  return identity_diagram(TreeCtx{q});
}

TreePair make_tree_pair(int q, std::vector<Address> dom, std::vector<Address> ran) {
  check_degree(q);
  return make_diagram(TreeCtx{q}, std::move(dom), std::move(ran));
}

Ray act(const TreePair& a, const Ray& xi) {
  const Antichain dom{a.ctx, a.dom};
  const Address v = leaf_containing(dom, xi);
  const auto i = static_cast<std::size_t>(
      std::lower_bound(a.dom.begin(), a.dom.end(), v) - a.dom.begin());
  const Ray tail = drop_stream_prefix(xi, v.depth(), a.ctx.q);
  return normalize_ray(a.ran[i].word + tail.pre, tail.per, a.ctx.q);
}

std::vector<Address> support(const TreePair& a) {
  return moved_leaves(reduced(a));
}

bool support_within(const TreePair& a, const Address& v) {
  for (const auto& s : support(a)) {
    if (!is_prefix(v, s)) return false;
  }
  return true;
}

std::vector<LeafFixture> fixed_rays(const TreePair& a) {
  const TreePair c = reduced(a);
  std::vector<LeafFixture> out;
  out.reserve(c.dom.size());
  for (std::size_t i = 0; i < c.dom.size(); ++i) {
    const Address& v = c.dom[i];
    const Address& w = c.ran[i];
    if (v == w) {
      out.push_back({v, w, FixKind::WholeBall, std::nullopt});
    } else if (is_prefix(v, w) || is_prefix(w, v)) {
      // the piece v.x -> w.x fixes exactly the stream solving x = s.x
      const std::string s = is_prefix(v, w) ? std::string(suffix_after(v, w))
                                            : std::string(suffix_after(w, v));
      out.push_back({v, w, FixKind::SingleRay, normalize_ray(v.word, s, c.ctx.q)});
    } else {
      out.push_back({v, w, FixKind::None, std::nullopt});
    }
  }
  return out;
}

std::vector<LeafScale> piecewise_scales(const TreePair& a) {
  std::vector<LeafScale> out;
  out.reserve(a.dom.size());
  for (std::size_t i = 0; i < a.dom.size(); ++i) {
    out.push_back({a.dom[i], a.dom[i].depth() - a.ran[i].depth()});
  }
  return out;
}

int max_scale_exponent(const TreePair& a) {
  int best = 0;
  bool first = true;
  for (const auto& s : piecewise_scales(a)) {
    if (first || s.exponent > best) best = s.exponent;
    first = false;
  }
  return best;
}

namespace {

enum class RegionKind { Whole, Ball, CoBall, Other };
struct Region {
  RegionKind kind;
  Address vertex;
};

// Classifies a union of range leaf balls against the full range partition.
Region classify_region(const TreeCtx& ctx, const std::vector<Address>& ran_sorted,
                       std::vector<Address> img) {
  std::sort(img.begin(), img.end());
  auto balls = collapse_balls_t(ctx, img);
  if (balls.size() == 1) {
    if (balls[0].is_root()) return {RegionKind::Whole, Address::root()};
    return {RegionKind::Ball, balls[0]};
  }
  std::vector<Address> comp;
  std::set_difference(ran_sorted.begin(), ran_sorted.end(), img.begin(), img.end(),
                      std::back_inserter(comp));
  auto cballs = collapse_balls_t(ctx, std::move(comp));
  if (cballs.size() == 1 && !cballs[0].is_root()) return {RegionKind::CoBall, cballs[0]};
  return {RegionKind::Other, Address::root()};
}

std::vector<Address> sorted_range(const TreePair& c) {
  auto rs = c.ran;
  std::sort(rs.begin(), rs.end());
  return rs;
}

std::vector<Address> internal_vertices(const TreePair& c) {
  std::set<Address> seen;
  for (const auto& leaf : c.dom) {
    Address p = Address::root();
    for (int i = 0; i < leaf.depth(); ++i) {
      seen.insert(p);
      p = p.child(letter_value(leaf.word[static_cast<std::size_t>(i)]));
    }
  }
  return {seen.begin(), seen.end()};
}

bool halftrees_map_to_halftrees(const TreePair& c) {
  const auto ran_sorted = sorted_range(c);
  for (const auto& u : internal_vertices(c)) {
    auto r = classify_region(c.ctx, ran_sorted, ball_image_leaves(c, u));
    if (r.kind == RegionKind::Other) return false;
  }
  return true;
}

}  // namespace

bool is_automorphism(const TreePair& a) {
  const TreePair c = reduced(a);
  return halftrees_map_to_halftrees(c) && halftrees_map_to_halftrees(inverse(c));
}

Address vertex_image(const TreePair& a, const Address& u) {
  if (!valid_address(u, a.ctx.q)) throw SemanticError("invalid vertex address");
  if (!is_automorphism(a)) {
    throw DomainError("vertex_image: element is not induced by a tree automorphism");
  }
  const TreePair c = reduced(a);
  if (auto i = leaf_over(c, u)) {
    return c.ran[*i].descend(suffix_after(c.dom[*i], u));
  }

  // u lies strictly above the domain antichain: intersect the images of the
  // q+1 half-trees at u.
  const auto ran_sorted = sorted_range(c);
  std::vector<Address> cands;
  auto candidate_of = [&](const Region& r) -> Address {
    switch (r.kind) {
      case RegionKind::Ball:
        return r.vertex.parent();
      case RegionKind::CoBall:
        return r.vertex;
      default:
        throw VerificationError("vertex_image: half-tree image is not a half-tree");
    }
  };
  const int k = c.ctx.arity_below(u);
  for (int j = 0; j < k; ++j) {
    cands.push_back(
        candidate_of(classify_region(c.ctx, ran_sorted, ball_image_leaves(c, u.child(j)))));
  }
  if (!u.is_root()) {
    // the half-tree through the parent has the complement of the u-ball as
    // boundary; complementing swaps ball and co-ball
    auto below = classify_region(c.ctx, ran_sorted, ball_image_leaves(c, u));
    if (below.kind == RegionKind::Ball) {
      cands.push_back(below.vertex);
    } else if (below.kind == RegionKind::CoBall) {
      cands.push_back(below.vertex.parent());
    } else {
      throw VerificationError("vertex_image: inconsistent half-tree image");
    }
  }
  for (const auto& cand : cands) {
    if (cand != cands.front()) {
      throw VerificationError("vertex_image: half-tree images do not share a vertex");
    }
  }
  return cands.front();
}

bool is_type_preserving(const TreePair& a) {
  if (!is_automorphism(a)) {
    throw DomainError("is_type_preserving: element is not induced by a tree automorphism");
  }
  const TreePair c = reduced(a);
  for (std::size_t i = 0; i < c.dom.size(); ++i) {
    if ((c.ran[i].depth() - c.dom[i].depth()) % 2 != 0) return false;
  }
  return true;
}

LogDistance uniform_distance(const TreePair& a, const TreePair& b) {
  if (!(a.ctx == b.ctx)) throw DomainError("comparing elements of different degree");
  const TreePair ca = reduced(a);
  const TreePair cb = reduced(b);
  const auto mid = refine_t(ca.ctx, ca.dom, cb.dom);
  bool differs = false;
  int best = 0;
  std::size_t ia = 0, ib = 0;
  for (const auto& d : mid) {
    while (!is_prefix(ca.dom[ia], d)) ++ia;
    while (!is_prefix(cb.dom[ib], d)) ++ib;
    const Address wa = ca.ran[ia].descend(suffix_after(ca.dom[ia], d));
    const Address wb = cb.ran[ib].descend(suffix_after(cb.dom[ib], d));
    if (wa != wb) {
      const int l = lcp(wa, wb).depth();
      if (!differs || l < best) best = l;
      differs = true;
    }
  }
  if (!differs) return LogDistance{true, 0};
  return LogDistance{false, best};
}

Portrait make_portrait(int q, std::map<Address, std::vector<int>> entries) {
  check_degree(q);
  Portrait p{q, {}};
  for (auto& [addr, perm] : entries) {
    if (!valid_address(addr, q)) throw SemanticError("portrait: invalid address");
    const int arity = addr.is_root() ? q + 1 : q;
    if (static_cast<int>(perm.size()) != arity) {
      throw SemanticError("portrait: permutation at '" + render_address(addr) +
                          "' must have " + std::to_string(arity) + " entries");
    }
    std::vector<bool> hit(perm.size(), false);
    bool id = true;
    for (int i = 0; i < arity; ++i) {
      if (perm[static_cast<std::size_t>(i)] < 0 || perm[static_cast<std::size_t>(i)] >= arity ||
          hit[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]) {
        throw SemanticError("portrait: not a permutation at '" + render_address(addr) + "'");
      }
      hit[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = true;
      if (perm[static_cast<std::size_t>(i)] != i) id = false;
    }
    if (!id) p.entries.emplace(addr, std::move(perm));
  }
  return p;
}

Address apply_portrait(const Portrait& p, const Address& v) {
  Address img = Address::root();
  for (char c : v.word) {
    const int a = letter_value(c);
    auto it = p.entries.find(img);
    img = img.child(it == p.entries.end() ? a : it->second[static_cast<std::size_t>(a)]);
  }
  return img;
}

namespace {

// Source vertex mapping to the image-side vertex m: walk m, undoing the
// local permutation at each image prefix.
Address portrait_preimage(const Portrait& p, const Address& m) {
  Address src = Address::root();
  Address img = Address::root();
  for (char c : m.word) {
    const int b = letter_value(c);
    auto it = p.entries.find(img);
    int a = b;
    if (it != p.entries.end()) {
      const auto& perm = it->second;
      for (std::size_t j = 0; j < perm.size(); ++j) {
        if (perm[j] == b) {
          a = static_cast<int>(j);
          break;
        }
      }
    }
    src = src.child(a);
    img = img.child(b);
  }
  return src;
}

std::vector<int> identity_perm(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

}  // namespace

Portrait compose(const Portrait& after, const Portrait& first) {
  if (after.q != first.q) throw DomainError("composing portraits of different degree");
  const int q = after.q;
  std::set<Address> keys;
  for (const auto& [m, perm] : after.entries) keys.insert(m);
  for (const auto& [n, perm] : first.entries) keys.insert(apply_portrait(after, n));
  std::map<Address, std::vector<int>> entries;
  for (const auto& m : keys) {
    const Address n = portrait_preimage(after, m);
    const int arity = m.is_root() ? q + 1 : q;
    auto ita = after.entries.find(m);
    auto itf = first.entries.find(n);
    const std::vector<int> pa = ita == after.entries.end() ? identity_perm(arity) : ita->second;
    const std::vector<int> pf = itf == first.entries.end() ? identity_perm(arity) : itf->second;
    std::vector<int> comp(static_cast<std::size_t>(arity));
    for (int i = 0; i < arity; ++i) {
      comp[static_cast<std::size_t>(i)] = pa[static_cast<std::size_t>(pf[static_cast<std::size_t>(i)])];
    }
    entries.emplace(m, std::move(comp));
  }
  return make_portrait(q, std::move(entries));
}

Portrait inverse(const Portrait& p) {
  std::map<Address, std::vector<int>> entries;
  for (const auto& [m, perm] : p.entries) {
    std::vector<int> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
    }
    entries.emplace(portrait_preimage(p, m), std::move(inv));
  }
  return make_portrait(p.q, std::move(entries));
}

TreePair portrait_to_treepair(const Portrait& p) {
  int depth = 0;
  for (const auto& [addr, perm] : p.entries) depth = std::max(depth, addr.depth() + 1);
  if (depth == 0) return identity_element(p.q);
  std::vector<Address> dom = {Address::root()};
  for (int d = 0; d < depth; ++d) {
    std::vector<Address> next;
    for (const auto& v : dom) {
      for (const auto& c : children(v, p.q)) next.push_back(c);
    }
    dom = std::move(next);
  }
  std::vector<Address> ran;
  ran.reserve(dom.size());
  for (const auto& v : dom) ran.push_back(apply_portrait(p, v));
  return reduced(make_tree_pair(p.q, std::move(dom), std::move(ran)));
}

TreePair factor_as_treepair(const WordFactor& f) {
  TreePair t = std::holds_alternative<TreePair>(f.base)
                   ? std::get<TreePair>(f.base)
                   : portrait_to_treepair(std::get<Portrait>(f.base));
  return f.exp == 1 ? t : inverse(t);
}

TreePair normal_form(const GroupWord& w) {
  TreePair acc = identity_element(w.q);
  for (const auto& f : w.factors) acc = compose(acc, factor_as_treepair(f));
  return acc;
}

GroupWord inverse_word(const GroupWord& w) {
  GroupWord out{w.q, {}};
  out.factors.reserve(w.factors.size());
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
    out.factors.push_back({it->base, -it->exp});
  }
  return out;
}

TreePair commutator(const TreePair& a, const TreePair& b) {
  return compose(compose(a, b), compose(inverse(a), inverse(b)));
}

NonlocalDemo nonlocal_compactness_sequence(int k, int q) {
  check_degree(q);
  if (k < 1) throw DomainError("nonlocal_compactness_sequence: k must be positive");
  NonlocalDemo demo;
  for (int i = 1; i <= k; ++i) {
    // pairwise disjoint balls 1, 01, 001, ... of strictly increasing depth
    Address b{std::string(static_cast<std::size_t>(i - 1), '0') + "1"};
    demo.balls.push_back(b);

    // inside the ball: send the ball at b.0^(i+1) onto the ball at b.0,
    // a piece of scale exponent i; fill the rest order-preservingly
    std::vector<Address> dom_in;
    Address spine = b;
    for (int j = 0; j <= i; ++j) {
      for (int c = 1; c < q; ++c) dom_in.push_back(spine.child(c));
      spine = spine.child(0);
    }
    dom_in.push_back(spine);  // b.0^(i+1)
    std::sort(dom_in.begin(), dom_in.end());

    std::vector<Address> ran_in;
    for (int c = 0; c < q; ++c) ran_in.push_back(b.child(c));
    std::sort(ran_in.begin(), ran_in.end());
    for (int t = 0; t < i; ++t) {
      // grow the range side to match, away from the special leaf b.0
      const std::size_t last = ran_in.size() - 1;
      ran_in = expand_leaves_t(TreeCtx{q}, std::move(ran_in), last);
    }

    const Address special_dom = b.descend(std::string(static_cast<std::size_t>(i + 1), '0'));
    const Address special_ran = b.child(0);
    std::vector<Address> rest_dom, rest_ran;
    for (const auto& v : dom_in) {
      if (v != special_dom) rest_dom.push_back(v);
    }
    for (const auto& v : ran_in) {
      if (v != special_ran) rest_ran.push_back(v);
    }
    if (rest_dom.size() != rest_ran.size()) {
      throw VerificationError("unbounded-scale construction: size mismatch");
    }

    std::vector<Address> dom = complement_antichain(b, q);
    std::vector<Address> ran = dom;  // identity off the ball
    dom.push_back(special_dom);
    ran.push_back(special_ran);
    for (std::size_t j = 0; j < rest_dom.size(); ++j) {
      dom.push_back(rest_dom[j]);
      ran.push_back(rest_ran[j]);
    }
    demo.phis.push_back(reduced(make_tree_pair(q, std::move(dom), std::move(ran))));
  }
  TreePair acc = identity_element(q);
  for (const auto& phi : demo.phis) {
    acc = compose(phi, acc);  // Psi_j = Phi_j ... Phi_1
    demo.psis.push_back(acc);
  }
  return demo;
}

TreePair random_element(std::uint64_t seed, int max_expansions, int q) {
  check_degree(q);
  SeededRng rng(seed);
  const int e = rng.uniform(max_expansions + 1);
  return random_diagram(TreeCtx{q}, rng, e);
}

TreePair random_element_with_expansions(SeededRng& rng, int expansions, int q, int depth_cap) {
  check_degree(q);
  return random_diagram(TreeCtx{q}, rng, expansions, depth_cap);
}

Ray random_ray(SeededRng& rng, int q, int max_pre, int max_per) {
  const int lp = rng.uniform(max_pre + 1);
  const int lq = 1 + rng.uniform(max_per);
  std::string pre, per;
  for (int i = 0; i < lp; ++i) {
    pre.push_back(letter_char(rng.uniform(i == 0 ? q + 1 : q)));
  }
  for (int i = 0; i < lq; ++i) per.push_back(letter_char(rng.uniform(q)));
  return normalize_ray(std::move(pre), std::move(per), q);
}

Portrait random_portrait(SeededRng& rng, int q, int max_depth, int max_entries) {
  std::map<Address, std::vector<int>> entries;
  const int n = 1 + rng.uniform(max_entries);
  for (int t = 0; t < n; ++t) {
    const int d = rng.uniform(max_depth + 1);
    Address addr;
    for (int i = 0; i < d; ++i) addr = addr.child(rng.uniform(i == 0 ? q + 1 : q));
    const int arity = addr.is_root() ? q + 1 : q;
    auto perm = identity_perm(arity);
    rng.shuffle(perm);
    entries[addr] = std::move(perm);
  }
  return make_portrait(q, std::move(entries));
}

TreePair random_supported_in(SeededRng& rng, const Address& v, int expansions, int q) {
  check_degree(q);
  if (v.is_root()) throw DomainError("support ball must be proper");
  const TreeCtx ctx{q};
  auto grow = [&](int n) {
    std::vector<Address> leaves = {v};
    for (int t = 0; t < n; ++t) {
      leaves = expand_leaves_t(ctx, std::move(leaves),
                               static_cast<std::size_t>(rng.uniform(static_cast<int>(leaves.size()))));
    }
    return leaves;
  };
  auto dom_in = grow(expansions);
  auto ran_in = grow(expansions);
  rng.shuffle(ran_in);
  std::vector<Address> dom = complement_antichain(v, q);
  std::vector<Address> ran = dom;
  dom.insert(dom.end(), dom_in.begin(), dom_in.end());
  ran.insert(ran.end(), ran_in.begin(), ran_in.end());
  return reduced(make_tree_pair(q, std::move(dom), std::move(ran)));
}

}  // namespace neretin
