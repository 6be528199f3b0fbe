#pragma once

// The finitary spheromorphism group: tree-pair elements with canonical
// (planar, order-preserving) pieces, portraits of basepoint-fixing
// automorphisms, the boundary action, scales, automorphism detection, the
// sup metric, and the unbounded-scale Cauchy sequence construction.

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "neretin/pair_diagram.hpp"
#include "neretin/ray.hpp"
#include "neretin/tree.hpp"

namespace neretin {

using TreePair = PairDiagram<TreeCtx>;

TreePair identity_element(int q);
TreePair make_tree_pair(int q, std::vector<Address> dom, std::vector<Address> ran);

Ray act(const TreePair& a, const Ray& xi);

// Closed support as a union of leaf balls of the canonical form: exactly the
// moved leaves. A nested-image piece contributes its whole ball; its single
// interior fixed end is a limit of moved points.
std::vector<Address> support(const TreePair& a);
bool support_within(const TreePair& a, const Address& v);

enum class FixKind { WholeBall, SingleRay, None };
struct LeafFixture {
  Address leaf;
  Address image;
  FixKind kind;
  std::optional<Ray> ray;  // set iff kind == SingleRay
};
std::vector<LeafFixture> fixed_rays(const TreePair& a);

// Per piece, the exponent depth(v) - depth(image(v)): the piece scales the
// metric by e^exponent.
struct LeafScale {
  Address leaf;
  int exponent;
};
std::vector<LeafScale> piecewise_scales(const TreePair& a);
int max_scale_exponent(const TreePair& a);

// True iff the element is induced by an automorphism of the tree: every
// half-tree boundary must map to a ball or the complement of a ball, checked
// on the canonical form and its inverse.
bool is_automorphism(const TreePair& a);

// Image of a vertex under the inducing tree automorphism, recovered as the
// common endpoint of the images of the q+1 half-trees at u.
Address vertex_image(const TreePair& a, const Address& u);

// For automorphisms: all depth shifts even, i.e. the 2-coloring by depth
// parity is preserved.
bool is_type_preserving(const TreePair& a);

// sup_xi d(a(xi), b(xi)) on a common refinement, exact.
LogDistance uniform_distance(const TreePair& a, const TreePair& b);

// Finitely supported local permutations. Entries are indexed by image-side
// vertices: the image of v.a is img(v).sigma[img(v)](a), so the entry at the
// basepoint permutes the q+1 directions and every other entry permutes q.
struct Portrait {
  int q = 2;
  std::map<Address, std::vector<int>> entries;

  friend bool operator==(const Portrait&, const Portrait&) = default;
};

Portrait make_portrait(int q, std::map<Address, std::vector<int>> entries);
Address apply_portrait(const Portrait& p, const Address& v);
Portrait compose(const Portrait& after, const Portrait& first);
Portrait inverse(const Portrait& p);
TreePair portrait_to_treepair(const Portrait& p);

struct WordFactor {
  std::variant<TreePair, Portrait> base;
  int exp = 1;  // +1 or -1
};

// Factors compose left-to-right as functions applied right-to-left: the
// rightmost factor acts first.
struct GroupWord {
  int q = 2;
  std::vector<WordFactor> factors;
};

TreePair factor_as_treepair(const WordFactor& f);
TreePair normal_form(const GroupWord& w);
GroupWord inverse_word(const GroupWord& w);

TreePair commutator(const TreePair& a, const TreePair& b);

// Elements Phi_1..Phi_k supported in pairwise disjoint balls of strictly
// increasing depth, Phi_i carrying a piece of scale exponent >= i. The
// partial products Psi_j = Phi_j ... Phi_1 form a sup-metric Cauchy sequence
// whose limit has unbounded local scales.
struct NonlocalDemo {
  std::vector<Address> balls;
  std::vector<TreePair> phis;
  std::vector<TreePair> psis;
};
NonlocalDemo nonlocal_compactness_sequence(int k, int q);

// Deterministic pseudo-random canonical element: a uniform draw of
// 0..max_expansions independent leaf expansions on each side and a shuffled
// bijection.
TreePair random_element(std::uint64_t seed, int max_expansions, int q);
TreePair random_element_with_expansions(SeededRng& rng, int expansions, int q,
                                        int depth_cap = 1 << 20);
Ray random_ray(SeededRng& rng, int q, int max_pre = 4, int max_per = 3);
Portrait random_portrait(SeededRng& rng, int q, int max_depth = 3, int max_entries = 3);

// Random element fixing everything outside the ball at v.
TreePair random_supported_in(SeededRng& rng, const Address& v, int expansions, int q);

}  // namespace neretin
