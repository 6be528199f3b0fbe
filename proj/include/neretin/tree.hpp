#pragma once

// Vertices of the based (q+1)-regular tree as finite words, complete
// antichains (= clopen ball partitions of the boundary), and the
// refinement/expansion calculus on them.

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "neretin/errors.hpp"

namespace neretin {

// Letters are rendered base-36, so q+1 <= 36.
inline constexpr int kMaxLetters = 36;

char letter_char(int value);
int letter_value(char c);  // -1 if not a base-36 symbol

void check_degree(int q);

// A vertex: the empty word is the basepoint (rendered "e"); the first letter
// ranges over 0..q, every deeper letter over 0..q-1. Doubles as the name of
// the boundary ball of ends through that vertex.
struct Address {
  std::string word;

  Address() = default;
  explicit Address(std::string w) : word(std::move(w)) {}

  static Address root() { return Address{}; }

  int depth() const { return static_cast<int>(word.size()); }
  bool is_root() const { return word.empty(); }
  bool has_parent() const { return !word.empty(); }

  Address parent() const;
  Address child(int letter) const;
  Address descend(std::string_view suffix) const;
  int last_letter() const;

  friend auto operator<=>(const Address&, const Address&) = default;
};

bool valid_address(const Address& a, int q);

bool is_prefix(const Address& a, const Address& b);
std::string_view suffix_after(const Address& prefix, const Address& full);
Address lcp(const Address& a, const Address& b);
bool incomparable(const Address& a, const Address& b);

// v names the ball of ends through v; w's ball is contained in v's iff v is
// a prefix of w.
inline bool ball_contains(const Address& v, const Address& w) {
  return is_prefix(v, w);
}

// diam of the ball at v is e^-depth(v).
inline int ball_diameter_exponent(const Address& v) { return v.depth(); }

struct TreeCtx {
  using Addr = Address;
  int q = 2;

  int arity_below(const Address& a) const { return a.is_root() ? q + 1 : q; }
  std::vector<Address> min_leaves() const { return {Address::root()}; }
  bool valid(const Address& a) const { return valid_address(a, q); }

  friend bool operator==(const TreeCtx&, const TreeCtx&) = default;
};

// Children in letter order: q+1 of them at the basepoint, q elsewhere.
std::vector<Address> children(const Address& v, int q);

// A finite complete prefix-free set of vertices; names a partition of the
// boundary into balls. Stored sorted.
struct Antichain {
  TreeCtx ctx;
  std::vector<Address> leaves;

  static Antichain make(int q, std::vector<Address> leaves);
  static Antichain root(int q);

  int q() const { return ctx.q; }
  int size() const { return static_cast<int>(leaves.size()); }
  bool contains(const Address& v) const;
};

bool is_complete_antichain(int q, std::vector<Address> leaves);

// Minimal ball-union form of a prefix-free sorted set: repeatedly replaces
// full sibling families by their parent. The set is a complete antichain iff
// this collapses to {e}.
std::vector<Address> collapse_balls(int q, std::vector<Address> sorted_leaves);

Antichain expand_at(const Antichain& l, const Address& v);
Antichain common_refinement(const Antichain& l, const Antichain& m);

// Smallest complete antichain having every target as a leaf. Targets must be
// pairwise incomparable.
Antichain min_antichain_containing(int q, std::span<const Address> targets);

// The balls partitioning the complement of the ball at v (v != e): one leaf
// per sibling direction along the path from e to v.
std::vector<Address> complement_antichain(const Address& v, int q);

std::string render_address(const Address& a);
Address parse_address(std::string_view text, int q);

// One of the q+1 directions at a vertex: toward the basepoint, or into a
// child subtree.
struct Direction {
  bool up = false;
  int letter = 0;

  friend bool operator==(const Direction&, const Direction&) = default;
};

// Directions sorted by (depth, lex) of the neighbor they lead to: the
// basepoint side first, then children in letter order.
std::vector<Direction> directions_at(const Address& u, int q);
Address neighbor(const Address& u, const Direction& d);
Direction direction_towards(const Address& u, const Address& n, int q);

struct Edge {
  Address near;  // basepoint side
  Address far;   // = near.child(c)

  friend bool operator==(const Edge&, const Edge&) = default;
};
Edge make_edge(const Address& a, const Address& b, int q);

// Walk inside the half-tree hanging at `cur` away from `prev`, indexing the
// q onward neighbors at every vertex by (depth, lex) of their addresses.
struct HalftreeVertex {
  Address vertex;
  bool entered_from_parent;  // the sub-half-tree below it is then a plain ball
};
HalftreeVertex halftree_walk_from(Address cur, Address prev, std::string_view word, int q);

// Ball decomposition of the boundary of the half-tree at `cur` away from
// `prev`, as (half-tree word, ball vertex) pairs.
std::vector<std::pair<std::string, Address>> halftree_ball_pieces(const Address& cur,
                                                                  const Address& prev, int q);

}  // namespace neretin
