#include "neretin/tree.hpp"

#include <algorithm>

#include "neretin/pair_diagram.hpp"

namespace neretin {

char letter_char(int value) {
  return static_cast<char>(value < 10 ? '0' + value : 'a' + (value - 10));
}

int letter_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

void check_degree(int q) {
  if (q < 2) throw SemanticError("degree q must be at least 2");
  if (q + 1 > kMaxLetters) throw SemanticError("degree q too large for base-36 addresses");
}

Address Address::parent() const {
  return Address{word.substr(0, word.size() - 1)};
}

Address Address::child(int letter) const {
  Address c{word};
  c.word.push_back(letter_char(letter));
  return c;
}

Address Address::descend(std::string_view suffix) const {
  Address c{word};
  c.word.append(suffix);
  return c;
}

int Address::last_letter() const { return letter_value(word.back()); }

bool valid_address(const Address& a, int q) {
  for (std::size_t i = 0; i < a.word.size(); ++i) {
    const int v = letter_value(a.word[i]);
    const int bound = i == 0 ? q : q - 1;
    if (v < 0 || v > bound) return false;
  }
  return true;
}

bool is_prefix(const Address& a, const Address& b) {
  return b.word.size() >= a.word.size() &&
         b.word.compare(0, a.word.size(), a.word) == 0;
}

std::string_view suffix_after(const Address& prefix, const Address& full) {
  return std::string_view{full.word}.substr(prefix.word.size());
}

Address lcp(const Address& a, const Address& b) {
  std::size_t n = 0;
  const std::size_t m = std::min(a.word.size(), b.word.size());
  while (n < m && a.word[n] == b.word[n]) ++n;
  return Address{a.word.substr(0, n)};
}

bool incomparable(const Address& a, const Address& b) {
  return !is_prefix(a, b) && !is_prefix(b, a);
}

std::vector<Address> children(const Address& v, int q) {
  const int k = v.is_root() ? q + 1 : q;
  std::vector<Address> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) out.push_back(v.child(j));
  return out;
}

Antichain Antichain::make(int q, std::vector<Address> leaves) {
  check_degree(q);
  TreeCtx ctx{q};
  std::sort(leaves.begin(), leaves.end());
  for (const auto& a : leaves) {
    if (!ctx.valid(a)) throw SemanticError("invalid address '" + render_address(a) + "'");
  }
  if (!prefix_free_sorted<TreeCtx>(leaves) ||
      collapse_balls_t(ctx, leaves) != ctx.min_leaves()) {
    throw SemanticError("not a complete antichain");
  }
  return Antichain{ctx, std::move(leaves)};
}

Antichain Antichain::root(int q) {
  check_degree(q);
  return Antichain{TreeCtx{q}, {Address::root()}};
}

bool Antichain::contains(const Address& v) const {
  return std::binary_search(leaves.begin(), leaves.end(), v);
}

bool is_complete_antichain(int q, std::vector<Address> leaves) {
  check_degree(q);
  return complete_antichain_t(TreeCtx{q}, std::move(leaves));
}

std::vector<Address> collapse_balls(int q, std::vector<Address> sorted_leaves) {
  return collapse_balls_t(TreeCtx{q}, std::move(sorted_leaves));
}

Antichain expand_at(const Antichain& l, const Address& v) {
  auto it = std::lower_bound(l.leaves.begin(), l.leaves.end(), v);
  if (it == l.leaves.end() || *it != v) {
    throw DomainError("expand_at: '" + render_address(v) + "' is not a leaf");
  }
  auto out = expand_leaves_t(l.ctx, l.leaves, static_cast<std::size_t>(it - l.leaves.begin()));
  return Antichain{l.ctx, std::move(out)};
}

Antichain common_refinement(const Antichain& l, const Antichain& m) {
  if (!(l.ctx == m.ctx)) throw DomainError("refining antichains of different degree");
  return Antichain{l.ctx, refine_t(l.ctx, l.leaves, m.leaves)};
}

Antichain min_antichain_containing(int q, std::span<const Address> targets) {
  check_degree(q);
  TreeCtx ctx{q};
  std::vector<Address> tv(targets.begin(), targets.end());
  return Antichain{ctx, min_antichain_containing_t(ctx, tv)};
}

std::vector<Address> complement_antichain(const Address& v, int q) {
  if (v.is_root()) throw DomainError("the basepoint ball has empty complement");
  std::vector<Address> out;
  Address p = Address::root();
  for (int i = 0; i < v.depth(); ++i) {
    const int on_path = letter_value(v.word[static_cast<std::size_t>(i)]);
    const int k = p.is_root() ? q + 1 : q;
    for (int j = 0; j < k; ++j) {
      if (j != on_path) out.push_back(p.child(j));
    }
    p = p.child(on_path);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string render_address(const Address& a) {
  return a.is_root() ? "e" : a.word;
}

Address parse_address(std::string_view text, int q) {
  check_degree(q);
  if (text == "e") return Address::root();
  if (text.empty()) throw ParseError(0, "empty address (the basepoint is written 'e')");
  Address a{std::string(text)};
  for (std::size_t i = 0; i < text.size(); ++i) {
    const int v = letter_value(text[i]);
    const int bound = i == 0 ? q : q - 1;
    if (v < 0 || v > bound) {
      throw SemanticError("address '" + std::string(text) + "': letter '" +
                          std::string(1, text[i]) + "' out of range at position " +
                          std::to_string(i));
    }
  }
  return a;
}

}  // namespace neretin
