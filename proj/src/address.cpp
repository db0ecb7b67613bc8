// SPDX-License-Identifier: Apache-2.0
#include "hier/address.hpp"

#include <algorithm>
#include <set>

namespace hier {

Arity::Arity(int n) : n_(n) {
  if (n < kMin || n > kMax) {
    throw ValidationError("arity " + std::to_string(n) + " outside supported range [" +
                          std::to_string(kMin) + ", " + std::to_string(kMax) + "]");
  }
}

std::optional<std::string> alphabet_violation(const Address& word, Arity arity) {
  const auto& w = word.word();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const char c = w[i];
    const int limit = i == 0 ? arity.n() : arity.n() - 1;
    if (c < '0' || c > '9' || c - '0' > limit) {
      return "word \"" + w + "\": symbol '" + std::string(1, c) + "' at position " +
             std::to_string(i) + " exceeds " + std::to_string(limit);
    }
  }
  return std::nullopt;
}

Address Address::parse(std::string_view text, Arity arity) {
  Address a{std::string(text)};
  if (auto err = alphabet_violation(a, arity)) throw ValidationError(*err);
  return a;
}

std::vector<Address> Address::neighbours(Arity arity) const {
  std::vector<Address> out;
  if (!is_root()) out.push_back(parent());
  for (int i = 0; i < child_count(arity); ++i) out.push_back(child(i));
  return out;
}

Address common_prefix(const Address& a, const Address& b) {
  const auto& x = a.word();
  const auto& y = b.word();
  std::size_t k = 0;
  while (k < x.size() && k < y.size() && x[k] == y[k]) ++k;
  return a.prefix(k);
}

int tree_distance(const Address& a, const Address& b) {
  const auto lca = common_prefix(a, b).depth();
  return static_cast<int>(a.depth() + b.depth() - 2 * lca);
}

Ball Ball::parse(std::string_view text, Arity arity) {
  bool up = false;
  if (!text.empty() && text.front() == '~') {
    up = true;
    text.remove_prefix(1);
  }
  if (text.empty()) throw ValidationError("ball needs a nonempty cut address");
  auto cut = Address::parse(text, arity);
  return up ? Ball::up(std::move(cut)) : Ball::down(std::move(cut));
}

Ball Ball::beyond(const Address& outside, const Address& apex) {
  if (!apex.is_root() && apex.parent() == outside) return Ball::down(apex);
  if (!outside.is_root() && outside.parent() == apex) return Ball::up(outside);
  throw DomainError("vertices \"" + outside.word() + "\" and \"" + apex.word() +
                    "\" are not adjacent");
}

bool Ball::contains_end(const Address& word) const {
  const bool in_down = cut.is_prefix_of(word);
  return is_down() ? in_down : !in_down;
}

std::vector<Ball> Ball::split(Arity arity) const {
  std::vector<Ball> out;
  if (is_down()) {
    for (int i = 0; i < arity.n(); ++i) out.push_back(Ball::down(cut.child(i)));
    return out;
  }
  const Address p = cut.parent();
  for (int c = 0; c < p.child_count(arity); ++c) {
    if (c != cut.last()) out.push_back(Ball::down(p.child(c)));
  }
  if (!p.is_root()) out.push_back(Ball::up(p));
  return out;
}

std::string Ball::text() const { return (is_down() ? "" : "~") + cut.word(); }

BallRelation relate(const Ball& a, const Ball& b) {
  const Address& u = a.cut;
  const Address& v = b.cut;
  const bool same = u == v;
  const bool u_above = u.is_prefix_of(v);  // Down(u) ⊇ Down(v)
  const bool v_above = v.is_prefix_of(u);  // Down(v) ⊇ Down(u)
  if (a.is_down() && b.is_down()) {
    if (same) return BallRelation::Equal;
    if (u_above) return BallRelation::Contains;
    if (v_above) return BallRelation::ContainedIn;
    return BallRelation::Disjoint;
  }
  if (a.is_down() && !b.is_down()) {
    if (v_above) return BallRelation::Disjoint;
    if (u_above) return BallRelation::Covering;
    return BallRelation::ContainedIn;
  }
  if (!a.is_down() && b.is_down()) {
    if (u_above) return BallRelation::Disjoint;
    if (v_above) return BallRelation::Covering;
    return BallRelation::Contains;
  }
  if (same) return BallRelation::Equal;
  if (u_above) return BallRelation::ContainedIn;
  if (v_above) return BallRelation::Contains;
  return BallRelation::Covering;
}

namespace {

// Empty string when `leaves` (sorted, unique) is a complete prefix code,
// otherwise a description of the defect.
std::string code_defect(const std::vector<Address>& leaves, Arity arity) {
  for (const auto& leaf : leaves) {
    if (leaf.is_root()) return "empty word is not a valid leaf";
  }
  for (std::size_t i = 0; i + 1 < leaves.size(); ++i) {
    if (leaves[i].is_prefix_of(leaves[i + 1])) {
      return "leaf \"" + leaves[i].word() + "\" is a prefix of \"" + leaves[i + 1].word() +
             "\"";
    }
  }
  std::set<Address> prefixes;
  for (const auto& leaf : leaves) {
    for (std::size_t k = 0; k < leaf.depth(); ++k) prefixes.insert(leaf.prefix(k));
  }
  // Every child of a proper prefix must itself be a leaf or a proper prefix.
  for (const auto& p : prefixes) {
    for (int c = 0; c < p.child_count(arity); ++c) {
      const Address ch = p.child(c);
      if (!prefixes.count(ch) && !std::binary_search(leaves.begin(), leaves.end(), ch)) {
        return "ends below \"" + ch.word() + "\" are not covered";
      }
    }
  }
  if (leaves.empty()) return "empty code";
  return {};
}

std::vector<Address> sorted_unique(std::vector<Address> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

bool validate_prefix_code(std::span<const Address> leaves, Arity arity) {
  for (const auto& leaf : leaves) {
    if (auto err = alphabet_violation(leaf, arity)) throw ValidationError(*err);
  }
  std::vector<Address> sorted(leaves.begin(), leaves.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  return code_defect(sorted, arity).empty();
}

PrefixCode::PrefixCode(Arity arity, std::vector<Address> leaves) : arity_(arity) {
  for (const auto& leaf : leaves) {
    if (auto err = alphabet_violation(leaf, arity)) throw ValidationError(*err);
  }
  const std::size_t before = leaves.size();
  leaves_ = sorted_unique(std::move(leaves));
  if (leaves_.size() != before) throw ValidationError("duplicate leaf in prefix code");
  if (auto defect = code_defect(leaves_, arity); !defect.empty()) {
    throw ValidationError("not a complete prefix code: " + defect);
  }
}

PrefixCode PrefixCode::root(Arity arity) {
  std::vector<Address> leaves;
  for (int c = 0; c < arity.valence(); ++c) leaves.push_back(Address().child(c));
  return PrefixCode(arity, std::move(leaves), true);
}

PrefixCode PrefixCode::spanned(Arity arity, std::span<const Address> words) {
  std::set<Address> internal{Address()};
  for (const auto& w : words) {
    if (auto err = alphabet_violation(w, arity)) throw ValidationError(*err);
    for (std::size_t k = 1; k < w.depth(); ++k) internal.insert(w.prefix(k));
  }
  std::vector<Address> leaves;
  for (const auto& v : internal) {
    for (int c = 0; c < v.child_count(arity); ++c) {
      Address ch = v.child(c);
      if (!internal.count(ch)) leaves.push_back(std::move(ch));
    }
  }
  std::sort(leaves.begin(), leaves.end());
  return PrefixCode(arity, std::move(leaves), true);
}

std::size_t PrefixCode::max_depth() const noexcept {
  std::size_t d = 0;
  for (const auto& leaf : leaves_) d = std::max(d, leaf.depth());
  return d;
}

std::optional<Address> PrefixCode::leaf_above(const Address& word) const {
  for (std::size_t k = 1; k <= word.depth(); ++k) {
    Address p = word.prefix(k);
    if (std::binary_search(leaves_.begin(), leaves_.end(), p)) return p;
  }
  return std::nullopt;
}

std::vector<Address> PrefixCode::internal_vertices() const {
  std::set<Address> internal{Address()};
  for (const auto& leaf : leaves_) {
    for (std::size_t k = 1; k < leaf.depth(); ++k) internal.insert(leaf.prefix(k));
  }
  return {internal.begin(), internal.end()};
}

PrefixCode refine(const PrefixCode& a, const PrefixCode& b) {
  if (a.arity() != b.arity()) throw ArityMismatch("refine: arity mismatch");
  std::vector<Address> out;
  for (const auto& leaf : a.leaves()) {
    if (b.leaf_above(leaf)) out.push_back(leaf);
  }
  for (const auto& leaf : b.leaves()) {
    if (a.leaf_above(leaf)) out.push_back(leaf);
  }
  return PrefixCode(a.arity(), sorted_unique(std::move(out)));
}

}  // namespace hier
