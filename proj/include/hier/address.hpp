// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hier {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad symbols, incomplete codes, unparsable text.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Well-formed input outside an operation's domain (empty/full set, overlap, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

// Every vertex of the tree has valence n + 1. Text forms use one decimal
// digit per symbol, which bounds n by 9.
class Arity {
 public:
  static constexpr int kMin = 2;
  static constexpr int kMax = 9;

  explicit Arity(int n);

  int n() const noexcept { return n_; }
  int valence() const noexcept { return n_ + 1; }
  int modulus() const noexcept { return n_ - 1; }

  auto operator<=>(const Arity&) const = default;

 private:
  int n_;
};

// A vertex of the tree in the rooted chart. The root has children 0..n,
// every other vertex has children 0..n-1. A nonempty address also names the
// edge between the vertex and its parent.
class Address {
 public:
  Address() = default;
  explicit Address(std::string word) : word_(std::move(word)) {}

  // Validates the alphabet; throws ValidationError naming the position.
  static Address parse(std::string_view text, Arity arity);

  const std::string& word() const noexcept { return word_; }
  std::size_t depth() const noexcept { return word_.size(); }
  bool is_root() const noexcept { return word_.empty(); }

  int symbol(std::size_t i) const { return word_[i] - '0'; }
  int last() const { return word_.back() - '0'; }
  Address parent() const { return Address(word_.substr(0, word_.size() - 1)); }
  Address child(int i) const { return Address(word_ + static_cast<char>('0' + i)); }
  Address prefix(std::size_t len) const { return Address(word_.substr(0, len)); }
  Address tail_after(std::size_t len) const { return Address(word_.substr(len)); }
  Address operator+(const Address& tail) const { return Address(word_ + tail.word_); }

  bool is_prefix_of(const Address& other) const noexcept {
    return other.word_.size() >= word_.size() &&
           other.word_.compare(0, word_.size(), word_) == 0;
  }

  // Number of children of this vertex.
  int child_count(Arity arity) const noexcept {
    return is_root() ? arity.valence() : arity.n();
  }

  // All n + 1 neighbours: the parent (if any) followed by the children.
  std::vector<Address> neighbours(Arity arity) const;

  auto operator<=>(const Address&) const = default;

 private:
  std::string word_;
};

// Describes the first alphabet violation of `word`, if any.
std::optional<std::string> alphabet_violation(const Address& word, Arity arity);

Address common_prefix(const Address& a, const Address& b);
int tree_distance(const Address& a, const Address& b);

enum class Orientation : std::uint8_t { Down, Up };

// A ball of the boundary: the ends on one side of the mid-edge of `cut`.
// Down(u) holds the ends with prefix u; Up(u) is its complement.
struct Ball {
  Orientation orientation = Orientation::Down;
  Address cut;

  static Ball down(Address u) { return {Orientation::Down, std::move(u)}; }
  static Ball up(Address u) { return {Orientation::Up, std::move(u)}; }

  // Parses "012" or "~012".
  static Ball parse(std::string_view text, Arity arity);
  // The ball lying beyond `apex` as seen from the adjacent vertex `outside`.
  static Ball beyond(const Address& outside, const Address& apex);

  bool is_down() const noexcept { return orientation == Orientation::Down; }
  Ball complement() const {
    return {is_down() ? Orientation::Up : Orientation::Down, cut};
  }
  // The endpoint of the cut edge inside the branch.
  Address apex() const { return is_down() ? cut : cut.parent(); }
  // The endpoint of the cut edge outside the branch; spikes sit here.
  Address outside() const { return is_down() ? cut.parent() : cut; }

  // Membership of every end extending `word`; requires depth >= cut depth.
  bool contains_end(const Address& word) const;

  // The n balls one level inside this one.
  std::vector<Ball> split(Arity arity) const;

  std::string text() const;

  auto operator<=>(const Ball&) const = default;
};

// Two balls are nested, equal, disjoint, or jointly cover the boundary.
enum class BallRelation { Equal, Contains, ContainedIn, Disjoint, Covering };

BallRelation relate(const Ball& a, const Ball& b);

// A complete prefix code: every end has exactly one leaf as a prefix.
class PrefixCode {
 public:
  // Validates and sorts; throws ValidationError if not a complete prefix code.
  PrefixCode(Arity arity, std::vector<Address> leaves);

  static PrefixCode root(Arity arity);
  // Smallest complete code in which every word of `words` is a node.
  static PrefixCode spanned(Arity arity, std::span<const Address> words);

  Arity arity() const noexcept { return arity_; }
  const std::vector<Address>& leaves() const noexcept { return leaves_; }
  std::size_t size() const noexcept { return leaves_.size(); }
  std::size_t max_depth() const noexcept;

  // The leaf that is a prefix of `word`, if any.
  std::optional<Address> leaf_above(const Address& word) const;

  // Internal vertices of the code tree (the root and every proper prefix).
  std::vector<Address> internal_vertices() const;

  bool operator==(const PrefixCode&) const = default;

 private:
  PrefixCode(Arity arity, std::vector<Address> leaves, bool /*trusted*/)
      : arity_(arity), leaves_(std::move(leaves)) {}

  Arity arity_;
  std::vector<Address> leaves_;
};

// True iff `leaves` is a complete prefix code. Throws ValidationError on a
// malformed symbol.
bool validate_prefix_code(std::span<const Address> leaves, Arity arity);

// Coarsest complete code refining both.
PrefixCode refine(const PrefixCode& a, const PrefixCode& b);

}  // namespace hier
