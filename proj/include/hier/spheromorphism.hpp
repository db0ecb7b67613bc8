// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hier/address.hpp"
#include "hier/clopen.hpp"

namespace hier {

// One row of a prefix-exchange table: the end from·w goes to to·w.
struct Piece {
  Address from;
  Address to;

  auto operator<=>(const Piece&) const = default;
};

// A boundary homeomorphism given by a prefix-exchange table between two
// complete prefix codes. Only tail-rigid maps are representable; every
// double coset of the automorphism group has such a representative.
class Spheromorphism {
 public:
  // Validates both codes and their sizes; keeps rows in the given order.
  Spheromorphism(Arity arity, std::vector<Piece> pieces);

  static Spheromorphism identity(Arity arity);

  Arity arity() const noexcept { return arity_; }
  // Rows in construction order.
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  PrefixCode domain() const;
  PrefixCode range() const;
  std::size_t max_depth() const noexcept;

  // Image of every end extending `word`; throws DomainError when `word` is
  // shorter than the domain leaf it lies under.
  Address image(const Address& word) const;
  Address preimage(const Address& word) const;

  const std::map<Address, Address>& forward() const noexcept { return forward_; }
  const std::map<Address, Address>& backward() const noexcept { return backward_; }

 private:
  Arity arity_;
  std::vector<Piece> pieces_;
  std::map<Address, Address> forward_;
  std::map<Address, Address> backward_;
};

// g after h (h acts first).
Spheromorphism compose(const Spheromorphism& g, const Spheromorphism& h);
Spheromorphism invert(const Spheromorphism& g);
// Equality as boundary maps.
bool equals(const Spheromorphism& g, const Spheromorphism& h);
// Collapses literal sibling families u·i -> v·i into u -> v (u, v nonempty).
Spheromorphism reduced(const Spheromorphism& g);

ClopenSet act_on_clopen(const Spheromorphism& g, const ClopenSet& omega);

// Images of all words of length `depth`, sorted by source word.
std::vector<std::pair<Address, Address>> truncated_action(const Spheromorphism& g,
                                                          std::size_t depth);

// Vertex -> permutation of its children (root: n + 1 entries, else n).
using PermutationSpec = std::map<Address, std::vector<int>>;
Spheromorphism finitary_automorphism(Arity arity, const PermutationSpec& spec);
Spheromorphism random_finitary_automorphism(Arity arity, std::size_t max_depth,
                                            std::uint64_t seed);

// A translation along the axis through 0, 1 (an automorphism of odd parity).
Spheromorphism hyperbolic_translation(Arity arity);

// Common value of (|to| - |from|) mod 2 over all rows, if there is one.
std::optional<int> automorphism_parity(const Spheromorphism& g);

struct ThompsonGenerator {
  std::string name;
  Spheromorphism element;
  bool automorphism;
  std::optional<int> order;
};
// Generators of Thompson's group T acting on the ends of T_2 (cyclic order
// of the root children 0 < 1 < 2 and lexicographic below).
std::vector<ThompsonGenerator> thompson_generators();

// Seeded random element whose domain has at most `budget` leaves. About a
// third of the outputs are finitary automorphisms.
Spheromorphism random_element(Arity arity, std::size_t budget, std::uint64_t seed);

// Text: "arity n" then one "u -> v" row per line; '#' starts a comment.
std::string to_text(const Spheromorphism& g);
Spheromorphism element_from_text(std::string_view text);

}  // namespace hier
