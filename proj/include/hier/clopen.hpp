// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hier/address.hpp"

namespace hier {

struct MarkedLeaf {
  Address leaf;
  bool inside = false;

  auto operator<=>(const MarkedLeaf&) const = default;
};

// A clopen subset of the boundary, stored as a complete prefix code with
// each leaf marked inside/outside. The stored form is normal: no complete
// non-root sibling family carries a uniform mark. The empty set and the
// whole boundary are representable (all root children unmarked/marked) so
// that intermediate results stay closed under the set algebra; operations
// defined only on proper sets reject them with DomainError.
class ClopenSet {
 public:
  // Validates the carrier and normalizes.
  ClopenSet(Arity arity, std::vector<MarkedLeaf> leaves);

  static ClopenSet empty(Arity arity);
  static ClopenSet full(Arity arity);
  // Union of arbitrary (possibly overlapping) balls.
  static ClopenSet union_of(Arity arity, std::span<const Ball> balls);

  Arity arity() const noexcept { return arity_; }
  const std::vector<MarkedLeaf>& leaves() const noexcept { return leaves_; }

  bool is_empty() const noexcept;
  bool is_full() const noexcept;
  bool is_proper() const noexcept { return !is_empty() && !is_full(); }

  // Membership of every end extending `word`; requires depth >= carrier depth.
  bool contains_end(const Address& word) const;
  std::size_t max_depth() const noexcept;

  std::vector<Ball> marked_balls() const;
  PrefixCode carrier() const;
  // Re-expresses the set on a refinement of its carrier (not normalized).
  std::vector<MarkedLeaf> on_code(const PrefixCode& code) const;

  ClopenSet complement() const;

  bool operator==(const ClopenSet&) const = default;
  auto operator<=>(const ClopenSet& o) const { return leaves_ <=> o.leaves_; }

 private:
  struct Trusted {};
  ClopenSet(Arity arity, std::vector<MarkedLeaf> leaves, Trusted);
  void normalize();

  Arity arity_;
  std::vector<MarkedLeaf> leaves_;
};

// Number of balls in any disjoint-ball decomposition, modulo n - 1.
// Throws DomainError on the empty set or the whole boundary.
int upsilon(const ClopenSet& omega);

ClopenSet complement(const ClopenSet& omega);

// Seeded random proper clopen set whose carrier has at most `budget` leaves.
ClopenSet random_clopen(Arity arity, std::size_t budget, std::uint64_t seed);

// Text: "arity n" followed either by "<leaf> <0|1>" lines covering a
// complete prefix code, or by "ball <b>" lines whose union is the set.
std::string to_text(const ClopenSet& omega);
ClopenSet clopen_from_text(std::string_view text);

}  // namespace hier
