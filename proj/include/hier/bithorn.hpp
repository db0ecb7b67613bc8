// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hier/spheromorphism.hpp"
#include "hier/thorn.hpp"

namespace hier {

// Two perfect thorns of equal size and a bijection between their spikes.
struct BiThorn {
  int arity = 2;
  AbstractThorn r;
  AbstractThorn q;
  std::vector<int> theta;  // spike of r -> spike of q

  bool empty() const noexcept { return r.vertex_count == 0; }
};

// The bi-thorn of g together with its position in the tree: spike i of
// `bithorn.r` is the i-th spike of `r_sub` (set order), likewise for q.
struct EmbeddedBiThorn {
  BiThorn bithorn;
  SubThorn r_sub;
  SubThorn q_sub;
  // Pieces of g after merging sibling families onto sibling families.
  std::vector<Piece> merged;
};

EmbeddedBiThorn bithorn_of(const Spheromorphism& g);

// Cuts similar vertex pairs until none is left. Without a seed the pair
// with the smallest R-vertex index is cut first; with a seed the pair is
// drawn at random at every step.
BiThorn reduce_bithorn(const BiThorn& b, std::optional<std::uint64_t> seed = std::nullopt);

// Canonical label of a bi-thorn up to isomorphism; "00" for the empty one.
struct CosetCode {
  std::string token;

  bool is_empty() const noexcept { return token == "00"; }
  auto operator<=>(const CosetCode&) const = default;
};

CosetCode canonical_coset_code(const BiThorn& b);
CosetCode coset_code(const Spheromorphism& g);
bool is_automorphism(const Spheromorphism& g);

std::string describe(const BiThorn& b);
std::string to_dot(const BiThorn& b);

}  // namespace hier
