// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hier/bithorn.hpp"
#include "hier/clopen.hpp"
#include "hier/spheromorphism.hpp"
#include "hier/thorn.hpp"

namespace hier {

// Tracked orbits of clopen sets with spike residue `iota`; everything else
// with that residue is lumped into the complement class P. Index 0 is P,
// index i >= 1 is tracked[i - 1].
class ClassTable {
 public:
  // Throws ValidationError on duplicates, wrong residue, or codes that are
  // not reduced classes of T_n.
  ClassTable(Arity arity, int iota, std::vector<ThornCode> tracked);

  Arity arity() const noexcept { return arity_; }
  int iota() const noexcept { return iota_; }
  const std::vector<ThornCode>& tracked() const noexcept { return tracked_; }
  int size() const noexcept { return static_cast<int>(tracked_.size()) + 1; }
  // Index of the class of `code` (0 when untracked).
  int index_of(const ThornCode& code) const;
  std::string label(int index) const;
  int max_diameter() const;
  int max_spikes() const;

 private:
  Arity arity_;
  int iota_;
  std::vector<ThornCode> tracked_;
};

// Reads "arity n", "iota i" and "classes <token>..." lines; a trailing
// "matrix" section is ignored so spherical spec files can be reused.
ClassTable class_table_from_text(std::string_view text);

struct MovedSet {
  ClopenSet omega;
  int from;
  int to;
};

// Every clopen set that leaves or enters a tracked class under g.
std::vector<MovedSet> moved_sets(const Spheromorphism& g, const ClassTable& table);

// Off-diagonal transition counts; the diagonal is kept at zero.
struct TransitionCounts {
  std::vector<std::vector<std::int64_t>> counts;

  int size() const noexcept { return static_cast<int>(counts.size()); }
  std::int64_t at(int p, int q) const {
    return counts[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
  }
  bool operator==(const TransitionCounts&) const = default;
};

TransitionCounts theta(const Spheromorphism& g, const ClassTable& table);

// Independent count over every tracked-class clopen set whose maximal balls
// are cut at depth <= depth_cap. Throws DomainError when the cap is below the
// support depth of g plus max_diameter() + 1.
TransitionCounts theta_bruteforce(const Spheromorphism& g, const ClassTable& table,
                                  int depth_cap);

// Smallest cap accepted by theta_bruteforce.
int bruteforce_min_depth(const Spheromorphism& g, const ClassTable& table);

std::string to_text(const TransitionCounts& t, const ClassTable& table);

}  // namespace hier
