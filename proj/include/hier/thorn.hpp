// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hier/address.hpp"
#include "hier/clopen.hpp"

namespace hier {

// A finite tree of vertices and spikes. Spikes are leaves attached to one
// vertex each. The empty thorn has no cells.
struct AbstractThorn {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // between vertices
  std::vector<int> spike_owner;            // owning vertex per spike

  int spike_count() const noexcept { return static_cast<int>(spike_owner.size()); }
  bool empty() const noexcept { return vertex_count == 0 && spike_owner.empty(); }
  std::vector<int> spikes_at() const;         // spike count per vertex
  std::vector<int> internal_degrees() const;  // skeleton degree per vertex
  int diameter() const;                       // skeleton diameter in edges
};

// Canonical code of an isomorphism class of thorns. `sequence` is a
// center-rooted sorted-subtree encoding; the empty thorn has the single
// reserved byte 0x00.
class ThornCode {
 public:
  ThornCode() : sequence_(1, '\0') {}
  static ThornCode from_sequence(std::string sequence);
  // Inverse of token(); throws ValidationError.
  static ThornCode from_token(std::string_view token);

  const std::string& sequence() const noexcept { return sequence_; }
  std::string token() const;  // lowercase hex
  bool is_empty() const noexcept { return sequence_ == std::string(1, '\0'); }
  int vertex_count() const noexcept;
  int spike_count() const noexcept;
  // A representative of the class.
  AbstractThorn thorn() const;

  auto operator<=>(const ThornCode&) const = default;

 private:
  explicit ThornCode(std::string s) : sequence_(std::move(s)) {}
  std::string sequence_;
};

ThornCode canonical_code(const AbstractThorn& t);

// The one-vertex one-spike class (every single ball belongs to it).
ThornCode ball_class();
// Path of `vertices` vertices with one spike at each end (two spikes on the
// single vertex when `vertices` == 1).
ThornCode two_spike_class(int vertices);

// True when the class is the reduced thorn of some proper clopen set of
// T_n: valences at most n + 1, fewer than n spikes per vertex, and a spike
// on every skeleton leaf.
bool is_reduced_class(const ThornCode& code, Arity arity);

// A thorn embedded in T_n: a connected vertex set plus spikes. Each spike is
// stored as the ball it cuts off (the branch on the far side of the spike
// from its vertex). The edge thorn (no vertices, two complementary spikes)
// arises from the two-ball partition of the boundary.
class SubThorn {
 public:
  explicit SubThorn(Arity arity) : arity_(arity) {}
  // Validates connectivity and spike placement; throws ValidationError.
  SubThorn(Arity arity, std::set<Address> vertices, std::set<Ball> spikes);

  Arity arity() const noexcept { return arity_; }
  const std::set<Address>& vertices() const noexcept { return vertices_; }
  const std::set<Ball>& spikes() const noexcept { return spikes_; }
  bool empty() const noexcept { return vertices_.empty() && spikes_.empty(); }

  int spikes_at(const Address& v) const;
  int internal_degree(const Address& v) const;
  bool is_perfect() const;

  // Vertices and mid-edges (internal and spike) as a sorted cell list; a
  // mid-edge is named by its edge address and tagged `true`.
  std::vector<std::pair<bool, Address>> cells() const;
  bool meets(const SubThorn& other) const;

  auto operator<=>(const SubThorn& o) const {
    if (auto c = vertices_ <=> o.vertices_; c != 0) return c;
    return spikes_ <=> o.spikes_;
  }
  bool operator==(const SubThorn& o) const {
    return vertices_ == o.vertices_ && spikes_ == o.spikes_;
  }

 private:
  friend SubThorn make_subthorn_unchecked(Arity, std::set<Address>, std::set<Ball>);
  Arity arity_;
  std::set<Address> vertices_;
  std::set<Ball> spikes_;
};

// Minimal sub-thorn whose spikes are the given pairwise disjoint balls.
// Throws DomainError when two balls intersect.
SubThorn subthorn_from_balls(Arity arity, std::span<const Ball> balls);

// Cuts perfect branches off until no n spikes share a vertex. The spike
// balls of the result are the maximal balls of the same clopen set; a
// perfect thorn reduces to the empty thorn.
SubThorn reduce_subthorn(const SubThorn& s);

// Union of the spike balls (the whole boundary for a perfect thorn).
ClopenSet clopen_of_subthorn(const SubThorn& s);

AbstractThorn to_abstract(const SubThorn& s);

// Reduced sub-thorn of a proper clopen set; its spikes are the maximal balls.
SubThorn maximal_thorn(const ClopenSet& omega);
// Orbit label of `omega` under Aut(T_n). Throws DomainError on empty/full.
ThornCode classify_clopen(const ClopenSet& omega);

// Every sub-thorn of class `pattern` that shares a cell with `region` and
// whose vertices lie within `radius` of the region's vertices. Sorted and
// duplicate-free. Throws DomainError when radius < diameter(pattern).
std::vector<SubThorn> enumerate_embeddings(const ThornCode& pattern, const SubThorn& region,
                                           int radius);

// Sub-thorns of class `pattern` whose vertices form a connected subset of
// `allowed`, in sorted order.
std::vector<SubThorn> subthorns_on(const ThornCode& pattern, Arity arity,
                                   const std::set<Address>& allowed);

// Reduced classes with at most `max_vertices` vertices, optionally filtered
// by spike residue, sorted by code.
std::vector<ThornCode> reduced_classes(Arity arity, int max_vertices,
                                       std::optional<int> iota = std::nullopt);

// Text form: "arity n", "vertices <addr>...", "spikes <v:i|v:up>..."; the
// root vertex is written ".".
std::string to_text(const SubThorn& s);
SubThorn subthorn_from_text(std::string_view text);
std::string to_dot(const SubThorn& s);

std::string vertex_token(const Address& v);
Address parse_vertex_token(std::string_view token, Arity arity);
std::string spike_token(const Ball& spike);
Ball parse_spike_token(std::string_view token, Arity arity);

}  // namespace hier
