// SPDX-License-Identifier: Apache-2.0
#include "hier/bithorn.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

namespace hier {

namespace {

// Merge sibling families u·0..u·(n-1) whose images are the n children of a
// single non-root vertex (in any order): g regards Down(u).
std::map<Address, Address> merge_regarded(const Spheromorphism& g) {
  const Arity arity = g.arity();
  std::map<Address, Address> table = g.forward();
  std::map<std::size_t, std::set<Address>, std::greater<>> work;
  for (const auto& [u, v] : table) {
    if (u.depth() >= 2) work[u.depth() - 1].insert(u.parent());
  }
  while (!work.empty()) {
    auto level = work.begin();
    const Address p = *level->second.begin();
    level->second.erase(level->second.begin());
    if (level->second.empty()) work.erase(level);
    std::optional<Address> q;
    bool family = true;
    for (int i = 0; i < arity.n() && family; ++i) {
      auto it = table.find(p.child(i));
      if (it == table.end() || it->second.depth() < 2) {
        family = false;
      } else if (!q) {
        q = it->second.parent();
      } else if (*q != it->second.parent()) {
        family = false;
      }
    }
    if (!family) continue;
    for (int i = 0; i < arity.n(); ++i) table.erase(p.child(i));
    table.emplace(p, *q);
    if (p.depth() >= 2) work[p.depth() - 1].insert(p.parent());
  }
  return table;
}

SubThorn perfect_on(Arity arity, const std::vector<Address>& leaves) {
  const PrefixCode code(arity, leaves);
  const auto internal = code.internal_vertices();
  std::set<Ball> spikes;
  for (const auto& l : leaves) spikes.insert(Ball::down(l));
  return SubThorn(arity, {internal.begin(), internal.end()}, std::move(spikes));
}

std::vector<int> degrees(const AbstractThorn& t) { return t.internal_degrees(); }

int neighbour_of_leaf(const AbstractThorn& t, int v) {
  for (auto [a, b] : t.edges) {
    if (a == v) return b;
    if (b == v) return a;
  }
  return -1;
}

// Removes vertex `gone` and its spikes; returns the renumbered thorn and
// the old->new spike index map (-1 for removed spikes).
std::pair<AbstractThorn, std::vector<int>> drop_vertex(const AbstractThorn& t, int gone) {
  std::vector<int> vmap(static_cast<std::size_t>(t.vertex_count), -1);
  AbstractThorn out;
  for (int v = 0; v < t.vertex_count; ++v) {
    if (v != gone) vmap[static_cast<std::size_t>(v)] = out.vertex_count++;
  }
  for (auto [a, b] : t.edges) {
    if (a != gone && b != gone) {
      out.edges.emplace_back(vmap[static_cast<std::size_t>(a)], vmap[static_cast<std::size_t>(b)]);
    }
  }
  std::vector<int> smap(t.spike_owner.size(), -1);
  for (std::size_t s = 0; s < t.spike_owner.size(); ++s) {
    const int o = t.spike_owner[s];
    if (o == gone) continue;
    smap[s] = out.spike_count();
    out.spike_owner.push_back(vmap[static_cast<std::size_t>(o)]);
  }
  return {std::move(out), std::move(smap)};
}

}  // namespace

EmbeddedBiThorn bithorn_of(const Spheromorphism& g) {
  const Arity arity = g.arity();
  const auto table = merge_regarded(g);
  std::vector<Address> from, to;
  std::vector<Piece> merged;
  for (const auto& [u, v] : table) {
    from.push_back(u);
    to.push_back(v);
    merged.push_back({u, v});
  }
  std::sort(to.begin(), to.end());
  auto r_sub = perfect_on(arity, from);
  auto q_sub = perfect_on(arity, to);
  BiThorn b;
  b.arity = arity.n();
  b.r = to_abstract(r_sub);
  b.q = to_abstract(q_sub);
  for (const auto& [u, v] : table) {
    const auto at = std::lower_bound(to.begin(), to.end(), v) - to.begin();
    b.theta.push_back(static_cast<int>(at));
  }
  return {std::move(b), std::move(r_sub), std::move(q_sub), std::move(merged)};
}

BiThorn reduce_bithorn(const BiThorn& input, std::optional<std::uint64_t> seed) {
  std::optional<std::mt19937_64> rng;
  if (seed) rng.emplace(*seed);
  BiThorn b = input;
  for (;;) {
    if (b.r.vertex_count <= 1) {
      BiThorn empty;
      empty.arity = b.arity;
      return empty;
    }
    const auto rdeg = degrees(b.r);
    const auto qdeg = degrees(b.q);
    std::vector<std::pair<int, int>> similar;
    for (int a = 0; a < b.r.vertex_count; ++a) {
      if (rdeg[static_cast<std::size_t>(a)] != 1) continue;
      std::optional<int> target;
      bool single = true;
      for (int s = 0; s < b.r.spike_count() && single; ++s) {
        if (b.r.spike_owner[static_cast<std::size_t>(s)] != a) continue;
        const int y = b.q.spike_owner[static_cast<std::size_t>(b.theta[static_cast<std::size_t>(s)])];
        if (target && *target != y) single = false;
        target = y;
      }
      if (single && target && qdeg[static_cast<std::size_t>(*target)] == 1) {
        similar.emplace_back(a, *target);
      }
    }
    if (similar.empty()) return b;
    const auto [a, y] = rng ? similar[(*rng)() % similar.size()] : similar.front();
    const int a_next = neighbour_of_leaf(b.r, a);
    const int y_next = neighbour_of_leaf(b.q, y);
    auto [r2, rmap] = drop_vertex(b.r, a);
    auto [q2, qmap] = drop_vertex(b.q, y);
    BiThorn next;
    next.arity = b.arity;
    next.theta.assign(r2.spike_owner.size(), -1);
    for (std::size_t s = 0; s < rmap.size(); ++s) {
      if (rmap[s] >= 0) {
        next.theta[static_cast<std::size_t>(rmap[s])] =
            qmap[static_cast<std::size_t>(b.theta[s])];
      }
    }
    // The cut leaves leave one new spike on each side, matched together.
    r2.spike_owner.push_back(a_next - (a_next > a ? 1 : 0));
    q2.spike_owner.push_back(y_next - (y_next > y ? 1 : 0));
    next.theta.push_back(q2.spike_count() - 1);
    next.r = std::move(r2);
    next.q = std::move(q2);
    b = std::move(next);
  }
}

namespace {

// Vertex-coloured multigraph [R, Q; theta] with three edge kinds.
struct ColouredGraph {
  int nodes = 0;
  std::vector<int> side;
  // (u, v, kind) -> multiplicity with u < v
  std::map<std::tuple<int, int, int>, int> edges;
  std::vector<std::vector<std::array<int, 3>>> adj;  // (neighbour, kind, multiplicity)
};

ColouredGraph graph_of(const BiThorn& b) {
  ColouredGraph g;
  const int v = b.r.vertex_count;
  g.nodes = 2 * v;
  g.side.assign(static_cast<std::size_t>(g.nodes), 0);
  for (int i = v; i < g.nodes; ++i) g.side[static_cast<std::size_t>(i)] = 1;
  auto add = [&](int x, int y, int kind) {
    ++g.edges[{std::min(x, y), std::max(x, y), kind}];
  };
  for (auto [x, y] : b.r.edges) add(x, y, 0);
  for (auto [x, y] : b.q.edges) add(v + x, v + y, 1);
  for (int s = 0; s < b.r.spike_count(); ++s) {
    const int x = b.r.spike_owner[static_cast<std::size_t>(s)];
    const int y = b.q.spike_owner[static_cast<std::size_t>(b.theta[static_cast<std::size_t>(s)])];
    add(x, v + y, 2);
  }
  g.adj.assign(static_cast<std::size_t>(g.nodes), {});
  for (const auto& [key, m] : g.edges) {
    const auto [x, y, kind] = key;
    g.adj[static_cast<std::size_t>(x)].push_back({y, kind, m});
    g.adj[static_cast<std::size_t>(y)].push_back({x, kind, m});
  }
  return g;
}

int distinct(const std::vector<int>& colours) {
  return static_cast<int>(std::set<int>(colours.begin(), colours.end()).size());
}

// Colour refinement; colour values are ranks of canonical signatures.
std::vector<int> refine_colours(const ColouredGraph& g, std::vector<int> colours) {
  for (;;) {
    using Signature = std::pair<int, std::vector<std::array<int, 3>>>;
    std::vector<Signature> sig(static_cast<std::size_t>(g.nodes));
    for (int x = 0; x < g.nodes; ++x) {
      auto& s = sig[static_cast<std::size_t>(x)];
      s.first = colours[static_cast<std::size_t>(x)];
      for (const auto& [y, kind, m] : g.adj[static_cast<std::size_t>(x)]) {
        s.second.push_back({colours[static_cast<std::size_t>(y)], kind, m});
      }
      std::sort(s.second.begin(), s.second.end());
    }
    std::vector<Signature> ranks = sig;
    std::sort(ranks.begin(), ranks.end());
    ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
    std::vector<int> next(static_cast<std::size_t>(g.nodes));
    for (int x = 0; x < g.nodes; ++x) {
      next[static_cast<std::size_t>(x)] = static_cast<int>(
          std::lower_bound(ranks.begin(), ranks.end(), sig[static_cast<std::size_t>(x)]) -
          ranks.begin());
    }
    const bool stable = distinct(next) == distinct(colours);
    colours = std::move(next);
    if (stable) return colours;
  }
}

std::vector<int> encode(const ColouredGraph& g, const std::vector<int>& pos) {
  std::vector<std::array<int, 4>> rows;
  for (const auto& [key, m] : g.edges) {
    const auto [x, y, kind] = key;
    const int a = pos[static_cast<std::size_t>(x)];
    const int c = pos[static_cast<std::size_t>(y)];
    rows.push_back({std::min(a, c), std::max(a, c), kind, m});
  }
  std::sort(rows.begin(), rows.end());
  std::vector<int> out{g.nodes / 2};
  for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

void search(const ColouredGraph& g, std::vector<int> colours, std::vector<int>& best) {
  colours = refine_colours(g, std::move(colours));
  if (distinct(colours) == g.nodes) {
    auto code = encode(g, colours);
    if (best.empty() || code < best) best = std::move(code);
    return;
  }
  // Smallest non-singleton cell, lowest colour on ties.
  std::map<int, std::vector<int>> cells;
  for (int x = 0; x < g.nodes; ++x) cells[colours[static_cast<std::size_t>(x)]].push_back(x);
  const std::vector<int>* target = nullptr;
  for (const auto& [c, members] : cells) {
    if (members.size() > 1 && (target == nullptr || members.size() < target->size())) {
      target = &members;
    }
  }
  for (int x : *target) {
    auto split = colours;
    for (auto& c : split) c *= 2;
    for (int y : *target) {
      if (y != x) split[static_cast<std::size_t>(y)] += 1;
    }
    search(g, std::move(split), best);
  }
}

}  // namespace

CosetCode canonical_coset_code(const BiThorn& b) {
  if (b.empty()) return {"00"};
  const auto g = graph_of(b);
  std::vector<int> best;
  search(g, g.side, best);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string token;
  for (int value : best) {
    for (int shift = 12; shift >= 0; shift -= 4) token += kHex[(value >> shift) & 15];
  }
  return {token};
}

CosetCode coset_code(const Spheromorphism& g) {
  return canonical_coset_code(reduce_bithorn(bithorn_of(g).bithorn));
}

bool is_automorphism(const Spheromorphism& g) {
  return reduce_bithorn(bithorn_of(g).bithorn).empty();
}

std::string describe(const BiThorn& b) {
  std::ostringstream os;
  os << "arity " << b.arity << "\nvertices " << b.r.vertex_count << "\n";
  auto side = [&](const char* name, const AbstractThorn& t) {
    os << name << " edges";
    for (auto [x, y] : t.edges) os << ' ' << x << '-' << y;
    os << "\n" << name << " spikes";
    for (int o : t.spike_owner) os << ' ' << o;
    os << "\n";
  };
  side("R", b.r);
  side("Q", b.q);
  os << "theta";
  for (std::size_t s = 0; s < b.theta.size(); ++s) os << ' ' << s << ':' << b.theta[s];
  os << "\ncode " << canonical_coset_code(b).token << "\n";
  return os.str();
}

std::string to_dot(const BiThorn& b) {
  std::ostringstream os;
  os << "graph bithorn {\n";
  auto side = [&](char name, const AbstractThorn& t) {
    os << "  subgraph cluster_" << name << " {\n    label=\"" << name << "\";\n";
    for (int v = 0; v < t.vertex_count; ++v) os << "    " << name << v << ";\n";
    for (auto [x, y] : t.edges) os << "    " << name << x << " -- " << name << y << ";\n";
    os << "  }\n";
  };
  side('R', b.r);
  side('Q', b.q);
  for (std::size_t s = 0; s < b.theta.size(); ++s) {
    os << "  R" << b.r.spike_owner[s] << " -- Q"
       << b.q.spike_owner[static_cast<std::size_t>(b.theta[s])] << " [style=dashed];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace hier
