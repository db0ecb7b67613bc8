// SPDX-License-Identifier: Apache-2.0
#include "hier/thorn.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

namespace hier {

// ---------------------------------------------------------------- abstract

std::vector<int> AbstractThorn::spikes_at() const {
  std::vector<int> out(static_cast<std::size_t>(vertex_count), 0);
  for (int o : spike_owner) {
    if (o >= 0) ++out[static_cast<std::size_t>(o)];
  }
  return out;
}

std::vector<int> AbstractThorn::internal_degrees() const {
  std::vector<int> out(static_cast<std::size_t>(vertex_count), 0);
  for (auto [a, b] : edges) {
    ++out[static_cast<std::size_t>(a)];
    ++out[static_cast<std::size_t>(b)];
  }
  return out;
}

int AbstractThorn::diameter() const {
  if (vertex_count <= 1) return 0;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(vertex_count));
  for (auto [a, b] : edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  auto farthest = [&](int src) {
    std::vector<int> dist(adj.size(), -1);
    std::deque<int> q{src};
    dist[static_cast<std::size_t>(src)] = 0;
    int best = src;
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      if (dist[static_cast<std::size_t>(v)] > dist[static_cast<std::size_t>(best)]) best = v;
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
          q.push_back(w);
        }
      }
    }
    return std::pair{best, dist[static_cast<std::size_t>(best)]};
  };
  return farthest(farthest(0).first).second;
}

// ---------------------------------------------------------------- codes

namespace {

constexpr char kVertexOpen = '(';
constexpr char kVertexClose = ')';
constexpr char kSpike = 'S';
constexpr char kSpikeOpen = '<';
constexpr char kSpikeClose = '>';

std::string encode_rooted(const std::vector<std::vector<int>>& adj, int vertex_count, int node,
                          int parent) {
  std::vector<std::string> kids;
  for (int w : adj[static_cast<std::size_t>(node)]) {
    if (w != parent) kids.push_back(encode_rooted(adj, vertex_count, w, node));
  }
  std::sort(kids.begin(), kids.end());
  const bool is_spike = node >= vertex_count;
  if (is_spike && kids.empty()) return std::string(1, kSpike);
  std::string out(1, is_spike ? kSpikeOpen : kVertexOpen);
  for (const auto& k : kids) out += k;
  out += is_spike ? kSpikeClose : kVertexClose;
  return out;
}

}  // namespace

ThornCode canonical_code(const AbstractThorn& t) {
  if (t.vertex_count == 0) {
    if (t.spike_owner.empty()) return ThornCode();
    if (t.spike_owner.size() == 2) {
      return ThornCode::from_sequence(std::string{kSpikeOpen, kSpike, kSpikeClose});
    }
    throw ValidationError("thorn without vertices must have zero or two spikes");
  }
  const int n_nodes = t.vertex_count + t.spike_count();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_nodes));
  for (auto [a, b] : t.edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  for (int s = 0; s < t.spike_count(); ++s) {
    const int owner = t.spike_owner[static_cast<std::size_t>(s)];
    if (owner < 0 || owner >= t.vertex_count) throw ValidationError("spike without a vertex");
    const int node = t.vertex_count + s;
    adj[static_cast<std::size_t>(node)].push_back(owner);
    adj[static_cast<std::size_t>(owner)].push_back(node);
  }
  // Peel leaves down to the one or two central nodes.
  std::vector<int> degree(static_cast<std::size_t>(n_nodes));
  std::vector<int> layer;
  for (int v = 0; v < n_nodes; ++v) {
    degree[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());
    if (degree[static_cast<std::size_t>(v)] <= 1) layer.push_back(v);
  }
  int remaining = n_nodes;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<int> next;
    for (int v : layer) {
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if (--degree[static_cast<std::size_t>(w)] == 1) next.push_back(w);
      }
    }
    layer = std::move(next);
  }
  std::string best;
  for (int c : layer) {
    auto code = encode_rooted(adj, t.vertex_count, c, -1);
    if (best.empty() || code < best) best = std::move(code);
  }
  return ThornCode::from_sequence(std::move(best));
}

ThornCode ThornCode::from_sequence(std::string sequence) { return ThornCode(std::move(sequence)); }

std::string ThornCode::token() const {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned char c : sequence_) {
    out += kHex[c >> 4];
    out += kHex[c & 15];
  }
  return out;
}

ThornCode ThornCode::from_token(std::string_view token) {
  if (token.empty() || token.size() % 2 != 0) {
    throw ValidationError("thorn code token must be a nonempty even-length hex string");
  }
  auto nibble = [&](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw ValidationError("bad hex digit in thorn code token \"" + std::string(token) + "\"");
  };
  std::string seq;
  for (std::size_t i = 0; i < token.size(); i += 2) {
    seq += static_cast<char>(nibble(token[i]) * 16 + nibble(token[i + 1]));
  }
  ThornCode code(seq);
  if (code.is_empty()) return code;
  if (canonical_code(code.thorn()) != code) {
    throw ValidationError("thorn code token \"" + std::string(token) + "\" is not canonical");
  }
  return code;
}

int ThornCode::vertex_count() const noexcept {
  return static_cast<int>(std::count(sequence_.begin(), sequence_.end(), kVertexOpen));
}

int ThornCode::spike_count() const noexcept {
  return static_cast<int>(std::count(sequence_.begin(), sequence_.end(), kSpike) +
                          std::count(sequence_.begin(), sequence_.end(), kSpikeOpen));
}

AbstractThorn ThornCode::thorn() const {
  AbstractThorn t;
  if (is_empty()) return t;
  std::size_t pos = 0;
  const auto& s = sequence_;
  auto fail = [&] { throw ValidationError("malformed thorn code"); };
  // parent_kind: 0 none, 1 vertex, 2 spike
  std::function<void(int, int)> node = [&](int parent, int parent_kind) {
    if (pos >= s.size()) fail();
    const char c = s[pos++];
    if (c == kVertexOpen) {
      const int id = t.vertex_count++;
      if (parent_kind == 1) t.edges.emplace_back(parent, id);
      if (parent_kind == 2) t.spike_owner[static_cast<std::size_t>(parent)] = id;
      while (pos < s.size() && s[pos] != kVertexClose) node(id, 1);
      if (pos >= s.size()) fail();
      ++pos;
    } else if (c == kSpike) {
      if (parent_kind == 0) fail();
      t.spike_owner.push_back(parent_kind == 1 ? parent : -1);
    } else if (c == kSpikeOpen) {
      if (parent_kind != 0) fail();
      const int id = t.spike_count();
      t.spike_owner.push_back(-1);
      while (pos < s.size() && s[pos] != kSpikeClose) node(id, 2);
      if (pos >= s.size()) fail();
      ++pos;
    } else {
      fail();
    }
  };
  node(-1, 0);
  if (pos != s.size()) fail();
  return t;
}

ThornCode ball_class() {
  AbstractThorn t;
  t.vertex_count = 1;
  t.spike_owner = {0};
  return canonical_code(t);
}

ThornCode two_spike_class(int vertices) {
  if (vertices < 1) throw DomainError("two-spike class needs at least one vertex");
  AbstractThorn t;
  t.vertex_count = vertices;
  for (int i = 0; i + 1 < vertices; ++i) t.edges.emplace_back(i, i + 1);
  t.spike_owner = {0, vertices - 1};
  return canonical_code(t);
}

bool is_reduced_class(const ThornCode& code, Arity arity) {
  if (code.is_empty()) return false;
  const auto t = code.thorn();
  if (t.vertex_count == 0 || t.spike_count() == 0) return false;
  const auto spikes = t.spikes_at();
  const auto degree = t.internal_degrees();
  for (std::size_t v = 0; v < spikes.size(); ++v) {
    if (spikes[v] + degree[v] > arity.valence()) return false;
    if (spikes[v] >= arity.n()) return false;
    if (degree[v] <= 1 && spikes[v] == 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------- sub-thorns

SubThorn make_subthorn_unchecked(Arity arity, std::set<Address> vertices, std::set<Ball> spikes) {
  SubThorn s(arity);
  s.vertices_ = std::move(vertices);
  s.spikes_ = std::move(spikes);
  return s;
}

SubThorn::SubThorn(Arity arity, std::set<Address> vertices, std::set<Ball> spikes)
    : arity_(arity), vertices_(std::move(vertices)), spikes_(std::move(spikes)) {
  for (const auto& v : vertices_) {
    if (auto err = alphabet_violation(v, arity)) throw ValidationError(*err);
  }
  for (const auto& b : spikes_) {
    if (b.cut.is_root()) throw ValidationError("spike with empty cut");
    if (auto err = alphabet_violation(b.cut, arity)) throw ValidationError(*err);
  }
  if (vertices_.empty()) {
    if (spikes_.empty()) return;
    if (spikes_.size() == 2 && spikes_.begin()->complement() == *std::next(spikes_.begin())) {
      return;
    }
    throw ValidationError("a thorn without vertices has no spikes or two complementary spikes");
  }
  // Connectivity: in a tree, a vertex set is connected iff exactly one of
  // its members has its parent outside the set.
  int tops = 0;
  for (const auto& v : vertices_) {
    if (v.is_root() || !vertices_.count(v.parent())) ++tops;
  }
  if (tops != 1) throw ValidationError("sub-thorn vertices are not connected");
  for (const auto& b : spikes_) {
    if (!vertices_.count(b.outside())) {
      throw ValidationError("spike " + spike_token(b) + " is not incident to a vertex");
    }
    if (vertices_.count(b.apex())) {
      throw ValidationError("spike " + spike_token(b) + " lies on an internal edge");
    }
  }
}

int SubThorn::spikes_at(const Address& v) const {
  return static_cast<int>(
      std::count_if(spikes_.begin(), spikes_.end(), [&](const Ball& b) { return b.outside() == v; }));
}

int SubThorn::internal_degree(const Address& v) const {
  int d = 0;
  for (const auto& w : v.neighbours(arity_)) d += static_cast<int>(vertices_.count(w));
  return d;
}

bool SubThorn::is_perfect() const {
  if (vertices_.empty()) return spikes_.size() == 2;
  // Spikes occupy distinct non-internal edges at member vertices, so every
  // vertex has full valence iff the edge ends add up.
  const auto v = vertices_.size();
  return spikes_.size() + 2 * (v - 1) == v * static_cast<std::size_t>(arity_.valence());
}

std::vector<std::pair<bool, Address>> SubThorn::cells() const {
  std::vector<std::pair<bool, Address>> out;
  for (const auto& v : vertices_) {
    out.emplace_back(false, v);
    if (!v.is_root() && vertices_.count(v.parent())) out.emplace_back(true, v);
  }
  for (const auto& b : spikes_) out.emplace_back(true, b.cut);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool SubThorn::meets(const SubThorn& other) const {
  const auto a = cells();
  const auto b = other.cells();
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j]) ++i;
    else ++j;
  }
  return false;
}

namespace {

SubThorn spanned_subthorn(Arity arity, std::span<const Ball> balls) {
  if (balls.empty()) return SubThorn(arity);
  if (balls.size() == 2 && balls[0].complement() == balls[1]) {
    return make_subthorn_unchecked(arity, {}, {balls[0], balls[1]});
  }
  std::set<Address> vertices;
  const Address anchor = balls[0].outside();
  vertices.insert(anchor);
  for (const auto& b : balls) {
    const Address p = b.outside();
    const std::size_t lca = common_prefix(p, anchor).depth();
    for (std::size_t k = lca; k <= p.depth(); ++k) vertices.insert(p.prefix(k));
    for (std::size_t k = lca; k <= anchor.depth(); ++k) vertices.insert(anchor.prefix(k));
  }
  return make_subthorn_unchecked(arity, std::move(vertices), {balls.begin(), balls.end()});
}

}  // namespace

SubThorn subthorn_from_balls(Arity arity, std::span<const Ball> balls) {
  for (std::size_t i = 0; i < balls.size(); ++i) {
    if (auto err = alphabet_violation(balls[i].cut, arity)) throw ValidationError(*err);
    if (balls[i].cut.is_root()) throw ValidationError("ball with empty cut");
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      if (relate(balls[i], balls[j]) != BallRelation::Disjoint) {
        throw DomainError("balls " + balls[i].text() + " and " + balls[j].text() +
                          " are not disjoint");
      }
    }
  }
  return spanned_subthorn(arity, balls);
}

SubThorn reduce_subthorn(const SubThorn& s) {
  const Arity arity = s.arity();
  if (s.vertices().empty()) return SubThorn(arity);  // empty, or the perfect edge thorn
  std::set<Address> verts = s.vertices();
  std::set<Ball> spikes = s.spikes();
  for (;;) {
    std::map<Address, int> at;
    for (const auto& b : spikes) ++at[b.outside()];
    bool changed = false;
    for (const auto& [a, count] : at) {
      if (count == arity.valence()) return SubThorn(arity);
      if (count < arity.n()) continue;
      std::vector<Address> inner;
      for (const auto& w : a.neighbours(arity)) {
        if (verts.count(w)) inner.push_back(w);
      }
      const Address vertex = a;
      std::erase_if(spikes, [&](const Ball& b) { return b.outside() == vertex; });
      if (inner.size() == 1) {
        verts.erase(vertex);
        spikes.insert(Ball::beyond(inner.front(), vertex));
      } else {
        // Lone vertex with n spikes: the union is the single ball cut at
        // its remaining edge.
        Address free_side;
        for (const auto& w : vertex.neighbours(arity)) {
          const Ball candidate = Ball::beyond(vertex, w);
          if (!s.spikes().count(candidate)) free_side = w;
        }
        verts = {free_side};
        spikes = {Ball::beyond(free_side, vertex)};
      }
      changed = true;
      break;
    }
    if (!changed) break;
  }
  return make_subthorn_unchecked(arity, std::move(verts), std::move(spikes));
}

ClopenSet clopen_of_subthorn(const SubThorn& s) {
  std::vector<Ball> balls(s.spikes().begin(), s.spikes().end());
  return ClopenSet::union_of(s.arity(), balls);
}

AbstractThorn to_abstract(const SubThorn& s) {
  AbstractThorn t;
  std::map<Address, int> index;
  for (const auto& v : s.vertices()) index.emplace(v, t.vertex_count++);
  for (const auto& [v, i] : index) {
    if (!v.is_root()) {
      auto it = index.find(v.parent());
      if (it != index.end()) t.edges.emplace_back(it->second, i);
    }
  }
  for (const auto& b : s.spikes()) {
    auto it = index.find(b.outside());
    t.spike_owner.push_back(it == index.end() ? -1 : it->second);
  }
  return t;
}

SubThorn maximal_thorn(const ClopenSet& omega) {
  if (!omega.is_proper()) {
    throw DomainError("the empty set and the whole boundary have no reduced thorn");
  }
  const auto balls = omega.marked_balls();
  return reduce_subthorn(spanned_subthorn(omega.arity(), balls));
}

ThornCode classify_clopen(const ClopenSet& omega) {
  return canonical_code(to_abstract(maximal_thorn(omega)));
}

// ---------------------------------------------------------------- enumeration

namespace {

std::vector<std::vector<Address>> connected_subsets(const std::set<Address>& allowed,
                                                    std::size_t size, Arity arity) {
  std::set<std::vector<Address>> level;
  if (size == 0) return {};
  for (const auto& v : allowed) level.insert({v});
  for (std::size_t k = 1; k < size; ++k) {
    std::set<std::vector<Address>> next;
    for (const auto& set : level) {
      for (const auto& v : set) {
        for (const auto& w : v.neighbours(arity)) {
          if (!allowed.count(w) || std::binary_search(set.begin(), set.end(), w)) continue;
          auto grown = set;
          grown.insert(std::upper_bound(grown.begin(), grown.end(), w), w);
          next.insert(std::move(grown));
        }
      }
    }
    level = std::move(next);
  }
  return {level.begin(), level.end()};
}

}  // namespace

std::vector<SubThorn> subthorns_on(const ThornCode& pattern, Arity arity,
                                   const std::set<Address>& allowed) {
  const auto shape = pattern.thorn();
  if (shape.vertex_count == 0) return {};
  // Degree profile: multiset of (skeleton degree, spikes) per vertex.
  std::multiset<std::pair<int, int>> profile;
  {
    const auto sp = shape.spikes_at();
    const auto dg = shape.internal_degrees();
    for (std::size_t v = 0; v < sp.size(); ++v) profile.emplace(dg[v], sp[v]);
  }
  std::set<SubThorn> found;
  for (const auto& vs : connected_subsets(allowed, static_cast<std::size_t>(shape.vertex_count),
                                          arity)) {
    const std::set<Address> vertex_set(vs.begin(), vs.end());
    struct Slot {
      int degree;
      std::vector<Ball> free;
    };
    std::vector<Slot> slots;
    for (const auto& v : vs) {
      Slot slot{0, {}};
      for (const auto& w : v.neighbours(arity)) {
        if (vertex_set.count(w)) ++slot.degree;
        else slot.free.push_back(Ball::beyond(v, w));
      }
      slots.push_back(std::move(slot));
    }
    auto remaining = profile;
    std::set<Ball> chosen;
    std::function<void(std::size_t)> assign = [&](std::size_t i) {
      if (i == slots.size()) {
        auto candidate = make_subthorn_unchecked(arity, vertex_set, chosen);
        if (canonical_code(to_abstract(candidate)) == pattern) found.insert(std::move(candidate));
        return;
      }
      const auto& slot = slots[i];
      std::set<int> counts;
      for (auto [d, c] : remaining) {
        if (d == slot.degree && c <= static_cast<int>(slot.free.size())) counts.insert(c);
      }
      const std::size_t m = slot.free.size();
      for (int c : counts) {
        remaining.erase(remaining.find({slot.degree, c}));
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
          if (std::popcount(mask) != c) continue;
          std::vector<Ball> added;
          for (std::size_t b = 0; b < m; ++b) {
            if (mask & (1u << b)) added.push_back(slot.free[b]);
          }
          for (const auto& b : added) chosen.insert(b);
          assign(i + 1);
          for (const auto& b : added) chosen.erase(b);
        }
        remaining.emplace(slot.degree, c);
      }
    };
    assign(0);
  }
  return {found.begin(), found.end()};
}

std::vector<SubThorn> enumerate_embeddings(const ThornCode& pattern, const SubThorn& region,
                                           int radius) {
  if (pattern.is_empty()) return {};
  const int diameter = pattern.thorn().diameter();
  if (radius < diameter) {
    throw DomainError("radius " + std::to_string(radius) + " is smaller than the pattern diameter " +
                      std::to_string(diameter));
  }
  if (region.empty()) return {};
  const Arity arity = region.arity();
  std::set<Address> base = region.vertices();
  if (base.empty()) {
    for (const auto& b : region.spikes()) base.insert(b.outside());
  }
  std::set<Address> allowed = base;
  std::vector<Address> frontier(base.begin(), base.end());
  for (int r = 0; r < radius; ++r) {
    std::vector<Address> next;
    for (const auto& v : frontier) {
      for (auto& w : v.neighbours(arity)) {
        if (allowed.insert(w).second) next.push_back(std::move(w));
      }
    }
    frontier = std::move(next);
  }
  std::vector<SubThorn> out;
  for (auto& s : subthorns_on(pattern, arity, allowed)) {
    if (s.meets(region)) out.push_back(std::move(s));
  }
  return out;
}

std::vector<ThornCode> reduced_classes(Arity arity, int max_vertices, std::optional<int> iota) {
  std::set<ThornCode> found;
  std::set<Address> allowed{Address()};
  std::vector<Address> frontier{Address()};
  for (int r = 1; r < max_vertices; ++r) {
    std::vector<Address> next;
    for (const auto& v : frontier) {
      for (auto& w : v.neighbours(arity)) {
        if (allowed.insert(w).second) next.push_back(std::move(w));
      }
    }
    frontier = std::move(next);
  }
  for (int k = 1; k <= max_vertices; ++k) {
    for (const auto& vs : connected_subsets(allowed, static_cast<std::size_t>(k), arity)) {
      if (vs.front() != Address()) continue;  // every shape embeds through the root
      const std::set<Address> vertex_set(vs.begin(), vs.end());
      std::vector<Ball> free;
      for (const auto& v : vs) {
        for (const auto& w : v.neighbours(arity)) {
          if (!vertex_set.count(w)) free.push_back(Ball::beyond(v, w));
        }
      }
      const std::size_t m = free.size();
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        std::set<Ball> spikes;
        for (std::size_t b = 0; b < m; ++b) {
          if (mask & (std::uint64_t{1} << b)) spikes.insert(free[b]);
        }
        auto code = canonical_code(
            to_abstract(make_subthorn_unchecked(arity, vertex_set, std::move(spikes))));
        if (!is_reduced_class(code, arity)) continue;
        if (iota && code.spike_count() % arity.modulus() != *iota) continue;
        found.insert(std::move(code));
      }
    }
  }
  return {found.begin(), found.end()};
}

// ---------------------------------------------------------------- text

std::string vertex_token(const Address& v) { return v.is_root() ? "." : v.word(); }

Address parse_vertex_token(std::string_view token, Arity arity) {
  if (token == ".") return Address();
  return Address::parse(token, arity);
}

std::string spike_token(const Ball& spike) {
  if (spike.is_down()) return vertex_token(spike.cut.parent()) + ":" + std::to_string(spike.cut.last());
  return vertex_token(spike.cut) + ":up";
}

Ball parse_spike_token(std::string_view token, Arity arity) {
  const auto colon = token.rfind(':');
  if (colon == std::string_view::npos) {
    throw ValidationError("spike token \"" + std::string(token) + "\" lacks ':'");
  }
  const auto vtext = token.substr(0, colon);
  const auto dir = token.substr(colon + 1);
  const Address v = vtext.empty() ? Address() : parse_vertex_token(vtext, arity);
  if (dir == "up") {
    if (v.is_root()) throw ValidationError("the root has no upward spike");
    return Ball::up(v);
  }
  if (dir.size() != 1 || dir[0] < '0' || dir[0] - '0' >= v.child_count(arity)) {
    throw ValidationError("bad spike direction in \"" + std::string(token) + "\"");
  }
  return Ball::down(v.child(dir[0] - '0'));
}

std::string to_text(const SubThorn& s) {
  std::ostringstream os;
  os << "arity " << s.arity().n() << "\nvertices";
  for (const auto& v : s.vertices()) os << ' ' << vertex_token(v);
  os << "\nspikes";
  for (const auto& b : s.spikes()) os << ' ' << spike_token(b);
  os << '\n';
  return os.str();
}

SubThorn subthorn_from_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::optional<Arity> arity;
  std::vector<std::string> vtok, stok;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::string tok;
    if (key == "arity") {
      int n = 0;
      if (!(ls >> n)) throw ValidationError("line " + std::to_string(lineno) + ": bad arity");
      arity.emplace(n);
    } else if (key == "vertices") {
      while (ls >> tok) vtok.push_back(tok);
    } else if (key == "spikes") {
      while (ls >> tok) stok.push_back(tok);
    } else {
      throw ValidationError("line " + std::to_string(lineno) + ": unknown key \"" + key + "\"");
    }
  }
  if (!arity) throw ValidationError("sub-thorn text lacks an arity line");
  std::set<Address> vertices;
  std::set<Ball> spikes;
  for (const auto& t : vtok) vertices.insert(parse_vertex_token(t, *arity));
  for (const auto& t : stok) spikes.insert(parse_spike_token(t, *arity));
  return SubThorn(*arity, std::move(vertices), std::move(spikes));
}

std::string to_dot(const SubThorn& s) {
  std::ostringstream os;
  os << "graph thorn {\n  node [shape=circle];\n";
  for (const auto& v : s.vertices()) {
    os << "  \"v" << vertex_token(v) << "\" [label=\"" << vertex_token(v) << "\"];\n";
    if (!v.is_root() && s.vertices().count(v.parent())) {
      os << "  \"v" << vertex_token(v.parent()) << "\" -- \"v" << vertex_token(v) << "\";\n";
    }
  }
  int i = 0;
  for (const auto& b : s.spikes()) {
    os << "  s" << i << " [shape=point, xlabel=\"" << b.text() << "\"];\n";
    os << "  \"v" << vertex_token(b.outside()) << "\" -- s" << i << ";\n";
    ++i;
  }
  os << "}\n";
  return os.str();
}

}  // namespace hier
