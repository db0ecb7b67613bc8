// SPDX-License-Identifier: Apache-2.0
#include "hier/spheromorphism.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace hier {

namespace {

// The leaf of `leaves` that is a prefix of `word`: the greatest leaf <= word.
const std::pair<const Address, Address>* leaf_entry(const std::map<Address, Address>& leaves,
                                                    const Address& word) {
  auto it = leaves.upper_bound(word);
  if (it == leaves.begin()) return nullptr;
  --it;
  return it->first.is_prefix_of(word) ? &*it : nullptr;
}

Address apply(const std::map<Address, Address>& table, const Address& word) {
  const auto* e = leaf_entry(table, word);
  if (e == nullptr) {
    throw DomainError("word \"" + word.word() + "\" is shorter than the table");
  }
  return e->second + word.tail_after(e->first.depth());
}

}  // namespace

Spheromorphism::Spheromorphism(Arity arity, std::vector<Piece> pieces)
    : arity_(arity), pieces_(std::move(pieces)) {
  std::vector<Address> from, to;
  for (const auto& p : pieces_) {
    from.push_back(p.from);
    to.push_back(p.to);
  }
  try {
    PrefixCode d(arity, from);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("domain: ") + e.what());
  }
  try {
    PrefixCode r(arity, to);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("range: ") + e.what());
  }
  for (const auto& p : pieces_) {
    forward_.emplace(p.from, p.to);
    backward_.emplace(p.to, p.from);
  }
}

Spheromorphism Spheromorphism::identity(Arity arity) {
  std::vector<Piece> pieces;
  const auto root = PrefixCode::root(arity);
  for (const auto& l : root.leaves()) pieces.push_back({l, l});
  return Spheromorphism(arity, std::move(pieces));
}

PrefixCode Spheromorphism::domain() const {
  std::vector<Address> w;
  for (const auto& [a, b] : forward_) w.push_back(a);
  return PrefixCode(arity_, std::move(w));
}

PrefixCode Spheromorphism::range() const {
  std::vector<Address> w;
  for (const auto& [b, a] : backward_) w.push_back(b);
  return PrefixCode(arity_, std::move(w));
}

std::size_t Spheromorphism::max_depth() const noexcept {
  std::size_t d = 0;
  for (const auto& p : pieces_) d = std::max({d, p.from.depth(), p.to.depth()});
  return d;
}

Address Spheromorphism::image(const Address& word) const { return apply(forward_, word); }
Address Spheromorphism::preimage(const Address& word) const { return apply(backward_, word); }

Spheromorphism compose(const Spheromorphism& g, const Spheromorphism& h) {
  if (g.arity() != h.arity()) throw ArityMismatch("compose: arity mismatch");
  const auto common = refine(h.range(), g.domain());
  std::vector<Piece> pieces;
  pieces.reserve(common.size());
  for (const auto& x : common.leaves()) pieces.push_back({h.preimage(x), g.image(x)});
  return reduced(Spheromorphism(g.arity(), std::move(pieces)));
}

Spheromorphism invert(const Spheromorphism& g) {
  std::vector<Piece> pieces;
  pieces.reserve(g.pieces().size());
  for (const auto& p : g.pieces()) pieces.push_back({p.to, p.from});
  return Spheromorphism(g.arity(), std::move(pieces));
}

bool equals(const Spheromorphism& g, const Spheromorphism& h) {
  if (g.arity() != h.arity()) throw ArityMismatch("equals: arity mismatch");
  const auto common = refine(g.domain(), h.domain());
  return std::all_of(common.leaves().begin(), common.leaves().end(),
                     [&](const Address& x) { return g.image(x) == h.image(x); });
}

Spheromorphism reduced(const Spheromorphism& g) {
  const Arity arity = g.arity();
  std::map<Address, Address> table = g.forward();
  // Deepest parents first.
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
    bool literal = true;
    for (int i = 0; i < arity.n() && literal; ++i) {
      auto it = table.find(p.child(i));
      if (it == table.end() || it->second.depth() < 2 || it->second.last() != i) {
        literal = false;
      } else if (!q) {
        q = it->second.parent();
      } else if (*q != it->second.parent()) {
        literal = false;
      }
    }
    if (!literal) continue;
    for (int i = 0; i < arity.n(); ++i) table.erase(p.child(i));
    table.emplace(p, *q);
    if (p.depth() >= 2) work[p.depth() - 1].insert(p.parent());
  }
  std::vector<Piece> pieces;
  for (auto& [u, v] : table) pieces.push_back({u, v});
  return Spheromorphism(arity, std::move(pieces));
}

ClopenSet act_on_clopen(const Spheromorphism& g, const ClopenSet& omega) {
  if (g.arity() != omega.arity()) throw ArityMismatch("act: arity mismatch");
  const auto common = refine(omega.carrier(), g.domain());
  std::vector<MarkedLeaf> image;
  image.reserve(common.size());
  for (const auto& x : common.leaves()) image.push_back({g.image(x), omega.contains_end(x)});
  return ClopenSet(g.arity(), std::move(image));
}

std::vector<std::pair<Address, Address>> truncated_action(const Spheromorphism& g,
                                                          std::size_t depth) {
  if (depth < g.domain().max_depth()) {
    throw DomainError("truncation depth " + std::to_string(depth) +
                      " is below the domain depth " + std::to_string(g.domain().max_depth()));
  }
  std::vector<Address> words{Address()};
  for (std::size_t k = 0; k < depth; ++k) {
    std::vector<Address> next;
    for (const auto& w : words) {
      for (int c = 0; c < w.child_count(g.arity()); ++c) next.push_back(w.child(c));
    }
    words = std::move(next);
  }
  std::vector<std::pair<Address, Address>> out;
  out.reserve(words.size());
  for (auto& w : words) {
    Address img = g.image(w);
    out.emplace_back(std::move(w), std::move(img));
  }
  return out;
}

Spheromorphism finitary_automorphism(Arity arity, const PermutationSpec& spec) {
  std::vector<Address> children;
  for (const auto& [v, perm] : spec) {
    if (auto err = alphabet_violation(v, arity)) throw ValidationError(*err);
    const int k = v.child_count(arity);
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expect(static_cast<std::size_t>(k));
    std::iota(expect.begin(), expect.end(), 0);
    if (sorted != expect) {
      throw ValidationError("permutation at \"" + v.word() + "\" is not a permutation of " +
                            std::to_string(k) + " children");
    }
    for (int c = 0; c < k; ++c) children.push_back(v.child(c));
  }
  const auto code = PrefixCode::spanned(arity, children);
  std::vector<Piece> pieces;
  for (const auto& x : code.leaves()) {
    std::string img;
    for (std::size_t k = 0; k < x.depth(); ++k) {
      auto it = spec.find(x.prefix(k));
      const int s = x.symbol(k);
      img += static_cast<char>('0' + (it == spec.end() ? s : it->second[static_cast<std::size_t>(s)]));
    }
    pieces.push_back({x, Address(img)});
  }
  return Spheromorphism(arity, std::move(pieces));
}

namespace {

std::vector<int> random_permutation(int k, std::mt19937_64& rng) {
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  for (int i = k - 1; i > 0; --i) {
    std::swap(p[static_cast<std::size_t>(i)],
              p[static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(i + 1))]);
  }
  return p;
}

std::vector<Address> random_code(Arity arity, std::size_t splits, std::mt19937_64& rng) {
  std::vector<Address> leaves = PrefixCode::root(arity).leaves();
  for (std::size_t s = 0; s < splits; ++s) {
    const std::size_t i = rng() % leaves.size();
    const Address v = leaves[i];
    leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(i));
    for (int c = 0; c < arity.n(); ++c) leaves.push_back(v.child(c));
  }
  std::sort(leaves.begin(), leaves.end());
  return leaves;
}

}  // namespace

Spheromorphism random_finitary_automorphism(Arity arity, std::size_t max_depth,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Address> candidates{Address()};
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].depth() + 1 >= max_depth) continue;
    for (int c = 0; c < candidates[i].child_count(arity); ++c) {
      candidates.push_back(candidates[i].child(c));
    }
  }
  PermutationSpec spec;
  const std::size_t count = rng() % 4;
  for (std::size_t i = 0; i < count; ++i) {
    const Address& v = candidates[rng() % candidates.size()];
    spec[v] = random_permutation(v.child_count(arity), rng);
  }
  return finitary_automorphism(arity, spec);
}

Spheromorphism hyperbolic_translation(Arity arity) {
  const int n = arity.n();
  std::vector<Piece> pieces;
  auto w = [](std::string s) { return Address(std::move(s)); };
  auto d = [](int c) { return std::string(1, static_cast<char>('0' + c)); };
  pieces.push_back({w("0"), w("00")});
  for (int c = 2; c <= n; ++c) pieces.push_back({w(d(c)), w("0" + d(c - 1))});
  pieces.push_back({w("10"), w("2")});
  pieces.push_back({w("11"), w("1")});
  for (int j = 2; j < n; ++j) pieces.push_back({w("1" + d(j)), w(d(j + 1))});
  return Spheromorphism(arity, std::move(pieces));
}

std::optional<int> automorphism_parity(const Spheromorphism& g) {
  std::optional<int> parity;
  for (const auto& p : g.pieces()) {
    const int shift =
        static_cast<int>((p.to.depth() + p.from.depth()) % 2);
    if (parity && *parity != shift) return std::nullopt;
    parity = shift;
  }
  return parity;
}

std::vector<ThompsonGenerator> thompson_generators() {
  const Arity two(2);
  auto table = [&](std::initializer_list<std::pair<const char*, const char*>> rows) {
    std::vector<Piece> pieces;
    for (auto [a, b] : rows) pieces.push_back({Address(a), Address(b)});
    return Spheromorphism(two, std::move(pieces));
  };
  std::vector<ThompsonGenerator> out;
  out.push_back({"r", table({{"0", "1"}, {"1", "2"}, {"2", "0"}}), true, 3});
  out.push_back({"s", table({{"00", "1"}, {"01", "2"}, {"1", "00"}, {"2", "01"}}), true, 2});
  out.push_back({"x0", table({{"00", "0"}, {"01", "10"}, {"1", "11"}, {"2", "2"}}), false,
                 std::nullopt});
  out.push_back({"x1",
                 table({{"0", "0"}, {"10", "100"}, {"110", "101"}, {"111", "11"}, {"2", "2"}}),
                 false, std::nullopt});
  return out;
}

Spheromorphism random_element(Arity arity, std::size_t budget, std::uint64_t seed) {
  if (budget < static_cast<std::size_t>(arity.valence())) {
    throw DomainError("budget must be at least n + 1 = " + std::to_string(arity.valence()));
  }
  std::mt19937_64 rng(seed);
  const std::size_t max_splits = (budget - static_cast<std::size_t>(arity.valence())) /
                                 static_cast<std::size_t>(arity.modulus());
  const std::size_t splits = rng() % (max_splits + 1);
  const auto domain = random_code(arity, splits, rng);
  std::vector<Piece> pieces;
  if (rng() % 3 == 0) {
    // Automorphism: a random child permutation at every internal vertex.
    PermutationSpec spec;
    for (const auto& v : PrefixCode(arity, domain).internal_vertices()) {
      spec[v] = random_permutation(v.child_count(arity), rng);
    }
    for (const auto& x : domain) {
      std::string img;
      for (std::size_t k = 0; k < x.depth(); ++k) {
        img += static_cast<char>('0' + spec.at(x.prefix(k))[static_cast<std::size_t>(x.symbol(k))]);
      }
      pieces.push_back({x, Address(img)});
    }
  } else {
    auto range = random_code(arity, splits, rng);
    for (std::size_t i = range.size(); i > 1; --i) {
      std::swap(range[i - 1], range[rng() % i]);
    }
    for (std::size_t i = 0; i < domain.size(); ++i) pieces.push_back({domain[i], range[i]});
  }
  return Spheromorphism(arity, std::move(pieces));
}

std::string to_text(const Spheromorphism& g) {
  std::string out = "arity " + std::to_string(g.arity().n()) + "\n";
  for (const auto& p : g.pieces()) out += p.from.word() + " -> " + p.to.word() + "\n";
  return out;
}

Spheromorphism element_from_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::optional<Arity> arity;
  std::vector<std::pair<std::string, std::string>> rows;
  int lineno = 0;
  auto where = [&] { return "line " + std::to_string(lineno) + ": "; };
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string a, arrow, b, extra;
    if (!(ls >> a)) continue;
    if (a == "arity") {
      int n = 0;
      if (!(ls >> n) || (ls >> extra)) throw ValidationError(where() + "bad arity line");
      if (arity) throw ValidationError(where() + "duplicate arity line");
      try {
        arity.emplace(n);
      } catch (const ValidationError& e) {
        throw ValidationError(where() + e.what());
      }
      continue;
    }
    if (!(ls >> arrow >> b) || arrow != "->" || (ls >> extra)) {
      throw ValidationError(where() + "expected \"u -> v\"");
    }
    rows.emplace_back(a, b);
  }
  if (!arity) throw ValidationError("missing \"arity n\" header");
  std::vector<Piece> pieces;
  for (const auto& [a, b] : rows) {
    pieces.push_back({Address::parse(a, *arity), Address::parse(b, *arity)});
  }
  return Spheromorphism(*arity, std::move(pieces));
}

}  // namespace hier
