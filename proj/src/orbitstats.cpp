// SPDX-License-Identifier: Apache-2.0
#include "hier/orbitstats.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

namespace hier {

ClassTable::ClassTable(Arity arity, int iota, std::vector<ThornCode> tracked)
    : arity_(arity), iota_(iota), tracked_(std::move(tracked)) {
  if (iota < 0 || iota >= arity.modulus()) {
    throw ValidationError("iota " + std::to_string(iota) + " outside [0, " +
                          std::to_string(arity.modulus() - 1) + "]");
  }
  std::set<ThornCode> seen;
  for (const auto& c : tracked_) {
    if (!seen.insert(c).second) throw ValidationError("duplicate class " + c.token());
    if (!is_reduced_class(c, arity)) {
      throw ValidationError("class " + c.token() + " is not a reduced thorn of T_n");
    }
    if (c.spike_count() % arity.modulus() != iota) {
      throw ValidationError("class " + c.token() + " has spike residue " +
                            std::to_string(c.spike_count() % arity.modulus()) + ", not " +
                            std::to_string(iota));
    }
  }
}

ClassTable class_table_from_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::optional<int> n, iota;
  std::vector<ThornCode> classes;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key, word;
    if (!(ls >> key)) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (key == "matrix") break;
    if (key == "classes") {
      while (ls >> word) {
        try {
          classes.push_back(ThornCode::from_token(word));
        } catch (const ValidationError& e) {
          throw ValidationError(where + e.what());
        }
      }
    } else if (key == "arity" || key == "iota") {
      int v = 0;
      if (!(ls >> v) || (ls >> word)) throw ValidationError(where + "bad " + key + " line");
      (key == "arity" ? n : iota) = v;
    } else {
      throw ValidationError(where + "unexpected \"" + key + "\"");
    }
  }
  if (!n || !iota) throw ValidationError("class table needs arity and iota lines");
  return ClassTable(Arity(*n), *iota, std::move(classes));
}

int ClassTable::index_of(const ThornCode& code) const {
  auto it = std::find(tracked_.begin(), tracked_.end(), code);
  return it == tracked_.end() ? 0 : static_cast<int>(it - tracked_.begin()) + 1;
}

std::string ClassTable::label(int index) const {
  return index == 0 ? "P" : tracked_[static_cast<std::size_t>(index - 1)].token();
}

int ClassTable::max_diameter() const {
  int d = 0;
  for (const auto& c : tracked_) d = std::max(d, c.thorn().diameter());
  return d;
}

int ClassTable::max_spikes() const {
  int s = 0;
  for (const auto& c : tracked_) s = std::max(s, c.spike_count());
  return s;
}

namespace {

void check_arity(const Spheromorphism& g, const ClassTable& table) {
  if (g.arity() != table.arity()) throw ArityMismatch("element and class table differ in arity");
}

}  // namespace

std::vector<MovedSet> moved_sets(const Spheromorphism& g, const ClassTable& table) {
  check_arity(g, table);
  const auto g_inv = invert(g);
  const SubThorn support = bithorn_of(g).r_sub;
  const SubThorn support_inv = bithorn_of(g_inv).r_sub;
  std::vector<MovedSet> out;
  for (std::size_t i = 0; i < table.tracked().size(); ++i) {
    const auto& code = table.tracked()[i];
    const int p = static_cast<int>(i) + 1;
    const int radius = code.thorn().diameter() + 1;
    for (const auto& s : enumerate_embeddings(code, support, radius)) {
      auto omega = clopen_of_subthorn(s);
      const int q = table.index_of(classify_clopen(act_on_clopen(g, omega)));
      if (q != p) out.push_back({std::move(omega), p, q});
    }
  }
  // Entries into tracked classes from untracked ones: leaving moves of g^-1.
  for (std::size_t i = 0; i < table.tracked().size(); ++i) {
    const auto& code = table.tracked()[i];
    const int q = static_cast<int>(i) + 1;
    const int radius = code.thorn().diameter() + 1;
    for (const auto& s : enumerate_embeddings(code, support_inv, radius)) {
      auto omega = act_on_clopen(g_inv, clopen_of_subthorn(s));
      if (table.index_of(classify_clopen(omega)) == 0) out.push_back({std::move(omega), 0, q});
    }
  }
  return out;
}

namespace {

TransitionCounts zero_counts(const ClassTable& table) {
  TransitionCounts t;
  t.counts.assign(static_cast<std::size_t>(table.size()),
                  std::vector<std::int64_t>(static_cast<std::size_t>(table.size()), 0));
  return t;
}

}  // namespace

TransitionCounts theta(const Spheromorphism& g, const ClassTable& table) {
  auto t = zero_counts(table);
  for (const auto& m : moved_sets(g, table)) {
    ++t.counts[static_cast<std::size_t>(m.from)][static_cast<std::size_t>(m.to)];
  }
  return t;
}

int bruteforce_min_depth(const Spheromorphism& g, const ClassTable& table) {
  const auto b = bithorn_of(g);
  std::size_t depth = 0;
  for (const auto& piece : b.merged) depth = std::max({depth, piece.from.depth(), piece.to.depth()});
  return static_cast<int>(depth) + table.max_diameter() + 1;
}

TransitionCounts theta_bruteforce(const Spheromorphism& g, const ClassTable& table,
                                  int depth_cap) {
  check_arity(g, table);
  const int need = bruteforce_min_depth(g, table);
  if (depth_cap < need) {
    throw DomainError("depth cap " + std::to_string(depth_cap) + " is below the bound " +
                      std::to_string(need));
  }
  const Arity arity = g.arity();
  const auto g_inv = invert(g);
  std::vector<Ball> balls;
  std::vector<Address> level{Address()};
  for (int d = 1; d <= depth_cap; ++d) {
    std::vector<Address> next;
    for (const auto& v : level) {
      for (int c = 0; c < v.child_count(arity); ++c) next.push_back(v.child(c));
    }
    for (const auto& u : next) {
      balls.push_back(Ball::down(u));
      balls.push_back(Ball::up(u));
    }
    level = std::move(next);
  }
  auto t = zero_counts(table);
  if (table.tracked().empty()) return t;
  std::set<int> sizes;
  for (const auto& c : table.tracked()) sizes.insert(c.spike_count());
  const int reach = table.max_diameter();
  std::vector<Ball> chosen;
  // Each clopen set is visited once, through its maximal balls; any two of
  // them sit on its reduced thorn, hence within its diameter.
  std::function<void(std::size_t)> walk = [&](std::size_t start) {
    if (sizes.count(static_cast<int>(chosen.size()))) {
      const auto omega = ClopenSet::union_of(arity, chosen);
      const auto reduced_thorn = omega.is_proper() ? maximal_thorn(omega) : SubThorn(arity);
      if (!reduced_thorn.empty() &&
          reduced_thorn.spikes() == std::set<Ball>(chosen.begin(), chosen.end())) {
        const int p = table.index_of(canonical_code(to_abstract(reduced_thorn)));
        if (p != 0) {
          const int q = table.index_of(classify_clopen(act_on_clopen(g, omega)));
          if (q != p) ++t.counts[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
          const int back = table.index_of(classify_clopen(act_on_clopen(g_inv, omega)));
          if (back == 0) ++t.counts[0][static_cast<std::size_t>(p)];
        }
      }
    }
    if (chosen.size() == static_cast<std::size_t>(*sizes.rbegin())) return;
    for (std::size_t i = start; i < balls.size(); ++i) {
      const bool fits = std::all_of(chosen.begin(), chosen.end(), [&](const Ball& b) {
        return tree_distance(b.outside(), balls[i].outside()) <= reach &&
               relate(b, balls[i]) == BallRelation::Disjoint;
      });
      if (!fits) continue;
      chosen.push_back(balls[i]);
      walk(i + 1);
      chosen.pop_back();
    }
  };
  walk(0);
  return t;
}

std::string to_text(const TransitionCounts& t, const ClassTable& table) {
  std::ostringstream os;
  os << "from\\to";
  for (int q = 0; q < t.size(); ++q) os << '\t' << table.label(q);
  os << '\n';
  for (int p = 0; p < t.size(); ++p) {
    os << table.label(p);
    for (int q = 0; q < t.size(); ++q) {
      os << '\t';
      if (p == q) os << '-';
      else os << t.at(p, q);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace hier
