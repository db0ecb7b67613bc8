// SPDX-License-Identifier: Apache-2.0
#include "hier/clopen.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace hier {

namespace {

struct DeeperFirst {
  bool operator()(const Address& a, const Address& b) const {
    if (a.depth() != b.depth()) return a.depth() > b.depth();
    return a < b;
  }
};

// Down-ball cuts whose union is `b`.
void down_cuts(const Ball& b, Arity arity, std::vector<Address>& out) {
  if (b.is_down()) {
    out.push_back(b.cut);
    return;
  }
  // Up(u): every sibling of every vertex on the path from the root to u.
  const Address& u = b.cut;
  for (std::size_t k = 0; k < u.depth(); ++k) {
    const Address p = u.prefix(k);
    for (int c = 0; c < p.child_count(arity); ++c) {
      if (c != u.symbol(k)) out.push_back(p.child(c));
    }
  }
}

}  // namespace

ClopenSet::ClopenSet(Arity arity, std::vector<MarkedLeaf> leaves) : arity_(arity) {
  std::vector<Address> words;
  words.reserve(leaves.size());
  for (const auto& l : leaves) words.push_back(l.leaf);
  PrefixCode code(arity, words);  // validates
  std::sort(leaves.begin(), leaves.end());
  leaves_ = std::move(leaves);
  normalize();
}

ClopenSet::ClopenSet(Arity arity, std::vector<MarkedLeaf> leaves, Trusted)
    : arity_(arity), leaves_(std::move(leaves)) {
  std::sort(leaves_.begin(), leaves_.end());
  normalize();
}

void ClopenSet::normalize() {
  std::map<Address, bool> marks;
  std::set<Address, DeeperFirst> work;
  for (const auto& l : leaves_) {
    marks.emplace(l.leaf, l.inside);
    if (l.leaf.depth() >= 2) work.insert(l.leaf.parent());
  }
  while (!work.empty()) {
    const Address p = *work.begin();
    work.erase(work.begin());
    std::optional<bool> mark;
    bool uniform = true;
    for (int c = 0; c < arity_.n() && uniform; ++c) {
      auto it = marks.find(p.child(c));
      if (it == marks.end() || (mark && *mark != it->second)) uniform = false;
      else mark = it->second;
    }
    if (!uniform) continue;
    for (int c = 0; c < arity_.n(); ++c) marks.erase(p.child(c));
    marks.emplace(p, *mark);
    if (p.depth() >= 2) work.insert(p.parent());
  }
  leaves_.clear();
  for (auto& [leaf, inside] : marks) leaves_.push_back({leaf, inside});
}

ClopenSet ClopenSet::empty(Arity arity) {
  std::vector<MarkedLeaf> leaves;
  const auto root = PrefixCode::root(arity);
  for (const auto& l : root.leaves()) leaves.push_back({l, false});
  return ClopenSet(arity, std::move(leaves), Trusted{});
}

ClopenSet ClopenSet::full(Arity arity) {
  std::vector<MarkedLeaf> leaves;
  const auto root = PrefixCode::root(arity);
  for (const auto& l : root.leaves()) leaves.push_back({l, true});
  return ClopenSet(arity, std::move(leaves), Trusted{});
}

ClopenSet ClopenSet::union_of(Arity arity, std::span<const Ball> balls) {
  std::vector<Address> cuts;
  for (const auto& b : balls) {
    if (auto err = alphabet_violation(b.cut, arity)) throw ValidationError(*err);
    if (b.cut.is_root()) throw ValidationError("ball with empty cut");
    down_cuts(b, arity, cuts);
  }
  const auto code = PrefixCode::spanned(arity, cuts);
  std::set<Address> cut_set(cuts.begin(), cuts.end());
  std::vector<MarkedLeaf> leaves;
  for (const auto& leaf : code.leaves()) {
    bool inside = false;
    for (std::size_t k = 1; k <= leaf.depth() && !inside; ++k) {
      inside = cut_set.count(leaf.prefix(k)) > 0;
    }
    leaves.push_back({leaf, inside});
  }
  return ClopenSet(arity, std::move(leaves), Trusted{});
}

bool ClopenSet::is_empty() const noexcept {
  return std::none_of(leaves_.begin(), leaves_.end(), [](const auto& l) { return l.inside; });
}

bool ClopenSet::is_full() const noexcept {
  return std::all_of(leaves_.begin(), leaves_.end(), [](const auto& l) { return l.inside; });
}

bool ClopenSet::contains_end(const Address& word) const {
  for (const auto& l : leaves_) {
    if (l.leaf.is_prefix_of(word)) return l.inside;
  }
  throw DomainError("word \"" + word.word() + "\" is shorter than the carrier");
}

std::size_t ClopenSet::max_depth() const noexcept {
  std::size_t d = 0;
  for (const auto& l : leaves_) d = std::max(d, l.leaf.depth());
  return d;
}

std::vector<Ball> ClopenSet::marked_balls() const {
  std::vector<Ball> out;
  for (const auto& l : leaves_) {
    if (l.inside) out.push_back(Ball::down(l.leaf));
  }
  return out;
}

PrefixCode ClopenSet::carrier() const {
  std::vector<Address> words;
  for (const auto& l : leaves_) words.push_back(l.leaf);
  return PrefixCode(arity_, std::move(words));
}

std::vector<MarkedLeaf> ClopenSet::on_code(const PrefixCode& code) const {
  std::vector<MarkedLeaf> out;
  out.reserve(code.size());
  for (const auto& x : code.leaves()) out.push_back({x, contains_end(x)});
  return out;
}

ClopenSet ClopenSet::complement() const {
  auto flipped = leaves_;
  for (auto& l : flipped) l.inside = !l.inside;
  return ClopenSet(arity_, std::move(flipped), Trusted{});
}

ClopenSet complement(const ClopenSet& omega) { return omega.complement(); }

int upsilon(const ClopenSet& omega) {
  if (!omega.is_proper()) {
    throw DomainError("upsilon is defined only for proper nonempty clopen sets");
  }
  const auto marked = std::count_if(omega.leaves().begin(), omega.leaves().end(),
                                    [](const auto& l) { return l.inside; });
  return static_cast<int>(marked % omega.arity().modulus());
}

ClopenSet random_clopen(Arity arity, std::size_t budget, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Address> leaves = PrefixCode::root(arity).leaves();
  while (leaves.size() + arity.n() - 1 <= budget) {
    const std::size_t i = rng() % leaves.size();
    const Address v = leaves[i];
    leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(i));
    for (int c = 0; c < arity.n(); ++c) leaves.push_back(v.child(c));
    if (rng() % 4 == 0) break;
  }
  std::vector<MarkedLeaf> marked;
  std::size_t inside = 0;
  for (auto& l : leaves) {
    const bool in = rng() % 2 == 1;
    inside += in;
    marked.push_back({std::move(l), in});
  }
  if (inside == 0) marked[rng() % marked.size()].inside = true;
  if (inside == marked.size()) marked[rng() % marked.size()].inside = false;
  return ClopenSet(arity, std::move(marked));
}

std::string to_text(const ClopenSet& omega) {
  std::string out = "arity " + std::to_string(omega.arity().n()) + "\n";
  for (const auto& l : omega.leaves()) out += l.leaf.word() + (l.inside ? " 1\n" : " 0\n");
  return out;
}

ClopenSet clopen_from_text(std::string_view text) {
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
    std::string a, b, extra;
    if (!(ls >> a)) continue;
    if (!(ls >> b) || (ls >> extra)) throw ValidationError(where() + "expected two fields");
    if (a == "arity") {
      try {
        arity.emplace(std::stoi(b));
      } catch (const ValidationError& e) {
        throw ValidationError(where() + e.what());
      } catch (const std::exception&) {
        throw ValidationError(where() + "bad arity");
      }
      continue;
    }
    if (a != "ball" && b != "0" && b != "1") throw ValidationError(where() + "mark must be 0 or 1");
    rows.emplace_back(a, b);
  }
  if (!arity) throw ValidationError("missing \"arity n\" header");
  const bool by_balls = !rows.empty() && rows.front().first == "ball";
  std::vector<Ball> balls;
  std::vector<MarkedLeaf> leaves;
  for (const auto& [a, b] : rows) {
    if ((a == "ball") != by_balls) throw ValidationError("cannot mix ball lines and leaf lines");
    if (by_balls) balls.push_back(Ball::parse(b, *arity));
    else leaves.push_back({Address::parse(a, *arity), b == "1"});
  }
  if (by_balls) return ClopenSet::union_of(*arity, balls);
  return ClopenSet(*arity, std::move(leaves));
}

}  // namespace hier
