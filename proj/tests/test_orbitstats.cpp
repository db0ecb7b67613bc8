// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "hier/orbitstats.hpp"

using namespace hier;

namespace {

Spheromorphism g0() {
  return element_from_text("arity 2\n00 -> 0\n01 -> 20\n1 -> 1\n2 -> 21\n");
}

ClassTable ball_table(int n) { return ClassTable(Arity(n), 1 % (n - 1), {ball_class()}); }

bool transposed(const TransitionCounts& a, const TransitionCounts& b) {
  if (a.size() != b.size()) return false;
  for (int p = 0; p < a.size(); ++p) {
    for (int q = 0; q < a.size(); ++q) {
      if (a.at(p, q) != b.at(q, p)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("class tables") {
  const auto t = ball_table(2);
  CHECK(t.size() == 2);
  CHECK(t.index_of(ball_class()) == 1);
  CHECK(t.index_of(two_spike_class(2)) == 0);
  CHECK(t.label(0) == "P");
  CHECK(t.max_diameter() == 0);
  CHECK_THROWS_AS(ClassTable(Arity(2), 0, {ball_class(), ball_class()}), ValidationError);
  CHECK_THROWS_AS(ClassTable(Arity(3), 0, {ball_class()}), ValidationError);
  CHECK_THROWS_AS(ClassTable(Arity(2), 0, {two_spike_class(1)}), ValidationError);
  const auto parsed = class_table_from_text("arity 2\niota 0\nclasses 285329 282853295329\nmatrix\n1 0 0\n");
  CHECK(parsed.tracked().size() == 2);
  CHECK(parsed.max_diameter() == 1);
}

TEST_CASE("theta of the non-automorphism witness") {
  const auto g = g0();
  const auto t = ball_table(2);
  const auto th = theta(g, t);
  CHECK(th.at(1, 0) == 2);
  CHECK(th.at(0, 1) == 2);
  CHECK(th.at(0, 0) == 0);
  const int cap = std::max(4, bruteforce_min_depth(g, t));
  CHECK(theta_bruteforce(g, t, cap) == th);
  CHECK(theta_bruteforce(g, t, cap + 1) == th);
  CHECK_THROWS_AS(theta_bruteforce(g, t, 1), DomainError);
  const auto moved = moved_sets(g, t);
  CHECK(moved.size() == 4);
  const auto text = to_text(th, t);
  CHECK(text.find('-') != std::string::npos);
}

TEST_CASE("theta vanishes on automorphisms") {
  const auto t = ball_table(2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = random_finitary_automorphism(Arity(2), 3, seed);
    const auto th = theta(a, t);
    for (int p = 0; p < th.size(); ++p) {
      for (int q = 0; q < th.size(); ++q) CHECK(th.at(p, q) == 0);
    }
    CHECK(moved_sets(a, t).empty());
  }
}

TEST_CASE("theta of the inverse is the transpose") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 2 + static_cast<int>(seed % 2);
    const auto g = random_element(Arity(n), 6, seed);
    const auto t = ball_table(n);
    CHECK(transposed(theta(g, t), theta(invert(g), t)));
  }
}

TEST_CASE("theta against brute force on small elements") {
  const ClassTable two(Arity(2), 0, {two_spike_class(2)});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_element(Arity(2), 4, seed);
    for (const auto& t : {ball_table(2), two}) {
      const int cap = std::max(4, bruteforce_min_depth(g, t));
      CHECK(theta_bruteforce(g, t, cap) == theta(g, t));
    }
  }
}
