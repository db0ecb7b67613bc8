// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "doctest.h"
#include "hier/address.hpp"
#include "oracles.hpp"

using namespace hier;

namespace {

Address A(const char* w) { return Address(w); }

// Membership table of a ball on all words of the given length.
std::vector<bool> table(const Ball& b, int n, std::size_t len) {
  std::vector<bool> out;
  for (const auto& w : oracle::words_of_length(n, len)) out.push_back(b.contains_end(Address(w)));
  return out;
}

}  // namespace

TEST_CASE("arity bounds") {
  CHECK_THROWS_AS(Arity(1), ValidationError);
  CHECK_THROWS_AS(Arity(10), ValidationError);
  CHECK(Arity(3).valence() == 4);
  CHECK(Arity(3).modulus() == 2);
}

TEST_CASE("address alphabet") {
  const Arity two(2);
  CHECK(Address::parse("201", two).word() == "201");
  CHECK_THROWS_AS(Address::parse("3", two), ValidationError);
  CHECK_THROWS_AS(Address::parse("02", two), ValidationError);
  CHECK_THROWS_AS(Address::parse("0x", two), ValidationError);
  CHECK(alphabet_violation(A("12"), two).has_value());
  CHECK_FALSE(alphabet_violation(A("21"), two).has_value());
}

TEST_CASE("neighbours and distance") {
  const Arity two(2);
  CHECK(A("").neighbours(two).size() == 3);
  CHECK(A("01").neighbours(two).size() == 3);
  CHECK(A("01").neighbours(two).front() == A("0"));
  CHECK(tree_distance(A("01"), A("1")) == 3);
  CHECK(tree_distance(A("01"), A("01")) == 0);
  CHECK(common_prefix(A("0110"), A("0101")) == A("01"));
}

TEST_CASE("ball geometry") {
  const auto d = Ball::down(A("01"));
  CHECK(d.apex() == A("01"));
  CHECK(d.outside() == A("0"));
  const auto u = Ball::up(A("01"));
  CHECK(u.apex() == A("0"));
  CHECK(u.outside() == A("01"));
  CHECK(Ball::beyond(A("0"), A("01")) == d);
  CHECK(Ball::beyond(A("01"), A("0")) == u);
  CHECK(Ball::parse("~01", Arity(2)) == u);
  CHECK(u.text() == "~01");
  CHECK(d.split(Arity(2)).size() == 2);
  CHECK(u.split(Arity(2)).size() == 2);
}

TEST_CASE("ball relations match membership tables") {
  const int n = 2;
  const std::size_t len = 4;
  std::vector<Ball> balls;
  for (std::size_t d = 1; d <= 3; ++d) {
    for (const auto& w : oracle::words_of_length(n, d)) {
      balls.push_back(Ball::down(Address(w)));
      balls.push_back(Ball::up(Address(w)));
    }
  }
  for (const auto& a : balls) {
    const auto ta = table(a, n, len);
    for (const auto& b : balls) {
      const auto tb = table(b, n, len);
      bool sub = true, sup = true, dis = true, cov = true;
      for (std::size_t i = 0; i < ta.size(); ++i) {
        sub = sub && (!ta[i] || tb[i]);
        sup = sup && (!tb[i] || ta[i]);
        dis = dis && !(ta[i] && tb[i]);
        cov = cov && (ta[i] || tb[i]);
      }
      const auto r = relate(a, b);
      if (sub && sup) {
        CHECK(r == BallRelation::Equal);
      } else if (sup) {
        CHECK(r == BallRelation::Contains);
      } else if (sub) {
        CHECK(r == BallRelation::ContainedIn);
      } else if (dis) {
        CHECK(r == BallRelation::Disjoint);
      } else {
        CHECK(cov);
        CHECK(r == BallRelation::Covering);
      }
    }
  }
}

TEST_CASE("prefix codes") {
  const Arity two(2);
  CHECK(PrefixCode::root(two).size() == 3);
  CHECK(validate_prefix_code(std::vector{A("0"), A("1"), A("2")}, two));
  CHECK_FALSE(validate_prefix_code(std::vector{A("0"), A("1")}, two));
  CHECK_FALSE(validate_prefix_code(std::vector{A("0"), A("00"), A("01"), A("1"), A("2")}, two));
  CHECK_THROWS_AS(PrefixCode(two, {A("0"), A("1")}), ValidationError);
  const PrefixCode c(two, {A("2"), A("00"), A("01"), A("1")});
  CHECK(c.leaves().front() == A("00"));
  CHECK(c.max_depth() == 2);
  CHECK(c.leaf_above(A("0110")) == A("01"));
  CHECK_FALSE(c.leaf_above(A("0")).has_value());
  CHECK(c.internal_vertices().size() == 2);
}

TEST_CASE("refinement is the coarsest common refinement") {
  const Arity two(2);
  const PrefixCode a(two, {A("00"), A("01"), A("1"), A("2")});
  const PrefixCode b(two, {A("0"), A("10"), A("11"), A("2")});
  const auto r = refine(a, b);
  CHECK(r.leaves() == std::vector{A("00"), A("01"), A("10"), A("11"), A("2")});

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Address> words;
    for (int k = 0; k < 3; ++k) {
      std::string w(1, static_cast<char>('0' + rng() % 3));
      for (std::size_t d = rng() % 3; d > 0; --d) w += static_cast<char>('0' + rng() % 2);
      words.emplace_back(w);
    }
    const auto x = PrefixCode::spanned(two, std::span(words).first(1));
    const auto y = PrefixCode::spanned(two, std::span(words).subspan(1));
    const auto r2 = refine(x, y);
    for (const auto& l : x.leaves()) {
      for (const auto& m : r2.leaves()) {
        if (m.is_prefix_of(l)) CHECK(m == l);
      }
    }
    for (const auto& m : r2.leaves()) {
      CHECK(x.leaf_above(m).has_value());
      CHECK(y.leaf_above(m).has_value());
      // Coarsest: the parent is not below a leaf of both codes.
      if (m.depth() > 1) {
        CHECK_FALSE((x.leaf_above(m.parent()) && y.leaf_above(m.parent())));
      }
    }
  }
}
