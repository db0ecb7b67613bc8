// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "hier/bithorn.hpp"
#include "hier/spheromorphism.hpp"
#include "hier/thorn.hpp"
#include "oracles.hpp"

using namespace hier;

namespace {

Spheromorphism g0() {
  return element_from_text("arity 2\n00 -> 0\n01 -> 20\n1 -> 1\n2 -> 21\n");
}

std::size_t oracle_depth(const Spheromorphism& a, const Spheromorphism& b) {
  return std::max(a.max_depth(), b.max_depth()) + 3;
}

}  // namespace

TEST_CASE("construction validates the table") {
  const Arity two(2);
  CHECK_THROWS_AS(Spheromorphism(two, {{Address("0"), Address("0")}, {Address("1"), Address("1")}}),
                  ValidationError);
  CHECK_THROWS_AS(element_from_text("arity 2\n0 -> 0\n1 -> 2\n2 -> 2\n"), ValidationError);
  CHECK_THROWS_AS(element_from_text("arity 2\n0 -> 0\n1 -> 1\n"), ValidationError);
  const auto g = g0();
  CHECK(g.pieces().size() == 4);
  CHECK(g.pieces()[1].from == Address("01"));
  CHECK(g.image(Address("0110")) == Address("2010"));
  CHECK(g.preimage(Address("2010")) == Address("0110"));
  CHECK_THROWS_AS(g.image(Address("0")), DomainError);
}

TEST_CASE("identity and translation") {
  const auto e = Spheromorphism::identity(Arity(3));
  CHECK(e.pieces().size() == 4);
  CHECK(equals(e, compose(e, e)));
  const auto t = hyperbolic_translation(Arity(2));
  CHECK(is_automorphism(t));
  CHECK(automorphism_parity(t) == 1);
  CHECK(equals(compose(t, invert(t)), Spheromorphism::identity(Arity(2))));
}

TEST_CASE("group law against word maps") {
  for (int n = 2; n <= 3; ++n) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const auto g = random_element(Arity(n), 8, seed);
      const auto h = random_element(Arity(n), 8, seed + 1000);
      const auto gh = compose(g, h);
      const auto d = oracle_depth(g, h);
      CHECK(oracle::agree(n, oracle::as_map(gh),
                          oracle::compose_maps(oracle::as_map(g), oracle::as_map(h)), d, 4 * d));
      const auto gi = invert(g);
      CHECK(oracle::agree(n, oracle::as_map(gi),
                          [&](const oracle::Word& w) { return oracle::apply_inverse_word(g, w); },
                          d, 4 * d));
      CHECK(equals(invert(gi), g));
      CHECK(equals(compose(g, gi), Spheromorphism::identity(Arity(n))));
      CHECK(equals(reduced(gh), gh));
    }
  }
}

TEST_CASE("equality is representation independent") {
  const Arity two(2);
  const auto e = Spheromorphism::identity(two);
  const Spheromorphism split(two, {{Address("00"), Address("00")},
                                   {Address("01"), Address("01")},
                                   {Address("1"), Address("1")},
                                   {Address("2"), Address("2")}});
  CHECK(equals(e, split));
  CHECK(reduced(split).pieces().size() == 3);
  CHECK_FALSE(equals(e, g0()));
  CHECK_THROWS_AS(equals(e, Spheromorphism::identity(Arity(3))), ArityMismatch);
}

TEST_CASE("action on clopen sets") {
  const auto g = g0();
  const std::vector<Ball> b{Ball::down(Address("0"))};
  const auto omega = ClopenSet::union_of(Arity(2), b);
  const auto img = act_on_clopen(g, omega);
  for (const auto& w : oracle::words_of_length(2, 4)) {
    const auto pre = oracle::apply_inverse_word(g, w);
    REQUIRE(pre.has_value());
    CHECK(img.contains_end(Address(w)) == omega.contains_end(Address(*pre)));
  }
  CHECK(classify_clopen(img) == two_spike_class(2));
}

TEST_CASE("truncated action") {
  const auto g = g0();
  const auto a3 = truncated_action(g, 3);
  const auto a4 = truncated_action(g, 4);
  CHECK(a3.size() == 12);
  for (const auto& [w, img] : a4) {
    const auto it = std::find_if(a3.begin(), a3.end(),
                                 [&](const auto& p) { return p.first == w.prefix(3); });
    REQUIRE(it != a3.end());
    CHECK(it->second.is_prefix_of(img));
  }
  const auto rot = finitary_automorphism(Arity(2), {{Address(""), {1, 2, 0}}});
  for (const auto& [w, img] : truncated_action(rot, 1)) {
    CHECK(img.symbol(0) == (w.symbol(0) + 1) % 3);
  }
}

TEST_CASE("finitary automorphisms") {
  const auto rot = finitary_automorphism(Arity(2), {{Address(""), {1, 2, 0}}});
  CHECK(is_automorphism(rot));
  CHECK(coset_code(rot).is_empty());
  CHECK(equals(compose(rot, compose(rot, rot)), Spheromorphism::identity(Arity(2))));
  CHECK(equals(finitary_automorphism(Arity(3), {}), Spheromorphism::identity(Arity(3))));
  CHECK_THROWS_AS(finitary_automorphism(Arity(2), {{Address(""), {0, 0, 1}}}), ValidationError);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto a = random_finitary_automorphism(Arity(3), 3, seed);
    const auto b = random_finitary_automorphism(Arity(3), 3, seed + 50);
    CHECK(is_automorphism(compose(a, b)));
    CHECK(automorphism_parity(a) == 0);
    CHECK(oracle::extends_to_automorphism(a));
  }
}

TEST_CASE("random elements") {
  const auto a = random_element(Arity(2), 9, 42);
  CHECK(equals(a, random_element(Arity(2), 9, 42)));
  CHECK(to_text(a) == to_text(random_element(Arity(2), 9, 42)));
  int aut = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto g = random_element(Arity(2), 9, seed);
    CHECK(g.domain().size() <= 9);
    aut += is_automorphism(g) ? 1 : 0;
  }
  CHECK(aut > 0);
  CHECK(aut < 1000);
}

TEST_CASE("element text round trip") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = random_element(Arity(3), 10, seed);
    const auto back = element_from_text(to_text(g));
    CHECK(back.pieces() == g.pieces());
  }
  CHECK_THROWS_AS(element_from_text("arity 2\n0 => 1\n"), ValidationError);
}
