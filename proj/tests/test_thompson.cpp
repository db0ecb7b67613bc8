// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "hier/bithorn.hpp"
#include "oracles.hpp"

using namespace hier;

TEST_CASE("thompson generators") {
  const auto gens = thompson_generators();
  REQUIRE(gens.size() == 4);
  const auto e = Spheromorphism::identity(Arity(2));
  for (const auto& g : gens) {
    CHECK_FALSE(equals(g.element, e));
    CHECK(is_automorphism(g.element) == g.automorphism);
    CHECK(oracle::extends_to_automorphism(g.element) == g.automorphism);
    CHECK(equals(compose(g.element, invert(g.element)), e));
    if (g.order) {
      auto power = g.element;
      for (int k = 1; k < *g.order; ++k) {
        CHECK_FALSE(equals(power, e));
        power = compose(g.element, power);
      }
      CHECK(equals(power, e));
    }
  }
  CHECK(gens[0].name == "r");
  CHECK(gens[0].order == 3);
}
