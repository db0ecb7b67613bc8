// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "hier/bithorn.hpp"
#include "oracles.hpp"

using namespace hier;

namespace {

Spheromorphism h0() {
  return element_from_text(
      "arity 2\n00 -> 000\n01 -> 001\n10 -> 2\n110 -> 10\n111 -> 11\n2 -> 01\n");
}

Spheromorphism g0() {
  return element_from_text("arity 2\n00 -> 0\n01 -> 20\n1 -> 1\n2 -> 21\n");
}

}  // namespace

TEST_CASE("bi-thorn of the witnesses") {
  const auto e = bithorn_of(Spheromorphism::identity(Arity(2)));
  CHECK(reduce_bithorn(e.bithorn).empty());
  const auto h = bithorn_of(h0());
  CHECK_FALSE(h.bithorn.empty());
  CHECK(reduce_bithorn(h.bithorn).empty());
  CHECK(is_automorphism(h0()));
  CHECK(coset_code(h0()).is_empty());
  CHECK(automorphism_parity(h0()) == 1);

  const auto g = bithorn_of(g0());
  CHECK_FALSE(reduce_bithorn(g.bithorn).empty());
  CHECK_FALSE(is_automorphism(g0()));
  CHECK(g.bithorn.r.spike_count() == g.bithorn.q.spike_count());
  CHECK(g.r_sub.spikes().size() == static_cast<std::size_t>(g.bithorn.r.spike_count()));
}

TEST_CASE("bi-thorn structure") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = random_element(Arity(2 + static_cast<int>(seed % 3)), 9, seed);
    const auto e = bithorn_of(g);
    const auto& b = e.bithorn;
    CHECK(b.r.spike_count() == b.q.spike_count());
    auto sorted = b.theta;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == static_cast<int>(i));
    if (!b.empty()) {
      CHECK(e.r_sub.is_perfect());
      CHECK(e.q_sub.is_perfect());
    }
    const auto r = reduce_bithorn(b);
    CHECK(r.r.spike_count() == r.q.spike_count());
    CHECK(canonical_coset_code(r) == coset_code(g));
  }
}

TEST_CASE("coset code is bi-invariant") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Arity n(2 + static_cast<int>(seed % 2));
    const auto g = random_element(n, 8, seed);
    const auto a = random_finitary_automorphism(n, 2, seed + 7);
    const auto b = random_finitary_automorphism(n, 2, seed + 9);
    CHECK(coset_code(compose(a, compose(g, b))) == coset_code(g));
    CHECK(is_automorphism(g) == coset_code(g).is_empty());
    CHECK(is_automorphism(g) == oracle::extends_to_automorphism(g));
  }
}

TEST_CASE("reduction order does not matter") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto b = bithorn_of(random_element(Arity(2), 10, seed)).bithorn;
    const auto ref = canonical_coset_code(reduce_bithorn(b));
    for (std::uint64_t k = 0; k < 4; ++k) {
      CHECK(canonical_coset_code(reduce_bithorn(b, seed * 10 + k)) == ref);
    }
  }
}

TEST_CASE("bi-thorn output") {
  const auto b = bithorn_of(g0()).bithorn;
  CHECK(describe(b).find("theta") != std::string::npos);
  CHECK(to_dot(b).find("graph") != std::string::npos);
}
