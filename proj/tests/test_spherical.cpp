// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include "doctest.h"
#include "hier/bithorn.hpp"
#include "hier/spherical.hpp"

using namespace hier;

namespace {

Spheromorphism g0() {
  return element_from_text("arity 2\n00 -> 0\n01 -> 20\n1 -> 1\n2 -> 21\n");
}

SphericalSpec ball_spec(double s) {
  return {ClassTable(Arity(2), 0, {ball_class()}), {{1.0, s}, {s, 1.0}}};
}

TensorSpec ball_tensor() {
  TensorSpec t;
  t.arity = Arity(2);
  t.iota = 0;
  t.cap = 1;
  t.limit = {1.0, 0.0};
  t.classes = {{ball_class(), {0.6, 0.8}}};
  return t;
}

}  // namespace

TEST_CASE("symmetric eigenvalues") {
  const auto ev = symmetric_eigenvalues({{2, 1, 0}, {1, 2, 0}, {0, 0, 5}});
  REQUIRE(ev.size() == 3);
  CHECK(ev[0] == doctest::Approx(1.0));
  CHECK(ev[1] == doctest::Approx(3.0));
  CHECK(ev[2] == doctest::Approx(5.0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m(5, std::vector<double>(5));
    double trace = 0;
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j <= i; ++j) m[i][j] = m[j][i] = u(rng);
      trace += m[i][i];
    }
    double sum = 0;
    for (double e : symmetric_eigenvalues(m)) sum += e;
    CHECK(sum == doctest::Approx(trace).epsilon(1e-10));
  }
}

TEST_CASE("spec validation") {
  CHECK(validate_spec(ball_spec(0.5)).valid);
  CHECK_FALSE(validate_spec(ball_spec(1.5)).valid);
  auto asym = ball_spec(0.5);
  asym.s[0][1] = 0.4;
  CHECK_FALSE(validate_spec(asym).valid);
  auto diag = ball_spec(0.5);
  diag.s[1][1] = 0.9;
  CHECK_FALSE(validate_spec(diag).valid);
  CHECK_THROWS_AS(phi_nessonov(g0(), ball_spec(1.5)), ValidationError);
}

TEST_CASE("nessonov values") {
  const auto spec = ball_spec(0.5);
  CHECK(phi_nessonov(Spheromorphism::identity(Arity(2)), spec) == 1.0);
  CHECK(phi_nessonov(g0(), spec) == doctest::Approx(0.0625));
  const auto a = finitary_automorphism(Arity(2), {{Address(""), {2, 0, 1}}});
  CHECK(phi_nessonov(compose(a, g0()), spec) == phi_nessonov(g0(), spec));
}

TEST_CASE("tensor evaluation agrees with its Gram spec") {
  const auto t = ball_tensor();
  const auto v = phi_tensor(g0(), t);
  CHECK(v.value == doctest::Approx(0.1296));
  CHECK(v.cap_lumped);
  CHECK(phi_nessonov(g0(), gram_spec(t)) == doctest::Approx(v.value));
  CHECK(phi_tensor(Spheromorphism::identity(Arity(2)), t).value == 1.0);
  auto bad = t;
  bad.classes[0].second = {1.0, 1.0};
  CHECK_THROWS_AS(validate_tensor_spec(bad), ValidationError);
}

TEST_CASE("l2 and products") {
  CHECK(phi_l2(g0()) == 0.0);
  CHECK(phi_l2(hyperbolic_translation(Arity(2))) == 1.0);
  const auto p = SphericalFunction::product(SphericalFunction::l2(),
                                            SphericalFunction::nessonov(ball_spec(0.5)));
  CHECK(p(Spheromorphism::identity(Arity(2))) == 1.0);
  CHECK(p(g0()) == 0.0);
}

TEST_CASE("gram certificates") {
  std::vector<Spheromorphism> elems{Spheromorphism::identity(Arity(2)), g0(),
                                    hyperbolic_translation(Arity(2))};
  for (std::uint64_t seed = 0; seed < 3; ++seed) elems.push_back(random_element(Arity(2), 6, seed));
  const auto r = gram_psd_check(elems, SphericalFunction::nessonov(ball_spec(0.5)));
  CHECK(r.pass);
  CHECK(r.matrix.size() == elems.size());
  CHECK(to_text(r).find("verdict=PASS") != std::string::npos);
  const auto fake = SphericalFunction("neg", [](const Spheromorphism& g) {
    return is_automorphism(g) ? 1.0 : 2.0;
  });
  const std::vector<Spheromorphism> two{Spheromorphism::identity(Arity(2)), g0()};
  CHECK_FALSE(gram_psd_check(two, fake).pass);
}

TEST_CASE("spec text round trips") {
  const auto spec = ball_spec(0.25);
  const auto back = spherical_spec_from_text(to_text(spec));
  CHECK(back.s == spec.s);
  CHECK(back.table.tracked() == spec.table.tracked());
  const auto t = tensor_spec_from_text(to_text(ball_tensor()));
  CHECK(t.limit == ball_tensor().limit);
  CHECK(t.classes.size() == 1);
  CHECK_FALSE(
      validate_spec(spherical_spec_from_text("arity 2\niota 0\nclasses 285329\nmatrix\n1 0\n"))
          .valid);
  CHECK_THROWS_AS(spherical_spec_from_text("arity 2\nclasses 285329\nmatrix\n1\n"),
                  ValidationError);
}
