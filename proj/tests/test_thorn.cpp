// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "doctest.h"
#include "hier/spheromorphism.hpp"
#include "hier/thorn.hpp"
#include "oracles.hpp"

using namespace hier;

namespace {

AbstractThorn random_thorn(std::mt19937_64& rng, int vertices, int max_spikes) {
  AbstractThorn t;
  t.vertex_count = vertices;
  for (int v = 1; v < vertices; ++v) {
    t.edges.emplace_back(static_cast<int>(rng() % static_cast<std::uint64_t>(v)), v);
  }
  for (int v = 0; v < vertices; ++v) {
    const int k = static_cast<int>(rng() % static_cast<std::uint64_t>(max_spikes + 1));
    for (int i = 0; i < k; ++i) t.spike_owner.push_back(v);
  }
  return t;
}

AbstractThorn relabel(const AbstractThorn& t, std::mt19937_64& rng) {
  std::vector<int> p(static_cast<std::size_t>(t.vertex_count));
  for (int i = 0; i < t.vertex_count; ++i) p[static_cast<std::size_t>(i)] = i;
  std::shuffle(p.begin(), p.end(), rng);
  AbstractThorn out;
  out.vertex_count = t.vertex_count;
  for (auto [a, b] : t.edges) {
    const int x = p[static_cast<std::size_t>(a)];
    const int y = p[static_cast<std::size_t>(b)];
    out.edges.emplace_back(rng() % 2 ? x : y, rng() % 2 ? y : x);
    if (out.edges.back().first == out.edges.back().second) out.edges.back() = {x, y};
  }
  for (int s : t.spike_owner) out.spike_owner.push_back(p[static_cast<std::size_t>(s)]);
  std::shuffle(out.edges.begin(), out.edges.end(), rng);
  return out;
}

}  // namespace

TEST_CASE("fixed class tokens") {
  CHECK(ThornCode().is_empty());
  CHECK(ThornCode().token() == "00");
  CHECK(ball_class().token() == "285329");
  CHECK(two_spike_class(2).token() == "282853295329");
  CHECK(ball_class().vertex_count() == 1);
  CHECK(ball_class().spike_count() == 1);
  CHECK(ThornCode::from_token("285329") == ball_class());
  CHECK_THROWS_AS(ThornCode::from_token("28"), ValidationError);
  CHECK_THROWS_AS(ThornCode::from_token("zz"), ValidationError);
}

TEST_CASE("canonical code is an isomorphism invariant") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int v = 1 + static_cast<int>(rng() % 6);
    const auto t = random_thorn(rng, v, 2);
    const auto u = relabel(t, rng);
    CHECK(canonical_code(t) == canonical_code(u));
    const auto rt = canonical_code(t).thorn();
    CHECK(oracle::isomorphic(rt, t));
    CHECK(ThornCode::from_token(canonical_code(t).token()) == canonical_code(t));
  }
}

TEST_CASE("canonical codes separate non-isomorphic thorns") {
  std::mt19937_64 rng(12);
  std::vector<AbstractThorn> pool;
  for (int i = 0; i < 60; ++i) pool.push_back(random_thorn(rng, 1 + static_cast<int>(rng() % 5), 2));
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      CHECK((canonical_code(pool[i]) == canonical_code(pool[j])) ==
            oracle::isomorphic(pool[i], pool[j]));
    }
  }
}

TEST_CASE("reduced class predicate") {
  const Arity two(2);
  CHECK(is_reduced_class(ball_class(), two));
  CHECK(is_reduced_class(two_spike_class(2), two));
  CHECK_FALSE(is_reduced_class(two_spike_class(1), two));
  CHECK(is_reduced_class(two_spike_class(1), Arity(3)));
  CHECK_FALSE(is_reduced_class(ThornCode(), two));
  const auto classes = reduced_classes(two, 3);
  CHECK(classes.size() == 4);
  for (const auto& c : classes) CHECK(is_reduced_class(c, two));
}

TEST_CASE("sub-thorns from balls") {
  const Arity two(2);
  const std::vector<Ball> one{Ball::down(Address("1"))};
  const auto s1 = subthorn_from_balls(two, one);
  CHECK(s1.vertices() == std::set<Address>{Address("")});
  CHECK(s1.spikes().size() == 1);

  const std::vector<Ball> pair{Ball::down(Address("0")), Ball::down(Address("20"))};
  const auto s2 = subthorn_from_balls(two, pair);
  CHECK(s2.vertices() == std::set<Address>{Address(""), Address("2")});
  CHECK(canonical_code(to_abstract(s2)) == two_spike_class(2));

  const std::vector<Ball> star{Ball::down(Address("0")), Ball::down(Address("1")),
                               Ball::down(Address("2"))};
  const auto s3 = subthorn_from_balls(two, star);
  CHECK(s3.is_perfect());
  CHECK(reduce_subthorn(s3).empty());
  CHECK(clopen_of_subthorn(s3).is_full());

  const std::vector<Ball> bad{Ball::down(Address("0")), Ball::down(Address("01"))};
  CHECK_THROWS_AS(subthorn_from_balls(two, bad), DomainError);
}

TEST_CASE("reduction of a perfect branch") {
  const Arity two(2);
  const std::vector<Ball> balls{Ball::down(Address("00")), Ball::down(Address("01"))};
  const auto r = reduce_subthorn(subthorn_from_balls(two, balls));
  CHECK(r.spikes() == std::set<Ball>{Ball::down(Address("0"))});
  CHECK(reduce_subthorn(r) == r);
}

TEST_CASE("reduction preserves the clopen set") {
  for (int n = 2; n <= 4; ++n) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const auto omega = random_clopen(Arity(n), 10, seed);
      const auto balls = omega.marked_balls();
      const auto s = subthorn_from_balls(Arity(n), balls);
      const auto r = reduce_subthorn(s);
      CHECK(reduce_subthorn(r) == r);
      CHECK(clopen_of_subthorn(r) == omega);
      CHECK(maximal_thorn(omega) == r);
      for (const auto& v : r.vertices()) CHECK(r.spikes_at(v) < n);
    }
  }
}

TEST_CASE("classification") {
  const Arity two(2);
  for (const auto& b : {Ball::down(Address("0")), Ball::up(Address("0")), Ball::up(Address("100"))}) {
    const std::vector<Ball> one{b};
    CHECK(classify_clopen(ClopenSet::union_of(two, one)) == ball_class());
  }
  const std::vector<Ball> pair{Ball::down(Address("0")), Ball::down(Address("20"))};
  CHECK(classify_clopen(ClopenSet::union_of(two, pair)) == two_spike_class(2));
  CHECK_THROWS_AS(classify_clopen(ClopenSet::empty(two)), DomainError);

  for (int n = 2; n <= 4; ++n) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const auto omega = random_clopen(Arity(n), 12, seed);
      const auto c = classify_clopen(omega);
      CHECK(c.spike_count() % (n - 1) == upsilon(omega));
      const auto h = random_finitary_automorphism(Arity(n), 3, seed + 100);
      CHECK(classify_clopen(act_on_clopen(h, omega)) == c);
    }
  }
}

TEST_CASE("embedding enumeration") {
  const auto region = subthorn_from_text("arity 2\nvertices .\nspikes :0 :1 :2\n");
  const auto found = enumerate_embeddings(ball_class(), region, 1);
  CHECK(found.size() == 6);
  CHECK(std::is_sorted(found.begin(), found.end()));
  CHECK(enumerate_embeddings(ball_class(), SubThorn(Arity(2)), 2).empty());
  CHECK_THROWS_AS(enumerate_embeddings(two_spike_class(3), region, 1), DomainError);
  std::size_t prev = 0;
  for (int radius = 2; radius <= 4; ++radius) {
    const auto k = enumerate_embeddings(two_spike_class(2), region, radius).size();
    CHECK(k >= prev);
    prev = k;
  }
}

TEST_CASE("sub-thorn text round trip") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = maximal_thorn(random_clopen(Arity(3), 10, seed));
    CHECK(subthorn_from_text(to_text(s)) == s);
    CHECK(to_dot(s).find("graph") != std::string::npos);
  }
  CHECK_THROWS_AS(subthorn_from_text("arity 2\nvertices . 00\nspikes\n"), ValidationError);
}
