#include <map>

#include "doctest.h"
#include "testutil.hpp"
#include "tourney/generators.hpp"
#include "tourney/suborbits.hpp"

using namespace tourney;

TEST_CASE("sample_automorphism on C3 draws both rotations evenly") {
  BruteAsymmetryOracle o1;
  OracleStack stack(o1);
  RngStream rng(404);
  std::map<Perm, int> freq;
  const int draws = 200;
  for (int i = 0; i < draws; ++i) {
    Perm phi = sample_automorphism(c3(), stack, rng);
    CHECK(is_automorphism(c3(), phi));
    CHECK_FALSE(phi.is_identity());
    ++freq[phi];
  }
  REQUIRE(freq.size() == 2);
  for (const auto& [p, count] : freq) {
    CHECK(count > draws * 0.35);
    CHECK(count < draws * 0.65);
  }
}

TEST_CASE("sample_automorphism rejects asymmetric input") {
  BruteAsymmetryOracle o1;
  OracleStack stack(o1);
  RngStream rng(405);
  CHECK_THROWS_AS(sample_automorphism(transitive_tournament(4), stack, rng), Error);
  try {
    sample_automorphism(transitive_tournament(4), stack, rng);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_symmetric);
  }
}

TEST_CASE("sample_automorphism always verifies on the lex product") {
  BruteAsymmetryOracle o1;
  OracleStack stack(o1);
  RngStream rng(406);
  Tournament prod = lex_product(c3(), c3());
  for (int i = 0; i < 15; ++i) {
    Perm phi = sample_automorphism(prod, stack, rng);
    CHECK(is_automorphism(prod, phi));
    CHECK_FALSE(phi.is_identity());
  }
}

TEST_CASE("pair sampler emits same-orbit pairs, near uniform on C3") {
  BruteAsymmetryOracle o1;
  OracleStack stack(o1);
  RngStream rng(407);
  std::map<std::pair<int, int>, int> freq;
  const int draws = 600;
  for (int i = 0; i < draws; ++i) {
    PairDraw d = sample_orbit_pair(c3(), stack, rng);
    CHECK(d.v != d.w);
    CHECK(d.phi(d.v) == d.w);
    CHECK(is_automorphism(c3(), d.phi));
    ++freq[{d.v, d.w}];
  }
  CHECK(freq.size() == 6);
  for (const auto& [pair, count] : freq) {
    double f = double(count) / draws;
    CHECK(f > 1.0 / 6 - 0.05);
    CHECK(f < 1.0 / 6 + 0.05);
  }
}

TEST_CASE("pair sampler stays within brute-force orbits of the pair action") {
  BruteAsymmetryOracle o1;
  OracleStack stack(o1);
  RngStream rng(408);
  Tournament prod = lex_product(c3(), c3());
  PermGroup aut = brute_aut(prod);
  for (int i = 0; i < 10; ++i) {
    PairDraw d = sample_orbit_pair(prod, stack, rng);
    // some group element maps v to w, by construction of the draw
    bool same_orbit = false;
    for (const Perm& e : aut.elements())
      if (e(d.v) == d.w) same_orbit = true;
    CHECK(same_orbit);
  }
}

TEST_CASE("invariant_suborbits: asymmetric convention") {
  BruteAsymmetryOracle o1;
  OracleStack stack(o1);
  RngStream rng(409);
  SuborbitOptions opts;
  opts.epsilon_override = 0.05;
  SuborbitResult r = invariant_suborbits(transitive_tournament(5), stack, opts, rng);
  CHECK(r.pi.is_discrete());
  REQUIRE(r.certificates.size() == 1);
  CHECK(r.certificates.front().is_identity());
}

TEST_CASE("invariant_suborbits on C3 finds the whole orbit with certificates") {
  BruteAsymmetryOracle o1;
  OracleStack stack(o1);
  RngStream rng(410);
  SuborbitOptions opts;
  opts.epsilon_override = 0.05;
  SuborbitResult r = invariant_suborbits(c3(), stack, opts, rng);
  CHECK(r.pi.is_trivial());
  // certificates generate the full rotation group
  CHECK(testutil::closure_order(3, r.certificates) == 3);
  // every ordered pair carries a verified certificate
  for (int v = 0; v < 3; ++v)
    for (int w = 0; w < 3; ++w) {
      if (v == w) continue;
      const Perm& c = r.certificate_for(v, w);
      CHECK(c(v) == w);
      CHECK(is_automorphism(c3(), c));
    }
}

TEST_CASE("invariant_suborbits on the lex product refines orbits invariantly") {
  BruteAsymmetryOracle o1;
  OracleStack stack(o1);
  RngStream rng(411);
  SuborbitOptions opts;
  opts.epsilon_override = 0.3;  // lighter budget; the acceptance suite runs 0.05
  Tournament prod = lex_product(c3(), c3());
  SuborbitResult r = invariant_suborbits(prod, stack, opts, rng);

  PermGroup aut = brute_aut(prod);
  VertexPartition orbit_partition = orbits(aut);
  std::vector<int> orbit_of = orbit_partition.part_of(9);

  CHECK_FALSE(r.pi.is_discrete());
  for (const auto& part : r.pi.parts) {
    // refinement: each class sits inside one orbit
    for (int v : part) CHECK(orbit_of[v] == orbit_of[part.front()]);
  }
  // invariance: group elements permute the classes
  std::set<std::vector<int>> class_set(r.pi.parts.begin(), r.pi.parts.end());
  for (const Perm& s : aut.generators()) {
    for (const auto& part : r.pi.parts) {
      std::vector<int> mapped;
      for (int v : part) mapped.push_back(s(v));
      std::sort(mapped.begin(), mapped.end());
      CHECK(class_set.count(mapped) == 1);
    }
  }
  // certificates cover all same-class ordered pairs
  for (const auto& part : r.pi.parts)
    for (int v : part)
      for (int w : part) {
        if (v == w) continue;
        const Perm& c = r.certificate_for(v, w);
        CHECK(c(v) == w);
        CHECK(is_automorphism(prod, c));
      }
}

TEST_CASE("suborbit extraction is deterministic per seed") {
  BruteAsymmetryOracle o1a, o1b;
  OracleStack sa(o1a), sb(o1b);
  RngStream ra(412), rb(412);
  SuborbitOptions opts;
  opts.epsilon_override = 0.05;
  SuborbitResult x = invariant_suborbits(c3(), sa, opts, ra);
  SuborbitResult y = invariant_suborbits(c3(), sb, opts, rb);
  CHECK(x.pi == y.pi);
  CHECK(x.certificates.size() == y.certificates.size());
}

TEST_CASE("epsilon defaults follow the error exponent") {
  SuborbitOptions opts;
  CHECK(opts.epsilon_for(8) == doctest::Approx(1.0 / 8));
  opts.error_exponent = 2;
  CHECK(opts.epsilon_for(8) == doctest::Approx(1.0 / 64));
  opts.epsilon_override = 0.05;
  CHECK(opts.epsilon_for(8) == doctest::Approx(0.05));
}
