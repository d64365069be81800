#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "tourney/oracles.hpp"
#include "tourney/sampling.hpp"

namespace tourney {

// Draws a non-identity automorphism of t from an automorphism-invariant
// distribution: individualize uniformly random vertices from non-singleton
// classes until asymmetric, then match the last pivot against the other
// candidates of its class through the oracle stack.
Perm sample_automorphism(const Tournament& t, OracleStack& stack, RngStream& rng);

// One draw of the induced pair sampler: (v, phi(v)) for v uniform over the
// support of a sampled phi. The automorphism is returned alongside the pair
// for certificate harvesting.
struct PairDraw {
  int v;
  int w;
  Perm phi;
};
PairDraw sample_orbit_pair(const Tournament& t, OracleStack& stack, RngStream& rng);

struct SuborbitResult {
  VertexPartition pi;
  std::vector<Perm> certificates;  // verified automorphisms
  // (v, w) in the same class -> index into certificates of an automorphism
  // mapping v to w.
  std::map<std::pair<int, int>, int> cert_index;

  const Perm& certificate_for(int v, int w) const;
};

struct SuborbitOptions {
  int error_exponent = 1;         // epsilon = n^(-c) when no override is given
  double epsilon_override = 0.0;  // > 0: per-call epsilon
  int max_retries = 3;
  SamplerConfig sampler;

  double epsilon_for(int n) const;
};

// Invariant suborbits with certificates. Asymmetric inputs yield the discrete
// partition and {identity}; otherwise the characteristic-subset extraction
// runs over the pair sampler, the reflexive-symmetric-transitive closure of
// the output forms the classes, and every same-class ordered pair receives a
// verified certificate composed from retained draws.
SuborbitResult invariant_suborbits(const Tournament& t, OracleStack& stack,
                                   const SuborbitOptions& opts, RngStream& rng,
                                   std::vector<RoundLog>* round_log = nullptr,
                                   std::uint64_t* samples_drawn = nullptr);

}  // namespace tourney
