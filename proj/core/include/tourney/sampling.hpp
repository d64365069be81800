#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tourney/error.hpp"
#include "tourney/rng.hpp"

namespace tourney {

enum class SamplerMode { desk, faithful };

// Sample-size constants. Faithful mode pins the analysed constants
// (c1 = 2^17, c2 = 2^18, quadratic term) and is only usable for formula-level
// checks; desk mode keeps the cutoff rule, doubling and eps' schedule but
// scales the per-round sample count down to something runnable.
struct SamplerConfig {
  SamplerMode mode = SamplerMode::desk;
  std::uint64_t c1 = 1ull << 3;
  std::uint64_t c2 = 1ull << 4;
  int max_doubling_rounds = 40;
  std::uint64_t max_round_samples = 1ull << 31;

  static SamplerConfig faithful_defaults() {
    SamplerConfig c;
    c.mode = SamplerMode::faithful;
    c.c1 = 1ull << 17;
    c.c2 = 1ull << 18;
    return c;
  }
};

// Per-round sample count.
// faithful: max{ceil(i^3 c1 ln(1/e')), ceil(i^3 c2 ln(1/e'))^2}
// desk:     max{ceil(i c1 ln(1/e')),   i * ceil(c2 ln(1/e'))^2}
// The desk variant keeps the squared constant package but grows linearly in
// the scale i; the cubic-squared growth is not runnable for the scales the
// doubling loop actually reaches.
std::uint64_t round_sample_count(std::uint64_t i, double eps_prime, const SamplerConfig& cfg);

// Exact rational in [0,1]; num/den with den > 0.
struct Rat {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
};

// Smallest l in {6i+1..8i} whose window [(l-1/8)/(8i^2), (l+1/8)/(8i^2)]
// contains no estimator value; nullopt is the declared failure.
std::optional<std::uint64_t> find_cutoff(const std::vector<Rat>& estimators, std::uint64_t i);

template <typename E>
struct EstimatorTable {
  std::unordered_map<E, std::uint64_t> counts;
  std::uint64_t total = 0;

  void record(const E& e) {
    ++counts[e];
    ++total;
  }
  double estimate(const E& e) const {
    auto it = counts.find(e);
    return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
  }
  std::vector<Rat> estimator_values() const {
    std::vector<Rat> q;
    q.reserve(counts.size());
    for (const auto& [e, n] : counts) q.push_back(Rat{n, total});
    return q;
  }
};

enum class RoundOutcome { characteristic, failed, empty };

inline const char* outcome_name(RoundOutcome o) {
  switch (o) {
    case RoundOutcome::characteristic: return "characteristic";
    case RoundOutcome::failed: return "failed";
    case RoundOutcome::empty: return "empty";
  }
  return "?";
}

struct RoundLog {
  std::uint64_t i = 0;
  double eps_prime = 0.0;
  std::uint64_t samples = 0;
  RoundOutcome outcome = RoundOutcome::failed;
  std::optional<std::uint64_t> cutoff;
};

template <typename E>
struct RoundResult {
  RoundOutcome outcome = RoundOutcome::failed;
  std::vector<E> subset;
  std::optional<std::uint64_t> cutoff;
  std::uint64_t samples = 0;
  EstimatorTable<E> table;
};

template <typename E>
struct ExtractionResult {
  std::vector<E> subset;
  std::vector<RoundLog> rounds;
  std::uint64_t total_samples = 0;
};

// One round at scale i: draw T samples, build the estimator table, apply the
// cutoff rule. Output keeps the elements with estimator strictly above
// l/(8i^2); empty output and missing cutoff are reported as outcomes.
template <typename E, typename SamplerFn>
RoundResult<E> extract_round(SamplerFn&& draw, std::uint64_t i, double eps_prime,
                             const SamplerConfig& cfg, RngStream& rng) {
  if (i < 1) fail(Errc::bad_parameter, "scale must be at least 1");
  if (!(eps_prime > 0.0) || eps_prime > std::exp(-1.0) + 1e-12)
    fail(Errc::bad_parameter, "eps_prime must lie in (0, 1/e]");
  RoundResult<E> r;
  std::uint64_t take = round_sample_count(i, eps_prime, cfg);
  if (take > cfg.max_round_samples)
    fail(Errc::round_cap_exceeded, "per-round sample count exceeds the configured cap");
  for (std::uint64_t k = 0; k < take; ++k) r.table.record(draw(rng));
  r.samples = take;

  r.cutoff = find_cutoff(r.table.estimator_values(), i);
  if (!r.cutoff) {
    r.outcome = RoundOutcome::failed;
    return r;
  }
  // keep m with N(m)/T > l/(8i^2), exactly: 8 i^2 N(m) > l T
  const unsigned __int128 rhs =
      static_cast<unsigned __int128>(*r.cutoff) * r.table.total;
  for (const auto& [e, n] : r.table.counts) {
    unsigned __int128 lhs = static_cast<unsigned __int128>(8) * i * i * n;
    if (lhs > rhs) r.subset.push_back(e);
  }
  r.outcome = r.subset.empty() ? RoundOutcome::empty : RoundOutcome::characteristic;
  return r;
}

// Doubling wrapper: i = 1, 2, 4, ... with eps' halved each round, stopping at
// the first round that yields a non-empty subset. Output is never empty.
template <typename E, typename SamplerFn>
ExtractionResult<E> extract_characteristic(SamplerFn&& draw, const SamplerConfig& cfg,
                                           double epsilon, RngStream& rng) {
  if (!(epsilon > 0.0) || epsilon >= 1.0) fail(Errc::bad_parameter, "epsilon must be in (0,1)");
  ExtractionResult<E> out;
  double eps_prime = std::min(std::exp(-1.0), epsilon / 8.0);
  std::uint64_t i = 1;
  for (int round = 0; round < cfg.max_doubling_rounds; ++round) {
    RoundResult<E> r = extract_round<E>(draw, i, eps_prime, cfg, rng);
    out.rounds.push_back(RoundLog{i, eps_prime, r.samples, r.outcome, r.cutoff});
    out.total_samples += r.samples;
    if (r.outcome == RoundOutcome::characteristic) {
      out.subset = std::move(r.subset);
      return out;
    }
    i *= 2;
    eps_prime /= 2.0;
  }
  fail(Errc::round_cap_exceeded, "doubling rounds exhausted without a characteristic subset");
}

}  // namespace tourney
