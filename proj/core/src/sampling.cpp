#include "tourney/sampling.hpp"

#include <cmath>

namespace tourney {

namespace {

std::uint64_t ceil_to_u64(double x) {
  double c = std::ceil(x);
  if (c < 0) return 0;
  if (c >= 1.8e19) fail(Errc::round_cap_exceeded, "sample count overflows");
  return static_cast<std::uint64_t>(c);
}

}  // namespace

std::uint64_t round_sample_count(std::uint64_t i, double eps_prime, const SamplerConfig& cfg) {
  if (i < 1) fail(Errc::bad_parameter, "scale must be at least 1");
  if (!(eps_prime > 0.0) || eps_prime > 1.0) fail(Errc::bad_parameter, "eps_prime range");
  const double log_term = std::log(1.0 / eps_prime);
  if (cfg.mode == SamplerMode::faithful) {
    const double icubed = static_cast<double>(i) * i * i;
    std::uint64_t first = ceil_to_u64(icubed * static_cast<double>(cfg.c1) * log_term);
    std::uint64_t base = ceil_to_u64(icubed * static_cast<double>(cfg.c2) * log_term);
    if (base >= (1ull << 32)) fail(Errc::round_cap_exceeded, "sample count overflows");
    std::uint64_t second = base * base;
    return std::max(first, second);
  }
  std::uint64_t first = ceil_to_u64(static_cast<double>(i) * cfg.c1 * log_term);
  std::uint64_t base = ceil_to_u64(static_cast<double>(cfg.c2) * log_term);
  if (base >= (1ull << 31)) fail(Errc::round_cap_exceeded, "sample count overflows");
  std::uint64_t second = i * base * base;
  return std::max(first, second);
}

std::optional<std::uint64_t> find_cutoff(const std::vector<Rat>& estimators, std::uint64_t i) {
  if (i < 1) fail(Errc::bad_parameter, "scale must be at least 1");
  // window for l: [(8l-1)/(64 i^2), (8l+1)/(64 i^2)]; q = num/den lies inside
  // iff den(8l-1) <= 64 i^2 num and 64 i^2 num <= den(8l+1), exactly.
  const unsigned __int128 scale = static_cast<unsigned __int128>(64) * i * i;
  for (std::uint64_t l = 6 * i + 1; l <= 8 * i; ++l) {
    bool hit = false;
    for (const Rat& q : estimators) {
      unsigned __int128 lhs = static_cast<unsigned __int128>(q.den) * (8 * l - 1);
      unsigned __int128 mid = scale * q.num;
      unsigned __int128 rhs = static_cast<unsigned __int128>(q.den) * (8 * l + 1);
      if (lhs <= mid && mid <= rhs) {
        hit = true;
        break;
      }
    }
    if (!hit) return l;
  }
  return std::nullopt;
}

}  // namespace tourney
