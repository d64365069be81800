#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>

#include "tourney/gadgets.hpp"
#include "tourney/perm_group.hpp"
#include "tourney/tournament.hpp"

namespace tourney {

// Exact Aut(t) (color- and edge-preserving) by backtracking with iterated
// color/degree partition refinement.
PermGroup brute_aut(const Tournament& t);

// Existence of a non-trivial automorphism, with early exit.
bool brute_is_asymmetric(const Tournament& t);

// Black-box source of "is Aut(t) trivial?" answers. call_count() counts
// every query, including ones served from the result cache.
class AsymmetryOracle {
 public:
  virtual ~AsymmetryOracle() = default;

  bool answer(const Tournament& t);
  std::uint64_t call_count() const { return calls_; }

 protected:
  explicit AsymmetryOracle(bool cache_results) : cache_results_(cache_results) {}

 private:
  virtual bool answer_impl(const Tournament& t) = 0;

  bool cache_results_;
  std::uint64_t calls_ = 0;
  std::unordered_map<std::string, bool> cache_;
};

class BruteAsymmetryOracle final : public AsymmetryOracle {
 public:
  explicit BruteAsymmetryOracle(bool cache_results = true) : AsymmetryOracle(cache_results) {}

 private:
  bool answer_impl(const Tournament& t) override { return brute_is_asymmetric(t); }
};

// Talks the line protocol to a child process: request is a tournament in the
// core text format, response is a single line "asym" or "sym".
class ProcessAsymmetryOracle final : public AsymmetryOracle {
 public:
  explicit ProcessAsymmetryOracle(const std::string& command, int timeout_ms = 30000,
                                  bool cache_results = true);
  ~ProcessAsymmetryOracle() override;

  ProcessAsymmetryOracle(const ProcessAsymmetryOracle&) = delete;
  ProcessAsymmetryOracle& operator=(const ProcessAsymmetryOracle&) = delete;

 private:
  bool answer_impl(const Tournament& t) override;

  int child_pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  int timeout_ms_;
  std::string buffer_;
};

// Adapter stack over a single uncolored-asymmetry oracle. colored_asymmetric
// is the colored variant (via the color-removal gadget); iso decision and
// search for asymmetric colored inputs go through the triangle gadget.
// Returned witnesses are always verified; unverifiable answers raise.
class OracleStack {
 public:
  explicit OracleStack(AsymmetryOracle& o1, bool memoize = true) : o1_(o1), memoize_(memoize) {}

  // o2: true iff the colored automorphism group is trivial.
  bool colored_asymmetric(const Tournament& t);

  // o3 decision core: both inputs asymmetric under their colorings.
  bool iso_asymmetric_decision(const Tournament& t1, const Tournament& t2);

  // o3 search: verified color- and edge-preserving bijection, or nullopt.
  std::optional<Perm> iso_asymmetric(const Tournament& t1, const Tournament& t2);

  // Candidate sets for the automorphism sampler, derived purely from oracle
  // answers for (prev, pivot): v2 holds the same-class vertices whose
  // individualization is asymmetric, v3 the v2 members isomorphic to the
  // pivot's individualization. Cached; hot path of the pair sampler.
  struct PivotCandidates {
    std::vector<int> v2;
    std::vector<int> v3;
  };
  const PivotCandidates& pivot_candidates(const Tournament& prev, int pivot,
                                          const Tournament& next);

  AsymmetryOracle& o1() { return o1_; }
  std::uint64_t o1_calls() const { return o1_.call_count(); }
  std::uint64_t o2_calls() const { return o2_calls_; }
  std::uint64_t o3_calls() const { return o3_calls_; }

 private:
  bool ask_o1(const Tournament& uncolored) { return o1_.answer(uncolored); }

  AsymmetryOracle& o1_;
  bool memoize_;
  std::uint64_t o2_calls_ = 0;
  std::uint64_t o3_calls_ = 0;
  std::unordered_map<std::string, bool> memo_o2_;
  std::unordered_map<std::string, bool> memo_decision_;
  std::unordered_map<std::string, std::optional<Perm>> memo_o3_;
  std::unordered_map<std::string, PivotCandidates> memo_candidates_;
};

// Reduction from isomorphism search to automorphism generators: builds
// tri(t1, t2) (encoding colors first when present), asks aut_solver for its
// automorphism group, and extracts a block-crossing element. The returned
// bijection is verified.
template <typename AutSolver>
std::optional<Perm> aut_to_iso(const Tournament& t1, const Tournament& t2, AutSolver&& aut_solver);

namespace detail {
std::optional<Perm> extract_iso_from_tri_group(const Tournament& t1, const Tournament& t2,
                                               const Tournament& e1, const Tournament& e2,
                                               const PermGroup& tri_aut);
bool colors_compatible(const Tournament& t1, const Tournament& t2);
std::pair<Tournament, Tournament> encode_pair_consistently(const Tournament& t1,
                                                           const Tournament& t2);
}  // namespace detail

template <typename AutSolver>
std::optional<Perm> aut_to_iso(const Tournament& t1, const Tournament& t2, AutSolver&& aut_solver) {
  if (t1.size() != t2.size()) fail(Errc::size_mismatch, "aut_to_iso inputs");
  if (t1.size() == 0) return Perm(0);
  if (!detail::colors_compatible(t1, t2)) return std::nullopt;
  bool colored = !t1.monochromatic() || !t2.monochromatic();
  if (colored) {
    auto [e1, e2] = detail::encode_pair_consistently(t1, t2);
    PermGroup g = aut_solver(tri(e1, e2));
    return detail::extract_iso_from_tri_group(t1, t2, e1, e2, g);
  }
  PermGroup g = aut_solver(tri(t1, t2));
  return detail::extract_iso_from_tri_group(t1, t2, t1, t2, g);
}

}  // namespace tourney
