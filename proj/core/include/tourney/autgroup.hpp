#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tourney/perm_group.hpp"
#include "tourney/suborbits.hpp"

namespace tourney {

// Recursion-tree log: one node per call, with the case taken and the sizes
// it saw. Oracle-call columns are cumulative counter snapshots.
struct CaseTrace {
  struct Node {
    std::string case_id;  // "0", "asym", "1", "2", "3a", "3b", "leaf"
    int n = 0;
    std::vector<int> color_class_sizes;
    std::vector<int> part_sizes;
    std::uint64_t o1_calls = 0;
    std::uint64_t o2_calls = 0;
    std::uint64_t o3_calls = 0;
  };
  std::vector<Node> nodes;
};

using SuborbitOracleFn = std::function<SuborbitResult(const Tournament&, RngStream&)>;

// Suborbit oracle backed by the sampling pipeline.
SuborbitOracleFn sampled_suborbit_oracle(OracleStack& stack, const SuborbitOptions& opts,
                                         std::vector<RoundLog>* round_log = nullptr,
                                         std::uint64_t* samples_drawn = nullptr);

// Exact suborbit oracle from the brute-force group: the orbit partition with
// transversal certificates. Deterministic; used by tests and benchmarks.
SuborbitOracleFn exact_suborbit_oracle();

struct AutGroupOptions {
  bool memoize = false;  // optional cache keyed by exact tournament bytes
};

// Generators of Aut(t) from an oracle for invariant suborbits. Every
// generator of the returned group is a verified automorphism; completeness is
// probabilistic in the oracle.
PermGroup aut_group(const Tournament& t, const SuborbitOracleFn& suborbits, RngStream& rng,
                    CaseTrace* trace = nullptr, const AutGroupOptions& opts = {},
                    OracleStack* counters = nullptr);

// Isomorphism through the automorphism pipeline; returned witnesses are
// verified, so errors are one-sided (false negatives only).
std::optional<Perm> iso_tournaments(const Tournament& t1, const Tournament& t2,
                                    const SuborbitOracleFn& suborbits, RngStream& rng,
                                    CaseTrace* trace = nullptr, const AutGroupOptions& opts = {});

bool verify_generators(const Tournament& t, const PermGroup& g);

}  // namespace tourney
