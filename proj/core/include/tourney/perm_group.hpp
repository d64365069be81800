#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tourney/perm.hpp"
#include "tourney/tournament.hpp"

namespace tourney {

// Permutation group given by generators, with a stabilizer chain for
// membership and order queries. Base points are the lowest-index moved
// points, so construction is deterministic in the generators. Immutable
// once built.
class PermGroup {
 public:
  static PermGroup trivial(int degree);
  static PermGroup from_generators(int degree, std::vector<Perm> generators);

  int degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }

  std::uint64_t order() const;
  bool contains(const Perm& p) const;
  bool is_trivial() const { return gens_.empty(); }

  struct Level {
    int base_point;
    std::map<int, Perm> transversal;  // orbit point -> coset rep mapping base_point there
    std::vector<Perm> stabilizer_gens;
  };
  const std::vector<Level>& chain() const { return levels_; }

  // All elements, enumerated from the chain. Only sensible for small groups.
  std::vector<Perm> elements() const;

 private:
  PermGroup(int degree, std::vector<Perm> gens) : degree_(degree), gens_(std::move(gens)) {}
  void build_chain();
  // Sifts p through the chain; returns remainder and the level reached.
  std::pair<Perm, std::size_t> sift(const Perm& p) const;

  int degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<Level> levels_;
};

// Orbit partition of {0..degree-1} under the group.
VertexPartition orbits(const PermGroup& g);

// Exact subgroup {s in g : s is a color- and edge-preserving automorphism of
// t}, computed by backtracking over the stabilizer chain with partial-image
// pruning.
PermGroup intersect_with_aut(const PermGroup& g, const Tournament& t);

bool is_solvable(const PermGroup& g);
bool is_odd_order(const PermGroup& g);

// Serialization: one "p ..." line per generator, prefixed by a header line
// "group <degree> <count>".
std::string to_group_text(const PermGroup& g);
PermGroup from_group_text(const std::string& text);

}  // namespace tourney
