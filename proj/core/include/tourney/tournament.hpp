#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tourney/error.hpp"
#include "tourney/perm.hpp"

namespace tourney {

// Complete oriented graph with vertex colors. Orientation is stored as a
// dense bit matrix (one bit per ordered pair), so edge queries are O(1).
// Immutable after construction.
class Tournament {
 public:
  Tournament() = default;

  // Exactly one orientation per unordered pair, no self-loops.
  static Tournament from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                               const std::vector<int>& colors = {});

  // orient(u, v) must return true iff u -> v, for u < v.
  static Tournament from_orientation(int n, const std::function<bool(int, int)>& orient,
                                     const std::vector<int>& colors = {});

  int size() const { return n_; }

  bool edge(int u, int v) const {
    return (bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1u;
  }

  int color(int v) const { return colors_[v]; }
  const std::vector<int>& colors() const { return colors_; }
  bool monochromatic() const;

  // Distinct color classes as sorted vertex lists, ordered by color value.
  std::vector<std::vector<int>> color_classes() const;

  int out_degree(int v) const;
  int in_degree(int v) const { return n_ == 0 ? 0 : n_ - 1 - out_degree(v); }
  int common_out_neighbors(int u, int v) const;

  Tournament with_colors(std::vector<int> colors) const;

  friend bool operator==(const Tournament& a, const Tournament& b) {
    return a.n_ == b.n_ && a.colors_ == b.colors_ && a.bits_ == b.bits_;
  }
  friend bool operator!=(const Tournament& a, const Tournament& b) { return !(a == b); }

  // Byte key for exact hashing (memo tables).
  std::string key() const;

 private:
  friend class TournamentBuilder;
  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<int> colors_;
};

// Mutable staging area for constructing tournaments without per-edge checks.
class TournamentBuilder {
 public:
  explicit TournamentBuilder(int n);
  void orient(int u, int v);  // set u -> v (clears v -> u)
  void set_color(int v, int c) { t_.colors_[v] = c; }
  Tournament take() { return std::move(t_); }

 private:
  Tournament t_;
};

// Induced subtournament on S; re-indexing is order-preserving on original
// indices and colors are inherited.
Tournament induced(const Tournament& t, const std::vector<int>& s);

// Refines the coloring by giving v a fresh singleton class. New color values
// are dense ranks of the lexicographic composite (old color, v-indicator).
Tournament individualize(const Tournament& t, int v);

// Relabels vertices: result has edge s(u) -> s(v) iff t has u -> v.
Tournament apply_perm(const Tournament& t, const Perm& s);

bool is_automorphism(const Tournament& t, const Perm& s);

// Base tournament plus an ordered individualization sequence. The induced
// coloring gives u_i the composite color (original color, i) and everything
// else (original color, 0), ranked lexicographically.
struct IndividualizationTrace {
  Tournament base;
  std::vector<int> sequence;  // distinct vertices

  std::vector<int> coloring() const;
  Tournament tournament() const { return base.with_colors(coloring()); }
};

struct VertexPartition {
  std::vector<std::vector<int>> parts;  // each sorted; parts ordered by minimum

  static VertexPartition discrete(int n);
  static VertexPartition trivial(int n);

  int vertex_count() const;
  bool is_discrete() const;
  bool is_trivial() const { return parts.size() == 1; }

  // part index per vertex; validates that parts partition [0, n)
  std::vector<int> part_of(int n) const;

  friend bool operator==(const VertexPartition& a, const VertexPartition& b) {
    return a.parts == b.parts;
  }
};

// Normalizes a list of classes: sorts members, drops empties, orders by min.
VertexPartition normalize_partition(std::vector<std::vector<int>> parts);

}  // namespace tourney
