#pragma once

#include "tourney/tournament.hpp"

namespace tourney {

// Recolors a monochromatic tournament into the three classes {v},
// in-neighbors(v), out-neighbors(v) (colors 0, 1, 2).
Tournament star_coloring(const Tournament& t, int v);

// Majority-orientation tournament on the parts of pi; requires all parts of
// odd size so no tie is possible.
Tournament quotient(const Tournament& t, const VertexPartition& pi);

// Triangle composition on 3n vertices: blocks T1 | copy of T1 | T2 with all
// edges block0 -> block1 -> block2 -> block0. Block colors are preserved
// (the copy carries T1's colors).
Tournament tri(const Tournament& t1, const Tournament& t2);

// Color-removal gadget. With colors normalized to {1..l}, l >= 2, appends a
// transitively ordered path u_1..u_l (u_j beats v iff color(v) = j), plus a
// vertex a whose only out-neighbor is b, and b whose in-neighbors are exactly
// {a, u_1..u_l}. Automorphisms of the output restrict to exactly the colored
// automorphisms of the input, and a is the unique vertex of maximum in-degree
// (n >= 2).
Tournament encode_colors(const Tournament& t);

// Same, padding with one unused dummy color when the input has fewer than two
// distinct colors.
Tournament encode_colors_padded(const Tournament& t);

// Gadget construction for an externally supplied normalization; colors1based
// must map every vertex into {1..ell}. Lets callers normalize a pair of
// tournaments consistently before encoding each.
Tournament encode_colors_normalized(const Tournament& t, int ell,
                                    const std::vector<int>& colors1based);

// Index of vertex a (resp. b, u_j) in the encode_colors output for an input
// with n vertices and l normalized colors. Originals keep indices [0, n).
inline int encode_path_vertex(int n, int j1based) { return n + j1based - 1; }
inline int encode_vertex_a(int n, int l) { return n + l; }
inline int encode_vertex_b(int n, int l) { return n + l + 1; }

}  // namespace tourney
