#pragma once

#include "tourney/rng.hpp"
#include "tourney/tournament.hpp"

namespace tourney {

// Uniform over all orientations.
Tournament random_tournament(int n, RngStream& rng);

// u -> v iff u < v.
Tournament transitive_tournament(int n);

// The 3-cycle 0 -> 1 -> 2 -> 0.
Tournament c3();

// Quadratic-residue tournament; q must be prime with q = 3 (mod 4).
Tournament paley_tournament(int q);

// u -> v iff (v - u) mod n is in residues; residues and their negations must
// partition {1..n-1}, n odd.
Tournament circulant_tournament(int n, const std::vector<int>& residues);

// Default residue set {1..(n-1)/2}.
Tournament circulant_tournament(int n);

// Lexicographic product: vertex (i, j) -> outer*|inner| index i*|t2|+j; edge
// (i,j) -> (i',j') iff i -> i' in t1, or i = i' and j -> j' in t2.
Tournament lex_product(const Tournament& t1, const Tournament& t2);

}  // namespace tourney
