#include "tourney/gadgets.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace tourney {

Tournament star_coloring(const Tournament& t, int v) {
  if (v < 0 || v >= t.size()) fail(Errc::vertex_out_of_range, "star pivot");
  std::vector<int> colors(t.size());
  for (int u = 0; u < t.size(); ++u) {
    if (u == v)
      colors[u] = 0;
    else
      colors[u] = t.edge(u, v) ? 1 : 2;  // in-neighbors 1, out-neighbors 2
  }
  return t.with_colors(colors);
}

Tournament quotient(const Tournament& t, const VertexPartition& pi) {
  std::vector<int> part = pi.part_of(t.size());
  int q = static_cast<int>(pi.parts.size());
  for (const auto& p : pi.parts)
    if (p.size() % 2 == 0) fail(Errc::even_part_size, "quotient part of even size");
  TournamentBuilder b(q);
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j) {
      int forward = 0, backward = 0;
      for (int u : pi.parts[i])
        for (int v : pi.parts[j]) {
          if (t.edge(u, v))
            ++forward;
          else
            ++backward;
        }
      // odd * odd edge count cannot split evenly
      assert(forward != backward);
      if (forward == backward) fail(Errc::even_part_size, "tie between quotient parts");
      if (forward > backward)
        b.orient(i, j);
      else
        b.orient(j, i);
    }
  return b.take();
}

Tournament tri(const Tournament& t1, const Tournament& t2) {
  int n = t1.size();
  if (t2.size() != n) fail(Errc::size_mismatch, "tri blocks must have equal size");
  if (n < 1) fail(Errc::bad_parameter, "tri needs non-empty blocks");
  TournamentBuilder b(3 * n);
  auto copy_block = [&](const Tournament& t, int off) {
    for (int u = 0; u < n; ++u) {
      b.set_color(off + u, t.color(u));
      for (int v = u + 1; v < n; ++v) {
        if (t.edge(u, v))
          b.orient(off + u, off + v);
        else
          b.orient(off + v, off + u);
      }
    }
  };
  copy_block(t1, 0);
  copy_block(t1, n);  // the isomorphic copy
  copy_block(t2, 2 * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      b.orient(u, n + v);          // block0 -> block1
      b.orient(n + u, 2 * n + v);  // block1 -> block2
      b.orient(2 * n + u, v);      // block2 -> block0
    }
  return b.take();
}

namespace {

Tournament encode_with_classes(const Tournament& t, int ell, const std::vector<int>& norm_color) {
  int n = t.size();
  int total = n + ell + 2;
  int a = encode_vertex_a(n, ell);
  int bv = encode_vertex_b(n, ell);
  TournamentBuilder b(total);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (t.edge(u, v))
        b.orient(u, v);
      else
        b.orient(v, u);
    }
  // path vertices as a transitive tournament u_1 -> ... -> u_l
  for (int j = 1; j <= ell; ++j)
    for (int k = j + 1; k <= ell; ++k)
      b.orient(encode_path_vertex(n, j), encode_path_vertex(n, k));
  for (int v = 0; v < n; ++v)
    for (int j = 1; j <= ell; ++j) {
      int uj = encode_path_vertex(n, j);
      if (norm_color[v] == j)
        b.orient(uj, v);
      else
        b.orient(v, uj);
    }
  // a's only out-neighbor is b; b's in-neighbors are exactly {a, u_1..u_l}
  b.orient(a, bv);
  for (int v = 0; v < n; ++v) {
    b.orient(v, a);
    b.orient(bv, v);
  }
  for (int j = 1; j <= ell; ++j) {
    int uj = encode_path_vertex(n, j);
    b.orient(uj, a);
    b.orient(uj, bv);
  }
  return b.take();
}

}  // namespace

Tournament encode_colors(const Tournament& t) {
  std::map<int, int> norm;
  for (int v = 0; v < t.size(); ++v) norm.emplace(t.color(v), 0);
  int next = 1;
  for (auto& [c, r] : norm) r = next++;
  int ell = static_cast<int>(norm.size());
  if (ell < 2) fail(Errc::too_few_colors, "need at least two colors; pad first");
  std::vector<int> norm_color(t.size());
  for (int v = 0; v < t.size(); ++v) norm_color[v] = norm[t.color(v)];
  return encode_with_classes(t, ell, norm_color);
}

Tournament encode_colors_padded(const Tournament& t) {
  std::map<int, int> norm;
  for (int v = 0; v < t.size(); ++v) norm.emplace(t.color(v), 0);
  int next = 1;
  for (auto& [c, r] : norm) r = next++;
  int ell = std::max<int>(2, static_cast<int>(norm.size()));  // dummy color stays unused
  std::vector<int> norm_color(t.size());
  for (int v = 0; v < t.size(); ++v) norm_color[v] = norm[t.color(v)];
  return encode_with_classes(t, ell, norm_color);
}

Tournament encode_colors_normalized(const Tournament& t, int ell,
                                    const std::vector<int>& colors1based) {
  if (ell < 2) fail(Errc::too_few_colors, "need at least two colors");
  if (static_cast<int>(colors1based.size()) != t.size())
    fail(Errc::bad_parameter, "normalized color list length");
  for (int c : colors1based)
    if (c < 1 || c > ell) fail(Errc::bad_parameter, "normalized color out of range");
  return encode_with_classes(t, ell, colors1based);
}

}  // namespace tourney
