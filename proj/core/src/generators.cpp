#include "tourney/generators.hpp"

#include <algorithm>
#include <set>

namespace tourney {

Tournament random_tournament(int n, RngStream& rng) {
  if (n < 0) fail(Errc::bad_parameter, "negative vertex count");
  TournamentBuilder b(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (rng.next() & 1)
        b.orient(u, v);
      else
        b.orient(v, u);
    }
  return b.take();
}

Tournament transitive_tournament(int n) {
  return Tournament::from_orientation(n, [](int u, int v) { return u < v; });
}

Tournament c3() {
  return Tournament::from_edges(3, {{0, 1}, {1, 2}, {2, 0}});
}

Tournament paley_tournament(int q) {
  if (q < 3) fail(Errc::bad_parameter, "paley parameter too small");
  if (q % 4 != 3) fail(Errc::bad_parameter, "paley parameter must be 3 mod 4");
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) fail(Errc::bad_parameter, "paley parameter must be prime");
  std::set<int> residues;
  for (int x = 1; x < q; ++x) residues.insert(static_cast<int>((1ll * x * x) % q));
  return Tournament::from_orientation(
      q, [&](int u, int v) { return residues.count(((v - u) % q + q) % q) > 0; });
}

Tournament circulant_tournament(int n, const std::vector<int>& residues) {
  if (n < 1 || n % 2 == 0) fail(Errc::bad_parameter, "circulant order must be odd");
  std::vector<char> hit(n, 0);
  for (int r : residues) {
    if (r <= 0 || r >= n) fail(Errc::bad_parameter, "residue out of range");
    int neg = n - r;
    if (hit[r] || hit[neg]) fail(Errc::bad_parameter, "residue set not closed-free");
    hit[r] = 1;
    hit[neg] = 1;
  }
  for (int d = 1; d < n; ++d)
    if (!hit[d]) fail(Errc::bad_parameter, "residues with negations must cover all differences");
  std::set<int> rs(residues.begin(), residues.end());
  return Tournament::from_orientation(
      n, [&](int u, int v) { return rs.count(((v - u) % n + n) % n) > 0; });
}

Tournament circulant_tournament(int n) {
  std::vector<int> rs;
  for (int r = 1; r <= (n - 1) / 2; ++r) rs.push_back(r);
  return circulant_tournament(n, rs);
}

Tournament lex_product(const Tournament& t1, const Tournament& t2) {
  int n1 = t1.size(), n2 = t2.size();
  TournamentBuilder b(n1 * n2);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      int u = i * n2 + j;
      b.set_color(u, 0);
      for (int i2 = 0; i2 < n1; ++i2)
        for (int j2 = 0; j2 < n2; ++j2) {
          int v = i2 * n2 + j2;
          if (u >= v) continue;
          bool forward = (i != i2) ? t1.edge(i, i2) : t2.edge(j, j2);
          if (forward)
            b.orient(u, v);
          else
            b.orient(v, u);
        }
    }
  return b.take();
}

}  // namespace tourney
