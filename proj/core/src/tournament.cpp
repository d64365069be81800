#include "tourney/tournament.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <map>
#include <numeric>

namespace tourney {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::missing_pair: return "MissingPair";
    case Errc::duplicate_pair: return "DuplicatePair";
    case Errc::self_loop: return "SelfLoop";
    case Errc::vertex_out_of_range: return "VertexOutOfRange";
    case Errc::even_part_size: return "EvenPartSize";
    case Errc::size_mismatch: return "SizeMismatch";
    case Errc::too_few_colors: return "TooFewColors";
    case Errc::degree_mismatch: return "DegreeMismatch";
    case Errc::bad_parameter: return "BadParameter";
    case Errc::parse_error: return "ParseError";
    case Errc::not_symmetric: return "NotSymmetric";
    case Errc::not_isomorphic: return "NotIsomorphic";
    case Errc::oracle_inconsistent: return "OracleInconsistent";
    case Errc::witness_check_failed: return "WitnessCheckFailed";
    case Errc::round_cap_exceeded: return "RoundCapExceeded";
    case Errc::certificate_invalid: return "CertificateInvalid";
    case Errc::oracle_io: return "OracleIo";
  }
  return "Unknown";
}

TournamentBuilder::TournamentBuilder(int n) {
  if (n < 0) fail(Errc::bad_parameter, "negative vertex count");
  t_.n_ = n;
  t_.words_ = (n + 63) / 64;
  t_.bits_.assign(static_cast<std::size_t>(n) * t_.words_, 0);
  t_.colors_.assign(n, 0);
}

void TournamentBuilder::orient(int u, int v) {
  auto set = [&](int a, int b, bool on) {
    std::uint64_t& w = t_.bits_[static_cast<std::size_t>(a) * t_.words_ + (b >> 6)];
    std::uint64_t m = 1ull << (b & 63);
    if (on)
      w |= m;
    else
      w &= ~m;
  };
  set(u, v, true);
  set(v, u, false);
}

Tournament Tournament::from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                                  const std::vector<int>& colors) {
  TournamentBuilder b(n);
  std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      fail(Errc::vertex_out_of_range, "edge endpoint out of range");
    if (u == v) fail(Errc::self_loop, "self loop at vertex " + std::to_string(u));
    char& fwd = seen[static_cast<std::size_t>(u) * n + v];
    char& rev = seen[static_cast<std::size_t>(v) * n + u];
    if (fwd || rev)
      fail(Errc::duplicate_pair,
           "pair {" + std::to_string(u) + "," + std::to_string(v) + "} oriented twice");
    fwd = 1;
    b.orient(u, v);
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!seen[static_cast<std::size_t>(u) * n + v] && !seen[static_cast<std::size_t>(v) * n + u])
        fail(Errc::missing_pair,
             "pair {" + std::to_string(u) + "," + std::to_string(v) + "} has no orientation");
  Tournament t = b.take();
  if (!colors.empty()) {
    if (static_cast<int>(colors.size()) != n) fail(Errc::bad_parameter, "color list length");
    for (int c : colors)
      if (c < 0) fail(Errc::bad_parameter, "negative color");
    t = t.with_colors(colors);
  }
  return t;
}

Tournament Tournament::from_orientation(int n, const std::function<bool(int, int)>& orient,
                                        const std::vector<int>& colors) {
  TournamentBuilder b(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (orient(u, v))
        b.orient(u, v);
      else
        b.orient(v, u);
    }
  Tournament t = b.take();
  if (!colors.empty()) {
    if (static_cast<int>(colors.size()) != n) fail(Errc::bad_parameter, "color list length");
    t = t.with_colors(colors);
  }
  return t;
}

bool Tournament::monochromatic() const {
  for (int v = 1; v < n_; ++v)
    if (colors_[v] != colors_[0]) return false;
  return true;
}

std::vector<std::vector<int>> Tournament::color_classes() const {
  std::map<int, std::vector<int>> by_color;
  for (int v = 0; v < n_; ++v) by_color[colors_[v]].push_back(v);
  std::vector<std::vector<int>> out;
  out.reserve(by_color.size());
  for (auto& [c, vs] : by_color) out.push_back(std::move(vs));
  return out;
}

int Tournament::out_degree(int v) const {
  int d = 0;
  for (int w = 0; w < words_; ++w)
    d += std::popcount(bits_[static_cast<std::size_t>(v) * words_ + w]);
  return d;
}

int Tournament::common_out_neighbors(int u, int v) const {
  int d = 0;
  for (int w = 0; w < words_; ++w)
    d += std::popcount(bits_[static_cast<std::size_t>(u) * words_ + w] &
                       bits_[static_cast<std::size_t>(v) * words_ + w]);
  return d;
}

Tournament Tournament::with_colors(std::vector<int> colors) const {
  if (static_cast<int>(colors.size()) != n_) fail(Errc::bad_parameter, "color list length");
  Tournament t = *this;
  t.colors_ = std::move(colors);
  return t;
}

std::string Tournament::key() const {
  std::string k;
  k.reserve(8 + colors_.size() * 4 + bits_.size() * 8);
  auto push32 = [&](std::uint32_t x) {
    for (int i = 0; i < 4; ++i) k.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
  };
  push32(static_cast<std::uint32_t>(n_));
  for (int c : colors_) push32(static_cast<std::uint32_t>(c));
  for (std::uint64_t w : bits_) {
    push32(static_cast<std::uint32_t>(w));
    push32(static_cast<std::uint32_t>(w >> 32));
  }
  return k;
}

Tournament induced(const Tournament& t, const std::vector<int>& s) {
  std::vector<int> sub = s;
  std::sort(sub.begin(), sub.end());
  for (std::size_t i = 0; i < sub.size(); ++i) {
    if (sub[i] < 0 || sub[i] >= t.size()) fail(Errc::vertex_out_of_range, "induced vertex");
    if (i > 0 && sub[i] == sub[i - 1]) fail(Errc::bad_parameter, "duplicate vertex in subset");
  }
  int m = static_cast<int>(sub.size());
  TournamentBuilder b(m);
  for (int i = 0; i < m; ++i) {
    b.set_color(i, t.color(sub[i]));
    for (int j = i + 1; j < m; ++j) {
      if (t.edge(sub[i], sub[j]))
        b.orient(i, j);
      else
        b.orient(j, i);
    }
  }
  return b.take();
}

namespace {

std::vector<int> dense_ranks(const std::vector<std::pair<int, int>>& composite) {
  std::vector<std::pair<int, int>> sorted = composite;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> out(composite.size());
  for (std::size_t v = 0; v < composite.size(); ++v) {
    out[v] = static_cast<int>(
        std::lower_bound(sorted.begin(), sorted.end(), composite[v]) - sorted.begin());
  }
  return out;
}

}  // namespace

Tournament individualize(const Tournament& t, int v) {
  if (v < 0 || v >= t.size()) fail(Errc::vertex_out_of_range, "individualized vertex");
  std::vector<std::pair<int, int>> composite(t.size());
  for (int u = 0; u < t.size(); ++u) composite[u] = {t.color(u), u == v ? 1 : 0};
  return t.with_colors(dense_ranks(composite));
}

Tournament apply_perm(const Tournament& t, const Perm& s) {
  if (s.degree() != t.size()) fail(Errc::degree_mismatch, "permutation degree vs tournament size");
  int n = t.size();
  TournamentBuilder b(n);
  for (int u = 0; u < n; ++u) {
    b.set_color(s(u), t.color(u));
    for (int v = u + 1; v < n; ++v) {
      if (t.edge(u, v))
        b.orient(s(u), s(v));
      else
        b.orient(s(v), s(u));
    }
  }
  return b.take();
}

bool is_automorphism(const Tournament& t, const Perm& s) {
  if (s.degree() != t.size()) fail(Errc::degree_mismatch, "permutation degree vs tournament size");
  int n = t.size();
  for (int u = 0; u < n; ++u) {
    if (t.color(s(u)) != t.color(u)) return false;
    for (int v = u + 1; v < n; ++v)
      if (t.edge(u, v) != t.edge(s(u), s(v))) return false;
  }
  return true;
}

std::vector<int> IndividualizationTrace::coloring() const {
  std::vector<std::pair<int, int>> composite(base.size());
  for (int u = 0; u < base.size(); ++u) composite[u] = {base.color(u), 0};
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    int u = sequence[i];
    if (u < 0 || u >= base.size()) fail(Errc::vertex_out_of_range, "trace vertex");
    if (composite[u].second != 0) fail(Errc::bad_parameter, "trace vertex repeated");
    composite[u].second = static_cast<int>(i) + 1;
  }
  return dense_ranks(composite);
}

VertexPartition VertexPartition::discrete(int n) {
  VertexPartition p;
  p.parts.resize(n);
  for (int v = 0; v < n; ++v) p.parts[v] = {v};
  return p;
}

VertexPartition VertexPartition::trivial(int n) {
  VertexPartition p;
  p.parts.emplace_back(n);
  std::iota(p.parts[0].begin(), p.parts[0].end(), 0);
  return p;
}

int VertexPartition::vertex_count() const {
  int n = 0;
  for (const auto& part : parts) n += static_cast<int>(part.size());
  return n;
}

bool VertexPartition::is_discrete() const {
  for (const auto& part : parts)
    if (part.size() != 1) return false;
  return true;
}

std::vector<int> VertexPartition::part_of(int n) const {
  std::vector<int> idx(n, -1);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (parts[p].empty()) fail(Errc::bad_parameter, "empty part");
    for (int v : parts[p]) {
      if (v < 0 || v >= n) fail(Errc::vertex_out_of_range, "partition vertex");
      if (idx[v] != -1) fail(Errc::bad_parameter, "overlapping parts");
      idx[v] = static_cast<int>(p);
    }
  }
  for (int v = 0; v < n; ++v)
    if (idx[v] == -1) fail(Errc::bad_parameter, "partition does not cover all vertices");
  return idx;
}

VertexPartition normalize_partition(std::vector<std::vector<int>> parts) {
  VertexPartition p;
  for (auto& part : parts) {
    if (part.empty()) continue;
    std::sort(part.begin(), part.end());
    p.parts.push_back(std::move(part));
  }
  std::sort(p.parts.begin(), p.parts.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return p;
}

}  // namespace tourney
