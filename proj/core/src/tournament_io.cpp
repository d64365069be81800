#include "tourney/tournament_io.hpp"

#include <fstream>
#include <sstream>

namespace tourney {

std::string to_text(const Tournament& t) {
  int n = t.size();
  int k = 0;
  for (int v = 0; v < n; ++v) k = std::max(k, t.color(v) + 1);
  bool all_zero = true;
  for (int v = 0; v < n; ++v)
    if (t.color(v) != 0) all_zero = false;
  if (all_zero) k = 0;

  std::ostringstream os;
  os << n << ' ' << k << '\n';
  if (k > 0) {
    for (int v = 0; v < n; ++v) os << (v ? " " : "") << t.color(v);
    os << '\n';
  }
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v)
        os << '-';
      else
        os << (t.edge(u, v) ? '1' : '0');
    }
    os << '\n';
  }
  return os.str();
}

Tournament read_tournament(std::istream& in) {
  int n, k;
  if (!(in >> n >> k)) fail(Errc::parse_error, "expected header 'n k'");
  if (n < 0 || k < 0) fail(Errc::parse_error, "negative header values");
  std::vector<int> colors(n, 0);
  if (k > 0) {
    for (int v = 0; v < n; ++v) {
      if (!(in >> colors[v])) fail(Errc::parse_error, "expected " + std::to_string(n) + " colors");
      if (colors[v] < 0 || colors[v] >= k) fail(Errc::parse_error, "color out of range");
    }
  }
  std::vector<std::string> rows(n);
  for (int u = 0; u < n; ++u) {
    if (!(in >> rows[u])) fail(Errc::parse_error, "expected adjacency row " + std::to_string(u));
    if (static_cast<int>(rows[u].size()) != n) fail(Errc::parse_error, "row length mismatch");
    for (int v = 0; v < n; ++v) {
      char c = rows[u][v];
      if (u == v && c != '-') fail(Errc::parse_error, "diagonal must be '-'");
      if (u != v && c != '0' && c != '1')
        fail(Errc::parse_error, "adjacency characters must be 0, 1 or -");
    }
  }
  TournamentBuilder b(n);
  for (int v = 0; v < n; ++v) b.set_color(v, colors[v]);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (rows[u][v] == rows[v][u]) fail(Errc::parse_error, "matrix is not a tournament");
      if (rows[u][v] == '1')
        b.orient(u, v);
      else
        b.orient(v, u);
    }
  return b.take();
}

Tournament from_text(const std::string& text) {
  std::istringstream is(text);
  return read_tournament(is);
}

void write_tournament_file(const std::string& path, const Tournament& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::parse_error, "cannot open " + path + " for writing");
  out << to_text(t);
}

Tournament read_tournament_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::parse_error, "cannot open " + path);
  return read_tournament(in);
}

}  // namespace tourney
