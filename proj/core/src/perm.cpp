#include "tourney/perm.hpp"

#include <numeric>
#include <sstream>

namespace tourney {

Perm::Perm(int degree) : img_(degree) { std::iota(img_.begin(), img_.end(), 0); }

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (int x : img_) {
    if (x < 0 || x >= static_cast<int>(img_.size()) || seen[x])
      fail(Errc::bad_parameter, "image table is not a bijection");
    seen[x] = 1;
  }
}

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Perm Perm::inverse() const {
  std::vector<int> inv(img_.size());
  for (int i = 0; i < degree(); ++i) inv[img_[i]] = i;
  Perm p;
  p.img_ = std::move(inv);
  return p;
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) fail(Errc::degree_mismatch, "compose");
  std::vector<int> img(a.degree());
  for (int x = 0; x < a.degree(); ++x) img[x] = a(b(x));
  return Perm(std::move(img));
}

std::vector<int> support(const Perm& s) {
  std::vector<int> out;
  for (int x = 0; x < s.degree(); ++x)
    if (s(x) != x) out.push_back(x);
  return out;
}

Perm from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> img(degree);
  std::iota(img.begin(), img.end(), 0);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int from = cyc[i];
      int to = cyc[(i + 1) % cyc.size()];
      if (from < 0 || from >= degree) fail(Errc::vertex_out_of_range, "cycle point");
      img[from] = to;
    }
  }
  return Perm(std::move(img));
}

std::string to_pline(const Perm& s) {
  std::ostringstream os;
  os << 'p';
  for (int i = 0; i < s.degree(); ++i) os << ' ' << s(i);
  return os.str();
}

Perm from_pline(const std::string& line) {
  std::istringstream is(line);
  std::string tag;
  if (!(is >> tag) || tag != "p") fail(Errc::parse_error, "permutation line must start with 'p'");
  std::vector<int> img;
  int x;
  while (is >> x) img.push_back(x);
  if (!is.eof()) fail(Errc::parse_error, "trailing junk in permutation line");
  return Perm(std::move(img));
}

}  // namespace tourney
