#pragma once

#include <string>
#include <vector>

#include "tourney/error.hpp"

namespace tourney {

// Permutation of {0, ..., n-1} stored as an image table.
class Perm {
 public:
  Perm() = default;
  explicit Perm(int degree);              // identity
  explicit Perm(std::vector<int> images); // validates bijectivity

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int x) const { return img_[x]; }
  const std::vector<int>& images() const { return img_; }

  bool is_identity() const;
  Perm inverse() const;

  friend bool operator==(const Perm& a, const Perm& b) { return a.img_ == b.img_; }
  friend bool operator!=(const Perm& a, const Perm& b) { return a.img_ != b.img_; }
  friend bool operator<(const Perm& a, const Perm& b) { return a.img_ < b.img_; }

 private:
  std::vector<int> img_;
};

// (a * b)(x) = a(b(x)); b is applied first.
Perm compose(const Perm& a, const Perm& b);

// {x : s(x) != x}, ascending.
std::vector<int> support(const Perm& s);

// Builds a permutation from disjoint cycles, remaining points fixed.
Perm from_cycles(int degree, const std::vector<std::vector<int>>& cycles);

// One-line serialization: "p 0 2 1 ...".
std::string to_pline(const Perm& s);
Perm from_pline(const std::string& line);

}  // namespace tourney
