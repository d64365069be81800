#include "tourney/perm_group.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>
#include <sstream>

namespace tourney {

namespace {

int min_moved_point(const Perm& p) {
  for (int x = 0; x < p.degree(); ++x)
    if (p(x) != x) return x;
  return -1;
}

}  // namespace

PermGroup PermGroup::trivial(int degree) { return PermGroup(degree, {}); }

PermGroup PermGroup::from_generators(int degree, std::vector<Perm> generators) {
  std::vector<Perm> gens;
  for (auto& g : generators) {
    if (g.degree() != degree) fail(Errc::degree_mismatch, "generator degree");
    if (!g.is_identity()) gens.push_back(std::move(g));
  }
  PermGroup grp(degree, std::move(gens));
  grp.build_chain();
  return grp;
}

std::pair<Perm, std::size_t> PermGroup::sift(const Perm& p) const {
  Perm cur = p;
  std::size_t i = 0;
  for (; i < levels_.size(); ++i) {
    int x = cur(levels_[i].base_point);
    if (x == levels_[i].base_point) continue;
    auto it = levels_[i].transversal.find(x);
    if (it == levels_[i].transversal.end()) break;
    cur = compose(it->second.inverse(), cur);
  }
  return {cur, i};
}

void PermGroup::build_chain() {
  levels_.clear();
  if (gens_.empty()) return;

  // Level i stores a full generating set of the i-th stabilizer subgroup,
  // so level 0 holds all group generators. complete(i) establishes that the
  // next level generates the stabilizer of base_i, recursively.
  auto rebuild_orbit = [&](Level& lvl) {
    lvl.transversal.clear();
    lvl.transversal.emplace(lvl.base_point, Perm(degree_));
    std::vector<int> frontier = {lvl.base_point};
    while (!frontier.empty()) {
      int p = frontier.back();
      frontier.pop_back();
      const Perm rep = lvl.transversal.at(p);
      for (const Perm& s : lvl.stabilizer_gens) {
        int q = s(p);
        if (!lvl.transversal.count(q)) {
          lvl.transversal.emplace(q, compose(s, rep));
          frontier.push_back(q);
        }
      }
    }
  };

  auto sift_from = [&](Perm cur, std::size_t j) {
    for (; j < levels_.size(); ++j) {
      int x = cur(levels_[j].base_point);
      if (x == levels_[j].base_point) continue;
      auto it = levels_[j].transversal.find(x);
      if (it == levels_[j].transversal.end()) break;
      cur = compose(it->second.inverse(), cur);
    }
    return cur;
  };

  std::function<void(std::size_t)> complete = [&](std::size_t i) {
    rebuild_orbit(levels_[i]);
    const std::vector<std::pair<int, Perm>> pts(levels_[i].transversal.begin(),
                                                levels_[i].transversal.end());
    const std::vector<Perm> level_gens = levels_[i].stabilizer_gens;
    for (const auto& [p, rep] : pts) {
      for (const Perm& s : level_gens) {
        const Perm to = levels_[i].transversal.at(s(p));
        Perm rem = sift_from(compose(to.inverse(), compose(s, rep)), i + 1);
        if (rem.is_identity()) continue;
        if (i + 1 == levels_.size()) {
          Level lvl;
          lvl.base_point = min_moved_point(rem);
          levels_.push_back(std::move(lvl));
        }
        levels_[i + 1].stabilizer_gens.push_back(std::move(rem));
        complete(i + 1);
      }
    }
  };

  Level top;
  top.base_point = min_moved_point(gens_.front());
  top.stabilizer_gens = gens_;
  levels_.push_back(std::move(top));
  complete(0);
}

std::uint64_t PermGroup::order() const {
  std::uint64_t o = 1;
  for (const Level& lvl : levels_) {
    std::uint64_t sz = lvl.transversal.size();
    assert(o <= UINT64_MAX / sz);
    o *= sz;
  }
  return o;
}

bool PermGroup::contains(const Perm& p) const {
  if (p.degree() != degree_) fail(Errc::degree_mismatch, "membership query degree");
  auto [rem, level] = sift(p);
  return level == levels_.size() && rem.is_identity();
}

std::vector<Perm> PermGroup::elements() const {
  std::vector<Perm> out;
  std::function<void(std::size_t, const Perm&)> rec = [&](std::size_t i, const Perm& acc) {
    if (i == levels_.size()) {
      out.push_back(acc);
      return;
    }
    for (const auto& [pt, rep] : levels_[i].transversal) rec(i + 1, compose(acc, rep));
  };
  rec(0, Perm(degree_));
  return out;
}

VertexPartition orbits(const PermGroup& g) {
  int n = g.degree();
  std::vector<int> root(n, -1);
  std::vector<std::vector<int>> parts;
  for (int v = 0; v < n; ++v) {
    if (root[v] != -1) continue;
    std::vector<int> orbit = {v};
    root[v] = v;
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (const Perm& s : g.generators()) {
        int w = s(orbit[k]);
        if (root[w] == -1) {
          root[w] = v;
          orbit.push_back(w);
        }
      }
    parts.push_back(std::move(orbit));
  }
  return normalize_partition(std::move(parts));
}

PermGroup intersect_with_aut(const PermGroup& g, const Tournament& t) {
  if (g.degree() != t.size()) fail(Errc::degree_mismatch, "group degree vs tournament size");
  const auto& levels = g.chain();
  if (levels.empty()) return PermGroup::trivial(g.degree());

  std::vector<int> base;
  for (const auto& lvl : levels) base.push_back(lvl.base_point);

  std::vector<Perm> found;
  PermGroup current = PermGroup::trivial(g.degree());

  std::function<void(std::size_t, const Perm&)> dfs = [&](std::size_t i, const Perm& partial) {
    if (i == levels.size()) {
      if (is_automorphism(t, partial) && !partial.is_identity() && !current.contains(partial)) {
        found.push_back(partial);
        current = PermGroup::from_generators(g.degree(), found);
      }
      return;
    }
    for (const auto& [pt, rep] : levels[i].transversal) {
      int y = partial(pt);
      if (t.color(y) != t.color(base[i])) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        int yj = partial(base[j]);
        if (t.edge(base[j], base[i]) != t.edge(yj, y)) ok = false;
      }
      if (!ok) continue;
      dfs(i + 1, compose(partial, rep));
    }
  };
  dfs(0, Perm(g.degree()));
  return current;
}

namespace {

PermGroup derived_subgroup(const PermGroup& g) {
  std::set<Perm> gens;
  for (const Perm& s : g.generators())
    for (const Perm& t : g.generators()) {
      Perm c = compose(compose(s.inverse(), t.inverse()), compose(s, t));
      if (!c.is_identity()) gens.insert(c);
    }
  std::vector<Perm> k(gens.begin(), gens.end());
  PermGroup closure = PermGroup::from_generators(g.degree(), k);
  // normal closure under conjugation by the parent's generators
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Perm> add;
    for (const Perm& s : g.generators())
      for (const Perm& x : closure.generators()) {
        Perm c = compose(compose(s.inverse(), x), s);
        if (!closure.contains(c)) add.push_back(c);
      }
    if (!add.empty()) {
      std::vector<Perm> next = closure.generators();
      next.insert(next.end(), add.begin(), add.end());
      closure = PermGroup::from_generators(g.degree(), next);
      changed = true;
    }
  }
  return closure;
}

}  // namespace

bool is_solvable(const PermGroup& g) {
  PermGroup cur = g;
  while (cur.order() > 1) {
    PermGroup next = derived_subgroup(cur);
    if (next.order() == cur.order()) return false;  // perfect and non-trivial
    cur = next;
  }
  return true;
}

bool is_odd_order(const PermGroup& g) { return (g.order() & 1) == 1; }

std::string to_group_text(const PermGroup& g) {
  std::ostringstream os;
  os << "group " << g.degree() << ' ' << g.generators().size() << '\n';
  for (const Perm& s : g.generators()) os << to_pline(s) << '\n';
  return os.str();
}

PermGroup from_group_text(const std::string& text) {
  std::istringstream is(text);
  std::string tag;
  int degree, count;
  if (!(is >> tag >> degree >> count) || tag != "group")
    fail(Errc::parse_error, "expected 'group <degree> <count>'");
  std::string line;
  std::getline(is, line);
  std::vector<Perm> gens;
  for (int i = 0; i < count; ++i) {
    if (!std::getline(is, line)) fail(Errc::parse_error, "missing generator line");
    gens.push_back(from_pline(line));
  }
  return PermGroup::from_generators(degree, std::move(gens));
}

}  // namespace tourney
