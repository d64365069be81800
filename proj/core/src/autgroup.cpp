#include "tourney/autgroup.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

#include "tourney/gadgets.hpp"

namespace tourney {

namespace {

struct Ctx {
  const SuborbitOracleFn& suborbits;
  RngStream& rng;
  CaseTrace* trace;
  AutGroupOptions opts;
  OracleStack* counters;
  std::unordered_map<std::string, std::vector<Perm>> memo;
};

void log_node(Ctx& c, const char* case_id, const Tournament& t, const VertexPartition* pi) {
  if (!c.trace) return;
  CaseTrace::Node node;
  node.case_id = case_id;
  node.n = t.size();
  for (const auto& cc : t.color_classes()) node.color_class_sizes.push_back((int)cc.size());
  if (pi)
    for (const auto& p : pi->parts) node.part_sizes.push_back((int)p.size());
  if (c.counters) {
    node.o1_calls = c.counters->o1_calls();
    node.o2_calls = c.counters->o2_calls();
    node.o3_calls = c.counters->o3_calls();
  }
  c.trace->nodes.push_back(std::move(node));
}

std::vector<Perm> lift_fixing_outside(const std::vector<Perm>& sub_gens,
                                      const std::vector<int>& verts, int n) {
  std::vector<Perm> out;
  out.reserve(sub_gens.size());
  for (const Perm& s : sub_gens) {
    std::vector<int> img(n);
    for (int v = 0; v < n; ++v) img[v] = v;
    for (std::size_t i = 0; i < verts.size(); ++i) img[verts[i]] = verts[s((int)i)];
    out.emplace_back(std::move(img));
  }
  return out;
}

std::vector<Perm> aut_gens(const Tournament& t, Ctx& c);

PermGroup intersect_checked(const std::vector<Perm>& gens, const Tournament& t) {
  PermGroup g = PermGroup::from_generators(t.size(), gens);
#ifndef NDEBUG
  assert(is_solvable(g));
#endif
  return intersect_with_aut(g, t);
}

// Case 3 helper: isomorphism T[C_i] -> T[C_j] extracted from the automorphism
// group of the triangle gadget on the star-colored blocks, or nullopt.
std::optional<std::vector<int>> block_iso(const Tournament& t, const std::vector<int>& ci,
                                          const std::vector<int>& cj, Ctx& c) {
  Tournament ti = star_coloring(induced(t, ci), 0);
  Tournament tj = star_coloring(induced(t, cj), 0);
  Tournament gadget = tri(ti, tj);
  PermGroup g = PermGroup::from_generators(gadget.size(), aut_gens(gadget, c));
  Tournament plain_i = induced(t, ci);
  Tournament plain_j = induced(t, cj);
  auto iso = detail::extract_iso_from_tri_group(plain_i, plain_j, ti, tj, g);
  if (!iso) return std::nullopt;
  // re-express on t's vertex labels
  std::vector<int> map(t.size(), -1);
  for (std::size_t k = 0; k < ci.size(); ++k) map[ci[k]] = cj[(*iso)((int)k)];
  return map;
}

std::vector<Perm> aut_gens(const Tournament& t, Ctx& c) {
  int n = t.size();
  std::string memo_key;
  if (c.opts.memoize) {
    memo_key = t.key();
    auto it = c.memo.find(memo_key);
    if (it != c.memo.end()) return it->second;
  }
  auto finish = [&](std::vector<Perm> gens) {
    if (c.opts.memoize) c.memo.emplace(std::move(memo_key), gens);
    return gens;
  };

  if (!t.monochromatic()) {  // Case 0: recurse per color class, then stabilize
    std::vector<Perm> lifted;
    for (const auto& cls : t.color_classes()) {
      std::vector<Perm> sub = aut_gens(induced(t, cls), c);
      auto up = lift_fixing_outside(sub, cls, n);
      lifted.insert(lifted.end(), up.begin(), up.end());
    }
    log_node(c, "0", t, nullptr);
    return finish(intersect_checked(lifted, t).generators());
  }

  if (n <= 1) {
    log_node(c, "leaf", t, nullptr);
    return finish({});
  }

  SuborbitResult sr = c.suborbits(t, c.rng);

  if (sr.pi.is_discrete()) {
    log_node(c, "asym", t, &sr.pi);
    return finish({});
  }

  if (sr.pi.is_trivial()) {  // Case 1: one class; T is transitive
    log_node(c, "1", t, &sr.pi);
    Tournament star = star_coloring(t, 0);
    std::vector<Perm> gens;
    for (const Perm& phi : sr.certificates)
      if (!phi.is_identity()) gens.push_back(phi);
    std::vector<Perm> rec = aut_gens(star, c);
    gens.insert(gens.end(), rec.begin(), rec.end());
    return finish(gens);
  }

  std::size_t class_size = sr.pi.parts.front().size();
  bool equal_sizes = true;
  for (const auto& p : sr.pi.parts)
    if (p.size() != class_size) equal_sizes = false;

  if (!equal_sizes) {  // Case 2: recolor by class size
    log_node(c, "2", t, &sr.pi);
    std::vector<int> part = sr.pi.part_of(n);
    std::vector<int> colors(n);
    for (int v = 0; v < n; ++v) colors[v] = (int)sr.pi.parts[part[v]].size();
    return finish(aut_gens(t.with_colors(colors), c));
  }

  // Case 3: equal class sizes, pi neither trivial nor discrete. Blocks found
  // isomorphic are merged with union-find; same-component isomorphisms come
  // from composing the tree maps, so only cross-component pairs need a
  // triangle recursion, and the 3a recoloring always has at least two colors.
  int k = (int)sr.pi.parts.size();
  std::vector<int> comp(k);
  for (int i = 0; i < k; ++i) comp[i] = i;
  // to_root[i]: partial map on t's labels carrying C_i onto C_{comp[i]}
  std::vector<std::vector<int>> to_root(k);
  for (int i = 0; i < k; ++i) {
    to_root[i].assign(n, -1);
    for (int v : sr.pi.parts[i]) to_root[i][v] = v;
  }
  auto compose_maps = [&](const std::vector<int>& outer, const std::vector<int>& inner) {
    std::vector<int> out(n, -1);
    for (int v = 0; v < n; ++v)
      if (inner[v] != -1) out[v] = outer[inner[v]];
    return out;
  };
  auto invert_map = [&](const std::vector<int>& m) {
    std::vector<int> inv(n, -1);
    for (int v = 0; v < n; ++v)
      if (m[v] != -1) inv[m[v]] = v;
    return inv;
  };
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      if (comp[i] == comp[j]) continue;
      auto m = block_iso(t, sr.pi.parts[i], sr.pi.parts[j], c);
      if (!m) continue;
      // bridge C_{comp[j]} -> C_{comp[i]}, then re-root j's component
      std::vector<int> bridge =
          compose_maps(to_root[i], compose_maps(invert_map(*m), invert_map(to_root[j])));
      int old_root = comp[j], new_root = comp[i];
      for (int x = 0; x < k; ++x) {
        if (comp[x] != old_root) continue;
        to_root[x] = compose_maps(bridge, to_root[x]);
        comp[x] = new_root;
      }
    }
  bool all_isomorphic = true;
  for (int i = 1; i < k; ++i)
    if (comp[i] != comp[0]) all_isomorphic = false;

  if (!all_isomorphic) {  // Case 3a: recolor by isomorphism type
    log_node(c, "3a", t, &sr.pi);
    std::vector<int> part = sr.pi.part_of(n);
    std::vector<int> colors(n);
    for (int v = 0; v < n; ++v) colors[v] = comp[part[v]];
    return finish(aut_gens(t.with_colors(colors), c));
  }

  // Case 3b: quotient, lift, per-class groups, stabilize
  log_node(c, "3b", t, &sr.pi);
  for (const auto& p : sr.pi.parts)
    if (p.size() % 2 == 0)
      fail(Errc::oracle_inconsistent, "suborbit class of even size reached the quotient");
  Tournament q = quotient(t, sr.pi);
  std::vector<Perm> quotient_gens = aut_gens(q, c);

  std::vector<int> part = sr.pi.part_of(n);
  std::vector<std::vector<int>> from_root(k);
  for (int j = 0; j < k; ++j) from_root[j] = invert_map(to_root[j]);
  std::vector<Perm> gens;
  for (const Perm& g : quotient_gens) {
    std::vector<int> img(n, -1);
    for (int v = 0; v < n; ++v) {
      int i = part[v], j = g(part[v]);
      // phi_(i -> j) through the common component root
      img[v] = i == j ? v : from_root[j][to_root[i][v]];
    }
    gens.emplace_back(std::move(img));
  }
  for (int i = 0; i < k; ++i) {
    std::vector<Perm> sub = aut_gens(induced(t, sr.pi.parts[i]), c);
    auto up = lift_fixing_outside(sub, sr.pi.parts[i], n);
    gens.insert(gens.end(), up.begin(), up.end());
  }
  return finish(intersect_checked(gens, t).generators());
}

}  // namespace

SuborbitOracleFn sampled_suborbit_oracle(OracleStack& stack, const SuborbitOptions& opts,
                                         std::vector<RoundLog>* round_log,
                                         std::uint64_t* samples_drawn) {
  return [&stack, opts, round_log, samples_drawn](const Tournament& t, RngStream& rng) {
    return invariant_suborbits(t, stack, opts, rng, round_log, samples_drawn);
  };
}

SuborbitOracleFn exact_suborbit_oracle() {
  return [](const Tournament& t, RngStream&) {
    int n = t.size();
    PermGroup g = brute_aut(t);
    SuborbitResult res;
    if (g.is_trivial()) {
      res.pi = VertexPartition::discrete(n);
      res.certificates = {Perm(n)};
      return res;
    }
    res.pi = orbits(g);
    // transversal representatives: psi[x] maps the orbit root to x
    std::vector<Perm> psi(n);
    for (const auto& part : res.pi.parts) {
      if (part.size() == 1) continue;
      int root = part.front();
      std::vector<int> queue = {root};
      std::vector<char> visited(n, 0);
      visited[root] = 1;
      psi[root] = Perm(n);
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int x = queue[qi];
        for (const Perm& s : g.generators()) {
          int y = s(x);
          if (!visited[y]) {
            visited[y] = 1;
            psi[y] = compose(s, psi[x]);
            queue.push_back(y);
          }
        }
      }
      for (int v : part)
        for (int w : part) {
          if (v == w) continue;
          Perm cert = compose(psi[w], psi[v].inverse());
          auto it = std::find(res.certificates.begin(), res.certificates.end(), cert);
          int idx;
          if (it == res.certificates.end()) {
            idx = (int)res.certificates.size();
            res.certificates.push_back(cert);
          } else {
            idx = (int)(it - res.certificates.begin());
          }
          res.cert_index[{v, w}] = idx;
        }
    }
    return res;
  };
}

PermGroup aut_group(const Tournament& t, const SuborbitOracleFn& suborbits, RngStream& rng,
                    CaseTrace* trace, const AutGroupOptions& opts, OracleStack* counters) {
  Ctx c{suborbits, rng, trace, opts, counters, {}};
  return PermGroup::from_generators(t.size(), aut_gens(t, c));
}

std::optional<Perm> iso_tournaments(const Tournament& t1, const Tournament& t2,
                                    const SuborbitOracleFn& suborbits, RngStream& rng,
                                    CaseTrace* trace, const AutGroupOptions& opts) {
  return aut_to_iso(t1, t2, [&](const Tournament& gadget) {
    return aut_group(gadget, suborbits, rng, trace, opts);
  });
}

bool verify_generators(const Tournament& t, const PermGroup& g) {
  if (g.degree() != t.size()) return false;
  for (const Perm& s : g.generators())
    if (!is_automorphism(t, s)) return false;
  return true;
}

}  // namespace tourney
