#include "tourney/oracles.hpp"

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>

#include "tourney/tournament_io.hpp"

namespace tourney {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Iterated color refinement: vertices are reclassified by (class, out-degree
// profile over classes) until stable. Profiles are folded into commutative
// 64-bit hashes; a collision can only merge classes, never split them, so the
// search below stays correct either way.
std::vector<int> refine_classes(const Tournament& t) {
  int n = t.size();
  std::vector<int> cls(n);
  {
    std::map<int, int> dense;
    for (int v = 0; v < n; ++v) dense.emplace(t.color(v), 0);
    int next = 0;
    for (auto& [c, r] : dense) r = next++;
    for (int v = 0; v < n; ++v) cls[v] = dense[t.color(v)];
  }
  int classes = 0;
  for (int v = 0; v < n; ++v) classes = std::max(classes, cls[v] + 1);

  std::vector<std::uint64_t> sig(n);
  std::vector<std::uint64_t> sorted(n);
  std::vector<int> next_cls(n);
  while (classes < n) {
    for (int v = 0; v < n; ++v) {
      std::uint64_t h = mix64(0x517cc1b727220a95ull ^ cls[v]);
      for (int w = 0; w < n; ++w)
        if (w != v && t.edge(v, w)) h += mix64(cls[w]);
      sig[v] = h;
    }
    sorted.assign(sig.begin(), sig.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int v = 0; v < n; ++v)
      next_cls[v] = static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
    int next_classes = static_cast<int>(sorted.size());
    // refinement only ever splits classes: a stable count means a stable
    // partition (labels may permute, which is harmless)
    bool stable = next_classes == classes;
    cls.swap(next_cls);
    classes = next_classes;
    if (stable) break;
  }
  return cls;
}

// Backtracking over the refined classes. visit() receives every automorphism;
// returning false aborts the search.
template <typename Visit>
void automorphism_search(const Tournament& t, bool nonidentity_first, Visit&& visit) {
  int n = t.size();
  std::vector<int> cls = refine_classes(t);

  // search order: small classes first, index as tie-break
  std::vector<int> class_size(n, 0);
  for (int v = 0; v < n; ++v) ++class_size[cls[v]];
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (class_size[cls[a]] != class_size[cls[b]]) return class_size[cls[a]] < class_size[cls[b]];
    return a < b;
  });

  std::vector<int> img(n, -1);
  std::vector<char> used(n, 0);
  bool stop = false;

  std::vector<std::vector<int>> candidates(n);
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w)
      if (cls[w] == cls[v]) candidates[v].push_back(w);
  if (nonidentity_first) {
    for (int v = 0; v < n; ++v) {
      auto& c = candidates[v];
      std::stable_partition(c.begin(), c.end(), [&](int w) { return w != v; });
    }
  }

  std::function<void(int)> dfs = [&](int k) {
    if (stop) return;
    if (k == n) {
      if (!visit(Perm(std::vector<int>(img)))) stop = true;
      return;
    }
    int v = order[k];
    for (int w : candidates[v]) {
      if (used[w]) continue;
      bool ok = true;
      for (int j = 0; j < k && ok; ++j) {
        int u = order[j];
        if (t.edge(u, v) != t.edge(img[u], w)) ok = false;
      }
      if (!ok) continue;
      img[v] = w;
      used[w] = 1;
      dfs(k + 1);
      used[w] = 0;
      img[v] = -1;
      if (stop) return;
    }
  };
  dfs(0);
}

}  // namespace

PermGroup brute_aut(const Tournament& t) {
  std::vector<Perm> gens;
  PermGroup cur = PermGroup::trivial(t.size());
  automorphism_search(t, false, [&](const Perm& p) {
    if (!p.is_identity() && !cur.contains(p)) {
      gens.push_back(p);
      cur = PermGroup::from_generators(t.size(), gens);
    }
    return true;
  });
  return cur;
}

bool brute_is_asymmetric(const Tournament& t) {
  bool found = false;
  automorphism_search(t, true, [&](const Perm& p) {
    if (!p.is_identity()) {
      found = true;
      return false;
    }
    return true;
  });
  return !found;
}

bool AsymmetryOracle::answer(const Tournament& t) {
  ++calls_;
  if (!cache_results_) return answer_impl(t);
  std::string k = t.key();
  auto it = cache_.find(k);
  if (it != cache_.end()) return it->second;
  bool a = answer_impl(t);
  cache_.emplace(std::move(k), a);
  return a;
}

ProcessAsymmetryOracle::ProcessAsymmetryOracle(const std::string& command, int timeout_ms,
                                               bool cache_results)
    : AsymmetryOracle(cache_results), timeout_ms_(timeout_ms) {
  signal(SIGPIPE, SIG_IGN);  // a dead child should surface as a write error
  int to_pipe[2], from_pipe[2];
  if (pipe(to_pipe) != 0 || pipe(from_pipe) != 0) fail(Errc::oracle_io, "pipe");
  pid_t pid = fork();
  if (pid < 0) fail(Errc::oracle_io, "fork");
  if (pid == 0) {
    dup2(to_pipe[0], STDIN_FILENO);
    dup2(from_pipe[1], STDOUT_FILENO);
    close(to_pipe[0]);
    close(to_pipe[1]);
    close(from_pipe[0]);
    close(from_pipe[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  child_pid_ = pid;
  to_child_ = to_pipe[1];
  from_child_ = from_pipe[0];
  close(to_pipe[0]);
  close(from_pipe[1]);
}

ProcessAsymmetryOracle::~ProcessAsymmetryOracle() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  if (child_pid_ > 0) {
    kill(child_pid_, SIGTERM);
    waitpid(child_pid_, nullptr, 0);
  }
}

bool ProcessAsymmetryOracle::answer_impl(const Tournament& t) {
  std::string request = to_text(t);
  std::size_t off = 0;
  while (off < request.size()) {
    ssize_t n = write(to_child_, request.data() + off, request.size() - off);
    if (n <= 0) fail(Errc::oracle_io, "write to oracle process");
    off += static_cast<std::size_t>(n);
  }
  while (true) {
    auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (line == "asym") return true;
      if (line == "sym") return false;
      fail(Errc::oracle_io, "unexpected oracle response: " + line);
    }
    struct pollfd pfd = {from_child_, POLLIN, 0};
    int pr = poll(&pfd, 1, timeout_ms_);
    if (pr == 0) fail(Errc::oracle_io, "oracle response timeout");
    if (pr < 0) fail(Errc::oracle_io, "poll");
    char buf[4096];
    ssize_t n = read(from_child_, buf, sizeof buf);
    if (n <= 0) fail(Errc::oracle_io, "oracle process closed the pipe");
    buffer_.append(buf, static_cast<std::size_t>(n));
  }
}

bool OracleStack::colored_asymmetric(const Tournament& t) {
  ++o2_calls_;
  if (memoize_) {
    auto it = memo_o2_.find(t.key());
    if (it != memo_o2_.end()) return it->second;
  }
  bool a = ask_o1(encode_colors_padded(t));
  if (memoize_) memo_o2_.emplace(t.key(), a);
  return a;
}

bool OracleStack::iso_asymmetric_decision(const Tournament& t1, const Tournament& t2) {
  if (t1.size() != t2.size()) return false;
  if (t1.size() == 0) return true;
  std::string memo_key;
  if (memoize_) {
    memo_key = t1.key() + t2.key();
    auto it = memo_decision_.find(memo_key);
    if (it != memo_decision_.end()) return it->second;
  }
  // non-trivial automorphism of the triangle gadget <=> inputs isomorphic
  bool iso = !ask_o1(encode_colors_padded(tri(t1, t2)));
  if (memoize_) memo_decision_.emplace(std::move(memo_key), iso);
  return iso;
}

std::optional<Perm> OracleStack::iso_asymmetric(const Tournament& t1, const Tournament& t2) {
  ++o3_calls_;
  std::string memo_key;
  if (memoize_) {
    memo_key = t1.key() + t2.key();
    auto it = memo_o3_.find(memo_key);
    if (it != memo_o3_.end()) return it->second;
  }
  auto result = [&]() -> std::optional<Perm> {
    if (t1.size() != t2.size()) return std::nullopt;
    int n = t1.size();
    if (n == 0) return Perm(0);
    std::uint64_t decisions = 0;
    auto decide = [&](const Tournament& a, const Tournament& b) {
      ++decisions;
      return iso_asymmetric_decision(a, b);
    };
    if (!decide(t1, t2)) return std::nullopt;

    Tournament a = t1, b = t2;
    while (true) {
      auto classes_a = a.color_classes();
      int pivot = -1;
      for (const auto& cc : classes_a)
        if (cc.size() > 1) {
          pivot = cc.front();
          break;
        }
      if (pivot == -1) break;
      int pivot_color = a.color(pivot);
      bool committed = false;
      for (int w = 0; w < n && !committed; ++w) {
        if (b.color(w) != pivot_color) continue;
        Tournament a2 = individualize(a, pivot);
        Tournament b2 = individualize(b, w);
        if (decide(a2, b2)) {
          a = std::move(a2);
          b = std::move(b2);
          committed = true;
        }
      }
      if (!committed)
        fail(Errc::witness_check_failed,
             "individualization search stalled; an input was not asymmetric");
    }
    assert(decisions <= 2ull * n * n);

    // discrete colorings: match singleton classes by color value
    std::vector<int> image(n, -1);
    std::vector<int> color_to_b(2 * n + 1, -1);
    for (int w = 0; w < n; ++w) {
      int c = b.color(w);
      if (c >= static_cast<int>(color_to_b.size())) color_to_b.resize(c + 1, -1);
      if (color_to_b[c] != -1)
        fail(Errc::witness_check_failed, "colors not discrete after search");
      color_to_b[c] = w;
    }
    for (int v = 0; v < n; ++v) {
      int c = a.color(v);
      if (c >= static_cast<int>(color_to_b.size()) || color_to_b[c] == -1)
        fail(Errc::witness_check_failed, "color classes do not match");
      image[v] = color_to_b[c];
    }
    Perm witness{std::vector<int>(image)};
    for (int u = 0; u < n; ++u) {
      if (t2.color(witness(u)) != t1.color(u))
        fail(Errc::witness_check_failed, "witness does not preserve colors");
      for (int v = u + 1; v < n; ++v)
        if (t1.edge(u, v) != t2.edge(witness(u), witness(v)))
          fail(Errc::witness_check_failed, "witness does not preserve edges");
    }
    return witness;
  }();
  if (memoize_) memo_o3_.emplace(memo_key, result);
  return result;
}

const OracleStack::PivotCandidates& OracleStack::pivot_candidates(const Tournament& prev,
                                                                  int pivot,
                                                                  const Tournament& next) {
  std::string key = prev.key();
  key.push_back(static_cast<char>(pivot));
  key.push_back(static_cast<char>(pivot >> 8));
  auto it = memo_candidates_.find(key);
  if (it != memo_candidates_.end()) return it->second;

  PivotCandidates out;
  for (int u = 0; u < prev.size(); ++u) {
    if (u == pivot || prev.color(u) != prev.color(pivot)) continue;
    Tournament cand = individualize(prev, u);
    if (!colored_asymmetric(cand)) continue;
    out.v2.push_back(u);
    if (iso_asymmetric_decision(next, cand)) out.v3.push_back(u);
  }
  return memo_candidates_.emplace(std::move(key), std::move(out)).first->second;
}

namespace detail {

bool colors_compatible(const Tournament& t1, const Tournament& t2) {
  std::vector<int> c1 = t1.colors(), c2 = t2.colors();
  std::sort(c1.begin(), c1.end());
  std::sort(c2.begin(), c2.end());
  return c1 == c2;
}

std::pair<Tournament, Tournament> encode_pair_consistently(const Tournament& t1,
                                                           const Tournament& t2) {
  std::set<int> values;
  for (int v = 0; v < t1.size(); ++v) values.insert(t1.color(v));
  for (int v = 0; v < t2.size(); ++v) values.insert(t2.color(v));
  std::map<int, int> rank;
  int next = 1;
  for (int c : values) rank[c] = next++;
  int ell = std::max<int>(2, static_cast<int>(values.size()));
  auto norm = [&](const Tournament& t) {
    std::vector<int> out(t.size());
    for (int v = 0; v < t.size(); ++v) out[v] = rank[t.color(v)];
    return out;
  };
  return {encode_colors_normalized(t1, ell, norm(t1)),
          encode_colors_normalized(t2, ell, norm(t2))};
}

std::optional<Perm> extract_iso_from_tri_group(const Tournament& t1, const Tournament& t2,
                                               const Tournament& e1, const Tournament& e2,
                                               const PermGroup& tri_aut) {
  int big = e1.size();
  (void)e2;
  const Perm* crossing = nullptr;
  Perm squared;
  for (const Perm& s : tri_aut.generators()) {
    int dest = s(0) / big;
    if (dest == 2) {
      crossing = &s;
      break;
    }
    if (dest == 1) {
      squared = compose(s, s);
      crossing = &squared;
      break;
    }
  }
  if (!crossing) return std::nullopt;

  int n = t1.size();
  std::vector<int> image(n);
  for (int v = 0; v < n; ++v) {
    int w = (*crossing)(v);
    if (w < 2 * big || w >= 2 * big + n) return std::nullopt;  // not block-respecting; distrust
    image[v] = w - 2 * big;
  }
  // one-sided error: check the witness, report non-isomorphic when it fails
  std::vector<char> seen(n, 0);
  for (int v = 0; v < n; ++v) {
    if (seen[image[v]]) return std::nullopt;
    seen[image[v]] = 1;
  }
  Perm witness{std::vector<int>(image)};
  for (int u = 0; u < n; ++u) {
    if (t2.color(witness(u)) != t1.color(u)) return std::nullopt;
    for (int v = u + 1; v < n; ++v)
      if (t1.edge(u, v) != t2.edge(witness(u), witness(v))) return std::nullopt;
  }
  return witness;
}

}  // namespace detail

}  // namespace tourney
