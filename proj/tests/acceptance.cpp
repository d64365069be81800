// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code is the number of
// failed criteria. The CLI determinism criterion needs --cli <path>.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tourney/autgroup.hpp"
#include "tourney/generators.hpp"
#include "tourney/tournament_io.hpp"

using namespace tourney;
using Clock = std::chrono::steady_clock;
using nlohmann::json;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion {
  std::string name;
  bool passed = false;
  std::string detail;
  double secs = 0;
};

std::vector<Criterion> results;

void report(const std::string& name, bool passed, const std::string& detail, double secs) {
  results.push_back({name, passed, detail, secs});
  std::printf("[%s] %s  (%s; %.1fs)\n", passed ? "PASS" : "FAIL", name.c_str(), detail.c_str(),
              secs);
  std::fflush(stdout);
}

// ---------------------------------------------------------------- corpus ---

std::vector<std::pair<std::string, Tournament>> reduction_corpus() {
  std::vector<std::pair<std::string, Tournament>> corpus;
  corpus.push_back({"c3", c3()});
  corpus.push_back({"paley7", paley_tournament(7)});
  corpus.push_back({"lexprod_c3_c3", lex_product(c3(), c3())});
  corpus.push_back({"circulant9", circulant_tournament(9)});
  corpus.push_back({"transitive6", transitive_tournament(6)});
  corpus.push_back({"transitive7", transitive_tournament(7)});
  corpus.push_back({"transitive8", transitive_tournament(8)});
  for (int s = 1; s <= 50; ++s) {
    RngStream rng(9000 + s);
    int n = 3 + rng.below(10);  // 3..12
    corpus.push_back({"random" + std::to_string(s), random_tournament(n, rng)});
  }
  return corpus;
}

std::vector<std::pair<std::string, Tournament>> suborbit_corpus() {
  std::vector<std::pair<std::string, Tournament>> corpus;
  corpus.push_back({"c3", c3()});
  corpus.push_back({"circulant5", circulant_tournament(5, {1, 2})});
  corpus.push_back({"paley7", paley_tournament(7)});
  corpus.push_back({"circulant7", circulant_tournament(7)});
  corpus.push_back({"circulant9", circulant_tournament(9)});
  corpus.push_back({"lexprod_c3_c3", lex_product(c3(), c3())});
  corpus.push_back({"lexprod_t3_c3", lex_product(transitive_tournament(3), c3())});
  corpus.push_back({"dominant_c3", Tournament::from_edges(
                                       4, {{0, 1}, {1, 2}, {2, 0}, {3, 0}, {3, 1}, {3, 2}})});
  corpus.push_back({"transitive5", transitive_tournament(5)});
  corpus.push_back({"transitive8", transitive_tournament(8)});
  for (int s = 1; s <= 2; ++s) {
    RngStream rng(7700 + s);
    corpus.push_back({"random12_" + std::to_string(s), random_tournament(12, rng)});
  }
  return corpus;
}

// ------------------------------------------------------------- criteria ---

// 1. brute_aut vs exhaustive permutation enumeration on every tournament with
//    up to five vertices, under one minute.
void criterion_oracle_equivalence() {
  auto t0 = Clock::now();
  std::uint64_t checked = 0, mismatches = 0;
  for (int n = 1; n <= 5 && mismatches == 0; ++n) {
    int pair_count = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (1ull << pair_count); ++mask) {
      TournamentBuilder b(n);
      int bit = 0;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
          if ((mask >> bit) & 1)
            b.orient(u, v);
          else
            b.orient(v, u);
          ++bit;
        }
      Tournament t = b.take();
      std::uint64_t brute = brute_aut(t).order();
      std::uint64_t naive = 0;
      std::vector<int> img(n);
      std::iota(img.begin(), img.end(), 0);
      do {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
          for (int v = u + 1; v < n && ok; ++v)
            if (t.edge(u, v) != t.edge(img[u], img[v])) ok = false;
        if (ok) ++naive;
      } while (std::next_permutation(img.begin(), img.end()));
      ++checked;
      if (brute != naive) ++mismatches;
    }
  }
  double secs = seconds_since(t0);
  bool pass = mismatches == 0 && secs < 60.0;
  std::ostringstream d;
  d << checked << " tournaments, " << mismatches << " mismatches";
  report("1. oracle equivalence, exhaustive n<=5, <1min", pass, d.str(), secs);
}

// 2 + 3 + part of 7: 300 reduction runs over the corpus.
struct ReductionStats {
  int runs = 0;
  int sound = 0;
  int order_match = 0;
  std::vector<PermGroup> groups;
  double secs = 0;
};

ReductionStats run_reduction_battery() {
  ReductionStats st;
  auto corpus = reduction_corpus();
  std::map<std::string, std::uint64_t> brute_orders;
  for (const auto& [name, t] : corpus) brute_orders[name] = brute_aut(t).order();

  BruteAsymmetryOracle o1;  // deterministic oracle: sharing its cache across
  OracleStack stack(o1);    // runs leaves every run's answers unchanged
  SuborbitOptions opts;
  opts.epsilon_override = 0.05;

  auto t0 = Clock::now();
  const int total_runs = 300;
  for (int run = 0; run < total_runs; ++run) {
    const auto& [name, t] = corpus[run % corpus.size()];
    RngStream rng(100000 + run);
    SuborbitOracleFn suborbits = sampled_suborbit_oracle(stack, opts);
    PermGroup g = aut_group(t, suborbits, rng);
    ++st.runs;
    if (verify_generators(t, g)) ++st.sound;
    if (g.order() == brute_orders[name]) ++st.order_match;
    if (st.groups.size() < 80) st.groups.push_back(g);
  }
  st.secs = seconds_since(t0);
  return st;
}

void criterion_reduction(const ReductionStats& st) {
  {
    bool pass = st.sound == st.runs;
    std::ostringstream d;
    d << st.sound << "/" << st.runs << " runs with all generators verified";
    report("2. reduction soundness, 300 runs, zero tolerance", pass, d.str(), st.secs);
  }
  {
    double rate = double(st.order_match) / st.runs;
    bool pass = rate >= 0.95 && st.secs < 600.0;
    std::ostringstream d;
    d << st.order_match << "/" << st.runs << " order matches (" << rate * 100 << "%)";
    report("3. reduction completeness >=95%, <10min", pass, d.str(), st.secs);
  }
}

// 4. analytic characteristic-sampler battery.
void criterion_characteristic_sampler() {
  auto t0 = Clock::now();
  std::vector<std::pair<std::string, std::vector<double>>> tables;
  for (int k = 2; k <= 16; ++k)
    tables.push_back({"uniform" + std::to_string(k), std::vector<double>(k, 1.0 / k)});
  tables.push_back({"two-level", {0.4, 0.4, 0.1, 0.1}});
  tables.push_back({"three-level", {0.5, 0.25, 0.25}});

  SamplerConfig desk;
  const int trials = 200;
  long long total = 0, unions = 0, nonempty = 0;
  long long k2_full = 0;
  std::ostringstream per_dist;
  std::uint64_t seed = 500000;
  for (const auto& [name, probs] : tables) {
    std::vector<double> cumulative;
    double acc = 0;
    for (double p : probs) cumulative.push_back(acc += p);
    auto draw = [&](RngStream& rng) {
      double x = rng.unit();
      for (std::size_t i = 0; i < cumulative.size(); ++i)
        if (x < cumulative[i]) return static_cast<int>(i);
      return static_cast<int>(cumulative.size()) - 1;
    };
    int dist_unions = 0;
    for (int trial = 0; trial < trials; ++trial) {
      RngStream rng(seed++);
      auto ext = extract_characteristic<int>(draw, desk, 0.05, rng);
      ++total;
      if (!ext.subset.empty()) ++nonempty;
      std::set<int> in(ext.subset.begin(), ext.subset.end());
      bool is_union = true;
      for (std::size_t a = 0; a < probs.size() && is_union; ++a)
        for (std::size_t b = 0; b < probs.size() && is_union; ++b)
          if (std::abs(probs[a] - probs[b]) < 1e-12 && in.count((int)a) != in.count((int)b))
            is_union = false;
      if (is_union) {
        ++unions;
        ++dist_unions;
      }
      if (name == "uniform2" && ext.subset.size() == 2) ++k2_full;
    }
    per_dist << ' ' << name << '=' << dist_unions;
  }
  double secs = seconds_since(t0);
  double union_rate = double(unions) / total;
  double k2_rate = double(k2_full) / trials;
  bool pass = union_rate >= 0.90 && nonempty == total && k2_rate >= 0.99;
  std::ostringstream d;
  d << "union-of-levels " << unions << "/" << total << " (" << union_rate * 100
    << "%), nonempty " << nonempty << "/" << total << ", uniform2 full " << k2_rate * 100
    << "%; per-dist:" << per_dist.str();
  report("4. characteristic sampler: >=90% unions, 100% nonempty, >=99% pair", pass, d.str(),
         secs);
}

// 5. suborbit properties over the generator corpus.
void criterion_suborbits(std::vector<PermGroup>* collected) {
  auto t0 = Clock::now();
  auto corpus = suborbit_corpus();
  std::map<std::string, PermGroup> auts;
  for (const auto& [name, t] : corpus) auts.emplace(name, brute_aut(t));

  BruteAsymmetryOracle o1;
  OracleStack stack(o1);
  SuborbitOptions opts;
  opts.epsilon_override = 0.05;

  const int total_runs = 100;
  int good_runs = 0;
  bool certificates_sound = true;
  for (int run = 0; run < total_runs; ++run) {
    const auto& [name, t] = corpus[run % corpus.size()];
    RngStream rng(300000 + run);
    SuborbitResult r = invariant_suborbits(t, stack, opts, rng);

    const PermGroup& aut = auts.at(name);
    std::vector<int> orbit_of = orbits(aut).part_of(t.size());

    bool refinement = true;
    for (const auto& part : r.pi.parts)
      for (int v : part)
        if (orbit_of[v] != orbit_of[part.front()]) refinement = false;

    bool invariant = true;
    std::set<std::vector<int>> class_set(r.pi.parts.begin(), r.pi.parts.end());
    for (const Perm& s : aut.generators())
      for (const auto& part : r.pi.parts) {
        std::vector<int> mapped;
        for (int v : part) mapped.push_back(s(v));
        std::sort(mapped.begin(), mapped.end());
        if (!class_set.count(mapped)) invariant = false;
      }
    if (refinement && invariant) ++good_runs;

    // certificate soundness is unconditional: every certificate verifies and
    // every same-class ordered pair is covered
    for (const Perm& c : r.certificates)
      if (!c.is_identity() && !is_automorphism(t, c)) certificates_sound = false;
    if (r.pi.is_discrete()) {
      if (r.certificates.size() != 1 || !r.certificates.front().is_identity())
        certificates_sound = false;
    } else {
      for (const auto& part : r.pi.parts)
        for (int v : part)
          for (int w : part) {
            if (v == w) continue;
            auto it = r.cert_index.find({v, w});
            if (it == r.cert_index.end() || r.certificates[it->second](v) != w)
              certificates_sound = false;
          }
    }
    if (collected->size() < 40)
      collected->push_back(PermGroup::from_generators(t.size(), r.certificates));
  }
  double secs = seconds_since(t0);
  double rate = double(good_runs) / total_runs;
  bool pass = rate >= 0.95 && certificates_sound;
  std::ostringstream d;
  d << good_runs << "/" << total_runs << " runs refine invariantly, certificates "
    << (certificates_sound ? "sound" : "UNSOUND");
  report("5. suborbit properties >=95%, certificates 100%", pass, d.str(), secs);
}

// 6. Algorithm-1 marginals on the 3-cycle.
void criterion_sampler_distribution() {
  auto t0 = Clock::now();
  BruteAsymmetryOracle o1;
  OracleStack stack(o1);
  RngStream rng(606060);
  std::map<Perm, int> freq;
  const int draws = 400;
  bool all_valid = true;
  for (int i = 0; i < draws; ++i) {
    Perm phi = sample_automorphism(c3(), stack, rng);
    if (phi.is_identity() || !is_automorphism(c3(), phi)) all_valid = false;
    ++freq[phi];
  }
  bool in_band = freq.size() == 2;
  for (const auto& [p, count] : freq) {
    double f = double(count) / draws;
    if (f < 0.4 || f > 0.6) in_band = false;
  }
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << freq.size() << " rotations, counts";
  for (const auto& [p, count] : freq) d << ' ' << count;
  report("6. Algorithm-1 rotation frequencies in [0.4, 0.6] over 400 draws",
         in_band && all_valid, d.str(), secs);
}

// 7. structural invariants over every group the pipeline produced, plus the
//    gadget-level group properties.
void criterion_structural(const std::vector<PermGroup>& groups) {
  auto t0 = Clock::now();
  bool odd_solvable = true;
  for (const PermGroup& g : groups)
    if (!is_odd_order(g) || !is_solvable(g)) odd_solvable = false;

  // tri block preservation for blocks up to 5 vertices
  bool tri_blocks = true;
  RngStream rng(707070);
  for (int n = 2; n <= 5; ++n)
    for (int rep = 0; rep < 3; ++rep) {
      Tournament t1 = random_tournament(n, rng);
      Tournament t2 = rep == 0 ? t1 : random_tournament(n, rng);
      Tournament g = tri(t1, t2);
      for (const Perm& s : brute_aut(g).elements()) {
        for (int b = 0; b < 3; ++b) {
          int dest = s(b * n) / n;
          for (int x = 0; x < n; ++x)
            if (s(b * n + x) / n != dest) tri_blocks = false;
        }
      }
    }

  // encode_colors group equality for n <= 6, up to 4 colors
  bool encode_equal = true;
  for (int n = 2; n <= 6; ++n)
    for (int rep = 0; rep < 3; ++rep) {
      Tournament t = random_tournament(n, rng);
      std::vector<int> colors(n);
      for (auto& c : colors) c = rng.below(std::min(4, 1 + rep * 2));
      t = t.with_colors(colors);
      Tournament e = encode_colors_padded(t);
      std::set<std::vector<int>> restricted;
      for (const Perm& s : brute_aut(e).elements()) {
        std::vector<int> sub(n);
        bool in_range = true;
        for (int v = 0; v < n; ++v) {
          if (s(v) >= n) in_range = false;
          else sub[v] = s(v);
        }
        if (!in_range) {
          encode_equal = false;
          continue;
        }
        restricted.insert(sub);
      }
      std::set<std::vector<int>> colored;
      for (const Perm& s : brute_aut(t).elements()) colored.insert(s.images());
      if (restricted != colored) encode_equal = false;
    }

  double secs = seconds_since(t0);
  bool pass = odd_solvable && tri_blocks && encode_equal;
  std::ostringstream d;
  d << groups.size() << " pipeline groups odd+solvable=" << (odd_solvable ? "yes" : "NO")
    << ", tri blocks=" << (tri_blocks ? "ok" : "BROKEN")
    << ", encode restriction=" << (encode_equal ? "equal" : "UNEQUAL");
  report("7. structural invariants 100%", pass, d.str(), secs);
}

// 8. faithful-mode sample-count formula, exact.
void criterion_faithful_formula() {
  auto t0 = Clock::now();
  SamplerConfig faithful = SamplerConfig::faithful_defaults();
  auto expected = [](std::uint64_t i, double eps_prime) {
    double log_term = std::log(1.0 / eps_prime);
    double icubed = double(i) * i * i;
    std::uint64_t first = (std::uint64_t)std::ceil(icubed * 131072.0 * log_term);
    std::uint64_t base = (std::uint64_t)std::ceil(icubed * 262144.0 * log_term);
    return std::max(first, base * base);
  };
  bool pass = round_sample_count(1, std::exp(-1.0), faithful) == expected(1, std::exp(-1.0)) &&
              round_sample_count(2, 1.0 / 16.0, faithful) == expected(2, 1.0 / 16.0);
  std::ostringstream d;
  d << "T(1,1/e)=" << round_sample_count(1, std::exp(-1.0), faithful)
    << " T(2,1/16)=" << round_sample_count(2, 1.0 / 16.0, faithful);
  report("8. faithful-mode formula check", pass, d.str(), seconds_since(t0));
}

// 9. CLI determinism: byte-identical reports under a fixed seed, with timing
//    fields stripped, twenty repeats per subcommand.
std::string run_cli(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "<popen failed>";
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int rc = pclose(pipe);
  if (rc != 0) out += "\n<exit " + std::to_string(rc) + ">";
  return out;
}

void strip_timing(json& j) {
  if (j.is_object()) {
    j.erase("wall_ms");
    j.erase("ms");
    for (auto& [k, v] : j.items()) strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_timing(v);
  }
}

std::string canonical_json(const std::string& raw) {
  json j = json::parse(raw);
  strip_timing(j);
  return j.dump();
}

std::string canonical_csv(const std::string& raw) {
  // drop the trailing ms column
  std::istringstream is(raw);
  std::ostringstream os;
  std::string line;
  while (std::getline(is, line)) {
    auto pos = line.rfind(',');
    os << (pos == std::string::npos ? line : line.substr(0, pos)) << '\n';
  }
  return os.str();
}

void criterion_cli_determinism(const std::string& cli) {
  auto t0 = Clock::now();
  if (cli.empty()) {
    report("9. CLI determinism, 20 repeats", false, "no --cli path given", 0);
    return;
  }
  std::string dir = "/tmp/tourney_acceptance";
  run_cli("mkdir -p " + dir);
  run_cli(cli + " gen --family transitive --n 3 --seed 1 --out " + dir + "/t3.txt");
  run_cli(cli + " gen --family transitive --n 5 --seed 1 --out " + dir + "/t5.txt");
  run_cli(cli + " gen --family random --n 6 --seed 3 --out " + dir + "/r6.txt");

  struct Case {
    std::string name;
    std::string cmd;
    enum { kJson, kRaw, kCsv } kind;
  };
  std::vector<Case> cases = {
      {"gen", cli + " gen --family random --n 10 --seed 7", Case::kRaw},
      {"aut-brute", cli + " aut " + dir + "/r6.txt --method brute --seed 5", Case::kJson},
      {"aut-reduction", cli + " aut " + dir + "/t3.txt --method reduction --seed 5", Case::kJson},
      {"iso", cli + " iso " + dir + "/t3.txt " + dir + "/t3.txt --seed 5", Case::kJson},
      {"iso-negative", cli + " iso " + dir + "/t5.txt " + dir + "/r6.txt --seed 5", Case::kJson},
      {"suborbits", cli + " suborbits " + dir + "/t5.txt --seed 5", Case::kJson},
      {"sample", cli + " sample --probs 0.5,0.25,0.25 --seed 5", Case::kJson},
      {"bench",
       cli + " bench --families transitive --n-min 3 --n-max 5 --step 2 --reps 1 --seed 5",
       Case::kCsv},
  };

  bool pass = true;
  std::ostringstream d;
  for (const auto& c : cases) {
    std::string first;
    for (int rep = 0; rep < 20; ++rep) {
      std::string raw = run_cli(c.cmd + " 2>/dev/null");
      std::string canon;
      try {
        canon = c.kind == Case::kJson   ? canonical_json(raw)
                : c.kind == Case::kCsv  ? canonical_csv(raw)
                                        : raw;
      } catch (...) {
        canon = "<unparseable> " + raw;
      }
      if (rep == 0)
        first = canon;
      else if (canon != first) {
        pass = false;
        d << ' ' << c.name << "#rep" << rep << " diverged;";
        break;
      }
    }
  }
  if (pass) d << "all subcommands byte-identical across 20 repeats";
  report("9. CLI determinism, 20 repeats", pass, d.str(), seconds_since(t0));
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  std::string only;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) cli = argv[++i];
    if (arg == "--only" && i + 1 < argc) only = argv[++i];
  }
  auto want = [&](const char* key) { return only.empty() || only == key; };

  if (want("1")) criterion_oracle_equivalence();
  std::vector<PermGroup> groups;
  if (want("2") || want("3") || want("7")) {
    ReductionStats st = run_reduction_battery();
    criterion_reduction(st);
    groups = std::move(st.groups);
  }
  if (want("4")) criterion_characteristic_sampler();
  if (want("5")) criterion_suborbits(&groups);
  if (want("6")) criterion_sampler_distribution();
  if (want("7")) criterion_structural(groups);
  if (want("8")) criterion_faithful_formula();
  if (want("9")) criterion_cli_determinism(cli);

  int failed = 0;
  for (const auto& c : results)
    if (!c.passed) ++failed;
  std::printf("\n%zu criteria run, %d failed\n", results.size(), failed);
  return failed;
}
