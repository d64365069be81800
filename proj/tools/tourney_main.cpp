#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tourney/autgroup.hpp"
#include "tourney/generators.hpp"
#include "tourney/tournament_io.hpp"

using json = nlohmann::json;
using namespace tourney;
using Clock = std::chrono::steady_clock;

namespace {

struct CommonOpts {
  std::uint64_t seed = 0;
  double epsilon = 0.05;
  int error_exponent = 0;  // > 0: epsilon = n^-c instead of the flat budget
  std::string mode = "desk";
  std::string oracle = "internal";
  int oracle_timeout_ms = 30000;
  std::string json_path;
  bool trace = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--seed", o.seed, "root RNG seed");
  cmd->add_option("--epsilon", o.epsilon, "per-call error budget for the sampler")
      ->check(CLI::Range(1e-9, 0.999999));
  cmd->add_option("--error-exponent", o.error_exponent,
                  "use epsilon = n^-c per call instead of the flat budget");
  cmd->add_option("--mode", o.mode, "sampler constants: desk or faithful")
      ->check(CLI::IsMember({"desk", "faithful"}));
  cmd->add_option("--oracle", o.oracle, "asymmetry oracle: internal or exec:<command>");
  cmd->add_option("--oracle-timeout-ms", o.oracle_timeout_ms, "external oracle timeout");
  cmd->add_option("--json", o.json_path, "write the JSON report to this path");
  cmd->add_flag("--trace", o.trace, "include the recursion case trace in the report");
}

std::unique_ptr<AsymmetryOracle> make_oracle(const CommonOpts& o) {
  if (o.oracle == "internal") return std::make_unique<BruteAsymmetryOracle>();
  const std::string prefix = "exec:";
  if (o.oracle.rfind(prefix, 0) == 0)
    return std::make_unique<ProcessAsymmetryOracle>(o.oracle.substr(prefix.size()),
                                                    o.oracle_timeout_ms);
  fail(Errc::bad_parameter, "oracle must be 'internal' or 'exec:<command>'");
}

SamplerConfig sampler_config(const CommonOpts& o) {
  return o.mode == "faithful" ? SamplerConfig::faithful_defaults() : SamplerConfig{};
}

SuborbitOptions suborbit_options(const CommonOpts& o) {
  SuborbitOptions opts;
  opts.sampler = sampler_config(o);
  if (o.error_exponent > 0) {
    opts.error_exponent = o.error_exponent;
    opts.epsilon_override = 0.0;
  } else {
    opts.epsilon_override = o.epsilon;
  }
  return opts;
}

Tournament read_input(const std::string& path) {
  if (path == "-") return read_tournament(std::cin);
  return read_tournament_file(path);
}

void emit(const CommonOpts& o, const json& report) {
  if (o.json_path.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    std::ofstream out(o.json_path, std::ios::binary);
    if (!out) fail(Errc::parse_error, "cannot open " + o.json_path);
    out << report.dump(2) << '\n';
  }
}

json perm_list(const std::vector<Perm>& ps) {
  json a = json::array();
  for (const Perm& p : ps) a.push_back(p.images());
  return a;
}

json stats_json(const CommonOpts& o, OracleStack* stack, std::uint64_t samples, double wall_ms,
                const std::string& outcome) {
  json s;
  s["seed"] = o.seed;
  s["mode"] = o.mode;
  s["epsilon"] = o.epsilon;
  s["error_exponent"] = o.error_exponent;
  s["o1_calls"] = stack ? stack->o1_calls() : 0;
  s["o2_calls"] = stack ? stack->o2_calls() : 0;
  s["o3_calls"] = stack ? stack->o3_calls() : 0;
  s["samples"] = samples;
  s["wall_ms"] = wall_ms;
  s["outcome"] = outcome;
  return s;
}

json trace_json(const CaseTrace& trace) {
  json a = json::array();
  for (const auto& node : trace.nodes) {
    json n;
    n["case"] = node.case_id;
    n["n"] = node.n;
    n["color_class_sizes"] = node.color_class_sizes;
    n["part_sizes"] = node.part_sizes;
    n["o1_calls"] = node.o1_calls;
    n["o2_calls"] = node.o2_calls;
    n["o3_calls"] = node.o3_calls;
    a.push_back(std::move(n));
  }
  return a;
}

Tournament tournament_from_spec(const std::string& spec, RngStream& rng) {
  auto bad = [&]() -> Tournament {
    fail(Errc::bad_parameter, "unknown tournament spec: " + spec);
  };
  if (spec == "c3") return c3();
  auto colon = spec.find(':');
  if (colon == std::string::npos) return bad();
  std::string family = spec.substr(0, colon);
  int value = 0;
  try {
    value = std::stoi(spec.substr(colon + 1));
  } catch (...) {
    return bad();
  }
  if (family == "transitive") return transitive_tournament(value);
  if (family == "paley") return paley_tournament(value);
  if (family == "circulant") return circulant_tournament(value);
  if (family == "random") {
    RngStream sub = rng.split();
    return random_tournament(value, sub);
  }
  return bad();
}

int cmd_gen(const CommonOpts& o, const std::string& family, int n, int q,
            const std::string& residues, const std::string& inner, const std::string& outer,
            const std::string& out_path) {
  RngStream rng(o.seed);
  Tournament t;
  if (family == "random") {
    t = random_tournament(n, rng);
  } else if (family == "transitive") {
    t = transitive_tournament(n);
  } else if (family == "paley") {
    t = paley_tournament(q > 0 ? q : n);
  } else if (family == "circulant") {
    if (residues.empty()) {
      t = circulant_tournament(n);
    } else {
      std::vector<int> rs;
      std::stringstream ss(residues);
      std::string tok;
      while (std::getline(ss, tok, ',')) rs.push_back(std::stoi(tok));
      t = circulant_tournament(n, rs);
    }
  } else if (family == "lexprod") {
    RngStream r1 = rng.split(), r2 = rng.split();
    t = lex_product(tournament_from_spec(outer, r1), tournament_from_spec(inner, r2));
  } else {
    fail(Errc::bad_parameter, "unknown family: " + family);
  }
  if (out_path.empty() || out_path == "-")
    std::cout << to_text(t);
  else
    write_tournament_file(out_path, t);
  return 0;
}

int cmd_aut(const CommonOpts& o, const std::string& input, const std::string& method) {
  Tournament t = read_input(input);
  auto t0 = Clock::now();
  json report;
  if (method == "brute") {
    PermGroup g = brute_aut(t);
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    report["order"] = g.order();
    report["generators"] = perm_list(g.generators());
    report["verified"] = verify_generators(t, g);
    report["stats"] = stats_json(o, nullptr, 0, ms, "ok");
  } else {
    auto oracle = make_oracle(o);
    OracleStack stack(*oracle);
    std::uint64_t samples = 0;
    SuborbitOracleFn suborbits =
        sampled_suborbit_oracle(stack, suborbit_options(o), nullptr, &samples);
    RngStream rng(o.seed);
    CaseTrace trace;
    PermGroup g = aut_group(t, suborbits, rng, &trace, {}, &stack);
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    report["order"] = g.order();
    report["generators"] = perm_list(g.generators());
    report["verified"] = verify_generators(t, g);
    report["stats"] = stats_json(o, &stack, samples, ms, "ok");
    if (o.trace) report["trace"] = trace_json(trace);
  }
  emit(o, report);
  return 0;
}

int cmd_iso(const CommonOpts& o, const std::string& input_a, const std::string& input_b) {
  Tournament a = read_input(input_a);
  Tournament b = read_input(input_b);
  auto t0 = Clock::now();
  auto oracle = make_oracle(o);
  OracleStack stack(*oracle);
  std::uint64_t samples = 0;
  SuborbitOracleFn suborbits =
      sampled_suborbit_oracle(stack, suborbit_options(o), nullptr, &samples);
  RngStream rng(o.seed);
  CaseTrace trace;
  std::optional<Perm> witness;
  std::string outcome = "ok";
  if (a.size() != b.size()) {
    outcome = "size_mismatch";
  } else {
    witness = iso_tournaments(a, b, suborbits, rng, o.trace ? &trace : nullptr);
  }
  double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  json report;
  report["isomorphic"] = witness.has_value();
  if (witness) report["witness"] = witness->images();
  report["stats"] = stats_json(o, &stack, samples, ms, outcome);
  if (o.trace) report["trace"] = trace_json(trace);
  emit(o, report);
  return 0;
}

int cmd_suborbits(const CommonOpts& o, const std::string& input) {
  Tournament t = read_input(input);
  auto t0 = Clock::now();
  auto oracle = make_oracle(o);
  OracleStack stack(*oracle);
  RngStream rng(o.seed);
  SuborbitOptions opts = suborbit_options(o);
  std::vector<RoundLog> rounds;
  std::uint64_t samples = 0;
  SuborbitResult r = invariant_suborbits(t, stack, opts, rng, &rounds, &samples);
  double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

  json report;
  report["partition"] = r.pi.parts;
  report["certificates"] = perm_list(r.certificates);
  report["epsilon"] = opts.epsilon_for(t.size());
  json rl = json::array();
  for (const auto& round : rounds) {
    json rj;
    rj["i"] = round.i;
    rj["eps_prime"] = round.eps_prime;
    rj["T_drawn"] = round.samples;
    rj["outcome"] = outcome_name(round.outcome);
    if (round.cutoff) rj["cutoff"] = *round.cutoff;
    rl.push_back(std::move(rj));
  }
  report["rounds"] = rl;
  report["stats"] = stats_json(o, &stack, samples, ms, "ok");
  emit(o, report);
  return 0;
}

int cmd_sample(const CommonOpts& o, const std::string& probs_arg) {
  std::vector<double> probs;
  {
    std::stringstream ss(probs_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) probs.push_back(std::stod(tok));
  }
  if (probs.empty()) fail(Errc::bad_parameter, "--probs must list at least one probability");
  double sum = 0;
  for (double p : probs) {
    if (p <= 0) fail(Errc::bad_parameter, "probabilities must be positive");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    fail(Errc::bad_parameter, "probabilities must sum to 1 (within 1e-9)");
  for (double& p : probs) p /= sum;

  std::vector<double> cumulative;
  double acc = 0;
  for (double p : probs) cumulative.push_back(acc += p);
  auto draw = [&](RngStream& rng) {
    double x = rng.unit();
    for (std::size_t i = 0; i < cumulative.size(); ++i)
      if (x < cumulative[i]) return static_cast<int>(i);
    return static_cast<int>(cumulative.size()) - 1;
  };

  auto t0 = Clock::now();
  RngStream rng(o.seed);
  auto ext = extract_characteristic<int>(draw, sampler_config(o), o.epsilon, rng);
  double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

  std::sort(ext.subset.begin(), ext.subset.end());
  json report;
  report["set"] = ext.subset;
  json rl = json::array();
  for (const auto& round : ext.rounds) {
    json rj;
    rj["i"] = round.i;
    rj["eps_prime"] = round.eps_prime;
    rj["T_drawn"] = round.samples;
    rj["outcome"] = outcome_name(round.outcome);
    if (round.cutoff) rj["cutoff"] = *round.cutoff;
    rl.push_back(std::move(rj));
  }
  report["rounds"] = rl;
  report["stats"] = stats_json(o, nullptr, ext.total_samples, ms, "ok");
  emit(o, report);
  return 0;
}

int cmd_bench(const CommonOpts& o, const std::string& families_arg, int n_min, int n_max,
              int step, int reps, const std::string& out_path) {
  std::vector<std::string> families;
  {
    std::stringstream ss(families_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) families.push_back(tok);
  }
  std::ostringstream csv;
  csv << "n,family,method,order_match,o1_calls,samples,ms\n";
  for (const std::string& family : families) {
    for (int n = n_min; n <= n_max; n += step) {
      for (int rep = 0; rep < reps; ++rep) {
        Tournament t;
        RngStream gen(o.seed + 1000003ull * rep + n);
        try {
          if (family == "random")
            t = random_tournament(n, gen);
          else if (family == "transitive")
            t = transitive_tournament(n);
          else if (family == "paley")
            t = paley_tournament(n);
          else if (family == "circulant")
            t = circulant_tournament(n);
          else
            fail(Errc::bad_parameter, "unknown bench family: " + family);
        } catch (const Error&) {
          continue;  // family not defined at this n (paley primality, odd circulant)
        }
        std::uint64_t brute_order = brute_aut(t).order();
        for (const std::string method : {"brute", "reduction"}) {
          auto t0 = Clock::now();
          std::uint64_t order = 0, o1 = 0, samples = 0;
          if (method == "brute") {
            order = brute_aut(t).order();
          } else {
            auto oracle = make_oracle(o);
            OracleStack stack(*oracle);
            std::uint64_t drawn = 0;
            SuborbitOracleFn suborbits =
                sampled_suborbit_oracle(stack, suborbit_options(o), nullptr, &drawn);
            RngStream rng(o.seed + 7907ull * rep + n);
            order = aut_group(t, suborbits, rng).order();
            o1 = stack.o1_calls();
            samples = drawn;
          }
          double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
          csv << n << ',' << family << ',' << method << ',' << (order == brute_order ? 1 : 0)
              << ',' << o1 << ',' << samples << ',' << ms << '\n';
        }
      }
    }
  }
  if (out_path.empty() || out_path == "-")
    std::cout << csv.str();
  else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail(Errc::parse_error, "cannot open " + out_path);
    out << csv.str();
  }
  return 0;
}

// Line protocol used by --oracle exec: tournaments in, asym/sym out.
int cmd_serve_oracle() {
  while (std::cin.peek() != EOF) {
    Tournament t;
    try {
      t = read_tournament(std::cin);
    } catch (const Error&) {
      break;  // EOF or garbage terminates the session
    }
    std::cout << (brute_is_asymmetric(t) ? "asym" : "sym") << std::endl;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tournament symmetry toolkit"};
  app.require_subcommand(1);

  CommonOpts common;

  auto* gen = app.add_subcommand("gen", "generate a tournament instance");
  std::string family, residues, inner = "c3", outer = "c3", gen_out;
  int gen_n = 0, gen_q = 0;
  gen->add_option("--family", family, "random|transitive|paley|circulant|lexprod")->required();
  gen->add_option("--n", gen_n, "vertex count");
  gen->add_option("--q", gen_q, "paley parameter");
  gen->add_option("--residues", residues, "circulant residue set, comma separated");
  gen->add_option("--inner", inner, "lexprod inner spec (c3, transitive:N, paley:Q, ...)");
  gen->add_option("--outer", outer, "lexprod outer spec");
  gen->add_option("--out", gen_out, "output path (default stdout)");
  add_common(gen, common);

  auto* aut = app.add_subcommand("aut", "compute automorphism group generators");
  std::string aut_input, aut_method = "reduction";
  aut->add_option("input", aut_input, "tournament file, or - for stdin")->required();
  aut->add_option("--method", aut_method, "reduction|brute")
      ->check(CLI::IsMember({"reduction", "brute"}));
  add_common(aut, common);

  auto* iso = app.add_subcommand("iso", "decide isomorphism with a verified witness");
  std::string iso_a, iso_b;
  iso->add_option("inputA", iso_a)->required();
  iso->add_option("inputB", iso_b)->required();
  add_common(iso, common);

  auto* sub = app.add_subcommand("suborbits", "invariant suborbits with certificates");
  std::string sub_input;
  sub->add_option("input", sub_input)->required();
  add_common(sub, common);

  auto* sample = app.add_subcommand("sample", "characteristic-subset extraction demo");
  std::string probs;
  sample->add_option("--probs", probs, "probability table, comma separated")->required();
  add_common(sample, common);

  auto* bench = app.add_subcommand("bench", "sweep instance sizes, emit CSV");
  std::string bench_families = "random,transitive,circulant", bench_out;
  int n_min = 3, n_max = 9, step = 2, reps = 1;
  bench->add_option("--families", bench_families, "comma separated family list");
  bench->add_option("--n-min", n_min);
  bench->add_option("--n-max", n_max);
  bench->add_option("--step", step);
  bench->add_option("--reps", reps);
  bench->add_option("--out", bench_out, "CSV path (default stdout)");
  add_common(bench, common);

  auto* serve = app.add_subcommand("serve-oracle", "answer asymmetry queries on stdin");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(common, family, gen_n, gen_q, residues, inner, outer, gen_out);
    if (aut->parsed()) return cmd_aut(common, aut_input, aut_method);
    if (iso->parsed()) return cmd_iso(common, iso_a, iso_b);
    if (sub->parsed()) return cmd_suborbits(common, sub_input);
    if (sample->parsed()) return cmd_sample(common, probs);
    if (bench->parsed())
      return cmd_bench(common, bench_families, n_min, n_max, step, reps, bench_out);
    if (serve->parsed()) return cmd_serve_oracle();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
