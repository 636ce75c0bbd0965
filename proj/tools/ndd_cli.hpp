// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Subcommands of the ndd tool. Each returns a process exit code:
// 0 ok, 1 usage, 2 infeasible or invalid input, 3 internal error.

#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ndd/ndd.hpp"

namespace ndd::cli {

enum ExitCode { kOk = 0, kUsage = 1, kInfeasible = 2, kInternal = 3 };

struct GenerateArgs {
  std::optional<std::uint64_t> seed;
  int fcs = 10;
  double ds_ratio = 2.0;
  int categories = 250;
  int slots = 28;
  int ob_cap = 1;
  int ib_cap = 1;
  std::string out;
  std::string meta;
};

struct SolveArgs {
  std::string instance;
  std::string algo;
  std::string variant;
  double time_limit = lp::kInf;
  std::uint64_t seed = 0;
  std::string out;
  std::string trace;
  std::string reference = "auto";
};

struct EvalArgs {
  std::string instance;
  std::string schedule;
  std::string variant = "full";
};

struct BenchArgs {
  std::vector<int> sizes = {2, 3};
  double ds_ratio = 2.0;
  int categories = 20;
  int slots = 28;
  int seeds = 3;
  std::uint64_t base_seed = 1;
  std::vector<std::string> algos;
  std::vector<std::string> variants = {"ob", "ib", "full"};
  int ob_cap = 1;
  int ib_cap = 1;
  double time_limit = 60.0;
  std::string out = "bench";
};

// Flag values that fail to parse are usage errors, not bad input data.
template <typename F>
auto flag_value(const char* flag, F&& parse) {
  try {
    return parse();
  } catch (const InvalidInput& e) {
    throw CLI::ValidationError(std::string(flag) + ": " + e.what());
  }
}

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

inline int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  GeneratorConfig cfg;
  cfg.seed = a.seed ? *a.seed : std::random_device{}() * 4294967296ULL + std::random_device{}();
  cfg.num_fcs = a.fcs;
  cfg.ds_ratio = a.ds_ratio;
  cfg.num_categories = a.categories;
  cfg.num_slots = a.slots;
  cfg.deadline_max = std::min(cfg.deadline_max, a.slots);
  cfg.deadline_min = std::min(cfg.deadline_min, cfg.deadline_max);
  cfg.ob_capacity = a.ob_cap;
  cfg.ib_capacity = a.ib_cap;
  const GeneratedInstance g = generate(cfg);
  write_text(a.out, dump(instance_to_json(g.instance)));
  const std::string meta = a.meta.empty() ? a.out + ".meta.json" : a.meta;
  write_text(meta, dump(metadata_to_json(g)));
  out << dump(Json{{"seed", cfg.seed}, {"out", a.out}, {"meta", meta}});
  return kOk;
}

inline Variant default_variant(Algorithm a) {
  return is_lagrangian(a) ? Variant::kFull : Variant::kOutbound;
}

struct Reference {
  double value = 0.0;
  std::string source;
};

inline int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const Algorithm algo = flag_value("--algo", [&] { return parse_algorithm(a.algo); });
  const Variant variant = a.variant.empty()
                              ? default_variant(algo)
                              : flag_value("--variant", [&] { return parse_variant(a.variant); });
  if (!compatible(algo, variant)) {
    throw CLI::ValidationError("--algo " + a.algo + " does not support --variant " +
                               std::string(to_string(variant)));
  }
  const Problem p(read_instance(a.instance));
  RunOptions ro;
  ro.time_limit_s = a.time_limit;
  ro.seed = a.seed;
  const auto t0 = std::chrono::steady_clock::now();
  const RunOutcome run = run_algorithm(p, algo, variant, ro);
  const double wall = ms_since(t0);

  Schedule schedule = run.schedule;
  if (!a.out.empty()) {
    write_text(a.out, dump(schedule_to_json(schedule)));
    schedule = read_schedule(a.out, &p.instance());
  }
  if (!a.trace.empty() && !run.trace_csv.empty()) write_text(a.trace, run.trace_csv);

  SolveReport rep;
  rep.algorithm = a.algo;
  rep.variant = variant;
  rep.g = eval_g(p, schedule);
  rep.f = run.f;
  rep.lp_bound = run.lp_bound;
  rep.g_naive = eval_g(p, naive_benchmark(p, variant, a.seed));
  const bool use_oracle = a.reference == "oracle" || (a.reference == "auto" && oracle_fits(p));
  if (use_oracle) {
    rep.g_ref = algo == Algorithm::kOracle ? rep.g : solve_exact(p, variant).value;
    rep.g_ref_source = "oracle";
  } else {
    rep.g_ref = std::max(rep.g, rep.g_naive);
    rep.g_ref_source = "best-known";
  }
  rep.e_cov = excess_coverage(rep.g, rep.g_naive, rep.g_ref);
  rep.wall_ms = wall;
  rep.trace_path = a.trace;
  const FeasibilityReport fr = check_feasible(schedule, p.instance(), variant);
  rep.feasible = fr.ok();
  rep.violations = fr.violations;
  if (run.partial) rep.status = "time-limit";
  out << dump(rep.to_json());
  if (!rep.feasible) throw InternalError("solver produced an infeasible schedule");
  return kOk;
}

inline int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const Variant variant = flag_value("--variant", [&] { return parse_variant(a.variant); });
  const Problem p(read_instance(a.instance));
  const Schedule s = read_schedule(a.schedule, &p.instance());
  const FeasibilityReport fr = check_feasible(s, p.instance(), variant);
  SolveReport rep;
  rep.algorithm = "eval";
  rep.variant = variant;
  rep.feasible = fr.ok();
  rep.violations = fr.violations;
  if (rep.feasible) {
    rep.g = eval_g(p, s);
    rep.f = eval_f(p, s);
  } else {
    // Coverage of trucks on allowed slots only.
    Schedule allowed;
    for (const Truck& t : s) {
      if (t.slot <= departure_deadline(p.instance(), t.fc, t.ds)) allowed.insert(t);
    }
    rep.g = eval_g(p, allowed);
    rep.f = eval_f(p, allowed);
    rep.status = "infeasible";
  }
  rep.g_naive = eval_g(p, naive_benchmark(p, variant, 0));
  rep.g_ref = std::max(rep.g, rep.g_naive);
  rep.g_ref_source = "best-known";
  rep.e_cov = excess_coverage(rep.g, rep.g_naive, rep.g_ref);
  out << dump(rep.to_json());
  return rep.feasible ? kOk : kInfeasible;
}

struct BenchRow {
  int fcs = 0;
  int dss = 0;
  std::uint64_t seed = 0;
  std::string variant;
  std::string algo;
  std::string status;
  double g = 0.0;
  std::optional<double> e_cov;
  std::string ref_source;
  std::optional<double> lp_bound;
  double wall_ms = 0.0;
  std::string error;
};

inline std::string fmt(const std::optional<double>& v) {
  if (!v) return "";
  std::ostringstream ss;
  ss.precision(12);
  ss << *v;
  return ss.str();
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline int cmd_bench(const BenchArgs& a, std::ostream& out) {
  std::vector<Algorithm> algos;
  if (a.algos.empty()) {
    algos.assign(std::begin(kAllAlgorithms), std::end(kAllAlgorithms));
  } else {
    for (const auto& s : a.algos) {
      algos.push_back(flag_value("--algos", [&] { return parse_algorithm(s); }));
    }
  }
  std::vector<Variant> variants;
  for (const auto& s : a.variants) {
    variants.push_back(flag_value("--variants", [&] { return parse_variant(s); }));
  }
  if (a.seeds < 1) throw CLI::ValidationError("--seeds must be >= 1");

  struct Cell {
    int fcs;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (int fcs : a.sizes) {
    if (fcs < 1) throw CLI::ValidationError("--sizes entries must be >= 1");
    for (int s = 0; s < a.seeds; ++s) cells.push_back({fcs, a.base_seed + static_cast<std::uint64_t>(s)});
  }

  std::vector<std::vector<BenchRow>> rows(cells.size());
  parallel_for(static_cast<int>(cells.size()), [&](int c) {
    GeneratorConfig cfg;
    cfg.seed = cells[c].seed;
    cfg.num_fcs = cells[c].fcs;
    cfg.ds_ratio = a.ds_ratio;
    cfg.num_categories = a.categories;
    cfg.num_slots = a.slots;
    cfg.deadline_max = std::min(cfg.deadline_max, a.slots);
    cfg.deadline_min = std::min(cfg.deadline_min, cfg.deadline_max);
    cfg.ob_capacity = a.ob_cap;
    cfg.ib_capacity = a.ib_cap;
    const Problem p(generate(cfg).instance);
    RunOptions ro;
    ro.time_limit_s = a.time_limit;
    ro.seed = cells[c].seed;
    ro.parallel = false;
    for (Variant v : variants) {
      const double g_naive = eval_g(p, naive_benchmark(p, v, ro.seed));
      std::vector<BenchRow> cell_rows;
      std::optional<double> oracle_value;
      for (Algorithm algo : algos) {
        if (!compatible(algo, v)) continue;
        BenchRow r;
        r.fcs = cells[c].fcs;
        r.dss = p.instance().num_dss;
        r.seed = cells[c].seed;
        r.variant = std::string(to_string(v));
        r.algo = std::string(to_string(algo));
        const auto t0 = std::chrono::steady_clock::now();
        try {
          const RunOutcome run = run_algorithm(p, algo, v, ro);
          r.wall_ms = ms_since(t0);
          if (!is_feasible(run.schedule, p.instance(), v)) {
            throw InternalError("infeasible schedule");
          }
          r.g = eval_g(p, run.schedule);
          r.lp_bound = run.lp_bound;
          r.status = run.partial ? "time-limit" : "ok";
          if (algo == Algorithm::kOracle) oracle_value = r.g;
        } catch (const std::exception& e) {
          r.wall_ms = ms_since(t0);
          r.status = "error";
          r.error = e.what();
        }
        cell_rows.push_back(std::move(r));
      }
      double best = g_naive;
      for (const BenchRow& r : cell_rows) {
        if (r.status != "error") best = std::max(best, r.g);
      }
      const double ref = oracle_value ? *oracle_value : best;
      for (BenchRow& r : cell_rows) {
        r.ref_source = oracle_value ? "oracle" : "best-known";
        if (r.status != "error") r.e_cov = excess_coverage(r.g, g_naive, ref);
        rows[c].push_back(std::move(r));
      }
    }
  });

  std::filesystem::create_directories(a.out);
  std::ostringstream runs;
  runs << "fcs,dss,seed,variant,algo,status,g,e_cov,ref_source,lp_bound,wall_ms,error\n";
  struct Agg {
    int runs = 0;
    int ecov_runs = 0;
    double g = 0.0;
    double e_cov = 0.0;
    double wall = 0.0;
  };
  std::map<std::tuple<int, int, std::string, std::string>, Agg> agg;
  int failures = 0;
  int total = 0;
  for (const auto& cell : rows) {
    for (const BenchRow& r : cell) {
      ++total;
      runs << r.fcs << ',' << r.dss << ',' << r.seed << ',' << r.variant << ',' << r.algo << ','
           << r.status << ',' << fmt(r.g) << ',' << fmt(r.e_cov) << ',' << r.ref_source << ','
           << fmt(r.lp_bound) << ',' << fmt(r.wall_ms) << ',' << csv_field(r.error) << '\n';
      if (r.status == "error") {
        ++failures;
        continue;
      }
      Agg& g = agg[{r.fcs, r.dss, r.variant, r.algo}];
      ++g.runs;
      g.g += r.g;
      g.wall += r.wall_ms;
      if (r.e_cov) {
        ++g.ecov_runs;
        g.e_cov += *r.e_cov;
      }
    }
  }
  std::ostringstream summary;
  summary << "fcs,dss,variant,algo,runs,mean_g,mean_e_cov,mean_wall_ms\n";
  for (const auto& [key, g] : agg) {
    const auto& [fcs, dss, variant, algo] = key;
    summary << fcs << ',' << dss << ',' << variant << ',' << algo << ',' << g.runs << ','
            << fmt(g.g / g.runs) << ','
            << (g.ecov_runs ? fmt(g.e_cov / g.ecov_runs) : std::string()) << ','
            << fmt(g.wall / g.runs) << '\n';
  }
  const std::string runs_path = (std::filesystem::path(a.out) / "runs.csv").string();
  const std::string summary_path = (std::filesystem::path(a.out) / "summary.csv").string();
  write_text(runs_path, runs.str());
  write_text(summary_path, summary.str());
  out << dump(Json{{"runs", total}, {"failures", failures}, {"runs_csv", runs_path},
                   {"summary_csv", summary_path}});
  return total > 0 && failures == total ? kInternal : kOk;
}

// Parses argv and dispatches. Output goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Last-truck scheduling for next-day delivery networks"};
  app.require_subcommand(1);

  GenerateArgs ga;
  auto* gen = app.add_subcommand("generate", "Write a seeded synthetic instance");
  gen->add_option("--seed", ga.seed, "Random seed (drawn and printed if omitted)");
  gen->add_option("--fcs", ga.fcs, "Number of FCs")->check(CLI::PositiveNumber);
  gen->add_option("--ds-ratio", ga.ds_ratio, "DSs per FC")->check(CLI::PositiveNumber);
  gen->add_option("--categories", ga.categories, "Product categories")->check(CLI::PositiveNumber);
  gen->add_option("--slots", ga.slots, "Timeslots")->check(CLI::PositiveNumber);
  gen->add_option("--ob-cap", ga.ob_cap, "Outbound capacity per FC and slot")->check(CLI::PositiveNumber);
  gen->add_option("--ib-cap", ga.ib_cap, "Inbound capacity per DS and slot")->check(CLI::PositiveNumber);
  gen->add_option("--out", ga.out, "Instance file")->required();
  gen->add_option("--meta", ga.meta, "Metadata sidecar (default: <out>.meta.json)");

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Run an algorithm on an instance");
  solve->add_option("instance", sa.instance, "Instance file")->required();
  solve->add_option("--algo", sa.algo, "Algorithm")->required();
  solve->add_option("--variant", sa.variant, "ob, ib or full");
  solve->add_option("--time-limit", sa.time_limit, "Seconds")->check(CLI::NonNegativeNumber);
  solve->add_option("--seed", sa.seed, "Seed of the naive benchmark");
  solve->add_option("--out", sa.out, "Schedule file");
  solve->add_option("--trace", sa.trace, "Trace CSV");
  solve->add_option("--reference", sa.reference, "E_cov reference: auto, oracle or best-known")
      ->check(CLI::IsMember({"auto", "oracle", "best-known"}));

  EvalArgs ea;
  auto* ev = app.add_subcommand("eval", "Recompute g, f and feasibility of a schedule");
  ev->add_option("instance", ea.instance, "Instance file")->required();
  ev->add_option("schedule", ea.schedule, "Schedule file")->required();
  ev->add_option("--variant", ea.variant, "ob, ib or full");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Run a benchmark sweep");
  bench->add_option("--sizes", ba.sizes, "FC counts")->delimiter(',');
  bench->add_option("--ds-ratio", ba.ds_ratio, "DSs per FC")->check(CLI::PositiveNumber);
  bench->add_option("--categories", ba.categories, "Product categories")->check(CLI::PositiveNumber);
  bench->add_option("--slots", ba.slots, "Timeslots")->check(CLI::PositiveNumber);
  bench->add_option("--seeds", ba.seeds, "Instances per size")->check(CLI::PositiveNumber);
  bench->add_option("--base-seed", ba.base_seed, "First seed");
  bench->add_option("--algos", ba.algos, "Algorithms (default: all)")->delimiter(',');
  bench->add_option("--variants", ba.variants, "Variants")->delimiter(',');
  bench->add_option("--ob-cap", ba.ob_cap, "Outbound capacity")->check(CLI::PositiveNumber);
  bench->add_option("--ib-cap", ba.ib_cap, "Inbound capacity")->check(CLI::PositiveNumber);
  bench->add_option("--time-limit", ba.time_limit, "Seconds per run")->check(CLI::NonNegativeNumber);
  bench->add_option("--out", ba.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*gen) return cmd_generate(ga, out);
    if (*solve) return cmd_solve(sa, out);
    if (*ev) return cmd_eval(ea, out);
    if (*bench) return cmd_bench(ba, out);
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error at " << e.what() << '\n';
    return kInfeasible;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace ndd::cli
