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

// Algorithm registry and run reports shared by the command-line tool and the
// benchmark sweeps.

#pragma once

#include <chrono>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ndd/greedy.hpp"
#include "ndd/io.hpp"
#include "ndd/lagrangian.hpp"
#include "ndd/lp.hpp"
#include "ndd/oracle.hpp"
#include "ndd/parallel.hpp"
#include "ndd/pipage.hpp"

namespace ndd {

enum class Algorithm {
  kOracle,
  kGreedy,
  kNaive,
  kPipageOof,
  kPipageOou,
  kPipageOes,
  kLagIbPipage,
  kLagObPipage,
  kLagObIlp,
};

inline constexpr Algorithm kAllAlgorithms[] = {
    Algorithm::kOracle,      Algorithm::kGreedy,      Algorithm::kNaive,
    Algorithm::kPipageOof,   Algorithm::kPipageOou,   Algorithm::kPipageOes,
    Algorithm::kLagIbPipage, Algorithm::kLagObPipage, Algorithm::kLagObIlp};

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kOracle: return "oracle";
    case Algorithm::kGreedy: return "greedy";
    case Algorithm::kNaive: return "naive";
    case Algorithm::kPipageOof: return "pipage-oof";
    case Algorithm::kPipageOou: return "pipage-oou";
    case Algorithm::kPipageOes: return "pipage-oes";
    case Algorithm::kLagIbPipage: return "lag-ib-pipage";
    case Algorithm::kLagObPipage: return "lag-ob-pipage";
    case Algorithm::kLagObIlp: return "lag-ob-ilp";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view s) {
  for (Algorithm a : kAllAlgorithms) {
    if (to_string(a) == s) return a;
  }
  throw InvalidInput("unknown algorithm: " + std::string(s));
}

inline bool is_pipage(Algorithm a) {
  return a == Algorithm::kPipageOof || a == Algorithm::kPipageOou || a == Algorithm::kPipageOes;
}
inline bool is_lagrangian(Algorithm a) {
  return a == Algorithm::kLagIbPipage || a == Algorithm::kLagObPipage ||
         a == Algorithm::kLagObIlp;
}

// Pipage needs a single capacity family; the Lagrangian loops solve FULL.
inline bool compatible(Algorithm a, Variant v) {
  if (is_pipage(a)) return v != Variant::kFull;
  if (is_lagrangian(a)) return v == Variant::kFull;
  return true;
}

struct RunOptions {
  double time_limit_s = lp::kInf;
  std::uint64_t seed = 0;
  bool parallel = true;
};

struct RunOutcome {
  Schedule schedule;
  std::optional<double> f;         // f of the fractional stage
  std::optional<double> lp_bound;  // LP optimum (upper bound on opt)
  bool partial = false;            // a time limit cut the run short
  std::string trace_csv;           // pipage or Lagrangian trace
};

// LP optimum of the variant's surrogate; IB decouples per DS.
inline LpSolution solve_variant_lp(const Problem& p, Variant v, double time_limit_s,
                                   bool parallel) {
  if (v == Variant::kInbound) {
    const int J = p.instance().num_dss;
    std::vector<LpSolution> parts(J);
    parallel_for(J, [&](int j) {
      LpOptions lo;
      lo.time_limit_s = time_limit_s;
      parts[j] = solve_lp(build_ib_lp_for_ds(p, j), lo);
    }, parallel ? worker_count() : 1);
    LpSolution out;
    out.x = FractionalSolution::zeros(p.network());
    for (const LpSolution& s : parts) {
      out.objective += s.objective;
      out.iterations += s.iterations;
      if (s.status != lp::Status::kOptimal) out.status = s.status;
      for (std::size_t k = 0; k < s.x.x.size(); ++k) {
        if (s.x.x[k] != 0.0) out.x.x[k] = s.x.x[k];
      }
    }
    return out;
  }
  LpOptions lo;
  lo.time_limit_s = time_limit_s;
  return solve_lp(build_lp(p, v), lo);
}

inline RunOutcome run_algorithm(const Problem& p, Algorithm a, Variant v,
                                const RunOptions& opt = {}) {
  if (!compatible(a, v)) {
    throw InvalidInput(std::string(to_string(a)) + " does not support variant " +
                       std::string(to_string(v)));
  }
  RunOutcome out;
  switch (a) {
    case Algorithm::kOracle:
      out.schedule = solve_exact(p, v).schedule;
      break;
    case Algorithm::kGreedy:
      out.schedule = greedy_solve(p, v);
      break;
    case Algorithm::kNaive:
      out.schedule = naive_benchmark(p, v, opt.seed);
      break;
    case Algorithm::kPipageOof:
    case Algorithm::kPipageOou:
    case Algorithm::kPipageOes: {
      const LpSolution lp = solve_variant_lp(p, v, opt.time_limit_s, opt.parallel);
      out.partial = lp.status != lp::Status::kOptimal;
      out.f = eval_f(p, lp.x);
      if (!out.partial) out.lp_bound = lp.objective;
      const PipageStrategy s = a == Algorithm::kPipageOof   ? PipageStrategy::kOOF
                               : a == Algorithm::kPipageOou ? PipageStrategy::kOOU
                                                            : PipageStrategy::kOES;
      PipageOptions po;
      po.parallel = opt.parallel;
      const PipageResult r = pipage_round(p, lp.x, v, s, po);
      out.schedule = r.schedule;
      std::ostringstream csv;
      r.trace.write_csv(csv);
      out.trace_csv = csv.str();
      break;
    }
    case Algorithm::kLagIbPipage:
    case Algorithm::kLagObPipage:
    case Algorithm::kLagObIlp: {
      LagrangianOptions lo;
      lo.time_limit_s = opt.time_limit_s;
      lo.parallel = opt.parallel;
      const LagrangianMethod m = a == Algorithm::kLagIbPipage   ? LagrangianMethod::kIbRelaxPipage
                                 : a == Algorithm::kLagObPipage ? LagrangianMethod::kObRelaxPipage
                                                                : LagrangianMethod::kObRelaxIlp;
      const LagrangianResult r = solve_lagrangian(p, m, lo);
      out.schedule = r.schedule;
      out.partial = r.time_limited;
      std::ostringstream csv;
      r.state.write_csv(csv);
      out.trace_csv = csv.str();
      break;
    }
  }
  return out;
}

// (g - g_n) / (g_ref - g_n); undefined when the reference equals g_n.
inline std::optional<double> excess_coverage(double g, double g_naive, double g_ref) {
  if (g_ref == g_naive) return std::nullopt;
  return (g - g_naive) / (g_ref - g_naive);
}

struct SolveReport {
  std::string algorithm;
  Variant variant = Variant::kOutbound;
  double g = 0.0;
  std::optional<double> f;
  std::optional<double> lp_bound;
  double g_naive = 0.0;
  double g_ref = 0.0;
  std::string g_ref_source;  // "oracle" or "best-known"
  std::optional<double> e_cov;
  double wall_ms = 0.0;
  std::string trace_path;
  bool feasible = false;
  std::vector<Violation> violations;
  std::string status = "ok";

  Json to_json() const {
    auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
    Json viol = Json::array();
    for (const Violation& v : violations) {
      Json e = {{"kind", std::string(to_string(v.kind))},
                {"node", v.node + 1},
                {"slot", v.slot},
                {"count", v.count},
                {"capacity", v.capacity}};
      if (v.other >= 0) e["ds"] = v.other + 1;
      viol.push_back(std::move(e));
    }
    return {{"algorithm", algorithm},
            {"variant", std::string(to_string(variant))},
            {"status", status},
            {"g", g},
            {"f", opt(f)},
            {"lp_bound", opt(lp_bound)},
            {"g_naive", g_naive},
            {"g_ref", g_ref},
            {"g_ref_source", g_ref_source},
            {"e_cov", opt(e_cov)},
            {"wall_ms", wall_ms},
            {"trace", trace_path.empty() ? Json(nullptr) : Json(trace_path)},
            {"feasible", feasible},
            {"violations", std::move(viol)}};
  }
};

}  // namespace ndd
