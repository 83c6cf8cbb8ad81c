#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "speclen/config.hpp"
#include "speclen/propagator.hpp"
#include "speclen/serialize.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace speclen;

struct GlobalFlags {
  std::string config_path;
  std::string out_path;
  std::string solver;
  std::optional<std::uint64_t> seed;
  bool force = false;
};

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitAxiom = 3;
constexpr int kExitSolver = 4;
constexpr int kAllPairsCap = 512;

ExperimentConfig load_with_overrides(const GlobalFlags& flags) {
  if (flags.config_path.empty()) throw ConfigError("config: --config PATH is required");
  ExperimentConfig cfg = load_config(flags.config_path);
  if (flags.seed.has_value()) cfg.solver.seed = *flags.seed;
  if (!flags.solver.empty()) cfg.solver.method = flags.solver;
  if (!flags.out_path.empty()) cfg.out_path = flags.out_path;
  return cfg;
}

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ConfigError("config: cannot open output path " + out_path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + out_path);
}

/** exact | subgradient, resolving auto by edge locality. */
DistanceSolver resolve_solver(const std::string& method, const SpectralTriple& t) {
  if (method == "exact" || (method == "auto" && t.edge_local)) {
    if (!t.edge_local)
      throw ConfigError("config: exact solver requires an edge-local triple; use subgradient");
    return DistanceSolver::edge_local_exact;
  }
  return DistanceSolver::subgradient;
}

double geodesic_oracle(const ExperimentConfig& cfg, const SpectralTriple& t, int p, int q) {
  const GeometryConfig& geo = cfg.geometry;
  switch (geo.kind) {
    case GeometryConfig::Kind::circle1d:
      return circle_geodesic(t.points[p].coords[0], t.points[q].coords[0], geo.length,
                             metric_function(geo.metric, geo.length), t.sites());
    case GeometryConfig::Kind::torus2d:
      return torus_geodesic({t.points[p].coords[0], t.points[p].coords[1]},
                            {t.points[q].coords[0], t.points[q].coords[1]}, geo.lx, geo.ly);
    case GeometryConfig::Kind::two_point:
      return graph_shortest_path(t.sites(), commutator_graph(t), p, q);
  }
  throw ConfigError("config: unreachable geometry kind");
}

int run_check(const GlobalFlags& flags) {
  const ExperimentConfig cfg = load_with_overrides(flags);
  const SpectralTriple t = build_triple(cfg.geometry);
  const AxiomReport report = check_axioms(t);

  double ind_min = 0.0, ind_max = 0.0;
  if (!report.indicator_norms.empty()) {
    ind_min = *std::min_element(report.indicator_norms.begin(), report.indicator_norms.end());
    ind_max = *std::max_element(report.indicator_norms.begin(), report.indicator_norms.end());
  }
  const auto [res_min, res_max] = std::minmax_element(report.resolvent_eigenvalues.begin(),
                                                      report.resolvent_eigenvalues.end());
  std::ostringstream csv;
  csv << "check_name,value,pass\n";
  const auto row = [&csv](const char* name, double value, bool pass) {
    csv << name << ',' << fmt17(value) << ',' << (pass ? 1 : 0) << '\n';
  };
  row("self_adjointness_residual", report.hermiticity, report.selfadjoint_ok);
  row("indicator_commutator_norm_min", ind_min, report.bounded_ok);
  row("indicator_commutator_norm_max", ind_max, report.bounded_ok);
  row("resolvent_eigenvalue_min", *res_min, *res_min > 0.0);
  row("resolvent_eigenvalue_max", *res_max, *res_max <= 1.0 + 1e-9);
  write_text(cfg.out_path, csv.str());
  return report.pass() ? kExitOk : kExitAxiom;
}

struct DistanceRow {
  int p = 0, q = 0;
  DistanceResult result;
  double geodesic = 0.0;
  std::string error;
};

std::vector<std::pair<int, int>> query_pairs(const ExperimentConfig& cfg, const SpectralTriple& t,
                                             bool force) {
  std::vector<std::pair<int, int>> pairs;
  if (cfg.query.all_pairs) {
    if (t.sites() > kAllPairsCap && !force) {
      std::ostringstream msg;
      msg << "config: all-pairs over " << t.sites() << " sites exceeds the cap of " << kAllPairsCap
          << "; pass --force to override";
      throw ConfigError(msg.str());
    }
    for (int p = 0; p < t.sites(); ++p)
      for (int q = p + 1; q < t.sites(); ++q) pairs.emplace_back(p, q);
  } else {
    pairs = cfg.query.pairs;
    for (const auto& [p, q] : pairs)
      if (p < 0 || p >= t.sites() || q < 0 || q >= t.sites())
        throw ConfigError("config: query pair site index out of range");
  }
  if (pairs.empty()) throw ConfigError("config: distance query needs pairs or all_pairs");
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::string distance_csv(const std::vector<DistanceRow>& rows) {
  std::ostringstream csv;
  csv << "p,q,spectral_distance,geodesic_distance,rel_error,solver,constraint_norm,iterations,"
         "lower_bound,converged\n";
  for (const DistanceRow& r : rows) {
    const double rel =
        r.geodesic > 0.0 ? std::abs(r.result.value - r.geodesic) / r.geodesic : 0.0;
    csv << r.p << ',' << r.q << ',' << fmt17(r.result.value) << ',' << fmt17(r.geodesic) << ','
        << fmt17(rel) << ','
        << (r.result.solver == DistanceSolver::edge_local_exact ? "edge_local_exact"
                                                                : "subgradient")
        << ',' << fmt17(r.result.constraint_norm) << ',' << r.result.iterations << ','
        << (r.result.lower_bound_only ? 1 : 0) << ',' << (r.result.converged ? 1 : 0) << '\n';
  }
  return csv.str();
}

std::vector<DistanceRow> compute_rows(const ExperimentConfig& cfg, const SpectralTriple& t,
                                      const std::vector<std::pair<int, int>>& pairs,
                                      DistanceSolver solver) {
  const SubgradientOpts opts = subgradient_opts(cfg.solver);
  std::vector<DistanceRow> rows(pairs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(thread_cap())
#endif
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
    DistanceRow& row = rows[i];
    row.p = pairs[i].first;
    row.q = pairs[i].second;
    try {
      row.result = solver == DistanceSolver::edge_local_exact
                       ? distance_exact(t, row.p, row.q)
                       : distance_subgradient(t, row.p, row.q, opts);
      row.geodesic = geodesic_oracle(cfg, t, row.p, row.q);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  }
  for (const DistanceRow& row : rows)
    if (!row.error.empty()) throw std::runtime_error(row.error);
  return rows;
}

int run_distance(const GlobalFlags& flags) {
  const ExperimentConfig cfg = load_with_overrides(flags);
  const SpectralTriple t = build_triple(cfg.geometry);
  const DistanceSolver solver = resolve_solver(cfg.solver.method, t);
  const std::vector<std::pair<int, int>> pairs = query_pairs(cfg, t, flags.force);
  const std::vector<DistanceRow> rows = compute_rows(cfg, t, pairs, solver);
  write_text(cfg.out_path, distance_csv(rows));
  const bool all_converged =
      std::all_of(rows.begin(), rows.end(), [](const DistanceRow& r) { return r.result.converged; });
  return all_converged ? kExitOk : kExitSolver;
}

int run_sweep(const GlobalFlags& flags) {
  const ExperimentConfig cfg = load_with_overrides(flags);
  if (cfg.geometry.kind != GeometryConfig::Kind::circle1d)
    throw ConfigError("config: sweep requires a circle1d geometry");
  if (cfg.sweep_ns.empty()) throw ConfigError("config: sweep needs a sweep.Ns list");
  if (cfg.query.fractions.empty())
    throw ConfigError("config: sweep needs query.fractions endpoint pairs");

  const auto g = metric_function(cfg.geometry.metric, cfg.geometry.length);
  const SubgradientOpts opts = subgradient_opts(cfg.solver);
  std::ostringstream csv;
  csv << "N,max_rel_error_vs_continuum,mean_rel_error,runtime_ms\n";
  bool all_converged = true;
  for (int n : cfg.sweep_ns) {
    const auto t0 = std::chrono::steady_clock::now();
    const SpectralTriple t = build_triple_at(cfg.geometry, n);
    const DistanceSolver solver = resolve_solver(cfg.solver.method, t);
    double max_rel = 0.0, sum_rel = 0.0;
    for (const auto& [fp, fq] : cfg.query.fractions) {
      const int p = static_cast<int>(std::lround(fp * n)) % n;
      const int q = static_cast<int>(std::lround(fq * n)) % n;
      const double continuum =
          circle_geodesic(fp * cfg.geometry.length, fq * cfg.geometry.length, cfg.geometry.length,
                          g, n);
      double lattice = 0.0;
      if (p != q) {
        const DistanceResult res = solver == DistanceSolver::edge_local_exact
                                       ? distance_exact(t, p, q)
                                       : distance_subgradient(t, p, q, opts);
        lattice = res.value;
        all_converged = all_converged && res.converged;
      }
      const double rel = continuum > 0.0 ? std::abs(lattice - continuum) / continuum : 0.0;
      max_rel = std::max(max_rel, rel);
      sum_rel += rel;
    }
    const auto t1 = std::chrono::steady_clock::now();
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    csv << n << ',' << fmt17(max_rel) << ',' << fmt17(sum_rel / cfg.query.fractions.size()) << ','
        << ms << '\n';
  }
  write_text(cfg.out_path, csv.str());
  return all_converged ? kExitOk : kExitSolver;
}

int run_propagator(const GlobalFlags& flags, const std::array<double, 4>& p, double mass,
                   std::optional<double> eps) {
  const FourVector mom{p[0], p[1], p[2], p[3]};
  const double offshell = norm_sq(mom) - mass * mass;
  const bool on_shell = std::abs(offshell) <= 1e-12;
  if (on_shell && !eps.has_value()) {
    std::cerr << "propagator: momentum is on shell (|p^2 - m^2| = " << std::abs(offshell)
              << "); pass an explicit --eps to regularize\n";
    return kExitConfig;
  }
  const double eps_value = eps.value_or(1e-8);
  const CMatrix s = momentum_propagator(mom, mass, eps_value);
  std::ostringstream out;
  out << "row,col,re,im\n";
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out << i << ',' << j << ',' << fmt17(s(i, j).real()) << ',' << fmt17(s(i, j).imag()) << '\n';
  if (!on_shell) {
    out << "residual," << fmt17(check_inverse(mom, mass, eps_value)) << ','
        << fmt17(eps_value / std::abs(offshell)) << '\n';
  } else {
    out << "residual,on_shell,skipped\n";
  }
  write_text(flags.out_path, out.str());
  return kExitOk;
}

int run_triple_export(const GlobalFlags& flags) {
  const ExperimentConfig cfg = load_with_overrides(flags);
  if (cfg.out_path.empty())
    throw ConfigError("config: triple-export needs --out or an output.path entry");
  const SpectralTriple t = build_triple(cfg.geometry);
  save_triple(t, cfg.out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite spectral triples: distances, axiom checks, propagators"};
  app.require_subcommand(1);

  GlobalFlags flags;
  app.add_option("--config", flags.config_path, "experiment JSON path")->envname("SPECLEN_CONFIG");
  app.add_option("--seed", flags.seed, "override solver seed");
  app.add_option("--out", flags.out_path, "output path (default stdout)");
  app.add_option("--solver", flags.solver, "exact | subgradient | auto")
      ->check(CLI::IsMember({"exact", "subgradient", "auto"}));
  app.add_flag("--force", flags.force, "lift the all-pairs site cap");

  CLI::App* check = app.add_subcommand("check", "run K-cycle axiom checks");
  CLI::App* distance = app.add_subcommand("distance", "compute a spectral distance table");
  CLI::App* sweep = app.add_subcommand("sweep", "resolution sweep against the continuum oracle");
  CLI::App* propagator = app.add_subcommand("propagator", "evaluate the momentum-space propagator");
  CLI::App* triple_export = app.add_subcommand("triple-export", "write the triple serialization");
  for (CLI::App* sub : {check, distance, sweep, propagator, triple_export}) sub->fallthrough();

  std::array<double, 4> p{0.0, 0.0, 0.0, 0.0};
  double mass = 1.0;
  std::optional<double> eps;
  propagator->add_option("--p0", p[0], "energy component");
  propagator->add_option("--p1", p[1], "momentum x");
  propagator->add_option("--p2", p[2], "momentum y");
  propagator->add_option("--p3", p[3], "momentum z");
  propagator->add_option("--mass", mass, "mass (natural units)")->check(CLI::NonNegativeNumber);
  propagator->add_option("--eps", eps, "pole regularization (default 1e-8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (check->parsed()) return run_check(flags);
    if (distance->parsed()) return run_distance(flags);
    if (sweep->parsed()) return run_sweep(flags);
    if (propagator->parsed()) return run_propagator(flags, p, mass, eps);
    if (triple_export->parsed()) return run_triple_export(flags);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
