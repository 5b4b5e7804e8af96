// Command-line driver for the SIPDG p-multigrid experiments.
//
// Subcommands mirror the experiment harness: solve, smooth-ratio, two-level,
// wcycle, op-complexity, compare, gmres, error-order. Flags mirror config
// keys; a flat key=value config file can be passed with --config.
//
// Exit codes: 0 success, 2 configuration error, 3 solver non-convergence.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pmg/pmg.hpp"

namespace {

void add_common_flags(CLI::App* cmd, pmg::RunConfig& cfg) {
  cmd->add_option("--dim", cfg.dim, "space dimension (1, 2 or 3)");
  cmd->add_option("--n", cfg.n, "cells per axis (0 = experiment default ladder)");
  cmd->add_option("--p", cfg.p_max, "polynomial degree (upper end of the range)");
  cmd->add_option("--p-min", cfg.p_min, "lower end of the degree range");
  cmd->add_option("--m-rule", cfg.m_rule, "smoothing steps: 'k', 'p', 'p^<gamma>' or an integer");
  cmd->add_option("--K", cfg.levels, "number of levels (0 = K=p)");
  cmd->add_option("--form", cfg.form, "bilinear form: inherited | non-inherited")
      ->check(CLI::IsMember({"inherited", "non-inherited"}));
  cmd->add_option("--alpha0", cfg.alpha0, "penalty constant alpha_0");
  cmd->add_option("--tol", cfg.tol, "relative residual tolerance");
  cmd->add_option("--seed", cfg.seed, "seed for the random initial guess");
  cmd->add_option("--max-iter", cfg.max_iter, "iteration cap");
  cmd->add_option("--out", cfg.out, "output CSV path (default: stdout)");
  cmd->add_flag("--allow-3d", cfg.allow_3d, "enable long-running 3D runs");
  cmd->add_flag("--force", cfg.force, "overwrite an existing report with a different fingerprint");
  cmd->add_option("--dump-matrices", cfg.dump_matrices, "directory for Matrix Market dumps");
  cmd->set_config("--config", "", "flat key=value config file; flags override");
}

int emit(const pmg::ExperimentReport& rep, const pmg::RunConfig& cfg) {
  if (cfg.out.empty()) {
    rep.write(std::cout);
  } else {
    rep.save(cfg.out, cfg.force);
    std::cout << "wrote " << cfg.out << " (fingerprint " << rep.fingerprint
              << ")\n";
  }
  return 0;
}

int run_solve(const pmg::RunConfig& cfg) {
  using namespace pmg;
  const int p = cfg.p_max ? cfg.p_max : 4;
  const index_t n = cfg.n ? cfg.n : 16;
  Problem prob = Problem::make_unit(cfg.dim, n, p, cfg.alpha0);
  HierarchyConfig hc;
  hc.levels = cfg.levels ? cfg.levels : p;
  hc.form = cfg.bilinear_form();
  hc.schedule = parse_m_rule(cfg.m_rule.empty() ? "p" : cfg.m_rule, p);
  hc.penalty = {cfg.alpha0};
  MgHierarchy hier(*prob.space, prob.level.A, prob.level.M_diag, hc);

  if (!cfg.dump_matrices.empty()) {
    std::filesystem::create_directories(cfg.dump_matrices);
    for (index_t i = 0; i < hier.n_levels(); ++i) {
      const auto& lvl = hier.level(i);
      std::ofstream os(cfg.dump_matrices + "/A_" + std::to_string(lvl.k) + ".mtx");
      write_matrix_market(os, lvl.A);
    }
    std::vector<Triplet> mt;
    for (index_t i = 0; i < prob.level.M_diag.size(); ++i)
      mt.push_back({i, i, prob.level.M_diag[i]});
    std::ofstream os(cfg.dump_matrices + "/M_" + std::to_string(p) + ".mtx");
    write_matrix_market(os, CsrMatrix::from_triplets(prob.level.M_diag.size(),
                                                     prob.level.M_diag.size(), mt));
  }

  Rng rng(cfg.seed);
  const Vector z0 = rng.uniform_pm1_vector(prob.space->global_dim());
  auto cycle = [&hier](const Vector& f, const Vector& z) {
    return hier.wcycle(f, z);
  };
  const IterationResult res = iterate_to_tolerance(cycle, prob.level.A, prob.f,
                                                   z0, cfg.tol, cfg.max_iter);
  const auto [ee, el2] = dg_error_norms(
      *prob.space, res.z, [&](const Point& x) { return prob.exact.u(x); },
      [&](const Point& x) { return prob.exact.grad(x); });
  std::printf("dim=%d n=%zu p=%d K=%d form=%s\n", cfg.dim,
              static_cast<std::size_t>(n), p, hc.levels,
              cfg.form.c_str());
  std::printf("N_it=%zu rate=%.4f\n", static_cast<std::size_t>(res.n_iterations),
              res.rate);
  std::printf("energy_error=%.6e l2_error=%.6e\n", ee, el2);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SIPDG p-multigrid Poisson solver and experiment harness"};
  app.require_subcommand(1);

  pmg::RunConfig cfg;
  const char* names[] = {"solve",   "smooth-ratio", "two-level",
                         "wcycle",  "op-complexity", "compare",
                         "gmres",   "error-order"};
  for (const char* name : names) {
    CLI::App* sub = app.add_subcommand(name);
    add_common_flags(sub, cfg);
  }

  CLI11_PARSE(app, argc, argv);
  cfg.experiment = app.get_subcommands().front()->get_name();

  try {
    cfg.validate();
    if (cfg.experiment == "solve") return run_solve(cfg);
    return emit(pmg::run_experiment(cfg), cfg);
  } catch (const pmg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const pmg::IterationError& e) {
    std::cerr << "solver did not converge: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
