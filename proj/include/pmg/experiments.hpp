#ifndef PMG_EXPERIMENTS_HPP
#define PMG_EXPERIMENTS_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmg/assembly.hpp"
#include "pmg/dg_space.hpp"
#include "pmg/iteration.hpp"
#include "pmg/krylov.hpp"
#include "pmg/matrix_market.hpp"
#include "pmg/mesh.hpp"
#include "pmg/multigrid.hpp"
#include "pmg/smoother.hpp"

namespace pmg {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- config

struct RunConfig {
  std::string experiment;  // solve | smooth-ratio | two-level | wcycle |
                           // op-complexity | compare | gmres | error-order
  int dim = 0;  // 0 = experiment default (1D and 2D where applicable)
  index_t n = 0;           // cells per axis; 0 = experiment default ladder
  int p_min = 0, p_max = 0;  // 0 = experiment default
  std::string m_rule;        // "k" | "p" | integer | "p^<gamma>"
  int levels = 0;            // K; 0 = K=p
  std::string form = "inherited";
  double alpha0 = 10.0;
  double tol = 1e-8;
  std::uint64_t seed = 42;
  std::string out;
  bool allow_3d = false;
  std::string dump_matrices;
  bool force = false;
  index_t max_iter = 2000;

  BilinearForm bilinear_form() const {
    if (form == "inherited") return BilinearForm::kInherited;
    if (form == "non-inherited") return BilinearForm::kNonInherited;
    throw ConfigError("form must be 'inherited' or 'non-inherited'");
  }

  /// Canonical key=value echo; the fingerprint hashes this string.
  std::string canonical() const {
    std::ostringstream os;
    os << "experiment=" << experiment << " dim=" << dim << " n=" << n
       << " p_min=" << p_min << " p_max=" << p_max << " m_rule=" << m_rule
       << " K=" << levels << " form=" << form << " alpha0=" << alpha0
       << " tol=" << tol << " seed=" << seed << " allow_3d=" << allow_3d
       << " max_iter=" << max_iter;
    return os.str();
  }

  void validate() const {
    if (dim < 0 || dim > 3) throw ConfigError("dim must be 1, 2 or 3");
    if (dim == 3 && !allow_3d)
      throw ConfigError("3D runs are long; pass --allow-3d to enable them");
    if (p_min < 0 || p_max < p_min) throw ConfigError("bad p range");
    if (!(tol > 0.0 && tol < 1.0)) throw ConfigError("tol must be in (0,1)");
    if (alpha0 <= 0.0) throw ConfigError("alpha0 must be positive");
    (void)bilinear_form();
  }
};

inline MSchedule parse_m_rule(const std::string& rule, int p) {
  if (rule.empty() || rule == "p") return MSchedule::fixed(static_cast<index_t>(p));
  if (rule == "k") return MSchedule::level_degree();
  if (rule.rfind("p^", 0) == 0) {
    const double gamma = std::stod(rule.substr(2));
    return MSchedule::fixed(static_cast<index_t>(
        std::ceil(std::pow(static_cast<double>(p), gamma))));
  }
  try {
    const long v = std::stol(rule);
    if (v < 1) throw ConfigError("m_rule: constant must be >= 1");
    return MSchedule::fixed(static_cast<index_t>(v));
  } catch (const std::invalid_argument&) {
    throw ConfigError("m_rule must be 'k', 'p', 'p^<gamma>' or an integer");
  }
}

// ---------------------------------------------------------------- report

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct ExperimentReport {
  std::string config_echo;
  std::string fingerprint;
  std::string header;              // CSV column names
  std::vector<std::string> rows;
  std::vector<std::string> metadata;  // trailing comment lines

  void write(std::ostream& os) const {
    os << "# schema=1\n";
    os << "# config " << config_echo << "\n";
    os << "# fingerprint=" << fingerprint << "\n";
    os << header << "\n";
    for (const auto& r : rows) os << r << "\n";
    for (const auto& m : metadata) os << "# " << m << "\n";
  }

  /// Refuses to overwrite a report with a different fingerprint unless forced.
  void save(const std::string& path, bool force) const {
    namespace fs = std::filesystem;
    if (!force && fs::exists(path)) {
      std::ifstream in(path);
      std::string line;
      while (std::getline(in, line)) {
        if (line.rfind("# fingerprint=", 0) == 0) {
          if (line.substr(14) != fingerprint)
            throw ConfigError("refusing to overwrite '" + path +
                              "' (different config fingerprint); use --force");
          break;
        }
      }
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write(out);
  }
};

inline ExperimentReport make_report(const RunConfig& cfg, std::string header) {
  ExperimentReport r;
  r.config_echo = cfg.canonical();
  r.fingerprint = hex64(fnv1a64(r.config_echo));
  r.header = std::move(header);
  return r;
}

inline std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

// ------------------------------------------------------- problem setup

/// Manufactured solution u = prod_i sin(pi (x_i - a_i) / (b_i - a_i));
/// f = -lap u; u vanishes on the box boundary.
struct Manufactured {
  int dim;
  Point lower, upper;

  double u(const Point& x) const {
    double v = 1.0;
    for (int i = 0; i < dim; ++i)
      v *= std::sin(legendre::kPi * (x[i] - lower[i]) / (upper[i] - lower[i]));
    return v;
  }
  std::array<double, 3> grad(const Point& x) const {
    std::array<double, 3> g{0.0, 0.0, 0.0};
    for (int i = 0; i < dim; ++i) {
      double v = 1.0;
      for (int j = 0; j < dim; ++j) {
        const double c = legendre::kPi / (upper[j] - lower[j]);
        const double t = c * (x[j] - lower[j]);
        v *= (j == i) ? c * std::cos(t) : std::sin(t);
      }
      g[i] = v;
    }
    return g;
  }
  double f(const Point& x) const {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double c = legendre::kPi / (upper[i] - lower[i]);
      s += c * c;
    }
    return s * u(x);
  }
};

/// Owns mesh, space and assembled fine level (stable addresses).
struct Problem {
  std::unique_ptr<TensorMesh> mesh;
  std::unique_ptr<DgSpace> space;
  AssembledLevel level;
  Manufactured exact;
  Vector f;

  static Problem make(int dim, index_t n, int p, double alpha0,
                      const Point& lower, const Point& upper) {
    Problem prob;
    prob.mesh = std::make_unique<TensorMesh>(dim, lower, upper, n);
    prob.space = std::make_unique<DgSpace>(*prob.mesh, p);
    prob.level = assemble_level(*prob.space, {alpha0});
    prob.exact = {dim, lower, upper};
    prob.f = assemble_load(*prob.space,
                           [&prob](const Point& x) { return prob.exact.f(x); });
    return prob;
  }

  static Problem make_unit(int dim, index_t n, int p, double alpha0) {
    return make(dim, n, p, alpha0, {0.0, 0.0, 0.0}, {1.0, 1.0, 1.0});
  }
};

/// Measured multigrid run on a problem: builds the hierarchy, iterates from
/// the seeded random start, returns (N_it, rate).
struct CycleRun {
  index_t n_iterations;
  double rate;
};

inline CycleRun run_cycle_rate(const Problem& prob, const HierarchyConfig& hc,
                               double eps, std::uint64_t seed,
                               index_t max_iter) {
  MgHierarchy hier(*prob.space, prob.level.A, prob.level.M_diag, hc);
  Rng rng(seed);
  const Vector z0 = rng.uniform_pm1_vector(prob.space->global_dim());
  auto cycle = [&hier](const Vector& f, const Vector& z) {
    return hier.wcycle(f, z);
  };
  const IterationResult res = iterate_to_tolerance(cycle, prob.level.A, prob.f,
                                                   z0, eps, max_iter, {0, 0.0, 5});
  const double rate = measure_asymptotic_rate(cycle, prob.level.A, z0);
  return {res.n_iterations, rate};
}

inline CycleRun run_two_level_rate(const Problem& prob, index_t m,
                                   double alpha0, BilinearForm form, double eps,
                                   std::uint64_t seed, index_t max_iter) {
  HierarchyConfig hc;
  hc.levels = 2;
  hc.form = form;
  hc.schedule = MSchedule::fixed(m);
  hc.penalty = {alpha0};
  MgHierarchy hier(*prob.space, prob.level.A, prob.level.M_diag, hc);
  Rng rng(seed);
  const Vector z0 = rng.uniform_pm1_vector(prob.space->global_dim());
  auto cycle = [&hier, m](const Vector& f, const Vector& z) {
    return hier.two_level(f, z, m);
  };
  const IterationResult res = iterate_to_tolerance(cycle, prob.level.A, prob.f,
                                                   z0, eps, max_iter, {0, 0.0, 5});
  const double rate = measure_asymptotic_rate(cycle, prob.level.A, z0);
  return {res.n_iterations, rate};
}

inline double loglog_slope(const std::vector<double>& x,
                           const std::vector<double>& y) {
  const index_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (index_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------- experiments

/// Smoothing-ratio sweeps over m, k and h with the paper's fixed parameters
/// (2D unit square; k=5, N=32^2 for the m- and h-sweeps, m=20 for the
/// k-sweep, m=k^2 for the h-sweep).
inline ExperimentReport run_smooth_ratio(const RunConfig& cfg) {
  ExperimentReport rep = make_report(cfg, "sweep,value,S");
  const double a0 = cfg.alpha0;

  auto ratio_for = [&](index_t n, int k, index_t m) {
    Problem prob = Problem::make_unit(2, n, k, a0);
    const double omega =
        select_omega(prob.level.A, prob.level.D_diag, 1234, 1.05);
    return smoothing_ratio(prob.level, omega, m, cfg.seed);
  };

  const std::vector<index_t> ms{2, 4, 8, 16, 32, 64};
  std::vector<double> xs, ys;
  for (index_t m : ms) {
    const double s = ratio_for(32, 5, m);
    xs.push_back(static_cast<double>(m));
    ys.push_back(s);
    rep.rows.push_back("m," + std::to_string(m) + "," + fmt("%.6e", s));
  }
  rep.metadata.push_back("slope_m=" + fmt("%.4f", loglog_slope(xs, ys)));

  xs.clear();
  ys.clear();
  for (int k = 2; k <= 8; ++k) {
    const double s = ratio_for(32, k, 20);
    xs.push_back(static_cast<double>(k));
    ys.push_back(s);
    rep.rows.push_back("k," + std::to_string(k) + "," + fmt("%.6e", s));
  }
  rep.metadata.push_back("slope_k=" + fmt("%.4f", loglog_slope(xs, ys)));

  xs.clear();
  ys.clear();
  for (index_t n : {4, 8, 16, 32}) {
    const double s = ratio_for(n, 5, 25);
    xs.push_back(1.0 / static_cast<double>(n));
    ys.push_back(s);
    rep.rows.push_back("h," + fmt("%.6g", 1.0 / static_cast<double>(n)) + "," +
                       fmt("%.6e", s));
  }
  rep.metadata.push_back("slope_h=" + fmt("%.4f", loglog_slope(xs, ys)));
  return rep;
}

/// Two-level convergence rates on (-1,1), all three smoothing rules of the
/// paper's table (or the configured one).
inline ExperimentReport run_two_level(const RunConfig& cfg) {
  ExperimentReport rep = make_report(cfg, "N_h,p,m_rule,m,N_it,rho");
  const int pmin = cfg.p_min ? cfg.p_min : 2;
  const int pmax = cfg.p_max ? cfg.p_max : 8;
  std::vector<index_t> ns = cfg.n ? std::vector<index_t>{cfg.n}
                                  : std::vector<index_t>{4, 8, 16, 32, 64};
  std::vector<std::string> rules =
      cfg.m_rule.empty() ? std::vector<std::string>{"p^0.5", "p", "p^1.5"}
                         : std::vector<std::string>{cfg.m_rule};
  for (const std::string& rule : rules) {
    for (int p = pmin; p <= pmax; ++p) {
      const index_t m = parse_m_rule(rule, p).at(p);
      for (index_t n : ns) {
        Problem prob = Problem::make(1, n, p, cfg.alpha0, {-1.0, 0.0, 0.0},
                                     {1.0, 1.0, 1.0});
        const CycleRun r = run_two_level_rate(
            prob, m, cfg.alpha0, BilinearForm::kNonInherited, cfg.tol,
            cfg.seed, cfg.max_iter);
        rep.rows.push_back(std::to_string(n) + "," + std::to_string(p) + "," +
                           rule + "," + std::to_string(m) + "," +
                           std::to_string(r.n_iterations) + "," +
                           fmt("%.4f", r.rate));
      }
    }
  }
  return rep;
}

/// W-cycle rates, K=p, both bilinear forms; m=k for non-inherited, m=p for
/// inherited (the paper's schedules).
inline ExperimentReport run_wcycle(const RunConfig& cfg) {
  ExperimentReport rep = make_report(cfg, "dim,form,N_h,p,m_rule,N_it,rho");
  const int pmin = cfg.p_min ? cfg.p_min : 3;
  const int pmax = cfg.p_max ? cfg.p_max : 6;
  std::vector<int> dims;
  if (cfg.dim)
    dims = {cfg.dim};
  else
    dims = cfg.allow_3d ? std::vector<int>{1, 2, 3} : std::vector<int>{1, 2};
  for (int dim : dims) {
    std::vector<index_t> ns;
    if (cfg.n)
      ns = {cfg.n};
    else if (dim == 3)
      ns = {8};
    else
      ns = {8, 16, 32};
    for (const std::string& form : {std::string("inherited"),
                                    std::string("non-inherited")}) {
      const BilinearForm bf = form == "inherited" ? BilinearForm::kInherited
                                                  : BilinearForm::kNonInherited;
      for (index_t n : ns) {
        for (int p = pmin; p <= pmax; ++p) {
          Problem prob = Problem::make_unit(dim, n, p, cfg.alpha0);
          HierarchyConfig hc;
          hc.levels = cfg.levels ? cfg.levels : p;
          hc.form = bf;
          const std::string rule =
              !cfg.m_rule.empty() ? cfg.m_rule
                                  : (bf == BilinearForm::kInherited ? "p" : "k");
          hc.schedule = parse_m_rule(rule, p);
          hc.penalty = {cfg.alpha0};
          const CycleRun r =
              run_cycle_rate(prob, hc, cfg.tol, cfg.seed, cfg.max_iter);
          rep.rows.push_back(std::to_string(dim) + "," + form + "," +
                             std::to_string(n) + "," + std::to_string(p) + "," +
                             rule + "," + std::to_string(r.n_iterations) + "," +
                             fmt("%.4f", r.rate));
        }
      }
    }
  }
  return rep;
}

/// Operator complexity C_O = sum_k nnz(A_k) / nnz(A_p) with K = p.
inline ExperimentReport run_op_complexity(const RunConfig& cfg) {
  ExperimentReport rep = make_report(cfg, "dim,N_h,p,C_O");
  const int pmin = cfg.p_min ? cfg.p_min : 2;
  const int pmax = cfg.p_max ? cfg.p_max : 6;
  std::vector<int> dims;
  if (cfg.dim)
    dims = {cfg.dim};
  else
    dims = cfg.allow_3d ? std::vector<int>{1, 2, 3} : std::vector<int>{1, 2};
  for (int dim : dims) {
    std::vector<index_t> ns = cfg.n ? std::vector<index_t>{cfg.n}
                                    : (dim < 3 ? std::vector<index_t>{4, 8, 16}
                                               : std::vector<index_t>{4, 8});
    for (index_t n : ns) {
      TensorMesh mesh = unit_mesh(dim, n);
      std::vector<index_t> nnzs;
      for (int k = 1; k <= pmax; ++k) {
        DgSpace space(mesh, k);
        nnzs.push_back(assemble_stiffness(space, {cfg.alpha0}).nnz());
      }
      for (int p = pmin; p <= pmax; ++p) {
        double total = 0.0;
        for (int k = 1; k <= p; ++k) total += static_cast<double>(nnzs[k - 1]);
        rep.rows.push_back(std::to_string(dim) + "," + std::to_string(n) + "," +
                           std::to_string(p) + "," +
                           fmt("%.4f", total / static_cast<double>(nnzs[p - 1])));
      }
    }
  }
  return rep;
}

/// The sec6.5 comparison: 2D, h=1/16, inherited form; rate vs (m, K) at p=5
/// and vs (p, K) at m=10.
inline ExperimentReport run_compare(const RunConfig& cfg) {
  ExperimentReport rep = make_report(cfg, "p,m,K,N_it,rho");
  const index_t n = cfg.n ? cfg.n : 16;
  std::map<int, Problem> probs;  // per degree
  auto prob_for = [&](int p) -> Problem& {
    auto it = probs.find(p);
    if (it == probs.end())
      it = probs.emplace(p, Problem::make_unit(2, n, p, cfg.alpha0)).first;
    return it->second;
  };
  // hierarchies are m-independent: build once per (p, K), sweep m
  auto run_cells = [&](int p, int K, const std::vector<index_t>& ms) {
    Problem& prob = prob_for(p);
    HierarchyConfig hc;
    hc.levels = K;
    hc.form = cfg.bilinear_form();
    hc.schedule = MSchedule::fixed(1);
    hc.penalty = {cfg.alpha0};
    MgHierarchy hier(*prob.space, prob.level.A, prob.level.M_diag, hc);
    Rng rng(cfg.seed);
    const Vector z0 = rng.uniform_pm1_vector(prob.space->global_dim());
    for (index_t m : ms) {
      const MSchedule sched = MSchedule::fixed(m);
      auto cycle = [&hier, &sched](const Vector& f, const Vector& z) {
        return hier.wcycle(f, z, sched);
      };
      const IterationResult res =
          iterate_to_tolerance(cycle, prob.level.A, prob.f, z0, cfg.tol,
                               cfg.max_iter, {0, 0.0, 5});
      const double rate = measure_asymptotic_rate(cycle, prob.level.A, z0);
      rep.rows.push_back(std::to_string(p) + "," + std::to_string(m) + "," +
                         std::to_string(K) + "," +
                         std::to_string(res.n_iterations) + "," +
                         fmt("%.4f", rate));
    }
  };
  for (int K : {2, 3, 4}) run_cells(5, K, {2, 4, 6, 10, 20});
  for (int K : {2, 3, 4})
    for (int p = std::max(2, K); p <= 6; ++p) {
      if (p == 5) continue;  // covered by the m-sweep at m=10
      run_cells(p, K, {10});
    }
  return rep;
}

/// GMRES iteration counts with and without the W-cycle preconditioner.
/// Unpreconditioned runs are capped at 5x the preconditioned count plus one;
/// `converged=0` records that the cap was hit.
inline ExperimentReport run_gmres(const RunConfig& cfg) {
  ExperimentReport rep = make_report(cfg, "dim,N_h,p,preconditioned,N_GMRES,converged");
  const int pmin = cfg.p_min ? cfg.p_min : 2;
  const int pmax = cfg.p_max ? cfg.p_max : 6;
  std::vector<int> dims{cfg.dim ? cfg.dim : 2};
  for (int dim : dims) {
    std::vector<index_t> ns = cfg.n ? std::vector<index_t>{cfg.n}
                                    : (dim == 2 ? std::vector<index_t>{8, 16, 32}
                                                : std::vector<index_t>{8});
    for (index_t n : ns) {
      for (int p = pmin; p <= pmax; ++p) {
        Problem prob = Problem::make_unit(dim, n, p, cfg.alpha0);
        HierarchyConfig hc;
        hc.levels = cfg.levels ? cfg.levels : p;
        hc.form = cfg.bilinear_form();
        hc.schedule = MSchedule::fixed(static_cast<index_t>(p));
        hc.penalty = {cfg.alpha0};
        MgHierarchy hier(*prob.space, prob.level.A, prob.level.M_diag, hc);
        Preconditioner prec = [&hier](const Vector& v) {
          return hier.wcycle(v, Vector(v.size(), 0.0));
        };
        GmresConfig gc;
        gc.rel_tol = cfg.tol;
        gc.max_iterations = cfg.max_iter;
        const GmresResult pre = gmres_solve(prob.level.A, prob.f, prec, gc);
        rep.rows.push_back(std::to_string(dim) + "," + std::to_string(n) + "," +
                           std::to_string(p) + ",1," +
                           std::to_string(pre.iterations) + ",1");
        if (dim == 2) {
          GmresConfig gu;
          gu.rel_tol = cfg.tol;
          gu.max_iterations = 5 * pre.iterations + 1;
          bool conv = true;
          index_t its = 0;
          try {
            const GmresResult unp = gmres_solve(prob.level.A, prob.f, nullptr, gu);
            its = unp.iterations;
            conv = unp.converged;
          } catch (const IterationError& e) {
            its = e.partial.n_iterations;
            conv = false;
          }
          rep.rows.push_back(std::to_string(dim) + "," + std::to_string(n) +
                             "," + std::to_string(p) + ",0," +
                             std::to_string(its) + "," + (conv ? "1" : "0"));
        }
      }
    }
  }
  return rep;
}

/// Accurate solve of the fine system: direct for degree 1 (no hierarchy),
/// W-cycle iteration otherwise.
inline Vector solve_system(const Problem& prob, const RunConfig& cfg) {
  const int p = prob.space->level();
  if (p == 1) return direct_solve(prob.level.A, prob.f);
  HierarchyConfig hc;
  hc.levels = p;  // coarsest degree 1
  hc.form = BilinearForm::kInherited;
  hc.schedule = MSchedule::fixed(static_cast<index_t>(p));
  hc.penalty = {cfg.alpha0};
  MgHierarchy hier(*prob.space, prob.level.A, prob.level.M_diag, hc);
  auto cycle = [&hier](const Vector& f, const Vector& z) {
    return hier.wcycle(f, z);
  };
  const Vector z0(prob.space->global_dim(), 0.0);
  // solver error well below discretization error
  const IterationResult res = iterate_to_tolerance(
      cycle, prob.level.A, prob.f, z0, 1e-12, cfg.max_iter, {0, 1e-30, 0});
  return res.z;
}

/// Discretization-error orders for the manufactured solution.
inline ExperimentReport run_error_order(const RunConfig& cfg) {
  ExperimentReport rep =
      make_report(cfg, "dim,N_h,k,energy_error,l2_error,energy_order,l2_order");
  const int kmin = cfg.p_min ? cfg.p_min : 1;
  const int kmax = cfg.p_max ? cfg.p_max : 3;
  std::vector<int> dims = cfg.dim ? std::vector<int>{cfg.dim}
                                  : std::vector<int>{1, 2};
  for (int dim : dims) {
    std::vector<index_t> ns = cfg.n ? std::vector<index_t>{cfg.n}
                                    : (dim == 1 ? std::vector<index_t>{8, 16, 32, 64}
                                                : std::vector<index_t>{4, 8, 16, 32});
    for (int k = kmin; k <= kmax; ++k) {
      double prev_e = 0.0, prev_l2 = 0.0;
      bool have_prev = false;
      for (index_t n : ns) {
        Problem prob = Problem::make_unit(dim, n, k, cfg.alpha0);
        const Vector u_h = solve_system(prob, cfg);
        const auto [ee, el2] = dg_error_norms(
            *prob.space, u_h,
            [&prob](const Point& x) { return prob.exact.u(x); },
            [&prob](const Point& x) { return prob.exact.grad(x); });
        std::string eo = "-", lo = "-";
        if (have_prev) {
          eo = fmt("%.3f", std::log2(prev_e / ee));
          lo = fmt("%.3f", std::log2(prev_l2 / el2));
        }
        rep.rows.push_back(std::to_string(dim) + "," + std::to_string(n) + "," +
                           std::to_string(k) + "," + fmt("%.6e", ee) + "," +
                           fmt("%.6e", el2) + "," + eo + "," + lo);
        prev_e = ee;
        prev_l2 = el2;
        have_prev = true;
      }
    }
  }
  return rep;
}

inline ExperimentReport run_experiment(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.experiment == "smooth-ratio") return run_smooth_ratio(cfg);
  if (cfg.experiment == "two-level") return run_two_level(cfg);
  if (cfg.experiment == "wcycle") return run_wcycle(cfg);
  if (cfg.experiment == "op-complexity") return run_op_complexity(cfg);
  if (cfg.experiment == "compare") return run_compare(cfg);
  if (cfg.experiment == "gmres") return run_gmres(cfg);
  if (cfg.experiment == "error-order") return run_error_order(cfg);
  throw ConfigError("unknown experiment '" + cfg.experiment + "'");
}

}  // namespace pmg

#endif
