#pragma once

#include <atomic>
#include <thread>
#include <tuple>

#include "matmean/checks.hpp"
#include "matmean/format.hpp"
#include "matmean/rng.hpp"

namespace matmean {

inline const std::vector<std::string>& all_check_names() {
  static const std::vector<std::string> names = {
      "golden_thompson", "regimes",  "interior",        "exterior",    "hiai2019",
      "araki",           "gt_logmaj", "mean_logmaj",  "furuta",      "equality_diag",
      "derivative",      "lie_trotter", "convexity", "monotonicity", "conjecture"};
  return names;
}

struct TGrid {
  double min = -3.0;
  double max = 3.0;
  double step = 0.05;

  // Grid values with near-integer points snapped exactly onto the integers,
  // so regime boundaries and the t = 0, 1 endpoint identities are hit
  // head-on instead of at accumulated-rounding offsets.
  std::vector<double> points() const {
    std::vector<double> out;
    const int count = static_cast<int>(std::floor((max - min) / step + 1e-9)) + 1;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
      double t = min + i * step;
      const double snapped = std::round(t);
      if (std::abs(t - snapped) < 1e-9) t = snapped;
      if (t == 0.0) t = 0.0;  // normalize -0
      if (t > max + 1e-12) break;
      out.push_back(t);
    }
    return out;
  }
};

struct SuiteConfig {
  int n = 4;
  double sigma = 1.0;
  int64_t trials = 1000;
  uint64_t seed = 42;
  int jobs = 1;
  TGrid t_grid;
  std::vector<double> r_grid = {0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<NormSelector> norms;      // empty: default_norms(n)
  std::vector<std::string> checks;      // empty: every check
  double kappa_max = 1e8;

  std::vector<NormSelector> resolved_norms() const {
    return norms.empty() ? default_norms(n) : norms;
  }
  std::vector<std::string> resolved_checks() const {
    return checks.empty() ? all_check_names() : checks;
  }

  void validate() const {
    std::vector<std::string> errors;
    if (n < 1) errors.push_back("n must be >= 1");
    if (!(sigma > 0.0)) errors.push_back("sigma must be > 0");
    if (trials < 0) errors.push_back("trials must be >= 0");
    if (jobs < 1) errors.push_back("jobs must be >= 1");
    if (!(t_grid.step > 0.0)) errors.push_back("t-step must be > 0");
    if (!(t_grid.min <= t_grid.max)) errors.push_back("t-min must be <= t-max");
    if (r_grid.empty()) errors.push_back("r-grid must not be empty");
    for (double r : r_grid)
      if (!(r > 0.0)) errors.push_back("r-grid entry " + format_r(r) + " must be > 0");
    if (!(kappa_max > 1.0)) errors.push_back("kappa-max must be > 1");
    for (const NormSelector& sel : norms) {
      try {
        sel.validate(n);
      } catch (const std::exception& e) {
        errors.push_back(e.what());
      }
    }
    const auto& known = all_check_names();
    for (const std::string& c : checks)
      if (std::find(known.begin(), known.end(), c) == known.end())
        errors.push_back("unknown check '" + c + "'");
    if (!errors.empty()) {
      std::string joined = "invalid suite config: ";
      for (size_t i = 0; i < errors.size(); ++i) joined += (i ? "; " : "") + errors[i];
      throw std::invalid_argument(joined);
    }
  }

 private:
  static std::string format_r(double r) {
    std::ostringstream os;
    os << r;
    return os.str();
  }
};

/// Aggregation key: one row per check x parameter cell.
struct CellKey {
  std::string check_id;
  std::optional<double> t;
  std::optional<double> r;
  std::string norm;

  bool operator<(const CellKey& o) const {
    return std::tie(check_id, t, r, norm) < std::tie(o.check_id, o.t, o.r, o.norm);
  }
};

struct CellAggregate {
  int64_t count = 0;
  int64_t holds = 0;
  int64_t equality = 0;
  int64_t violated = 0;
  int64_t not_applicable = 0;
  int64_t strict = 0;  // gap beyond kStrictGapFactor * scale (equality-diagnostic stats)
  double min_gap = std::numeric_limits<double>::infinity();
  double max_gap = -std::numeric_limits<double>::infinity();

  void add(const CheckResult& c) {
    ++count;
    switch (c.verdict) {
      case Verdict::holds: ++holds; break;
      case Verdict::equality: ++equality; break;
      case Verdict::violated: ++violated; break;
      case Verdict::not_applicable: ++not_applicable; return;
    }
    min_gap = std::min(min_gap, c.gap);
    max_gap = std::max(max_gap, c.gap);
    const double scale = std::max({std::abs(c.lhs), std::abs(c.rhs), 1.0});
    if (c.gap > kStrictGapFactor * scale) ++strict;
  }
};

/// A violated verdict with everything needed to replay it: the result
/// context carries (seed, trial, parameters) and the matrices are kept in
/// full precision.
struct FailureRecord {
  CheckResult result;
  ComplexMatrix h;
  ComplexMatrix k;
};

struct SuiteReport {
  SuiteConfig config;
  int64_t trials_run = 0;
  std::map<CellKey, CellAggregate> cells;
  std::vector<FailureRecord> failures;
  std::vector<FailureRecord> conjecture_candidates;

  int64_t total_violations() const {
    int64_t v = 0;
    for (const auto& [key, agg] : cells) v += agg.violated;
    return v;
  }
};

namespace detail {

struct TrialOutput {
  std::vector<CheckResult> results;
  std::vector<FailureRecord> failures;
  std::vector<FailureRecord> conjecture_candidates;
};

inline CellKey cell_key(const CheckResult& c) {
  return CellKey{c.check_id, c.context.t, c.context.r ? c.context.r : c.context.q, c.context.norm};
}

// Positive definite matrix with moderate condition number: G G* + c I.
inline PositiveDefiniteMatrix random_gram(int n, double sigma, double ridge, RandomStream& rng) {
  ComplexMatrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(sigma * rng.gaussian(), sigma * rng.gaussian());
  ComplexMatrix m = g * g.adjoint();
  for (int i = 0; i < n; ++i) m(i, i) += ridge;
  return PositiveDefiniteMatrix(HermitianMatrix(m));
}

inline TrialOutput run_trial(const SuiteConfig& cfg, const std::vector<std::string>& enabled,
                             const std::vector<NormSelector>& norms,
                             const std::vector<double>& t_points, int64_t trial,
                             const std::pair<HermitianMatrix, HermitianMatrix>* fixed = nullptr) {
  const auto on = [&](const char* name) {
    return std::find(enabled.begin(), enabled.end(), name) != enabled.end();
  };
  const bool uses_r_grid = on("interior") || on("exterior") || on("hiai2019") || on("araki") ||
                           on("gt_logmaj") || on("derivative");
  const double r_max = uses_r_grid ? *std::max_element(cfg.r_grid.begin(), cfg.r_grid.end()) : 1.0;

  const uint64_t trial_seed = derive_seed(cfg.seed, static_cast<uint64_t>(trial));
  RandomStream pair_rng(derive_seed(trial_seed, 0));
  auto [h, k] = fixed ? *fixed
                      : guarded_hermitian_pair(cfg.n, cfg.sigma, pair_rng, cfg.t_grid.min,
                                               cfg.t_grid.max, r_max, cfg.kappa_max);
  PairWorkspace ws(h, k);

  CheckContext base;
  base.seed = cfg.seed;
  base.trial = trial;
  base.n = cfg.n;

  TrialOutput out;
  const auto emit = [&](CheckResult c) {
    if (c.verdict == Verdict::violated) out.failures.push_back({c, h.matrix(), k.matrix()});
    out.results.push_back(std::move(c));
  };

  if (on("golden_thompson")) emit(golden_thompson(ws, base));

  if (on("regimes"))
    for (double t : t_points)
      for (const NormSelector& sel : norms)
        for (CheckResult& c : regime_checks(ws, t, sel, base).checks) emit(std::move(c));

  if (on("interior"))
    for (double r : cfg.r_grid)
      for (double t : t_points)
        if (t >= 0.0 && t <= 1.0)
          for (const NormSelector& sel : norms) emit(interior_interpolation(ws, t, r, sel, base));

  if (on("exterior"))
    for (double r : cfg.r_grid)
      for (double t : t_points)
        if (t <= 0.0 || t >= 1.0)
          for (const NormSelector& sel : norms) emit(exterior_interpolation(ws, t, r, sel, base));

  if (on("hiai2019"))
    for (double r : cfg.r_grid)
      for (double t : t_points)
        if (t >= 1.0)
          for (const NormSelector& sel : norms) emit(hiai2019_regime(ws, t, r, sel, base));

  if (on("araki") || on("convexity")) {
    // Araki runs on the positive pair (e^H, e^K); convexity reuses it below.
    const PositiveDefiniteMatrix x = mexp(ws.h_eig());
    const PositiveDefiniteMatrix y = mexp(ws.k_eig());

    if (on("araki"))
      for (double r : cfg.r_grid)
        if (r >= 1.0) {
          CheckContext ctx = base;
          ctx.r = r;
          emit(make_majorization_check("araki", araki_check(x, y, r), cfg.n,
                                       MajorizationRelation::log, std::move(ctx)));
        }

    if (on("convexity")) {
      RandomStream second_rng(derive_seed(trial_seed, 4));
      auto [h2, k2] = guarded_hermitian_pair(cfg.n, cfg.sigma, second_rng, -1.0, 2.0, 1.0,
                                             cfg.kappa_max);
      const PositiveDefiniteMatrix x2 = mexp(h2);
      const PositiveDefiniteMatrix y2 = mexp(k2);
      for (double t : t_points)
        if (t >= -1.0 && t <= 2.0) emit(convexity_check(x, y, x2, y2, t, base));
    }
  }

  if (on("gt_logmaj")) {
    std::vector<double> q_grid = cfg.r_grid;
    std::sort(q_grid.begin(), q_grid.end());
    for (double q : q_grid) {
      CheckContext ctx = base;
      ctx.q = q;
      emit(make_majorization_check("gt_logmaj", gt_logmaj(ws, q), cfg.n,
                                   MajorizationRelation::log, std::move(ctx)));
    }
    if (q_grid.size() >= 2) emit(gt_logmaj_monotonicity(ws, q_grid, base));
  }

  if (on("mean_logmaj"))
    for (double t : t_points)
      if (t >= 1.0 && t <= 2.0) {
        CheckContext ctx = base;
        ctx.t = t;
        emit(make_majorization_check("mean_logmaj", mean_logmaj_check(ws, t), cfg.n,
                                     MajorizationRelation::log, std::move(ctx)));
      }

  if (on("furuta")) {
    RandomStream frng(derive_seed(trial_seed, 2));
    for (double t : {1.25, 1.5, 1.75, 2.0}) {
      emit(furuta_paper_instance(h, k, t, base));
      // generated instance: B plus a positive perturbation, paper exponents
      const PositiveDefiniteMatrix b = random_gram(cfg.n, 0.5, 0.25, frng);
      const PositiveDefiniteMatrix a{
          HermitianMatrix(b.matrix() + random_gram(cfg.n, 0.3, 0.05, frng).matrix())};
      const double pq = 1.0 / (t - 1.0);
      CheckContext ctx = base;
      ctx.t = t;
      CheckResult c = furuta_check(a, b, 0.5, pq, pq, std::move(ctx));
      c.check_id = "furuta.generated";
      emit(std::move(c));
    }
  }

  if (on("equality_diag")) {
    {
      CheckResult c = equality_diagnostic(ws, 2.0, 1.0, NormSelector::trace(), base);
      c.check_id = "equality_diag.random";
      emit(std::move(c));
    }
    // commuting partner: same eigenvectors as H, fresh spectrum
    RandomStream crng(derive_seed(trial_seed, 3));
    std::vector<double> mu(static_cast<size_t>(cfg.n));
    for (double& v : mu) v = cfg.sigma * crng.gaussian();
    ComplexMatrix kc(cfg.n);
    const ComplexMatrix& u = ws.h_eig().eigenvectors;
    for (int i = 0; i < cfg.n; ++i)
      for (int j = 0; j < cfg.n; ++j) {
        Complex s = 0.0;
        for (int l = 0; l < cfg.n; ++l)
          s += u(i, l) * mu[static_cast<size_t>(l)] * std::conj(u(j, l));
        kc(i, j) = s;
      }
    auto [hc, kcg] = guard_rescale(h, HermitianMatrix(kc), 0.0, 2.0, 1.0, cfg.kappa_max);
    PairWorkspace wsc(hc, kcg);
    CheckResult c = equality_diagnostic(wsc, 2.0, 1.0, NormSelector::trace(), base);
    c.check_id = "equality_diag.commuting";
    if (c.verdict == Verdict::violated) out.failures.push_back({c, hc.matrix(), kcg.matrix()});
    out.results.push_back(std::move(c));
  }

  if (on("derivative"))
    for (double r : cfg.r_grid) {
      auto [first, second] = derivative_identities(ws, r, 1e-4, base);
      emit(std::move(first));
      emit(std::move(second));
    }

  if (on("lie_trotter")) emit(lie_trotter_check(ws, {8, 16, 32, 64, 128, 256}, base));

  if (on("monotonicity")) {
    RandomStream mrng(derive_seed(trial_seed, 5));
    const PositiveDefiniteMatrix x = random_gram(cfg.n, 0.5, 0.25, mrng);
    const PositiveDefiniteMatrix y = random_gram(cfg.n, 0.5, 0.25, mrng);
    const PositiveDefiniteMatrix x2{
        HermitianMatrix(x.matrix() + random_gram(cfg.n, 0.3, 0.05, mrng).matrix())};
    const PositiveDefiniteMatrix y2{
        HermitianMatrix(y.matrix() + random_gram(cfg.n, 0.3, 0.05, mrng).matrix())};
    for (double t : t_points)
      if (t >= 0.0 && t <= 1.0) emit(mean_monotonicity(x, x2, y, y2, t, base));
  }

  if (on("conjecture"))
    for (double t : t_points)
      if (t >= 2.0) {
        CheckResult c = conjecture_fuzz(ws, t, base);
        if (c.gap < -c.tol) out.conjecture_candidates.push_back({c, h.matrix(), k.matrix()});
        out.results.push_back(std::move(c));
      }

  return out;
}

}  // namespace detail

/// Runs the configured checks over `trials` independent random pairs.
/// Deterministic given the seed: every trial derives its own generator
/// streams, and results are merged in trial order, so worker count cannot
/// change the report.
inline SuiteReport run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  const std::vector<std::string> enabled = cfg.resolved_checks();
  const std::vector<NormSelector> norms = cfg.resolved_norms();
  for (const NormSelector& sel : norms) sel.validate(cfg.n);
  const std::vector<double> t_points = cfg.t_grid.points();

  std::vector<detail::TrialOutput> outputs(static_cast<size_t>(cfg.trials));
  std::vector<std::exception_ptr> errors(static_cast<size_t>(cfg.trials));

  const int workers = static_cast<int>(std::min<int64_t>(cfg.jobs, std::max<int64_t>(cfg.trials, 1)));
  if (workers <= 1) {
    for (int64_t i = 0; i < cfg.trials; ++i)
      outputs[static_cast<size_t>(i)] = detail::run_trial(cfg, enabled, norms, t_points, i);
  } else {
    std::atomic<int64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int64_t i = next.fetch_add(1); i < cfg.trials; i = next.fetch_add(1)) {
          try {
            outputs[static_cast<size_t>(i)] = detail::run_trial(cfg, enabled, norms, t_points, i);
          } catch (...) {
            errors[static_cast<size_t>(i)] = std::current_exception();
          }
        }
      });
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors)
      if (e) std::rethrow_exception(e);
  }

  SuiteReport report;
  report.config = cfg;
  report.trials_run = cfg.trials;
  for (detail::TrialOutput& out : outputs) {
    for (const CheckResult& c : out.results) report.cells[detail::cell_key(c)].add(c);
    for (FailureRecord& f : out.failures) report.failures.push_back(std::move(f));
    for (FailureRecord& f : out.conjecture_candidates)
      report.conjecture_candidates.push_back(std::move(f));
  }
  return report;
}

/// Same checks, same aggregation, but on one user-supplied pair. The pair is
/// used as given (no condition rescaling): verdicts describe the matrices
/// the caller asked about.
inline SuiteReport check_fixed_pair(const SuiteConfig& cfg, const HermitianMatrix& h,
                                    const HermitianMatrix& k) {
  cfg.validate();
  if (h.dim() != cfg.n || k.dim() != cfg.n)
    throw std::invalid_argument("check_fixed_pair: config n does not match the pair dimension");
  const std::vector<std::string> enabled = cfg.resolved_checks();
  const std::vector<NormSelector> norms = cfg.resolved_norms();
  for (const NormSelector& sel : norms) sel.validate(cfg.n);
  const std::pair<HermitianMatrix, HermitianMatrix> fixed{h, k};
  detail::TrialOutput out =
      detail::run_trial(cfg, enabled, norms, cfg.t_grid.points(), 0, &fixed);

  SuiteReport report;
  report.config = cfg;
  report.trials_run = 1;
  for (const CheckResult& c : out.results) report.cells[detail::cell_key(c)].add(c);
  for (FailureRecord& f : out.failures) report.failures.push_back(std::move(f));
  for (FailureRecord& f : out.conjecture_candidates)
    report.conjecture_candidates.push_back(std::move(f));
  return report;
}

}  // namespace matmean
