#pragma once

#include <map>
#include <memory>

#include "matmean/check_result.hpp"
#include "matmean/compound.hpp"
#include "matmean/means.hpp"
#include "matmean/norms.hpp"

namespace matmean {

// Non-commuting pairs are expected to beat this factor times the scale in
// the strict-inequality statistics (equality diagnostics and the Araki
// strictness counts); it is recorded per cell, never asserted per trial.
inline constexpr double kStrictGapFactor = 1e-6;

namespace detail {

inline ComplexMatrix assemble_exp(const SpectralDecomposition& d, double s, const char* who) {
  if (s * d.max_eigenvalue() > kExpOverflow || s * d.min_eigenvalue() > kExpOverflow)
    throw std::range_error(std::string(who) + ": exponential overflow");
  return d.assemble([s](double x) { return std::exp(s * x); });
}

inline double real_trace(const ComplexMatrix& m, const char* who) {
  const Complex t = m.trace();
  if (std::abs(t.imag()) > 1e-10 * std::max(1.0, std::abs(t.real())))
    throw std::runtime_error(std::string(who) + ": trace has imaginary residual " +
                             std::to_string(t.imag()));
  return t.real();
}

}  // namespace detail

/// Spectral data of one Hermitian pair (H, K) with the curves the checks
/// share, memoized by parameter. One workspace serves one trial; it is not
/// safe to share across threads.
class PairWorkspace {
 public:
  PairWorkspace(HermitianMatrix h, HermitianMatrix k)
      : h_(std::move(h)), k_(std::move(k)), eh_(hermitian_eig(h_)), ek_(hermitian_eig(k_)) {
    require_same_dim(h_.matrix(), k_.matrix(), "PairWorkspace");
  }

  const HermitianMatrix& h() const { return h_; }
  const HermitianMatrix& k() const { return k_; }
  const SpectralDecomposition& h_eig() const { return eh_; }
  const SpectralDecomposition& k_eig() const { return ek_; }
  int dim() const { return h_.dim(); }

  ComplexMatrix exp_h(double s) const { return detail::assemble_exp(eh_, s, "exp_h"); }
  ComplexMatrix exp_k(double s) const { return detail::assemble_exp(ek_, s, "exp_k"); }

  // s((e^{rH} #_t e^{rK})^{1/r}): eigenvalues of the mean to the power 1/r.
  const std::vector<double>& mean_singulars(double t, double r) {
    const auto key = std::make_pair(t, r);
    auto it = mean_s_.find(key);
    if (it != mean_s_.end()) return it->second;

    const SpectralDecomposition& w = whitened_eig(r);
    for (double lam : w.eigenvalues)
      if (std::abs(t * std::log(lam)) > kExpOverflow)
        throw std::range_error("mean_singulars: overflow at t = " + std::to_string(t));
    const ComplexMatrix w_t = w.assemble([t](double x) { return std::pow(x, t); });
    const ComplexMatrix half = exp_h(r / 2.0);
    const SpectralDecomposition m = hermitian_eig(HermitianMatrix::symmetrized(half * w_t * half));
    detail::require_spectrum_positive(m, "mean_singulars");
    std::vector<double> s(m.eigenvalues.size());
    for (size_t i = 0; i < s.size(); ++i) s[i] = std::pow(m.eigenvalues[i], 1.0 / r);
    return mean_s_.emplace(key, std::move(s)).first->second;
  }

  // s(e^{(1-t)H + tK}) = exp of the eigenvalues of the convex combination.
  const std::vector<double>& convex_singulars(double t) {
    auto it = convex_s_.find(t);
    if (it != convex_s_.end()) return it->second;
    const HermitianMatrix c = HermitianMatrix((1.0 - t) * h_.matrix() + t * k_.matrix());
    const SpectralDecomposition d = hermitian_eig(c);
    if (d.max_eigenvalue() > kExpOverflow)
      throw std::range_error("convex_singulars: overflow at t = " + std::to_string(t));
    std::vector<double> s(d.eigenvalues.size());
    for (size_t i = 0; i < s.size(); ++i) s[i] = std::exp(d.eigenvalues[i]);
    return convex_s_.emplace(t, std::move(s)).first->second;
  }

  // s(e^{(1-t)H/2} e^{tK} e^{(1-t)H/2}). The symmetrized product is the
  // Hermitian carrier of |||e^{(1-t)H} e^{tK}|||: the plain product has the
  // same trace by cyclicity but different singular values, and the regime
  // orderings hold for the symmetrized form.
  const std::vector<double>& symprod_singulars(double t) {
    auto it = symprod_s_.find(t);
    if (it != symprod_s_.end()) return it->second;
    const ComplexMatrix a = exp_h((1.0 - t) / 2.0);
    const ComplexMatrix b = exp_k(t);
    const SpectralDecomposition d = hermitian_eig(HermitianMatrix::symmetrized(a * b * a));
    return symprod_s_.emplace(t, d.eigenvalues).first->second;
  }

  double mean_trace(double t) {
    double s = 0.0;
    for (double v : mean_singulars(t, 1.0)) s += v;
    return s;
  }
  double convex_trace(double t) {
    double s = 0.0;
    for (double v : convex_singulars(t)) s += v;
    return s;
  }
  // Tr e^{(1-t)H} e^{tK}; equals the trace of the symmetrized product.
  double product_trace(double t) {
    double s = 0.0;
    for (double v : symprod_singulars(t)) s += v;
    return s;
  }

  PairWorkspace& swapped() {
    if (!swapped_) swapped_ = std::make_unique<PairWorkspace>(k_, h_);
    return *swapped_;
  }

 private:
  HermitianMatrix h_, k_;
  SpectralDecomposition eh_, ek_;
  std::map<double, SpectralDecomposition> whitened_;  // e^{-rH/2} e^{rK} e^{-rH/2} by r
  std::map<std::pair<double, double>, std::vector<double>> mean_s_;
  std::map<double, std::vector<double>> convex_s_;
  std::map<double, std::vector<double>> symprod_s_;
  std::unique_ptr<PairWorkspace> swapped_;

  const SpectralDecomposition& whitened_eig(double r) {
    auto it = whitened_.find(r);
    if (it != whitened_.end()) return it->second;
    const ComplexMatrix a = exp_h(-r / 2.0);
    const ComplexMatrix b = exp_k(r);
    SpectralDecomposition d = hermitian_eig(HermitianMatrix::symmetrized(a * b * a));
    detail::require_spectrum_positive(d, "whitened_eig");
    return whitened_.emplace(r, std::move(d)).first->second;
  }
};

// ---------------------------------------------------------------------------
// Golden-Thompson: Tr e^{H+K} <= Tr e^H e^K.
// ---------------------------------------------------------------------------

inline CheckResult golden_thompson(PairWorkspace& ws, CheckContext ctx = {}) {
  const HermitianMatrix sum = HermitianMatrix(ws.h().matrix() + ws.k().matrix());
  double lhs = 0.0;
  for (double lam : hermitian_eig(sum).eigenvalues) lhs += std::exp(lam);
  const double rhs = detail::real_trace(ws.exp_h(1.0) * ws.exp_k(1.0), "golden_thompson");
  ctx.n = ws.dim();
  return make_le_check("golden_thompson", lhs, rhs, std::move(ctx));
}

inline CheckResult golden_thompson(const HermitianMatrix& h, const HermitianMatrix& k,
                                   CheckContext ctx = {}) {
  PairWorkspace ws(h, k);
  return golden_thompson(ws, std::move(ctx));
}

// ---------------------------------------------------------------------------
// Three-regime comparison of
//   gm = |||e^H #_t e^K|||, ec = |||e^{(1-t)H+tK}|||, sp = |||sym product|||.
// ---------------------------------------------------------------------------

struct ThreeWayResult {
  Regime regime = Regime::interior;
  double geometric_mean_norm = 0.0;
  double convex_norm = 0.0;
  double product_norm = 0.0;
  std::vector<CheckResult> checks;
};

namespace detail {

inline void append_regime_checks(std::vector<CheckResult>& out, Regime reg, double gm, double ec,
                                 double sp, const CheckContext& ctx) {
  const auto add = [&](const char* id, double lhs, double rhs) {
    for (const CheckResult& c : out)
      if (c.check_id == id) return;  // boundary t: regimes share an inequality
    CheckContext c = ctx;
    c.note = regime_name(reg);
    out.push_back(make_le_check(id, lhs, rhs, std::move(c)));
  };
  switch (reg) {
    case Regime::interior:
      add("regimes.gm_le_ec", gm, ec);
      add("regimes.ec_le_sp", ec, sp);
      break;
    case Regime::near_exterior:
      add("regimes.ec_le_sp", ec, sp);
      add("regimes.sp_le_gm", sp, gm);
      break;
    case Regime::far_exterior:
      add("regimes.ec_le_gm", ec, gm);
      add("regimes.gm_le_sp", gm, sp);
      break;
  }
}

}  // namespace detail

/// The two pairwise checks of the primary regime of t, plus the label.
inline ThreeWayResult three_way_compare(PairWorkspace& ws, double t, const NormSelector& sel,
                                        CheckContext ctx = {}) {
  ctx.t = t;
  ctx.norm = sel.id();
  ctx.n = ws.dim();
  ThreeWayResult res;
  res.regime = classify_regime(t);
  res.geometric_mean_norm = ui_norm_from_singular_values(ws.mean_singulars(t, 1.0), sel);
  res.convex_norm = ui_norm_from_singular_values(ws.convex_singulars(t), sel);
  res.product_norm = ui_norm_from_singular_values(ws.symprod_singulars(t), sel);
  detail::append_regime_checks(res.checks, res.regime, res.geometric_mean_norm, res.convex_norm,
                               res.product_norm, ctx);
  return res;
}

inline ThreeWayResult three_way_compare(const HermitianMatrix& h, const HermitianMatrix& k,
                                        double t, const NormSelector& sel, CheckContext ctx = {}) {
  PairWorkspace ws(h, k);
  return three_way_compare(ws, t, sel, std::move(ctx));
}

/// Same comparison but asserting the chain of every regime containing t, so
/// boundary points (t in {-1, 0, 1, 2}) are checked under both orderings.
inline ThreeWayResult regime_checks(PairWorkspace& ws, double t, const NormSelector& sel,
                                    CheckContext ctx = {}) {
  ctx.t = t;
  ctx.norm = sel.id();
  ctx.n = ws.dim();
  ThreeWayResult res;
  res.regime = classify_regime(t);
  res.geometric_mean_norm = ui_norm_from_singular_values(ws.mean_singulars(t, 1.0), sel);
  res.convex_norm = ui_norm_from_singular_values(ws.convex_singulars(t), sel);
  res.product_norm = ui_norm_from_singular_values(ws.symprod_singulars(t), sel);
  for (Regime reg : regimes_containing(t))
    detail::append_regime_checks(res.checks, reg, res.geometric_mean_norm, res.convex_norm,
                                 res.product_norm, ctx);
  return res;
}

// ---------------------------------------------------------------------------
// The r-parameterized interpolation inequalities.
// ---------------------------------------------------------------------------

/// |||(e^{rH} #_t e^{rK})^{1/r}||| <= |||e^{(1-t)H+tK}|||, t in [0,1].
inline CheckResult interior_interpolation(PairWorkspace& ws, double t, double r,
                                          const NormSelector& sel, CheckContext ctx = {}) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::range_error("interior_interpolation: t = " + std::to_string(t) +
                           " outside [0,1]; use exterior_interpolation");
  if (!(r > 0.0)) throw std::invalid_argument("interior_interpolation: r must be > 0");
  ctx.t = t;
  ctx.r = r;
  ctx.norm = sel.id();
  ctx.n = ws.dim();
  const double lhs = ui_norm_from_singular_values(ws.mean_singulars(t, r), sel);
  const double rhs = ui_norm_from_singular_values(ws.convex_singulars(t), sel);
  return make_le_check("interior", lhs, rhs, std::move(ctx));
}

/// |||e^{(1-t)H+tK}||| <= |||(e^{rH} #_t e^{rK})^{1/r}|||, t <= 0 or t >= 1.
/// The t <= 0 branch is evaluated through the switch relation
/// X #_{1-t} Y = Y #_t X, i.e. on the swapped pair at weight 1-t.
inline CheckResult exterior_interpolation(PairWorkspace& ws, double t, double r,
                                          const NormSelector& sel, CheckContext ctx = {}) {
  if (t > 0.0 && t < 1.0)
    throw std::range_error("exterior_interpolation: t = " + std::to_string(t) +
                           " strictly inside (0,1); use interior_interpolation");
  if (!(r > 0.0)) throw std::invalid_argument("exterior_interpolation: r must be > 0");
  ctx.t = t;
  ctx.r = r;
  ctx.norm = sel.id();
  ctx.n = ws.dim();
  const std::vector<double>& mean_s =
      (t <= 0.0) ? ws.swapped().mean_singulars(1.0 - t, r) : ws.mean_singulars(t, r);
  const double lhs = ui_norm_from_singular_values(ws.convex_singulars(t), sel);
  const double rhs = ui_norm_from_singular_values(mean_s, sel);
  return make_le_check("exterior", lhs, rhs, std::move(ctx));
}

// ---------------------------------------------------------------------------
// The r-vs-t refinement for t >= 1 (upper/lower branches around the dead
// zone min{t/2, t-1} < r < max{t/2, t-1}), with the log-majorization form
// checked alongside the norm inequality.
// ---------------------------------------------------------------------------

inline CheckResult hiai2019_regime(PairWorkspace& ws, double t, double r, const NormSelector& sel,
                                   CheckContext ctx = {}) {
  if (!(t >= 1.0)) throw std::invalid_argument("hiai2019_regime: t must be >= 1");
  if (!(r > 0.0)) throw std::invalid_argument("hiai2019_regime: r must be > 0");
  ctx.t = t;
  ctx.r = r;
  ctx.norm = sel.id();
  ctx.n = ws.dim();
  const double hi = std::max(t / 2.0, t - 1.0);
  const double lo = std::min(t / 2.0, t - 1.0);
  const bool upper = r >= hi;
  const bool lower = r <= lo;
  if (!upper && !lower) {
    CheckResult res;
    res.check_id = "hiai2019.dead_zone";
    res.verdict = Verdict::not_applicable;
    ctx.note = "r between min{t/2,t-1} and max{t/2,t-1}";
    res.context = std::move(ctx);
    return res;
  }
  const std::vector<double>& sym = ws.symprod_singulars(t);
  const std::vector<double>& mean = ws.mean_singulars(t, r);
  const double sym_norm = ui_norm_from_singular_values(sym, sel);
  const double mean_norm = ui_norm_from_singular_values(mean, sel);

  CheckResult res;
  const MajorizationVerdict mv = upper ? log_majorization_compare(sym, mean)
                                       : log_majorization_compare(mean, sym);
  if (upper)
    res = make_le_check(lower ? "hiai2019.boundary" : "hiai2019.upper", sym_norm, mean_norm, ctx);
  else
    res = make_le_check("hiai2019.lower", mean_norm, sym_norm, ctx);
  if (upper && lower) {
    // r = t/2 = t-1 (t=2, r=1): both orderings apply, so the two
    // expressions must agree.
    if (std::abs(res.gap) > res.tol) res.verdict = Verdict::violated;
  }
  if (mv.relation != MajorizationRelation::log && res.verdict != Verdict::violated) {
    res.verdict = Verdict::violated;
    res.context.note = std::string("log-majorization form failed: relation = ") +
                       relation_name(mv.relation);
    res.gap = std::min(res.gap, mv.worst_margin);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Araki: (A^{1/2} B A^{1/2})^r  <_log  A^{r/2} B^r A^{r/2},  r >= 1.
// ---------------------------------------------------------------------------

inline MajorizationVerdict araki_check(const PositiveDefiniteMatrix& a,
                                       const PositiveDefiniteMatrix& b, double r) {
  if (!(r >= 1.0)) throw std::invalid_argument("araki_check: r must be >= 1");
  require_same_dim(a.matrix(), b.matrix(), "araki_check");
  const ComplexMatrix a_half = a.decomposition().assemble([](double x) { return std::sqrt(x); });
  const SpectralDecomposition inner =
      hermitian_eig(HermitianMatrix::symmetrized(a_half * b.matrix() * a_half));
  detail::require_spectrum_positive(inner, "araki_check");
  std::vector<double> lhs(inner.eigenvalues.size());
  for (size_t i = 0; i < lhs.size(); ++i) lhs[i] = std::pow(inner.eigenvalues[i], r);

  const ComplexMatrix a_rhalf =
      a.decomposition().assemble([r](double x) { return std::pow(x, r / 2.0); });
  const ComplexMatrix b_r = b.decomposition().assemble([r](double x) { return std::pow(x, r); });
  const SpectralDecomposition rhs_dec =
      hermitian_eig(HermitianMatrix::symmetrized(a_rhalf * b_r * a_rhalf));
  return log_majorization_compare(lhs, rhs_dec.eigenvalues);
}

// ---------------------------------------------------------------------------
// Log-majorized Golden-Thompson family: e^{H+K} <_log (e^{qH/2} e^{qK} e^{qH/2})^{1/q}, and
// Ky Fan monotonicity of the right side in q.
// ---------------------------------------------------------------------------

inline std::vector<double> gt_logmaj_singulars(PairWorkspace& ws, double q) {
  if (!(q > 0.0)) throw std::invalid_argument("gt_logmaj: q must be > 0");
  const ComplexMatrix a = ws.exp_h(q / 2.0);
  const ComplexMatrix b = ws.exp_k(q);
  const SpectralDecomposition d = hermitian_eig(HermitianMatrix::symmetrized(a * b * a));
  detail::require_spectrum_positive(d, "gt_logmaj");
  std::vector<double> s(d.eigenvalues.size());
  for (size_t i = 0; i < s.size(); ++i) s[i] = std::pow(d.eigenvalues[i], 1.0 / q);
  return s;
}

inline MajorizationVerdict gt_logmaj(PairWorkspace& ws, double q) {
  const HermitianMatrix sum = HermitianMatrix(ws.h().matrix() + ws.k().matrix());
  const SpectralDecomposition d = hermitian_eig(sum);
  std::vector<double> lhs(d.eigenvalues.size());
  for (size_t i = 0; i < lhs.size(); ++i) lhs[i] = std::exp(d.eigenvalues[i]);
  const std::vector<double> rhs = gt_logmaj_singulars(ws, q);
  return log_majorization_compare(lhs, rhs);
}

inline MajorizationVerdict gt_logmaj(const HermitianMatrix& h, const HermitianMatrix& k, double q) {
  PairWorkspace ws(h, k);
  return gt_logmaj(ws, q);
}

/// Every Ky Fan norm of (e^{qH/2} e^{qK} e^{qH/2})^{1/q} is nondecreasing
/// over the ascending q grid. The gap is the smallest per-step increase.
inline CheckResult gt_logmaj_monotonicity(PairWorkspace& ws, const std::vector<double>& q_grid,
                                          CheckContext ctx = {}) {
  if (q_grid.size() < 2)
    throw std::invalid_argument("gt_logmaj_monotonicity: need at least two q values");
  for (size_t i = 1; i < q_grid.size(); ++i)
    if (!(q_grid[i] > q_grid[i - 1]))
      throw std::invalid_argument("gt_logmaj_monotonicity: q grid must be ascending");
  ctx.n = ws.dim();
  const int n = ws.dim();
  double min_step = std::numeric_limits<double>::infinity();
  double scale = 1.0;
  std::vector<double> prev = gt_logmaj_singulars(ws, q_grid[0]);
  for (size_t qi = 1; qi < q_grid.size(); ++qi) {
    const std::vector<double> cur = gt_logmaj_singulars(ws, q_grid[qi]);
    double prev_sum = 0.0, cur_sum = 0.0;
    for (int k = 0; k < n; ++k) {
      prev_sum += prev[static_cast<size_t>(k)];
      cur_sum += cur[static_cast<size_t>(k)];
      min_step = std::min(min_step, cur_sum - prev_sum);
      scale = std::max({scale, prev_sum, cur_sum});
    }
    prev = cur;
  }
  CheckResult res;
  res.check_id = "gt_logmaj.kyfan_monotone";
  res.gap = min_step;
  res.tol = 1e-9 * scale;
  res.verdict = classify_gap(res.gap, res.tol);
  res.context = std::move(ctx);
  return res;
}

// ---------------------------------------------------------------------------
// Furuta: A >= B >= 0, r >= 0, p >= 0, q >= 1, (1+2r)q >= p+2r imply
// (A^r B^p A^r)^{1/q} <= A^{(p+2r)/q} in the positive semidefinite order.
// ---------------------------------------------------------------------------

inline CheckResult furuta_check(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b,
                                double r, double p, double q, CheckContext ctx = {}) {
  require_same_dim(a.matrix(), b.matrix(), "furuta_check");
  ctx.r = r;
  ctx.q = q;
  ctx.n = a.dim();
  const auto not_applicable = [&](const std::string& why) {
    CheckResult res;
    res.check_id = "furuta";
    res.verdict = Verdict::not_applicable;
    res.context = std::move(ctx);
    res.context.note = why;
    return res;
  };
  if (!(r >= 0.0) || !(p >= 0.0) || !(q >= 1.0))
    return not_applicable("exponent hypothesis violated (need r,p >= 0, q >= 1)");
  if ((1.0 + 2.0 * r) * q < p + 2.0 * r)
    return not_applicable("(1+2r)q >= p+2r violated");
  const SpectralDecomposition diff = hermitian_eig(HermitianMatrix(a.matrix() - b.matrix()));
  if (diff.min_eigenvalue() < -1e-10 * a.decomposition().max_eigenvalue())
    return not_applicable("order hypothesis A >= B violated (min eig of A-B = " +
                          std::to_string(diff.min_eigenvalue()) + ")");

  const ComplexMatrix a_r = a.decomposition().assemble([r](double x) { return std::pow(x, r); });
  const ComplexMatrix b_p = b.decomposition().assemble([p](double x) { return std::pow(x, p); });
  const SpectralDecomposition m = hermitian_eig(HermitianMatrix::symmetrized(a_r * b_p * a_r));
  detail::require_spectrum_positive(m, "furuta_check");
  const ComplexMatrix lhs = m.assemble([q](double x) { return std::pow(x, 1.0 / q); });
  const double e = (p + 2.0 * r) / q;
  const ComplexMatrix rhs = a.decomposition().assemble([e](double x) { return std::pow(x, e); });

  const SpectralDecomposition gap_dec = hermitian_eig(HermitianMatrix(rhs - lhs));
  CheckResult res;
  res.check_id = "furuta";
  res.lhs = hermitian_eig(HermitianMatrix(lhs)).max_eigenvalue();
  res.rhs = hermitian_eig(HermitianMatrix(rhs)).max_eigenvalue();
  res.gap = gap_dec.min_eigenvalue();
  res.tol = 1e-9 * std::max({res.lhs, res.rhs, 1.0});
  res.verdict = classify_gap(res.gap, res.tol);
  res.context = std::move(ctx);
  return res;
}

/// The instantiation the [1,2] log-majorization rests on: after shifting H and K so
/// that e^H #_t e^K <= I, take A = e^{-K}, B = (e^{K/2} e^{-H} e^{K/2})^{t-1}
/// with r = 1/2, p = q = 1/(t-1), for t in (1, 2].
inline CheckResult furuta_paper_instance(const HermitianMatrix& h, const HermitianMatrix& k,
                                         double t, CheckContext ctx = {}) {
  if (!(t > 1.0 && t <= 2.0))
    throw std::invalid_argument("furuta_paper_instance: t must be in (1,2]");
  ctx.t = t;
  const PositiveDefiniteMatrix mean =
      geometric_mean(mexp(h), mexp(k), t);
  // Shift past the minimal normalization: the derivation only needs the
  // mean below the identity, and sitting exactly on that boundary (top
  // eigenvalue 1) makes the conclusion's smallest eigenvalue a zero-vs-
  // round-off comparison at t = 2.
  const double shift = std::log(mean.decomposition().max_eigenvalue()) + 0.1;
  const int n = h.dim();
  const HermitianMatrix hs =
      HermitianMatrix(h.matrix() - shift * ComplexMatrix::identity(n));
  const HermitianMatrix ks =
      HermitianMatrix(k.matrix() - shift * ComplexMatrix::identity(n));
  const SpectralDecomposition ehs = hermitian_eig(hs);
  const SpectralDecomposition eks = hermitian_eig(ks);
  const PositiveDefiniteMatrix a = mexp(spectral_function(eks, [](double x) { return -x; }));
  const ComplexMatrix k_half = detail::assemble_exp(eks, 0.5, "furuta_paper_instance");
  const ComplexMatrix h_neg = detail::assemble_exp(ehs, -1.0, "furuta_paper_instance");
  const PositiveDefiniteMatrix inner{HermitianMatrix::symmetrized(k_half * h_neg * k_half)};
  const PositiveDefiniteMatrix b = mpow(inner, t - 1.0);
  const double pq = 1.0 / (t - 1.0);
  CheckResult res = furuta_check(a, b, 0.5, pq, pq, std::move(ctx));
  res.check_id = "furuta.paper";
  return res;
}

// ---------------------------------------------------------------------------
// The symmetrized product is log-majorized by the mean on t in [1,2]:
//   e^{(1-t)H/2} e^{tK} e^{(1-t)H/2}  <_log  e^H #_t e^K.
// ---------------------------------------------------------------------------

inline MajorizationVerdict mean_logmaj_check(PairWorkspace& ws, double t) {
  if (!(t >= 1.0 && t <= 2.0))
    throw std::range_error("mean_logmaj_check: t = " + std::to_string(t) + " outside [1,2]");
  return log_majorization_compare(ws.symprod_singulars(t), ws.mean_singulars(t, 1.0));
}

inline MajorizationVerdict mean_logmaj_check(const HermitianMatrix& h, const HermitianMatrix& k,
                                          double t) {
  PairWorkspace ws(h, k);
  return mean_logmaj_check(ws, t);
}

/// Independent route to the same prefix margins through compound matrices:
/// the product of the top k singular values of M is the top singular value
/// of the k-th compound of M.
inline std::vector<double> mean_logmaj_compound_margins(const HermitianMatrix& h,
                                                     const HermitianMatrix& k, double t) {
  if (!(t >= 1.0 && t <= 2.0))
    throw std::range_error("mean_logmaj_compound_margins: t outside [1,2]");
  PairWorkspace ws(h, k);
  const int n = ws.dim();
  const ComplexMatrix a = ws.exp_h((1.0 - t) / 2.0);
  const ComplexMatrix lhs = a * ws.exp_k(t) * a;
  const PositiveDefiniteMatrix rhs = geometric_mean(mexp(h), mexp(k), t);
  std::vector<double> margins(static_cast<size_t>(n));
  for (int kk = 1; kk <= n; ++kk) {
    const double top_l = singular_values(compound_matrix(lhs, kk)).front();
    const double top_r = singular_values(compound_matrix(rhs.matrix(), kk)).front();
    margins[static_cast<size_t>(kk - 1)] = std::log(top_r) - std::log(top_l);
  }
  return margins;
}

// ---------------------------------------------------------------------------
// Equality diagnostics: for strictly increasing norms the
// interpolation gap vanishes iff H and K commute.
// ---------------------------------------------------------------------------

inline CheckResult equality_diagnostic(PairWorkspace& ws, double t, double r,
                                       const NormSelector& sel, CheckContext ctx = {}) {
  if (!sel.strictly_increasing(ws.dim()))
    throw std::invalid_argument("equality_diagnostic: norm " + sel.id() +
                                " is not strictly increasing");
  CheckResult res = (t >= 0.0 && t <= 1.0) ? interior_interpolation(ws, t, r, sel, ctx)
                                           : exterior_interpolation(ws, t, r, sel, ctx);
  res.check_id = "equality_diag";
  std::ostringstream os;
  os << "commutator=" << commutator_norm(ws.h(), ws.k());
  res.context.note = os.str();
  return res;
}

// ---------------------------------------------------------------------------
// Derivative identities tying the interpolation chains to their tangent
// inequalities at t = 0 and t = 2, cross-validated by finite differences.
// ---------------------------------------------------------------------------

inline std::pair<CheckResult, CheckResult> derivative_identities(PairWorkspace& ws, double r,
                                                                 double h_step,
                                                                 CheckContext ctx = {}) {
  if (!(r > 0.0)) throw std::invalid_argument("derivative_identities: r must be > 0");
  if (!(h_step >= 1e-6 && h_step <= 1e-3))
    throw std::range_error("derivative_identities: step " + std::to_string(h_step) +
                           " outside [1e-6, 1e-3]");
  ctx.r = r;
  ctx.n = ws.dim();

  const auto fd_tol = [h_step](double curvature) {
    return std::max(1e-6, 10.0 * h_step * h_step * std::abs(curvature));
  };

  // (i)  (1/r) Tr[e^H log(e^{rH/2} e^{-rK} e^{rH/2})] >= Tr[e^H (H-K)],
  //      the tangent of the interpolation chain at t = 0.
  const ComplexMatrix exp_h = ws.exp_h(1.0);
  const ComplexMatrix rh_half = ws.exp_h(r / 2.0);
  const ComplexMatrix rk_neg = ws.exp_k(-r);
  const HermitianMatrix log_g = mlog(HermitianMatrix::symmetrized(rh_half * rk_neg * rh_half));
  const double lhs_hp =
      detail::real_trace(exp_h * log_g.matrix(), "derivative_identities") / r;
  const double rhs_hp = detail::real_trace(
      exp_h * (ws.h().matrix() - ws.k().matrix()), "derivative_identities");
  CheckResult first = make_le_check("derivative.t0", rhs_hp, lhs_hp, ctx);

  {  // analytic d/dt Tr[(e^{rH} #_t e^{rK})^{1/r}] at 0 is -lhs_hp
    const auto curve = [&](double t) {
      double s = 0.0;
      for (double v : ws.mean_singulars(t, r)) s += v;
      return s;
    };
    const double up = curve(h_step), at = curve(0.0), down = curve(-h_step);
    const double fd = (up - down) / (2.0 * h_step);
    const double curvature = (up - 2.0 * at + down) / (h_step * h_step);
    const double err = std::abs(fd - (-lhs_hp));
    std::ostringstream os;
    os << first.context.note << (first.context.note.empty() ? "" : "; ") << "fd_err=" << err;
    first.context.note = os.str();
    if (err > fd_tol(curvature)) {
      first.verdict = Verdict::violated;
      first.context.note += " (finite-difference mismatch)";
    }
  }

  // (ii) Tr[e^{-H/2} e^{2K} e^{-H/2} log(e^{-H/2} e^K e^{-H/2})]
  //        <= Tr[e^{-H} e^{2K} (K-H)], the tangent at t = 2.
  const ComplexMatrix h_neg_half = ws.exp_h(-0.5);
  const ComplexMatrix k_two = ws.exp_k(2.0);
  const ComplexMatrix outer = h_neg_half * k_two * h_neg_half;
  const HermitianMatrix log_w =
      mlog(HermitianMatrix::symmetrized(h_neg_half * ws.exp_k(1.0) * h_neg_half));
  const double lhs_t2 = detail::real_trace(outer * log_w.matrix(), "derivative_identities");
  const double rhs_t2 = detail::real_trace(
      ws.exp_h(-1.0) * k_two * (ws.k().matrix() - ws.h().matrix()), "derivative_identities");
  CheckResult second = make_le_check("derivative.t2", lhs_t2, rhs_t2, ctx);

  {  // analytic d/dt Tr[e^H #_t e^K] at 2 is lhs_t2
    const double up = ws.mean_trace(2.0 + h_step);
    const double at = ws.mean_trace(2.0);
    const double down = ws.mean_trace(2.0 - h_step);
    const double fd = (up - down) / (2.0 * h_step);
    const double curvature = (up - 2.0 * at + down) / (h_step * h_step);
    const double err = std::abs(fd - lhs_t2);
    std::ostringstream os;
    os << second.context.note << (second.context.note.empty() ? "" : "; ") << "fd_err=" << err;
    second.context.note = os.str();
    if (err > fd_tol(curvature)) {
      second.verdict = Verdict::violated;
      second.context.note += " (finite-difference mismatch)";
    }
  }

  return {std::move(first), std::move(second)};
}

// ---------------------------------------------------------------------------
// Lie-Trotter convergence: e(m) = ||(e^{H/m} e^{K/m})^m - e^{H+K}||_F shrinks
// at first order, so doubling m roughly halves the error.
// ---------------------------------------------------------------------------

inline CheckResult lie_trotter_check(PairWorkspace& ws, const std::vector<int>& m_list,
                                     CheckContext ctx = {}) {
  if (m_list.empty()) throw std::invalid_argument("lie_trotter_check: empty m list");
  for (size_t i = 0; i < m_list.size(); ++i) {
    if (m_list[i] < 1) throw std::invalid_argument("lie_trotter_check: m must be positive");
    if (i > 0 && m_list[i] <= m_list[i - 1])
      throw std::invalid_argument("lie_trotter_check: m list must be ascending");
  }
  ctx.n = ws.dim();
  const HermitianMatrix sum = HermitianMatrix(ws.h().matrix() + ws.k().matrix());
  const ComplexMatrix target = detail::assemble_exp(hermitian_eig(sum), 1.0, "lie_trotter_check");
  const double scale = target.frobenius_norm();

  std::vector<double> err(m_list.size());
  for (size_t i = 0; i < m_list.size(); ++i) {
    const int m = m_list[i];
    const ComplexMatrix step = ws.exp_h(1.0 / m) * ws.exp_k(1.0 / m);
    ComplexMatrix pow = ComplexMatrix::identity(ws.dim());
    ComplexMatrix base = step;
    for (int e = m; e > 0; e >>= 1) {
      if (e & 1) pow = pow * base;
      if (e > 1) base = base * base;
    }
    err[i] = (pow - target).frobenius_norm();
  }

  CheckResult res;
  res.check_id = "lie_trotter";
  res.context = std::move(ctx);
  res.tol = 0.0;

  bool degenerate = true;
  for (double e : err) degenerate = degenerate && e <= 1e-10 * std::max(1.0, scale);
  if (degenerate) {
    res.gap = 0.0;
    res.verdict = Verdict::equality;
    res.context.note = "commuting pair: Trotter error at round-off";
    return res;
  }

  double gap = std::numeric_limits<double>::infinity();
  std::ostringstream note;
  for (size_t i = 0; i + 1 < err.size(); ++i) {
    if (err[i + 1] > err[i]) gap = std::min(gap, (err[i] - err[i + 1]) / std::max(err[i], 1e-300));
    // convergence-window check on the doubling steps among the largest m
    if (m_list[i + 1] == 2 * m_list[i] && m_list[i] * 4 >= m_list.back()) {
      const double ratio = err[i + 1] / err[i];
      note << "ratio(" << m_list[i] << "->" << m_list[i + 1] << ")=" << ratio << " ";
      gap = std::min(gap, std::min(ratio - 0.3, 0.7 - ratio));
    }
  }
  res.gap = gap;
  res.verdict = classify_gap(gap, res.tol);
  res.context.note = note.str();
  return res;
}

// ---------------------------------------------------------------------------
// Midpoint concavity/convexity of the mean in the positive semidefinite
// order: concave on [0,1], convex on [-1,0] u [1,2].
// ---------------------------------------------------------------------------

inline CheckResult convexity_check(const PositiveDefiniteMatrix& x, const PositiveDefiniteMatrix& y,
                                   const PositiveDefiniteMatrix& x2,
                                   const PositiveDefiniteMatrix& y2, double t,
                                   CheckContext ctx = {}) {
  ctx.t = t;
  ctx.n = x.dim();
  const bool concave = t >= 0.0 && t <= 1.0;
  const bool convex = (t >= -1.0 && t <= 0.0) || (t >= 1.0 && t <= 2.0);
  if (!concave && !convex) {
    CheckResult res;
    res.check_id = "convexity";
    res.verdict = Verdict::not_applicable;
    ctx.note = "t outside [-1,2]";
    res.context = std::move(ctx);
    return res;
  }
  const PositiveDefiniteMatrix xm{HermitianMatrix(0.5 * (x.matrix() + x2.matrix()))};
  const PositiveDefiniteMatrix ym{HermitianMatrix(0.5 * (y.matrix() + y2.matrix()))};
  const ComplexMatrix mid = geometric_mean(xm, ym, t).matrix();
  const ComplexMatrix avg =
      0.5 * (geometric_mean(x, y, t).matrix() + geometric_mean(x2, y2, t).matrix());
  const ComplexMatrix diff = concave ? mid - avg : avg - mid;
  const SpectralDecomposition d = hermitian_eig(HermitianMatrix(diff));

  CheckResult res;
  res.check_id = "convexity";
  res.gap = d.min_eigenvalue();
  res.tol = 1e-9 * std::max({mid.frobenius_norm(), avg.frobenius_norm(), 1.0});
  res.verdict = classify_gap(res.gap, res.tol);
  ctx.note = concave ? "concave regime" : "convex regime";
  res.context = std::move(ctx);
  return res;
}

/// X <= X2, Y <= Y2 imply X #_t Y <= X2 #_t Y2 for t in [0,1].
inline CheckResult mean_monotonicity(const PositiveDefiniteMatrix& x,
                                     const PositiveDefiniteMatrix& x2,
                                     const PositiveDefiniteMatrix& y,
                                     const PositiveDefiniteMatrix& y2, double t,
                                     CheckContext ctx = {}) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::range_error("mean_monotonicity: t outside [0,1]");
  const double scale = std::max(x2.decomposition().max_eigenvalue(),
                                y2.decomposition().max_eigenvalue());
  if (hermitian_eig(HermitianMatrix(x2.matrix() - x.matrix())).min_eigenvalue() < -1e-10 * scale ||
      hermitian_eig(HermitianMatrix(y2.matrix() - y.matrix())).min_eigenvalue() < -1e-10 * scale)
    throw std::domain_error("mean_monotonicity: inputs are not ordered");
  ctx.t = t;
  ctx.n = x.dim();
  const ComplexMatrix lo = geometric_mean(x, y, t).matrix();
  const ComplexMatrix hi = geometric_mean(x2, y2, t).matrix();
  const SpectralDecomposition d = hermitian_eig(HermitianMatrix(hi - lo));
  CheckResult res;
  res.check_id = "monotonicity";
  res.gap = d.min_eigenvalue();
  res.tol = 1e-9 * std::max({lo.frobenius_norm(), hi.frobenius_norm(), 1.0});
  res.verdict = classify_gap(res.gap, res.tol);
  res.context = std::move(ctx);
  return res;
}

// ---------------------------------------------------------------------------
// The closing conjecture, t >= 2: records the sign of
// Tr[e^H #_t e^K] - Tr[sym product]; never asserts.
// ---------------------------------------------------------------------------

inline CheckResult conjecture_fuzz(PairWorkspace& ws, double t, CheckContext ctx = {}) {
  if (!(t >= 2.0)) throw std::range_error("conjecture_fuzz: t must be >= 2");
  ctx.t = t;
  ctx.n = ws.dim();
  const double lhs = ws.mean_trace(t);
  const double rhs = ws.product_trace(t);
  CheckResult res;
  res.check_id = "conjecture";
  res.lhs = lhs;
  res.rhs = rhs;
  res.gap = rhs - lhs;
  res.tol = comparison_tol(lhs, rhs);
  // A conjecture is recorded, not asserted: candidates against it are
  // reported with full context but never count as violations.
  res.verdict = std::abs(res.gap) <= res.tol ? Verdict::equality : Verdict::holds;
  if (res.gap < -res.tol) ctx.note = "counterexample candidate";
  res.context = std::move(ctx);
  return res;
}

inline CheckResult conjecture_fuzz(const HermitianMatrix& h, const HermitianMatrix& k, double t,
                                   CheckContext ctx = {}) {
  PairWorkspace ws(h, k);
  return conjecture_fuzz(ws, t, std::move(ctx));
}

}  // namespace matmean
