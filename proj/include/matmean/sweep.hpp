#pragma once

#include "matmean/checks.hpp"
#include "matmean/format.hpp"
#include "matmean/rng.hpp"
#include "matmean/suite.hpp"

namespace matmean {

/// One grid point of the three-curve trace comparison.
struct SweepRow {
  double t = 0.0;
  double trace_geom_mean = 0.0;  // Tr e^H #_t e^K            (red)
  double trace_exp_sum = 0.0;    // Tr e^{(1-t)H + tK}         (green)
  double trace_product = 0.0;    // Tr e^{(1-t)H} e^{tK}       (blue)
  Regime regime = Regime::interior;
  bool overflow = false;
  bool ordering_ok = true;
};

struct SweepConfig {
  int n = 4;
  double sigma = 1.0;
  uint64_t seed = 42;
  int pairs = 3;
  TGrid t_grid;
  bool positive_shift = false;
  double kappa_max = 1e8;

  void validate() const {
    std::vector<std::string> errors;
    if (n < 1) errors.push_back("n must be >= 1");
    if (!(sigma > 0.0)) errors.push_back("sigma must be > 0");
    if (pairs < 1) errors.push_back("pairs must be >= 1");
    if (!(t_grid.step > 0.0)) errors.push_back("t-step must be > 0");
    if (!(t_grid.min < t_grid.max)) errors.push_back("t-min must be < t-max");
    if (!errors.empty()) {
      std::string joined = "invalid sweep config: ";
      for (size_t i = 0; i < errors.size(); ++i) joined += (i ? "; " : "") + errors[i];
      throw std::invalid_argument(joined);
    }
  }
};

/// Shift the spectrum strictly positive: H - lambda_min(H) I + I.
inline HermitianMatrix positive_shift(const HermitianMatrix& h) {
  const double lo = hermitian_eig(h).min_eigenvalue();
  ComplexMatrix m = h.matrix();
  for (int i = 0; i < m.dim(); ++i) m(i, i) += 1.0 - lo;
  return HermitianMatrix(m);
}

/// Trace curves over the grid for one pair. The regime ordering of all
/// containing regimes is asserted per row (in the trace norm the three
/// values are the three norms); rows that overflow are marked and skipped.
inline std::vector<SweepRow> compute_sweep(const HermitianMatrix& h, const HermitianMatrix& k,
                                           const TGrid& grid) {
  PairWorkspace ws(h, k);
  std::vector<SweepRow> rows;
  for (double t : grid.points()) {
    SweepRow row;
    row.t = t;
    row.regime = classify_regime(t);
    try {
      row.trace_geom_mean = ws.mean_trace(t);
      row.trace_exp_sum = ws.convex_trace(t);
      row.trace_product = ws.product_trace(t);
    } catch (const std::range_error&) {
      row.overflow = true;
      rows.push_back(row);
      continue;
    } catch (const std::domain_error&) {
      // positivity refused: the spectrum spread left double precision
      row.overflow = true;
      rows.push_back(row);
      continue;
    }
    const double gm = row.trace_geom_mean, ec = row.trace_exp_sum, sp = row.trace_product;
    const double tol = comparison_tol(std::max({gm, ec, sp}), 0.0);
    for (Regime reg : regimes_containing(t)) {
      switch (reg) {
        case Regime::interior: row.ordering_ok &= gm <= ec + tol && ec <= sp + tol; break;
        case Regime::near_exterior: row.ordering_ok &= ec <= sp + tol && sp <= gm + tol; break;
        case Regime::far_exterior: row.ordering_ok &= ec <= gm + tol && gm <= sp + tol; break;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

inline std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "t,trace_geom_mean,trace_exp_sum,trace_product,regime\n";
  for (const SweepRow& row : rows) {
    out += format_double(row.t);
    out += ',';
    if (row.overflow) {
      out += "nan,nan,nan,overflow\n";
      continue;
    }
    out += format_double(row.trace_geom_mean);
    out += ',';
    out += format_double(row.trace_exp_sum);
    out += ',';
    out += format_double(row.trace_product);
    out += ',';
    out += regime_name(row.regime);
    out += '\n';
  }
  return out;
}

/// Hand-emitted SVG: fixed 800x500 viewport, linear axes autoscaled to the
/// finite rows, three 2px polylines in the red/green/blue convention of the
/// trace comparison, axis labels t and trace.
inline std::string sweep_to_svg(const std::vector<SweepRow>& rows) {
  const double width = 800.0, height = 500.0;
  const double ml = 70.0, mr = 20.0, mt = 20.0, mb = 50.0;

  double t_lo = std::numeric_limits<double>::infinity(), t_hi = -t_lo;
  double y_lo = std::numeric_limits<double>::infinity(), y_hi = -y_lo;
  for (const SweepRow& r : rows) {
    if (r.overflow) continue;
    t_lo = std::min(t_lo, r.t);
    t_hi = std::max(t_hi, r.t);
    for (double v : {r.trace_geom_mean, r.trace_exp_sum, r.trace_product}) {
      y_lo = std::min(y_lo, v);
      y_hi = std::max(y_hi, v);
    }
  }
  if (!(t_lo < t_hi)) {
    t_lo = 0.0;
    t_hi = 1.0;
  }
  if (!(y_lo < y_hi)) {
    y_lo = 0.0;
    y_hi = 1.0;
  }
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;

  const auto xpix = [&](double t) { return ml + (t - t_lo) / (t_hi - t_lo) * (width - ml - mr); };
  const auto ypix = [&](double y) {
    return height - mb - (y - y_lo) / (y_hi - y_lo) * (height - mt - mb);
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
         "viewBox=\"0 0 800 500\">\n";
  svg += "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
  // axes
  svg += "  <line x1=\"" + format_double(ml) + "\" y1=\"" + format_double(height - mb) +
         "\" x2=\"" + format_double(width - mr) + "\" y2=\"" + format_double(height - mb) +
         "\" stroke=\"black\"/>\n";
  svg += "  <line x1=\"" + format_double(ml) + "\" y1=\"" + format_double(mt) + "\" x2=\"" +
         format_double(ml) + "\" y2=\"" + format_double(height - mb) + "\" stroke=\"black\"/>\n";
  svg += "  <text x=\"" + format_double((ml + width - mr) / 2) + "\" y=\"" +
         format_double(height - 12) + "\" text-anchor=\"middle\" font-size=\"16\">t</text>\n";
  svg += "  <text x=\"18\" y=\"" + format_double((mt + height - mb) / 2) +
         "\" text-anchor=\"middle\" font-size=\"16\" transform=\"rotate(-90 18 " +
         format_double((mt + height - mb) / 2) + ")\">trace</text>\n";
  // tick labels at the extremes
  svg += "  <text x=\"" + format_double(ml) + "\" y=\"" + format_double(height - mb + 18) +
         "\" text-anchor=\"middle\" font-size=\"12\">" + format_double(t_lo) + "</text>\n";
  svg += "  <text x=\"" + format_double(width - mr) + "\" y=\"" + format_double(height - mb + 18) +
         "\" text-anchor=\"middle\" font-size=\"12\">" + format_double(t_hi) + "</text>\n";
  svg += "  <text x=\"" + format_double(ml - 6) + "\" y=\"" + format_double(ypix(y_lo) + 4) +
         "\" text-anchor=\"end\" font-size=\"12\">" + format_double(y_lo) + "</text>\n";
  svg += "  <text x=\"" + format_double(ml - 6) + "\" y=\"" + format_double(ypix(y_hi) + 4) +
         "\" text-anchor=\"end\" font-size=\"12\">" + format_double(y_hi) + "</text>\n";

  struct Series {
    const char* color;
    const char* label;
    double SweepRow::* field;
  };
  const Series series[3] = {
      {"red", "Tr geometric mean", &SweepRow::trace_geom_mean},
      {"green", "Tr exp convex sum", &SweepRow::trace_exp_sum},
      {"blue", "Tr product", &SweepRow::trace_product},
  };
  for (const Series& s : series) {
    svg += "  <polyline fill=\"none\" stroke=\"";
    svg += s.color;
    svg += "\" stroke-width=\"2\" points=\"";
    bool first = true;
    for (const SweepRow& r : rows) {
      if (r.overflow) continue;
      if (!first) svg += ' ';
      first = false;
      svg += format_double(xpix(r.t)) + "," + format_double(ypix(r.*(s.field)));
    }
    svg += "\"/>\n";
  }
  // legend
  double ly = mt + 16;
  for (const Series& s : series) {
    svg += "  <line x1=\"" + format_double(ml + 12) + "\" y1=\"" + format_double(ly - 4) +
           "\" x2=\"" + format_double(ml + 40) + "\" y2=\"" + format_double(ly - 4) +
           "\" stroke=\"" + s.color + "\" stroke-width=\"2\"/>\n";
    svg += "  <text x=\"" + format_double(ml + 46) + "\" y=\"" + format_double(ly) +
           "\" font-size=\"13\">" + s.label + "</text>\n";
    ly += 18;
  }
  svg += "</svg>\n";
  return svg;
}

/// Generate the sweep pairs exactly as the suite would: one guarded pair per
/// index from its own derived stream.
inline std::pair<HermitianMatrix, HermitianMatrix> sweep_pair(const SweepConfig& cfg, int index) {
  RandomStream rng(derive_seed(cfg.seed, static_cast<uint64_t>(index)));
  auto [h, k] = guarded_hermitian_pair(cfg.n, cfg.sigma, rng, cfg.t_grid.min, cfg.t_grid.max, 1.0,
                                       cfg.kappa_max);
  if (!cfg.positive_shift) return {std::move(h), std::move(k)};
  return guard_rescale(positive_shift(h), positive_shift(k), cfg.t_grid.min, cfg.t_grid.max, 1.0,
                       cfg.kappa_max);
}

}  // namespace matmean
