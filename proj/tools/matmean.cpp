// matmean: verify matrix-mean trace inequalities on random ensembles,
// reproduce the three-curve trace sweep, and check user-supplied pairs.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "matmean/matmean.hpp"

namespace {

using namespace matmean;

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitConfigError = 2;

uint64_t default_seed() {
  const char* env = std::getenv("MATMEAN_SEED");
  if (!env || !*env) return 42;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (!end || *end != '\0')
    throw std::invalid_argument(std::string("MATMEAN_SEED is not an integer: '") + env + "'");
  return static_cast<uint64_t>(v);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= s.size()) {
    const size_t end = s.find(',', start);
    const std::string tok = s.substr(start, end == std::string::npos ? end : end - start);
    if (!tok.empty()) out.push_back(tok);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

std::vector<double> parse_grid_list(const std::string& s, const char* flag) {
  std::vector<double> out;
  for (const std::string& tok : split_list(s)) {
    double v = 0.0;
    if (!parse_double(tok, v))
      throw std::invalid_argument(std::string(flag) + ": bad number '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument(std::string(flag) + ": empty list");
  return out;
}

// trace,frobenius,operator,kyfan-all,kyfan:K,schatten:P
std::vector<NormSelector> parse_norms(const std::string& s, int n) {
  std::vector<NormSelector> out;
  for (const std::string& tok : split_list(s)) {
    if (tok == "trace")
      out.push_back(NormSelector::trace());
    else if (tok == "frobenius")
      out.push_back(NormSelector::frobenius());
    else if (tok == "operator")
      out.push_back(NormSelector::operator_norm());
    else if (tok == "kyfan-all")
      for (int k = 1; k <= n; ++k) out.push_back(NormSelector::ky_fan(k));
    else if (tok.rfind("kyfan:", 0) == 0) {
      double k = 0.0;
      if (!parse_double(tok.substr(6), k) || k != std::floor(k))
        throw std::invalid_argument("--norms: bad Ky Fan order in '" + tok + "'");
      out.push_back(NormSelector::ky_fan(static_cast<int>(k)));
    } else if (tok.rfind("schatten:", 0) == 0) {
      double p = 0.0;
      if (!parse_double(tok.substr(9), p))
        throw std::invalid_argument("--norms: bad Schatten exponent in '" + tok + "'");
      out.push_back(NormSelector::schatten(p));
    } else {
      throw std::invalid_argument("--norms: unknown norm '" + tok + "'");
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void print_summary_table(const SuiteReport& report) {
  // collapse parameter cells per check id for the console view
  struct Line {
    int64_t count = 0, holds = 0, equality = 0, violated = 0, na = 0;
    double min_gap = std::numeric_limits<double>::infinity();
  };
  std::map<std::string, Line> lines;
  for (const auto& [key, agg] : report.cells) {
    Line& l = lines[key.check_id];
    l.count += agg.count;
    l.holds += agg.holds;
    l.equality += agg.equality;
    l.violated += agg.violated;
    l.na += agg.not_applicable;
    if (agg.count > agg.not_applicable) l.min_gap = std::min(l.min_gap, agg.min_gap);
  }
  std::cout << std::left << std::setw(28) << "check" << std::right << std::setw(10) << "count"
            << std::setw(10) << "holds" << std::setw(10) << "equal" << std::setw(10) << "viol"
            << std::setw(8) << "n/a" << std::setw(14) << "min gap" << "\n";
  for (const auto& [id, l] : lines) {
    std::cout << std::left << std::setw(28) << id << std::right << std::setw(10) << l.count
              << std::setw(10) << l.holds << std::setw(10) << l.equality << std::setw(10)
              << l.violated << std::setw(8) << l.na;
    if (l.count > l.na)
      std::cout << std::setw(14) << std::setprecision(3) << std::scientific << l.min_gap
                << std::defaultfloat;
    std::cout << "\n";
  }
}

int finish_report(const SuiteReport& report, const std::string& out_prefix) {
  write_text_file(out_prefix + ".json", report_json_text(report));
  write_text_file(out_prefix + ".csv", report_to_csv(report));
  print_summary_table(report);
  const int64_t violations = report.total_violations();
  std::cout << "trials: " << report.trials_run << ", violations: " << violations << "\n";
  std::cout << "report: " << out_prefix << ".json, " << out_prefix << ".csv\n";
  if (violations > 0) {
    std::cout << "replay: failing trials are serialized in " << out_prefix
              << ".json (failures[]) with seed, trial index, parameters and both matrices in "
                 "full precision; rerun with the same --seed to reproduce.\n";
    return kExitViolations;
  }
  return kExitOk;
}

struct CommonsuiteFlags {
  SuiteConfig cfg;
  std::string norms_spec;
  std::string checks_spec;
  std::string r_grid_spec;
};

void apply_suite_flags(CommonsuiteFlags& flags) {
  if (!flags.r_grid_spec.empty()) flags.cfg.r_grid = parse_grid_list(flags.r_grid_spec, "--r-grid");
  if (!flags.norms_spec.empty()) flags.cfg.norms = parse_norms(flags.norms_spec, flags.cfg.n);
  if (!flags.checks_spec.empty()) flags.cfg.checks = split_list(flags.checks_spec);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matrix geometric mean and trace-inequality verification toolkit"};
  app.require_subcommand(1);

  // verify ------------------------------------------------------------------
  CommonsuiteFlags vf;
  std::string verify_out = "verify_report";
  CLI::App* verify = app.add_subcommand("verify", "run the randomized inequality suites");
  verify->add_option("--seed", vf.cfg.seed, "master seed (default: MATMEAN_SEED or 42)");
  verify->add_option("--n", vf.cfg.n, "matrix dimension");
  verify->add_option("--sigma", vf.cfg.sigma, "Gaussian entry scale");
  verify->add_option("--trials", vf.cfg.trials, "number of random pairs");
  verify->add_option("--jobs", vf.cfg.jobs, "worker threads");
  verify->add_option("--t-min", vf.cfg.t_grid.min, "t grid start");
  verify->add_option("--t-max", vf.cfg.t_grid.max, "t grid end");
  verify->add_option("--t-step", vf.cfg.t_grid.step, "t grid step");
  verify->add_option("--r-grid", vf.r_grid_spec, "comma list of r (and q) values");
  verify->add_option("--norms", vf.norms_spec,
                     "comma list: trace,frobenius,operator,kyfan-all,kyfan:K,schatten:P");
  verify->add_option("--checks", vf.checks_spec, "comma list of check names");
  verify->add_option("--out", verify_out, "output path prefix");

  // sweep -------------------------------------------------------------------
  SweepConfig sw;
  sw.t_grid = TGrid{-3.0, 3.0, 0.05};
  std::string sweep_out = "sweep";
  std::string sweep_format = "both";
  std::string sweep_matrix_file;
  CLI::App* sweep = app.add_subcommand("sweep", "three-curve trace comparison over t");
  sweep->add_option("--seed", sw.seed, "master seed (default: MATMEAN_SEED or 42)");
  sweep->add_option("--n", sw.n, "matrix dimension");
  sweep->add_option("--sigma", sw.sigma, "Gaussian entry scale");
  sweep->add_option("--pairs", sw.pairs, "number of random pairs");
  sweep->add_option("--t-min", sw.t_grid.min, "t grid start");
  sweep->add_option("--t-max", sw.t_grid.max, "t grid end");
  sweep->add_option("--t-step", sw.t_grid.step, "t grid step");
  sweep->add_flag("--positive-shift", sw.positive_shift,
                  "shift generated spectra strictly positive");
  sweep->add_option("--format", sweep_format, "csv, svg, or both")
      ->check(CLI::IsMember({"csv", "svg", "both"}));
  sweep->add_option("--matrix-file", sweep_matrix_file,
                    "sweep this pair instead of generating random ones");
  sweep->add_option("--out", sweep_out, "output path prefix");

  // check-pair --------------------------------------------------------------
  CommonsuiteFlags cf;
  std::string pair_path;
  std::string pair_out;
  CLI::App* check_pair = app.add_subcommand("check-pair", "run the checks on a matrix-file pair");
  check_pair->add_option("file", pair_path, "matrix file (see README for the format)")->required();
  check_pair->add_option("--t-min", cf.cfg.t_grid.min, "t grid start");
  check_pair->add_option("--t-max", cf.cfg.t_grid.max, "t grid end");
  check_pair->add_option("--t-step", cf.cfg.t_grid.step, "t grid step");
  check_pair->add_option("--r-grid", cf.r_grid_spec, "comma list of r (and q) values");
  check_pair->add_option("--norms", cf.norms_spec, "comma list of norms");
  check_pair->add_option("--checks", cf.checks_spec, "comma list of check names");
  check_pair->add_option("--out", pair_out, "also write JSON/CSV report with this prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfigError;
  }

  try {
    const bool seed_flag_given = verify->count("--seed") || sweep->count("--seed");
    const uint64_t env_seed = default_seed();
    if (!seed_flag_given) {
      vf.cfg.seed = env_seed;
      sw.seed = env_seed;
    } else if (!verify->count("--seed")) {
      vf.cfg.seed = env_seed;
    } else if (!sweep->count("--seed")) {
      sw.seed = env_seed;
    }

    if (verify->parsed()) {
      apply_suite_flags(vf);
      vf.cfg.validate();
      const SuiteReport report = run_suite(vf.cfg);
      return finish_report(report, verify_out);
    }

    if (sweep->parsed()) {
      sw.validate();
      const bool want_csv = sweep_format == "csv" || sweep_format == "both";
      const bool want_svg = sweep_format == "svg" || sweep_format == "both";
      int64_t bad_rows = 0;
      const int pairs = sweep_matrix_file.empty() ? sw.pairs : 1;
      for (int i = 0; i < pairs; ++i) {
        std::vector<SweepRow> rows;
        if (!sweep_matrix_file.empty()) {
          const MatrixFile mf = parse_matrix_file(read_file(sweep_matrix_file));
          rows = compute_sweep(mf.h, mf.k, sw.t_grid);
        } else {
          auto [h, k] = sweep_pair(sw, i);
          rows = compute_sweep(h, k, sw.t_grid);
        }
        int64_t overflow = 0;
        for (const SweepRow& r : rows) {
          if (r.overflow) ++overflow;
          if (!r.overflow && !r.ordering_ok) ++bad_rows;
        }
        const std::string base = sweep_out + "_pair" + std::to_string(i);
        if (want_csv) write_text_file(base + ".csv", sweep_to_csv(rows));
        if (want_svg) write_text_file(base + ".svg", sweep_to_svg(rows));
        std::cout << "pair " << i << ": " << rows.size() << " rows";
        if (overflow) std::cout << ", " << overflow << " overflow rows excluded from the plot";
        std::cout << "\n";
      }
      if (bad_rows > 0) {
        std::cout << "regime ordering violated on " << bad_rows << " rows\n";
        return kExitViolations;
      }
      std::cout << "regime ordering holds at every finite grid point\n";
      return kExitOk;
    }

    if (check_pair->parsed()) {
      apply_suite_flags(cf);
      const MatrixFile mf = parse_matrix_file(read_file(pair_path));
      std::cout << "parsed " << mf.h.dim() << "x" << mf.h.dim() << " "
                << matrix_kind_name(mf.kind) << " pair; symmetrization residuals "
                << mf.h_residual << " (H), " << mf.k_residual << " (K)\n";
      cf.cfg.n = mf.h.dim();
      cf.cfg.trials = 1;
      cf.cfg.sigma = 1.0;
      cf.cfg.validate();
      if (!cf.norms_spec.empty()) cf.cfg.norms = parse_norms(cf.norms_spec, cf.cfg.n);

      // Run the same checks the suite would, on this fixed pair.
      SuiteReport report = check_fixed_pair(cf.cfg, mf.h, mf.k);
      if (!pair_out.empty()) return finish_report(report, pair_out);
      print_summary_table(report);
      const int64_t violations = report.total_violations();
      std::cout << "violations: " << violations << "\n";
      return violations ? kExitViolations : kExitOk;
    }
  } catch (const MatrixParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolations;
  }
  return kExitConfigError;
}
