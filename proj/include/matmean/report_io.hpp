#pragma once

#include <fstream>

#include <json.hpp>

#include "matmean/suite.hpp"

namespace matmean {

namespace detail {

inline nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.dim(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::json context_to_json(const CheckContext& ctx) {
  nlohmann::json j;
  if (ctx.t) j["t"] = *ctx.t;
  if (ctx.r) j["r"] = *ctx.r;
  if (ctx.q) j["q"] = *ctx.q;
  if (!ctx.norm.empty()) j["norm"] = ctx.norm;
  j["seed"] = ctx.seed;
  j["trial"] = ctx.trial;
  j["n"] = ctx.n;
  if (!ctx.note.empty()) j["note"] = ctx.note;
  return j;
}

inline nlohmann::json result_to_json(const CheckResult& c) {
  nlohmann::json j;
  j["check"] = c.check_id;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["gap"] = c.gap;
  j["tol"] = c.tol;
  j["verdict"] = verdict_name(c.verdict);
  j["context"] = context_to_json(c.context);
  return j;
}

inline nlohmann::json failure_to_json(const FailureRecord& f) {
  nlohmann::json j = result_to_json(f.result);
  j["h"] = matrix_to_json(f.h);
  j["k"] = matrix_to_json(f.k);
  return j;
}

}  // namespace detail

inline nlohmann::json report_to_json(const SuiteReport& report) {
  const SuiteConfig& cfg = report.config;
  nlohmann::json j;
  nlohmann::json jc;
  jc["n"] = cfg.n;
  jc["sigma"] = cfg.sigma;
  jc["trials"] = cfg.trials;
  jc["seed"] = cfg.seed;
  jc["jobs"] = cfg.jobs;
  jc["t_grid"] = {{"min", cfg.t_grid.min}, {"max", cfg.t_grid.max}, {"step", cfg.t_grid.step}};
  jc["r_grid"] = cfg.r_grid;
  nlohmann::json norms = nlohmann::json::array();
  for (const NormSelector& sel : cfg.resolved_norms()) norms.push_back(sel.id());
  jc["norms"] = std::move(norms);
  jc["checks"] = cfg.resolved_checks();
  jc["kappa_max"] = cfg.kappa_max;
  j["config"] = std::move(jc);

  j["trials"] = report.trials_run;
  j["violations"] = report.total_violations();

  nlohmann::json cells = nlohmann::json::array();
  for (const auto& [key, agg] : report.cells) {
    nlohmann::json c;
    c["check"] = key.check_id;
    if (key.t) c["t"] = *key.t;
    if (key.r) c["r"] = *key.r;
    if (!key.norm.empty()) c["norm"] = key.norm;
    c["count"] = agg.count;
    c["holds"] = agg.holds;
    c["equality"] = agg.equality;
    c["violated"] = agg.violated;
    c["not_applicable"] = agg.not_applicable;
    c["strict"] = agg.strict;
    if (agg.count > agg.not_applicable) {
      c["min_gap"] = agg.min_gap;
      c["max_gap"] = agg.max_gap;
    }
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);

  nlohmann::json failures = nlohmann::json::array();
  for (const FailureRecord& f : report.failures) failures.push_back(detail::failure_to_json(f));
  j["failures"] = std::move(failures);

  nlohmann::json candidates = nlohmann::json::array();
  for (const FailureRecord& f : report.conjecture_candidates)
    candidates.push_back(detail::failure_to_json(f));
  j["conjecture_candidates"] = std::move(candidates);
  return j;
}

/// CSV summary: one row per check x parameter cell, sorted by key.
inline std::string report_to_csv(const SuiteReport& report) {
  std::string out =
      "check_id,t,r,norm,count,holds,equality,violated,not_applicable,strict,min_gap,max_gap\n";
  for (const auto& [key, agg] : report.cells) {
    out += key.check_id;
    out += ',';
    if (key.t) out += format_double(*key.t);
    out += ',';
    if (key.r) out += format_double(*key.r);
    out += ',';
    out += key.norm;
    out += ',';
    out += std::to_string(agg.count) + ',' + std::to_string(agg.holds) + ',' +
           std::to_string(agg.equality) + ',' + std::to_string(agg.violated) + ',' +
           std::to_string(agg.not_applicable) + ',' + std::to_string(agg.strict) + ',';
    if (agg.count > agg.not_applicable)
      out += format_double(agg.min_gap) + ',' + format_double(agg.max_gap);
    else
      out += ",";
    out += '\n';
  }
  return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << content;
  if (!f) throw std::runtime_error("write failed for " + path);
}

inline std::string report_json_text(const SuiteReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

}  // namespace matmean
