#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "niemytzki/criterion.hpp"
#include "niemytzki/errors.hpp"
#include "niemytzki/family_spec.hpp"
#include "niemytzki/geometry.hpp"
#include "niemytzki/liminf.hpp"
#include "niemytzki/profile.hpp"
#include "niemytzki/raster.hpp"
#include "niemytzki/svg.hpp"
#include "niemytzki/util.hpp"

namespace niemytzki {

// Every command produces a machine-readable report plus a human-readable
// summary derived from the same fields, and optionally a figure and a
// sample dump. Reports are assembled from sorted-key JSON objects and a
// deterministic float writer, so identical configurations produce
// identical bytes.

struct CommandResult {
  nlohmann::json report;
  std::string summary;
  std::optional<std::string> figure_svg;
  std::optional<std::string> samples_csv;
};

// Family arguments accept shorthand (`parabolas`, `triangles:alpha=0.7`),
// inline JSON, `@path`, or a bare path to a .json spec file.
inline Family load_family(const std::string& arg, bool verify = true) {
  std::string text = arg;
  std::string path;
  if (!arg.empty() && arg[0] == '@') path = arg.substr(1);
  else if (arg.size() > 5 && arg.rfind(".json") == arg.size() - 5) path = arg;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open family spec file '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    Family f = family_from_json(text);
    if (verify) {
      const AxiomReport rep = verify_basic(f, 8, 512);
      if (!rep.all_passed()) throw AxiomError("family '" + f.name() + "' fails the basic-family axioms:\n" + rep.text());
    }
    return f;
  }
  Family f = parse_family_arg(text);
  if (verify) {
    const AxiomReport rep = verify_basic(f, 8, 512);
    if (!rep.all_passed())
      throw AxiomError("family '" + f.name() + "' fails the basic-family axioms:\n" + rep.text());
  }
  return f;
}

namespace detail {

inline nlohmann::json axiom_report_json(const AxiomReport& rep) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : rep.checks) {
    nlohmann::json jc{{"axiom", c.axiom}, {"passed", c.passed}};
    if (c.violation) {
      jc["violation"] = {{"n", c.violation->n},     {"m", c.violation->m},
                         {"x", c.violation->x},     {"lhs", c.violation->lhs},
                         {"rhs", c.violation->rhs}, {"detail", c.violation->detail}};
    }
    checks.push_back(jc);
  }
  return nlohmann::json{{"family", rep.family},
                        {"n_max", rep.n_max},
                        {"grid", rep.grid_size},
                        {"all_passed", rep.all_passed()},
                        {"checks", checks}};
}

inline const char* direction_status_name(DirectionReport::Status s) {
  switch (s) {
    case DirectionReport::Status::Holds: return "holds";
    case DirectionReport::Status::Disproved: return "disproved";
    case DirectionReport::Status::Undecided: return "undecided";
  }
  return "undecided";
}

inline nlohmann::json direction_json(const DirectionReport& d) {
  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& [n, k] : d.witnesses) witnesses.push_back({{"n", n}, {"k", k}});
  nlohmann::json j{{"status", direction_status_name(d.status)}, {"witnesses", witnesses}};
  if (!d.detail.empty()) j["detail"] = d.detail;
  return j;
}

}  // namespace detail

// --------------------------------------------------------------- verify-family

inline CommandResult cmd_verify_family(const Family& family, int n_max, int grid) {
  const AxiomReport rep = verify_basic(family, n_max, grid);
  CommandResult out;
  out.report = detail::axiom_report_json(rep);
  out.summary = rep.text();
  return out;
}

// ------------------------------------------------------------------------ lens

inline CommandResult cmd_lens(const Family& family, int n, double a, double b, int grid) {
  if (!(a <= b)) throw ArgumentError("lens: requires a <= b");
  const LensRegion lens(a, b, family, n);
  const RasterResult raster = raster_components(lens, grid);

  CommandResult out;
  nlohmann::json j{{"family", family.name()},
                   {"n", n},
                   {"a", a},
                   {"b", b},
                   {"grid", grid},
                   {"intersects", lens.has_bounded_component()},
                   {"components", raster.component_count},
                   {"bounded_components", static_cast<int>(raster.bounded_labels.size())}};
  std::string summary = "lens: family=" + family.name() + " n=" + std::to_string(n) +
                        " a=" + format_double(a) + " b=" + format_double(b) + "\n";
  summary += "neighborhoods intersect: " + std::string(lens.has_bounded_component() ? "yes" : "no") + "\n";
  summary += "complement components on " + std::to_string(grid) + "x" + std::to_string(grid) +
             " raster: " + std::to_string(raster.component_count) + " (" +
             std::to_string(raster.bounded_labels.size()) + " bounded)\n";

  if (lens.has_bounded_component()) {
    const Point s = lens.saddle();
    const AgreementStats agree = raster_agreement(raster, lens);
    const SaddleParams cd = lens.cd_parameters({s.x, s.y});
    j["saddle"] = {{"x", s.x}, {"y", s.y}};
    j["saddle_cd"] = {{"c", cd.c}, {"d", cd.d}};
    j["agreement"] = {{"considered", agree.considered},
                      {"agreeing", agree.agreeing},
                      {"ratio", agree.ratio()}};
    char line[160];
    std::snprintf(line, sizeof line, "saddle point: (%s, %s); its c,d parameters recover (a, b) = (%s, %s)\n",
                  format_double(s.x).c_str(), format_double(s.y).c_str(),
                  format_double(cd.c).c_str(), format_double(cd.d).c_str());
    summary += line;
    std::snprintf(line, sizeof line,
                  "analytic/raster agreement off the boundary band: %lld of %lld cells (%.4f%%)\n",
                  agree.agreeing, agree.considered, 100.0 * agree.ratio());
    summary += line;
  }

  out.report = std::move(j);
  out.summary = std::move(summary);
  out.figure_svg = lens_figure_svg(lens);

  std::string csv = "x,y,label\n";
  csv.reserve(static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid) * 24 + 16);
  char row[80];
  for (int r = 0; r < grid; ++r) {
    for (int c = 0; c < grid; ++c) {
      const Point p = raster.center(r, c);
      std::snprintf(row, sizeof row, "%.6g,%.6g,%d\n", p.x, p.y, raster.label_at(r, c));
      csv += row;
    }
  }
  out.samples_csv = std::move(csv);
  return out;
}

// ---------------------------------------------------------------------- refine

inline CommandResult cmd_refine(const Family& fam_a, const Family& fam_b, int n_max,
                                int k_max) {
  const RefinementVerdict v = mutual_refinement(fam_a, fam_b, n_max, k_max);
  CommandResult out;
  out.report = nlohmann::json{{"family_a", fam_a.name()},
                              {"family_b", fam_b.name()},
                              {"n_max", n_max},
                              {"k_max", k_max},
                              {"verdict", refinement_name(v.verdict)},
                              {"a_refines_b", detail::direction_json(v.a_refines_b)},
                              {"b_refines_a", detail::direction_json(v.b_refines_a)}};
  std::string s = "mutual refinement of A=" + fam_a.name() + " and B=" + fam_b.name() + "\n";
  s += "verdict: " + std::string(refinement_name(v.verdict)) + "\n";
  const auto describe = [&](const char* tag, const DirectionReport& d) {
    s += std::string(tag) + ": " + detail::direction_status_name(d.status);
    if (d.status == DirectionReport::Status::Holds) {
      s += "; witnesses k(n) =";
      for (const auto& [n, k] : d.witnesses) s += " " + std::to_string(n) + "->" + std::to_string(k);
    } else if (!d.detail.empty()) {
      s += "; " + d.detail;
    }
    s += "\n";
  };
  describe("A refines B", v.a_refines_b);
  describe("B refines A", v.b_refines_a);
  out.summary = std::move(s);
  return out;
}

// ---------------------------------------------------------------------- refute

inline CommandResult cmd_refute(const Family& fam_a, const Family& fam_b,
                                const RefuteConfig& config, bool with_probes) {
  const Verdict v = refute(fam_a, fam_b, config);
  CommandResult out;
  nlohmann::json j{{"family_a", fam_a.name()},
                   {"family_b", fam_b.name()},
                   {"n_max", config.n_max},
                   {"m_max", config.m_max},
                   {"margin", config.margin},
                   {"verdict", v.kind == Verdict::Kind::NotHomeomorphic ? "not_homeomorphic"
                                                                        : "inconclusive"},
                   {"certificate_lines", v.certificate_lines}};
  nlohmann::json witnesses = nlohmann::json::array();
  if (v.certifying) {
    j["orientation"] = "source=" + v.certifying->source + " target=" + v.certifying->target;
    j["closure_rule"] = v.certifying->closure_rule;
    for (const auto& w : v.certifying->witnesses)
      witnesses.push_back({{"n", w.n}, {"m", w.m}});
  } else {
    j["orientation"] = nullptr;
    j["closure_rule"] = nullptr;
  }
  j["witnesses"] = witnesses;

  if (with_probes && v.certifying && !v.certifying->witnesses.empty()) {
    // cross-check the certifying orientation's normal form on its first
    // witness pair; the orientation names refer to the resolved families
    std::vector<std::string> notes;
    const Family ra = detail::resolve_power_law(fam_a, &notes);
    const Family rb = detail::resolve_power_law(fam_b, &notes);
    const Family& src = (v.certifying->source == ra.name()) ? ra : rb;
    const Family& tgt = (v.certifying->target == rb.name()) ? rb : ra;
    nlohmann::json probes = nlohmann::json::array();
    const Witness& w = v.certifying->witnesses.front();
    for (int k : {1, 2, 3}) {
      const ProbeTable t = numeric_ratio_probe(src, tgt, w.n, w.m, k, 40);
      probes.push_back({{"n", w.n},
                        {"m", w.m},
                        {"k", k},
                        {"max_rel_deviation", t.max_rel_deviation}});
    }
    j["probes"] = probes;
  }

  out.report = std::move(j);
  std::string s = "refute: A=" + fam_a.name() + " B=" + fam_b.name() + "\n";
  s += "verdict: ";
  s += (v.kind == Verdict::Kind::NotHomeomorphic ? "not_homeomorphic" : "inconclusive");
  s += "\n";
  for (const auto& line : v.certificate_lines) s += line + "\n";
  out.summary = std::move(s);
  return out;
}

// ---------------------------------------------------------------- liminf / eq1

inline PositiveFunction builtin_positive_function(const std::string& name) {
  if (name == "x") return PositiveFunction("x", [](double x) { return x; });
  if (name == "one") return PositiveFunction("one", [](double) { return 1.0; });
  if (name == "two-plus-sin-inv")
    return PositiveFunction("two-plus-sin-inv", [](double x) { return 2.0 + std::sin(1.0 / x); });
  throw ArgumentError("unknown function '" + name + "' (expected x, one, two-plus-sin-inv)");
}

inline MonotoneFunction builtin_monotone_function(const std::string& name) {
  if (name == "identity") return MonotoneFunction("identity", [](double x) { return x; });
  if (name == "cube") return MonotoneFunction("cube", [](double x) { return x * x * x; });
  if (name == "atan") return MonotoneFunction("atan", [](double x) { return std::atan(x); });
  throw ArgumentError("unknown function '" + name + "' (expected identity, cube, atan)");
}

namespace detail {

inline std::string estimate_csv(const LiminfEstimate& est) {
  std::string csv = "x,value,window_id\n";
  char row[96];
  for (std::size_t j = 0; j < est.samples.size(); ++j) {
    std::snprintf(row, sizeof row, "%.17g,%.17g,%d\n", est.samples[j].first,
                  est.samples[j].second, est.window_ids[j]);
    csv += row;
  }
  return csv;
}

inline nlohmann::json estimate_json(const LiminfEstimate& est, int skipped,
                                    std::uint64_t seed) {
  return nlohmann::json{{"estimate", est.value},
                        {"converged", est.converged},
                        {"skipped", skipped},
                        {"seed", seed},
                        {"window_minima", est.window_minima},
                        {"grid", {{"x0", est.grid.x0},
                                  {"rho", est.grid.rho},
                                  {"depth", est.grid.depth},
                                  {"windows", est.grid.windows},
                                  {"tol", est.grid.tol}}}};
}

}  // namespace detail

inline CommandResult cmd_liminf(const std::string& fn, const LiminfGrid& grid,
                                std::uint64_t seed) {
  const PositiveFunction f = builtin_positive_function(fn);
  const LiminfEstimate est = liminf_estimate(f, grid);
  CommandResult out;
  out.report = detail::estimate_json(est, 0, seed);
  out.report["function"] = fn;
  char line[160];
  std::snprintf(line, sizeof line, "liminf estimate for %s: %.10g (converged: %s)\n",
                fn.c_str(), est.value, est.converged ? "yes" : "no");
  out.summary = line;
  out.samples_csv = detail::estimate_csv(est);
  return out;
}

inline CommandResult cmd_eq1(const std::string& g_name, double u, double phi_pow,
                             double psi_pow, const LiminfGrid& grid, std::uint64_t seed) {
  if (!(phi_pow >= psi_pow) || !(psi_pow > 0.0))
    throw ArgumentError("eq1: needs phi-pow >= psi-pow > 0 so that phi <= psi near 0");
  const MonotoneFunction g = builtin_monotone_function(g_name);
  const PositiveFunction phi("h^phi_pow", [phi_pow](double h) { return std::pow(h, phi_pow); });
  const PositiveFunction psi("h^psi_pow", [psi_pow](double h) { return std::pow(h, psi_pow); });
  const Eq1Result res = eq1_check(g, u, phi, psi, grid);
  CommandResult out;
  out.report = detail::estimate_json(res.estimate, res.skipped, seed);
  out.report["g"] = g_name;
  out.report["u"] = u;
  out.report["phi_pow"] = phi_pow;
  out.report["psi_pow"] = psi_pow;
  out.report["holds"] = res.holds;
  out.report["low_confidence"] = res.low_confidence;
  char line[200];
  std::snprintf(line, sizeof line,
                "derivative-quotient liminf for g=%s at u=%.6g: %.10g (bound <= 1 %s; %d "
                "degenerate samples skipped)\n",
                g_name.c_str(), u, res.estimate.value, res.holds ? "holds" : "EXCEEDED",
                res.skipped);
  out.summary = line;
  out.samples_csv = detail::estimate_csv(res.estimate);
  return out;
}

// ------------------------------------------------------------------- plumbing

inline void write_outputs(const std::string& out_dir, const CommandResult& result) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const auto write = [&](const char* name, const std::string& content) {
    const fs::path p = fs::path(out_dir) / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    out << content;
  };
  write("report.json", result.report.dump(2) + "\n");
  write("summary.txt", result.summary);
  if (result.figure_svg) write("figure.svg", *result.figure_svg);
  if (result.samples_csv) write("samples.csv", *result.samples_csv);
}

}  // namespace niemytzki
