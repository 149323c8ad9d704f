// niemytzki-lab: command line front end for the tangent-family toolkit.
//
// Every subcommand writes report.json and summary.txt into --out (plus
// figure.svg / samples.csv where it makes sense) and exits 0 on a completed
// run, 2 on any error. Families are given as shorthand (`parabolas`,
// `power:s=3`, `triangles:alpha=0.7854`, `w`, `discs`), inline JSON, or
// `@file.json`.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "niemytzki/commands.hpp"
#include "niemytzki/errors.hpp"
#include "niemytzki/liminf.hpp"
#include "niemytzki/util.hpp"

namespace {

struct CommonOpts {
  std::string out_dir = ".";
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts* common) {
  cmd->add_option("--out", common->out_dir, "output directory for report.json & friends")
      ->capture_default_str();
  cmd->add_option("--seed", common->seed, "seed recorded in the report (sampling commands)")
      ->capture_default_str();
}

void add_grid_opts(CLI::App* cmd, niemytzki::LiminfGrid* grid) {
  cmd->add_option("--x0", grid->x0, "largest abscissa of the geometric grid")
      ->capture_default_str();
  cmd->add_option("--rho", grid->rho, "grid ratio in (0,1)")->capture_default_str();
  cmd->add_option("--depth", grid->depth, "number of grid points")->capture_default_str();
  cmd->add_option("--windows", grid->windows, "number of disjoint tail windows")
      ->capture_default_str();
  cmd->add_option("--tol", grid->tol, "convergence tolerance between tail windows")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computational experiments on tangent-disc neighborhood families"};
  app.require_subcommand(1);

  // ---- verify-family ----
  CommonOpts vf_common;
  std::string vf_family;
  int vf_n_max = 8;
  int vf_grid = 4096;
  auto* vf = app.add_subcommand("verify-family", "check the basic-family axioms on a grid");
  vf->add_option("--family", vf_family, "family to check")->required();
  vf->add_option("--n-max", vf_n_max, "largest index checked")->capture_default_str();
  vf->add_option("--grid", vf_grid, "points per profile")->capture_default_str();
  add_common(vf, &vf_common);

  // ---- lens ----
  CommonOpts lens_common;
  std::string lens_family = "parabolas";
  int lens_n = 1;
  double lens_a = 0.0, lens_b = 0.0;
  int lens_grid = 800;
  auto* lens = app.add_subcommand("lens", "intersect two tangent neighborhoods and rasterize");
  lens->add_option("--family", lens_family, "profile family")->capture_default_str();
  lens->add_option("--n", lens_n, "profile index")->capture_default_str();
  lens->add_option("--a", lens_a, "first anchor abscissa")->required();
  lens->add_option("--b", lens_b, "second anchor abscissa")->required();
  lens->add_option("--grid", lens_grid, "raster resolution per axis")->capture_default_str();
  add_common(lens, &lens_common);

  // ---- refine ----
  CommonOpts refine_common;
  std::string refine_a, refine_b;
  int refine_n_max = 8;
  int refine_k_max = 64;
  auto* refine = app.add_subcommand("refine", "decide mutual refinement of two families");
  refine->add_option("--a", refine_a, "first family")->required();
  refine->add_option("--b", refine_b, "second family")->required();
  refine->add_option("--n-max", refine_n_max, "indices checked on each side")
      ->capture_default_str();
  refine->add_option("--k-max", refine_k_max, "largest candidate witness index")
      ->capture_default_str();
  add_common(refine, &refine_common);

  // ---- refute ----
  CommonOpts refute_common;
  std::string refute_a, refute_b;
  niemytzki::RefuteConfig refute_cfg;
  bool refute_probes = false;
  auto* refute = app.add_subcommand(
      "refute", "run the coefficient-ratio criterion against a homeomorphism");
  refute->add_option("--a", refute_a, "first family")->required();
  refute->add_option("--b", refute_b, "second family")->required();
  refute->add_option("--n-max", refute_cfg.n_max, "indices that must be witnessed")
      ->capture_default_str();
  refute->add_option("--m-max", refute_cfg.m_max, "largest candidate witness index")
      ->capture_default_str();
  refute->add_option("--margin", refute_cfg.margin, "strictness margin for the bound")
      ->capture_default_str();
  refute->add_flag("--probes", refute_probes, "cross-check the normal form numerically");
  add_common(refute, &refute_common);

  // ---- liminf ----
  CommonOpts liminf_common;
  std::string liminf_fn = "two-plus-sin-inv";
  niemytzki::LiminfGrid liminf_grid;
  auto* liminf = app.add_subcommand("liminf", "estimate liminf_{x->0+} of a builtin function");
  liminf->add_option("--fn", liminf_fn, "builtin: x, one, two-plus-sin-inv")
      ->capture_default_str();
  add_grid_opts(liminf, &liminf_grid);
  add_common(liminf, &liminf_common);

  // ---- eq1 ----
  CommonOpts eq1_common;
  std::string eq1_g = "identity";
  double eq1_u = 0.0;
  double eq1_phi_pow = 2.0;
  double eq1_psi_pow = 1.0;
  niemytzki::LiminfGrid eq1_grid{0.1, 0.5, 40, 5, niemytzki::kTolLiminfClosed};
  auto* eq1 = app.add_subcommand("eq1", "check the derivative-quotient liminf bound");
  eq1->add_option("--g", eq1_g, "builtin monotone map: identity, cube, atan")
      ->capture_default_str();
  eq1->add_option("--u", eq1_u, "base point")->capture_default_str();
  eq1->add_option("--phi-pow", eq1_phi_pow, "phi(h) = h^phi_pow")->capture_default_str();
  eq1->add_option("--psi-pow", eq1_psi_pow, "psi(h) = h^psi_pow")->capture_default_str();
  add_grid_opts(eq1, &eq1_grid);
  add_common(eq1, &eq1_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    niemytzki::CommandResult result;
    const CommonOpts* common = nullptr;
    if (vf->parsed()) {
      common = &vf_common;
      result = niemytzki::cmd_verify_family(niemytzki::load_family(vf_family, false), vf_n_max,
                                            vf_grid);
    } else if (lens->parsed()) {
      common = &lens_common;
      result = niemytzki::cmd_lens(niemytzki::load_family(lens_family), lens_n, lens_a, lens_b,
                                   lens_grid);
    } else if (refine->parsed()) {
      common = &refine_common;
      result = niemytzki::cmd_refine(niemytzki::load_family(refine_a),
                                     niemytzki::load_family(refine_b), refine_n_max,
                                     refine_k_max);
    } else if (refute->parsed()) {
      common = &refute_common;
      result = niemytzki::cmd_refute(niemytzki::load_family(refute_a),
                                     niemytzki::load_family(refute_b), refute_cfg,
                                     refute_probes);
    } else if (liminf->parsed()) {
      common = &liminf_common;
      result = niemytzki::cmd_liminf(liminf_fn, liminf_grid, liminf_common.seed);
    } else if (eq1->parsed()) {
      common = &eq1_common;
      result = niemytzki::cmd_eq1(eq1_g, eq1_u, eq1_phi_pow, eq1_psi_pow, eq1_grid,
                                  eq1_common.seed);
    }
    if (common == nullptr) {
      std::cerr << "error: no subcommand selected\n";
      return 2;
    }
    niemytzki::write_outputs(common->out_dir, result);
    std::cout << result.summary;
    return 0;
  } catch (const niemytzki::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
