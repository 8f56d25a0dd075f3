// quasidisc: minimal discs in hyperbolic 3-space spanned by quasicircles.
//
// Subcommands:
//   generate  build a quasicircle family member and export boundary samples
//   solve     compute the discrete minimal disc for one map
//   verify    run the residual suite on a stored mesh
//   sweep     full parameter sweep with fitted curvature-vs-norm bounds
//
// Exit codes: 0 pass, 1 verification fail, 2 usage error, 3 non-convergence.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "qd/curvature.hpp"
#include "qd/exporters.hpp"
#include "qd/infinity.hpp"
#include "qd/residuals.hpp"
#include "qd/report.hpp"

namespace {

qd::LaurentMap load_or_build_map(const std::string& map_file, double c1, double c2) {
  if (!map_file.empty()) {
    std::ifstream in(map_file);
    if (!in) throw qd::io_error("cannot open map file " + map_file);
    qd::LaurentMap raw = qd::LaurentMap::read(in);
    return qd::LaurentMap::certified(raw.coefficients());
  }
  std::vector<qd::cplx> coeffs;
  if (c2 != 0.0) coeffs = {qd::cplx(c1, 0), qd::cplx(c2, 0)};
  else if (c1 != 0.0) coeffs = {qd::cplx(c1, 0)};
  return qd::LaurentMap::certified(std::move(coeffs));
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw qd::io_error("cannot write " + path);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimal discs in hyperbolic space spanned by quasicircles"};
  app.require_subcommand(1);

  // shared family/solver knobs
  double c1 = 0.0, c2 = 0.0, eps = 0.02, tol = 2e-6;
  int vertices = 10000, levels = 3, samples = 512, planes = 64;
  std::string map_file, out_path, out_dir = "out", mesh_file;

  auto add_family = [&](CLI::App* cmd) {
    cmd->add_option("--c1", c1, "first Laurent coefficient");
    cmd->add_option("--c2", c2, "second Laurent coefficient");
    cmd->add_option("--map", map_file, "map file with lines 'k re im'");
  };
  auto add_solver = [&](CLI::App* cmd) {
    cmd->add_option("--eps", eps, "truncation gap to the ideal sphere");
    cmd->add_option("--vertices", vertices, "target vertex count at the finest level");
    cmd->add_option("--levels", levels, "multiscale levels");
    cmd->add_option("--tol", tol, "solver gradient tolerance");
  };

  CLI::App* generate = app.add_subcommand("generate", "sample a quasicircle");
  add_family(generate);
  generate->add_option("--samples", samples, "boundary sample count");
  generate->add_option("--out", out_path, "boundary CSV path")->required();
  std::string map_out;
  generate->add_option("--map-out", map_out, "also store the map coefficients");
  generate->set_config("--config");

  CLI::App* solve = app.add_subcommand("solve", "solve one minimal disc");
  add_family(solve);
  add_solver(solve);
  solve->add_option("--out", out_path, "mesh OFF path")->required();
  bool eps_study = false;
  solve->add_flag("--eps-study", eps_study, "report curvature drift over eps in {0.05,0.02,0.01}");
  solve->set_config("--config");

  CLI::App* verify = app.add_subcommand("verify", "residual suite on a stored mesh");
  add_family(verify);
  verify->add_option("--mesh", mesh_file, "mesh OFF path")->required();
  verify->add_option("--planes", planes, "support planes for the hull proxy");
  verify->set_config("--config");

  CLI::App* sweep = app.add_subcommand("sweep", "full verification sweep");
  double tmin = 0.02, tmax = 0.10;
  int steps = 5, coefficient = 1;
  sweep->add_option("--tmin", tmin, "smallest parameter");
  sweep->add_option("--tmax", tmax, "largest parameter");
  sweep->add_option("--steps", steps, "number of rows");
  sweep->add_option("--coefficient", coefficient, "which Laurent coefficient is swept");
  add_solver(sweep);
  sweep->add_option("--out-dir", out_dir, "report output directory");
  sweep->set_config("--config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*generate) {
      const qd::LaurentMap psi = load_or_build_map(map_file, c1, c2);
      const qd::Quasicircle gamma = qd::sample_quasicircle(psi, samples);
      auto out = open_out(out_path);
      gamma.write_csv(out);
      if (!map_out.empty()) {
        auto mout = open_out(map_out);
        psi.write(mout);
      }
      std::cout << "bers_norm " << gamma.bers << "\n";
      if (gamma.k_upper) {
        std::cout << "k_upper " << *gamma.k_upper << " (extension upper bound)\n";
        std::cout << "teich_dist " << qd::teich_distance_from_K(*gamma.k_upper) << "\n";
        std::cout << "width " << qd::foliation_width(gamma.bers).width << "\n";
      }
      return 0;
    }

    if (*solve) {
      const qd::LaurentMap psi = load_or_build_map(map_file, c1, c2);
      const qd::Quasicircle gamma = qd::sample_quasicircle(psi, samples);
      qd::SolverConfig cfg;
      cfg.eps = eps;
      cfg.tol = tol;
      cfg.levels = levels;
      cfg.target_vertices = vertices;
      const auto records = qd::solve_multilevel(gamma, cfg);
      const qd::TriMesh& mesh = records.back().mesh;
      auto out = open_out(out_path);
      qd::write_off(mesh, out);
      const qd::CurvatureReport curv = qd::principal_curvatures(mesh);
      std::cout << "vertices " << mesh.vertex_count() << "\narea "
                << records.back().stats.final_area << "\nsup_lambda " << curv.sup_lambda
                << "\nconverged " << (records.back().stats.converged ? 1 : 0) << "\n";
      if (eps_study) {
        for (const auto& row : qd::eps_refinement_study(psi, cfg, {0.05, 0.02, 0.01}))
          std::cout << "eps " << row.eps << " sup_lambda " << row.sup_lambda << " converged "
                    << row.converged << "\n";
      }
      return records.back().stats.converged ? 0 : 3;
    }

    if (*verify) {
      const qd::LaurentMap psi = load_or_build_map(map_file, c1, c2);
      const qd::Quasicircle gamma = qd::sample_quasicircle(psi, samples);
      std::ifstream in(mesh_file);
      if (!in) throw qd::io_error("cannot open mesh " + mesh_file);
      qd::TriMesh mesh = qd::read_off(in);
      mesh.eps = eps;
      mesh.flag_near_boundary(1.2);

      const qd::SupportPlane ref(qd::MinkVec4(0, 0, 1, 0), +1);
      const double pde = qd::pde_residual(mesh, ref);
      const double hull = qd::hull_containment(mesh, gamma, planes);
      const qd::CurvatureReport curv = qd::principal_curvatures(mesh);
      std::cout << "pde_residual " << pde << "\nhull_violation " << hull << "\nsup_lambda "
                << curv.sup_lambda << "\ntrace_check " << curv.max_trace_abs << "\n";
      bool pass = pde < 5e-2 && hull > -5e-2 && curv.max_trace_abs < 5e-2;
      qd::SolverConfig cfg;
      cfg.eps = eps;
      try {
        const qd::ConformalChart chart = qd::resample_chart(mesh, gamma, cfg);
        const double harm = qd::harmonic_residual(chart);
        const auto slacks = qd::conformal_factor_bounds(chart, curv.sup_lambda);
        std::cout << "harmonic_residual " << harm << "\nfactor_slacks " << slacks.upper_slack
                  << " " << slacks.lower_slack << "\n";
        pass = pass && slacks.upper_slack > -1e-3 && slacks.lower_slack > -1e-3;
      } catch (const qd::chart_error& e) {
        std::cout << "chart skipped: " << e.what() << "\n";
      }
      std::cout << (pass ? "PASS" : "FAIL") << "\n";
      return pass ? 0 : 1;
    }

    if (*sweep) {
      qd::SweepSpec spec;
      spec.t_min = tmin;
      spec.t_max = tmax;
      spec.steps = steps;
      spec.coefficient_index = coefficient;
      spec.solver.eps = eps;
      spec.solver.tol = tol;
      spec.solver.levels = levels;
      spec.solver.target_vertices = vertices;

      const qd::VerificationReport report = qd::run_sweep(spec);
      std::filesystem::create_directories(out_dir);
      {
        auto csv = open_out(out_dir + "/report.csv");
        qd::write_report_csv(report, csv);
        auto json = open_out(out_dir + "/report.json");
        qd::write_report_json(report, json);
        auto svg = open_out(out_dir + "/report.svg");
        qd::write_report_svg(report, svg);
      }
      const qd::BoundCheck check = qd::verify_bound(report);
      for (const std::string& line : check.lines) std::cout << line << "\n";
      std::cout << "c_fit " << report.c_fit << " (rms " << report.c_fit_residual << ")\n";
      std::cout << "c_log_fit " << report.c_log_fit << " (rms " << report.c_log_fit_residual
                << ")\n";
      std::cout << (check.pass ? "PASS" : "FAIL") << "\n";
      return check.pass ? 0 : 1;
    }
  } catch (const qd::resolution_error& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return 3;
  } catch (const qd::solver_error& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return 3;
  } catch (const qd::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
