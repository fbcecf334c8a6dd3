#include "CLI11.hpp"
#include "commands.hpp"

namespace {

void add_grid_flags(CLI::App* cmd, qgv_cli::GridOptions* grid) {
  cmd->add_option("--k-min", grid->k_min, "Lowest momentum of the grid")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--k-max", grid->k_max, "Highest momentum of the grid")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--points", grid->points, "Number of grid points")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  cmd->add_flag("--linear", grid->linear,
                "Linearly spaced grid (default: logarithmic)");
}

void add_tol_flag(CLI::App* cmd, double* tol) {
  cmd->add_option("--tol", *tol, "Structural tolerance for predicates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qgv: vertex couplings of quantum graphs with at most two eigenvalues.\n"
      "Builds couplings, decomposes and classifies them, evaluates scattering\n"
      "matrices and reflection/transmission profiles, inverse-designs\n"
      "couplings with a prescribed profile, and searches for real Hermitian\n"
      "unitary sign-pattern matrices."};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qgv 1.0.0");

  qgv_cli::ClassifyOptions classify_opts;
  CLI::App* classify = app.add_subcommand(
      "classify", "Classify a coupling and report its principal parameters");
  classify->add_option("input", classify_opts.input, "Coupling JSON file")
      ->required();
  add_tol_flag(classify, &classify_opts.tol);
  classify->add_option("-o,--output", classify_opts.output,
                       "Write the JSON report here instead of stdout");

  qgv_cli::ScatterOptions scatter_opts;
  CLI::App* scatter = app.add_subcommand(
      "scatter", "Emit reflection/transmission probabilities over a k grid");
  scatter->add_option("input", scatter_opts.input, "Coupling JSON file")
      ->required();
  add_tol_flag(scatter, &scatter_opts.tol);
  add_grid_flags(scatter, &scatter_opts.grid);
  scatter->add_option("-o,--output", scatter_opts.output,
                      "Write the CSV here instead of stdout");

  qgv_cli::RhoOptions rho_opts;
  CLI::App* rho = app.add_subcommand(
      "rho",
      "Emit the reflection/transmission ratio rho(k), closed form vs sampled");
  rho->add_option("input", rho_opts.input, "Coupling JSON file")->required();
  add_tol_flag(rho, &rho_opts.tol);
  add_grid_flags(rho, &rho_opts.grid);
  rho->add_option("-o,--output", rho_opts.output,
                  "Write the CSV here instead of stdout");

  qgv_cli::DesignOptions design_opts;
  CLI::App* design = app.add_subcommand(
      "design", "Build a coupling with a prescribed rho profile");
  design->add_option("--type", design_opts.type, "Profile type: II, III or IV")
      ->required()
      ->check(CLI::IsMember({"II", "III", "IV"}));
  design->add_option("--n", design_opts.n, "Vertex degree")
      ->check(CLI::Range(2, 64));
  design->add_option("--c", design_opts.c, "Curvature factor of rho")
      ->required();
  CLI::Option* xi_opt = design->add_option(
      "--xi", design_opts.xi, "Mixing angle in radians (type IV only)");
  design->add_option("--sign", design_opts.sign,
                     "Branch sign for types II and III")
      ->check(CLI::IsMember({-1, 1}))
      ->capture_default_str();
  design
      ->add_option("--m-source", design_opts.m_source,
                   "Where M comes from: standard or file")
      ->check(CLI::IsMember({"standard", "file"}))
      ->capture_default_str();
  design->add_option("--m-file", design_opts.m_file,
                     "JSON file {\"n\": N, \"M\": [[..]]} when --m-source=file");
  design
      ->add_option("--m-sign", design_opts.m_sign,
                   "Sign of the standard M = sign*(-I + (2/n)J)")
      ->check(CLI::IsMember({-1, 1}))
      ->capture_default_str();
  add_tol_flag(design, &design_opts.tol);
  design->add_option("-o,--output", design_opts.output,
                     "Write the coupling file here instead of stdout");

  qgv_cli::SearchOptions search_opts;
  CLI::App* search = app.add_subcommand(
      "search-mps",
      "Exhaustively search real Hermitian unitary MPS sign patterns");
  search->add_option("--n", search_opts.n, "Matrix order (2..6)")->required();
  add_tol_flag(search, &search_opts.tol);
  search->add_option("-o,--output", search_opts.output,
                     "Write the JSON catalog here instead of stdout");

  qgv_cli::VerifyOptions verify_opts;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run every invariant check on a coupling and report residuals");
  verify->add_option("input", verify_opts.input, "Coupling JSON file")
      ->required();
  add_tol_flag(verify, &verify_opts.tol);
  add_grid_flags(verify, &verify_opts.grid);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    // Fold CLI11's fine-grained codes into the parse-failure exit class so
    // scripts can branch on it the same way as for malformed input files.
    app.exit(e);
    return qgv_cli::kExitParse;
  }

  if (classify->parsed()) return qgv_cli::cmd_classify(classify_opts);
  if (scatter->parsed()) return qgv_cli::cmd_scatter(scatter_opts);
  if (rho->parsed()) return qgv_cli::cmd_rho(rho_opts);
  if (design->parsed()) {
    design_opts.has_xi = xi_opt->count() > 0;
    return qgv_cli::cmd_design(design_opts);
  }
  if (search->parsed()) return qgv_cli::cmd_search_mps(search_opts);
  if (verify->parsed()) return qgv_cli::cmd_verify(verify_opts);
  return qgv_cli::kExitFailure;
}
