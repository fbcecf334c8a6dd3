#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <vector>

#include "coupling_file.hpp"
#include "curve_writer.hpp"
#include "qgv/classify.hpp"
#include "qgv/coupling.hpp"
#include "qgv/matrix.hpp"
#include "qgv/mps.hpp"
#include "qgv/scattering.hpp"

namespace qgv_cli {

namespace {

// Maps the library's exception taxonomy onto the exit codes. Commands that
// need a structured error document (classify, design) catch those cases
// themselves before falling back here.
template <typename Fn>
int run_guarded(Fn&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const qgv::NotUnitary& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotUnitary;
  } catch (const qgv::NotHermitianUnitary& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotUnitary;
  } catch (const qgv::NotUnitaryPS& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotUnitary;
  } catch (const qgv::MoreThanTwoEigenvalues& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOutsideFamily;
  } catch (const qgv::DegenerateGram& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOutsideFamily;
  } catch (const qgv::NotMPS& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotEquallyTransmitting;
  } catch (const qgv::COutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCOutOfRange;
  } catch (const qgv::OrderTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOrderTooLarge;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

// Runs the emitter against --output or stdout.
template <typename Fn>
int with_output(const std::string& path, Fn&& emit) {
  if (path.empty()) {
    emit(std::cout);
    return kExitOk;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return kExitFailure;
  }
  emit(out);
  return kExitOk;
}

void print_json(std::ostream& out, const Json& doc) {
  out << doc.dump(2) << "\n";
}

std::vector<double> make_grid(const GridOptions& grid) {
  return grid.linear ? qgv::linear_grid(grid.k_min, grid.k_max, grid.points)
                     : qgv::log_grid(grid.k_min, grid.k_max, grid.points);
}

double unitarity_residual(const qgv::ComplexMatrix& A) {
  const qgv::ComplexMatrix gram = A * qgv::adjoint(A);
  return qgv::max_abs_diff(gram, qgv::ComplexMatrix::identity(A.order()));
}

std::string tag_to_string(qgv::CouplingTag tag) {
  switch (tag) {
    case qgv::CouplingTag::Decoupled: return "Decoupled";
    case qgv::CouplingTag::TypeI_ScaleInvariant: return "TypeI_ScaleInvariant";
    case qgv::CouplingTag::TypeII_GeneralizedDelta:
      return "TypeII_GeneralizedDelta";
    case qgv::CouplingTag::TypeIII_GeneralizedDeltaPrime:
      return "TypeIII_GeneralizedDeltaPrime";
    case qgv::CouplingTag::TypeIV_Mixed: return "TypeIV_Mixed";
    case qgv::CouplingTag::OutsideFamily: return "OutsideFamily";
  }
  throw qgv::Error("tag_to_string: unreachable");
}

// Report shared by classify and design: class tag, phases, the principal
// parameters that exist for the tag, and the MPS data when defined.
Json classification_report(const qgv::TwoEigSpectralForm& form,
                           const qgv::CouplingClass& cls, double residual,
                           qgv::Tolerance tol) {
  Json doc;
  doc["class"] = tag_to_string(cls.tag);
  doc["alpha"] = cls.alpha;
  doc["beta"] = cls.beta;
  if (cls.gamma) doc["gamma"] = *cls.gamma;
  if (cls.gamma_prime) doc["gamma_prime"] = *cls.gamma_prime;
  if (cls.xi) doc["xi"] = *cls.xi;
  if (cls.c) doc["c"] = *cls.c;
  if (const auto profile = qgv::mps_profile(form.M, tol))
    doc["d"] = profile->d;
  doc["equally_transmitting"] = qgv::is_equally_transmitting(form, tol);
  doc["residual"] = residual;
  doc["degenerate"] = form.degenerate;
  doc["multiplicity_p"] = form.multiplicity_p;
  return doc;
}

// The fit residual certifying at-most-two eigenvalues; a scalar matrix
// bypasses the fit, so its residual is reported as exactly zero.
double closure_residual(const qgv::VertexCoupling& coupling,
                        const qgv::TwoEigSpectralForm& form,
                        qgv::Tolerance tol) {
  if (form.degenerate) return 0.0;
  return qgv::quadratic_closure_fit(coupling.matrix(), tol).residual;
}

}  // namespace

int cmd_classify(const ClassifyOptions& opts) {
  return run_guarded([&] {
    const qgv::Tolerance tol(opts.tol);
    const qgv::VertexCoupling coupling = load_coupling_file(opts.input, tol);

    qgv::TwoEigSpectralForm form{0.0, 0.0, qgv::ComplexMatrix(1), 1, false};
    try {
      form = qgv::decompose(coupling, tol);
    } catch (const qgv::MoreThanTwoEigenvalues& e) {
      Json doc;
      doc["n"] = coupling.degree();
      doc["class"] = "OutsideFamily";
      doc["residual"] = e.residual();
      return with_output(opts.output,
                         [&](std::ostream& out) { print_json(out, doc); }) == 0
                 ? kExitOutsideFamily
                 : kExitFailure;
    }

    const qgv::CouplingClass cls =
        qgv::classify(form, qgv::is_decoupled(coupling, tol),
                      coupling.degree(), tol);
    Json doc;
    doc["n"] = coupling.degree();
    doc.update(
        classification_report(form, cls, closure_residual(coupling, form, tol),
                              tol));
    return with_output(opts.output,
                       [&](std::ostream& out) { print_json(out, doc); });
  });
}

int cmd_scatter(const ScatterOptions& opts) {
  return run_guarded([&] {
    const qgv::Tolerance tol(opts.tol);
    const qgv::VertexCoupling coupling = load_coupling_file(opts.input, tol);
    const std::vector<double> grid = make_grid(opts.grid);
    const int n = coupling.degree();

    return with_output(opts.output, [&](std::ostream& out) {
      CsvWriter csv(out);
      std::vector<std::string> names;
      names.push_back("k");
      for (int j = 0; j < n; ++j)
        names.push_back("R_" + std::to_string(j + 1));
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
          if (l != j) names.push_back(transmission_label(j, l, n));
      names.push_back("unitarity_residual");
      csv.header(names);

      for (const double k : grid) {
        const qgv::ComplexMatrix S =
            qgv::scattering_matrix(coupling.matrix(), k, tol);
        const auto [reflections, transmissions] = qgv::probabilities(S);
        std::vector<double> row;
        row.push_back(k);
        for (int j = 0; j < n; ++j) row.push_back(reflections[j]);
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l)
            if (l != j) row.push_back(transmissions[j][l]);
        row.push_back(unitarity_residual(S));
        csv.row(row);
      }
    });
  });
}

int cmd_rho(const RhoOptions& opts) {
  return run_guarded([&] {
    const qgv::Tolerance tol(opts.tol);
    const qgv::VertexCoupling coupling = load_coupling_file(opts.input, tol);
    const std::vector<double> grid = make_grid(opts.grid);

    const qgv::TwoEigSpectralForm form = qgv::decompose(coupling, tol);
    if (!qgv::is_equally_transmitting(form, tol)) {
      std::cerr << "error: coupling is not equally-transmitting (M is not a "
                   "non-diagonal MPS matrix), rho is undefined\n";
      return kExitNotEquallyTransmitting;
    }
    const qgv::RhoCurve curve =
        qgv::rho_curve(form, coupling.degree(), tol);

    return with_output(opts.output, [&](std::ostream& out) {
      CsvWriter csv(out);
      csv.header({"k", "rho_closed", "rho_sampled", "abs_diff"});
      for (const double k : grid) {
        const qgv::ComplexMatrix S =
            qgv::scattering_matrix(coupling.matrix(), k, tol);
        const double sampled = std::norm(S(0, 0)) / std::norm(S(0, 1));
        const double closed = curve.evaluate(k);
        csv.row({k, closed, sampled, std::abs(closed - sampled)});
      }
    });
  });
}

int cmd_design(const DesignOptions& opts) {
  return run_guarded([&] {
    const qgv::Tolerance tol(opts.tol);
    if (opts.has_xi && opts.type != "IV")
      throw ParseError("design: --xi applies to type IV only");

    qgv::ComplexMatrix M(1);
    if (opts.m_source == "standard") {
      if (opts.n < 2) throw ParseError("design: --n must be at least 2");
      M = qgv::standard_m(opts.n, opts.m_sign);
    } else {
      if (opts.m_file.empty())
        throw ParseError("design: --m-source file requires --m-file");
      M = load_m_file(opts.m_file, tol);
      if (opts.n != 0 && opts.n != M.order())
        throw ParseError("design: --n disagrees with the order of M");
    }
    const int n = M.order();
    const auto profile = qgv::mps_profile(M, tol);
    if (!profile)
      throw qgv::NotMPS("design: M is not a non-diagonal MPS matrix");

    std::optional<qgv::VertexCoupling> coupling;
    try {
      if (opts.type == "II") {
        coupling = qgv::design_type_ii(M, *profile, opts.c, opts.sign, n, tol);
      } else if (opts.type == "III") {
        coupling = qgv::design_type_iii(M, *profile, opts.c, opts.sign, n, tol);
      } else if (opts.type == "IV") {
        if (!opts.has_xi)
          throw ParseError("design: type IV requires --xi");
        coupling = qgv::design_type_iv(M, *profile, opts.xi, opts.c, n, tol);
      } else {
        throw ParseError("design: --type must be II, III or IV");
      }
    } catch (const qgv::COutOfRange& e) {
      Json doc;
      doc["error"] = "c_out_of_range";
      doc["message"] = e.what();
      Json interval;
      interval["lower"] = 0.0;
      interval["lower_open"] = true;
      if (std::isfinite(e.upper())) interval["upper"] = e.upper();
      else interval["upper"] = nullptr;
      interval["upper_closed"] = e.upper_closed();
      doc["admissible"] = interval;
      with_output(opts.output,
                  [&](std::ostream& out) { print_json(out, doc); });
      return kExitCOutOfRange;
    }

    // Self-verification: the emitted coupling must classify back to the
    // requested parameters before it leaves the tool.
    const qgv::TwoEigSpectralForm form = qgv::decompose(*coupling, tol);
    const qgv::CouplingClass cls =
        qgv::classify(form, qgv::is_decoupled(*coupling, tol), n, tol);
    const char* want_tag = opts.type == "II"   ? "TypeII_GeneralizedDelta"
                           : opts.type == "III" ? "TypeIII_GeneralizedDeltaPrime"
                                                : "TypeIV_Mixed";
    if (tag_to_string(cls.tag) != want_tag || !cls.c ||
        std::abs(*cls.c - opts.c) > 1e-9 * std::max(1.0, std::abs(opts.c)))
      throw qgv::NumericalInconsistency(
          "design: self-verification failed to recover the requested class");
    if (opts.type == "IV" && (!cls.xi || std::abs(*cls.xi - opts.xi) > 1e-9))
      throw qgv::NumericalInconsistency(
          "design: self-verification failed to recover xi");

    Json doc;
    doc["n"] = n;
    doc["U"] = matrix_to_json(coupling->matrix());
    Json spectral;
    spectral["alpha"] = form.alpha;
    spectral["beta"] = form.beta;
    spectral["M"] = matrix_to_json(form.M);
    spectral["multiplicity_p"] = form.multiplicity_p;
    spectral["degenerate"] = form.degenerate;
    doc["spectral"] = spectral;
    doc["classification"] = classification_report(
        form, cls, closure_residual(*coupling, form, tol), tol);
    Json requested;
    requested["type"] = opts.type;
    requested["c"] = opts.c;
    if (opts.type == "IV") requested["xi"] = opts.xi;
    else requested["sign"] = opts.sign;
    requested["m_source"] = opts.m_source;
    if (opts.m_source == "standard") requested["m_sign"] = opts.m_sign;
    else requested["m_file"] = opts.m_file;
    doc["requested"] = requested;
    return with_output(opts.output,
                       [&](std::ostream& out) { print_json(out, doc); });
  });
}

int cmd_search_mps(const SearchOptions& opts) {
  return run_guarded([&] {
    const qgv::Tolerance tol(opts.tol);
    const std::vector<qgv::SearchEntry> results =
        qgv::search_real_mps(opts.n, tol);

    Json doc;
    doc["n"] = opts.n;
    const bool bound_applies = opts.n > 2;
    doc["bound_applies"] = bound_applies;
    if (bound_applies) {
      doc["d_bound"] = qgv::d_bound(opts.n);
      doc["bound_verdict"] = qgv::verify_bound(opts.n, results);
    } else {
      doc["d_bound"] = nullptr;
      doc["note"] =
          "order 2 is exempt from the d bound; the mixed-diagonal pattern "
          "admits every d >= 0";
    }
    doc["count"] = results.size();

    Json entries = Json::array();
    for (const qgv::SearchEntry& entry : results) {
      Json e;
      e["d"] = entry.profile.d;
      e["r"] = entry.profile.r;
      e["t"] = entry.profile.t;
      e["d_free"] = entry.d_free;
      e["diag_signs"] = entry.pattern.diag_signs;
      Json upper = Json::array();
      for (int j = 0; j < entry.pattern.n; ++j)
        for (int l = j + 1; l < entry.pattern.n; ++l)
          upper.push_back(entry.pattern.offdiag_signs[j][l]);
      e["offdiag_signs_upper"] = upper;
      const qgv::ComplexMatrix M = qgv::realize(entry.pattern, entry.profile.d);
      Json rows = Json::array();
      for (int j = 0; j < M.order(); ++j) {
        Json row = Json::array();
        for (int l = 0; l < M.order(); ++l) row.push_back(M(j, l).real());
        rows.push_back(std::move(row));
      }
      e["matrix_real"] = rows;
      entries.push_back(std::move(e));
    }
    doc["entries"] = entries;
    return with_output(opts.output,
                       [&](std::ostream& out) { print_json(out, doc); });
  });
}

int cmd_verify(const VerifyOptions& opts) {
  return run_guarded([&] {
    const qgv::Tolerance tol(opts.tol);
    const qgv::VertexCoupling coupling =
        load_coupling_file(opts.input, tol, /*validate=*/false);
    const qgv::ComplexMatrix& U = coupling.matrix();
    const int n = coupling.degree();
    const std::vector<double> grid = make_grid(opts.grid);

    Json checks = Json::array();
    bool all_pass = true;
    const auto add_check = [&](const std::string& name, double measured,
                               double threshold) {
      const bool pass = measured <= threshold;
      all_pass = all_pass && pass;
      Json c;
      c["name"] = name;
      c["pass"] = pass;
      c["measured"] = measured;
      c["threshold"] = threshold;
      checks.push_back(c);
      return pass;
    };
    const auto add_skipped = [&](const std::string& name,
                                 const std::string& reason) {
      Json c;
      c["name"] = name;
      c["skipped"] = true;
      c["reason"] = reason;
      checks.push_back(c);
    };

    Json doc;
    doc["n"] = n;

    const bool input_ok =
        add_check("input_unitary", unitarity_residual(U), tol.eps);
    if (!input_ok) {
      for (const char* name :
           {"s_at_1_equals_u", "unitarity_on_grid", "probability_conservation",
            "formula_equivalence", "mu_nu_identity",
            "transmission_ratio_constant"})
        add_skipped(name, "input matrix is not unitary");
      doc["checks"] = checks;
      doc["all_pass"] = false;
      print_json(std::cout, doc);
      return kExitNotUnitary;
    }

    // S(1) reproduces U by construction of the scattering relation.
    add_check("s_at_1_equals_u",
              qgv::max_abs_diff(qgv::scattering_matrix(U, 1.0, tol), U),
              1e-12);

    std::vector<qgv::ComplexMatrix> s_of_k;
    s_of_k.reserve(grid.size());
    double worst_unitarity = 0.0;
    double worst_row = 0.0;
    for (const double k : grid) {
      s_of_k.push_back(qgv::scattering_matrix(U, k, tol));
      const qgv::ComplexMatrix& S = s_of_k.back();
      worst_unitarity = std::max(worst_unitarity, unitarity_residual(S));
      const auto [reflections, transmissions] = qgv::probabilities(S);
      for (int j = 0; j < n; ++j) {
        double row = reflections[j];
        for (int l = 0; l < n; ++l) row += transmissions[j][l];
        worst_row = std::max(worst_row, std::abs(row - 1.0));
      }
    }
    add_check("unitarity_on_grid", worst_unitarity, 1e-10);
    add_check("probability_conservation", worst_row, 1e-9);

    // The closed-form checks only exist inside the two-eigenvalue family.
    std::optional<qgv::TwoEigSpectralForm> form;
    std::string family = "two_eigenvalue";
    try {
      form = qgv::decompose(coupling, tol);
      if (form->degenerate) family = "degenerate";
    } catch (const qgv::MoreThanTwoEigenvalues&) {
      family = "more_than_two_eigenvalues";
    } catch (const qgv::DegenerateGram&) {
      family = "near_degenerate";
    }
    doc["family"] = family;

    if (form) {
      double worst_eq = 0.0;
      for (std::size_t g = 0; g < grid.size(); ++g) {
        const qgv::ScatteringResult closed =
            qgv::s_matrix_closed(*form, grid[g], tol);
        worst_eq =
            std::max(worst_eq, qgv::max_abs_diff(closed.S, s_of_k[g]));
      }
      add_check("formula_equivalence", worst_eq, 1e-9);

      if (form->degenerate) {
        add_skipped("mu_nu_identity", "single eigenvalue phase");
      } else {
        double worst_id = 0.0;
        for (const double k : grid) {
          const qgv::MuNu mn = qgv::mu_nu(*form, k);
          const double norm_defect =
              std::abs(std::norm(mn.mu) + std::norm(mn.nu) - 1.0);
          const double ortho_defect =
              std::abs((mn.mu * std::conj(mn.nu)).real());
          worst_id = std::max({worst_id, norm_defect, ortho_defect});
        }
        add_check("mu_nu_identity", worst_id, 1e-9);
      }

      int ref_j = -1;
      int ref_l = -1;
      for (int j = 0; j < n && ref_j < 0; ++j)
        for (int l = 0; l < n && ref_j < 0; ++l)
          if (l != j && std::abs(form->M(j, l)) > tol.eps) {
            ref_j = j;
            ref_l = l;
          }
      if (ref_j < 0) {
        add_skipped("transmission_ratio_constant",
                    "M is diagonal, no transmission to compare");
      } else {
        const qgv::RatioProfile profile =
            qgv::transmission_ratio_profile(*form, grid, ref_j, ref_l, tol);
        double worst_dev = 0.0;
        for (int j = 0; j < n; ++j) {
          for (int l = 0; l < n; ++l) {
            if (l == j) continue;
            double mean = 0.0;
            for (const auto& slice : profile.ratios) mean += slice[j][l];
            mean /= static_cast<double>(profile.ratios.size());
            double var = 0.0;
            for (const auto& slice : profile.ratios) {
              const double dev = slice[j][l] - mean;
              var += dev * dev;
            }
            var /= static_cast<double>(profile.ratios.size());
            worst_dev = std::max(worst_dev, std::sqrt(var));
          }
        }
        add_check("transmission_ratio_constant", worst_dev, 1e-10);
      }
    } else {
      for (const char* name :
           {"formula_equivalence", "mu_nu_identity",
            "transmission_ratio_constant"})
        add_skipped(name, "coupling is outside the two-eigenvalue family");
    }

    if (qgv::is_hermitian(U, tol)) {
      double worst_var = 0.0;
      for (const qgv::ComplexMatrix& S : s_of_k)
        worst_var = std::max(worst_var, qgv::max_abs_diff(S, U));
      const bool invariant =
          add_check("scale_invariance", worst_var, 1e-10);
      doc["scale_invariant"] = invariant;
    }

    if (qgv::is_diagonal(U, tol)) {
      double worst_off = 0.0;
      for (const qgv::ComplexMatrix& S : s_of_k)
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l)
            if (l != j) worst_off = std::max(worst_off, std::abs(S(j, l)));
      add_check("decoupled_s_diagonal", worst_off, 1e-10);
    }

    doc["checks"] = checks;
    doc["all_pass"] = all_pass;
    print_json(std::cout, doc);
    return all_pass ? kExitOk : kExitFailure;
  });
}

}  // namespace qgv_cli
