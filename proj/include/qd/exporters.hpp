#pragma once

#include <iosfwd>

#include "qd/report.hpp"

namespace qd {

// Fixed column order; converged rows as 0/1; one line per row.
// t,bers_norm,k_upper,teich_dist,sup_lambda,width,pde_residual,hull_violation,
// harmonic_residual,converged
void write_report_csv(const VerificationReport& report, std::ostream& os);

// Mirrors the CSV fields by name, plus fits, notes and per-run diagnostics.
void write_report_json(const VerificationReport& report, std::ostream& os);

// Scatter of sup_lambda against bers_norm: one marker per converged row and a
// single polyline for the fitted bound curve.
void write_report_svg(const VerificationReport& report, std::ostream& os);

}  // namespace qd
