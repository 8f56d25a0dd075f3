#include "qd/exporters.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <ostream>

namespace qd {

void write_report_csv(const VerificationReport& report, std::ostream& os) {
  os << "t,bers_norm,k_upper,teich_dist,sup_lambda,width,pde_residual,hull_violation,"
        "harmonic_residual,converged\n";
  char line[320];
  for (const RunRecord& r : report.rows) {
    std::snprintf(line, sizeof line,
                  "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%d\n", r.t,
                  r.bers_norm, r.k_upper, r.teich_dist, r.sup_lambda, r.width, r.pde_residual,
                  r.hull_violation, r.harmonic_residual, r.converged ? 1 : 0);
    os << line;
  }
}

void write_report_json(const VerificationReport& report, std::ostream& os) {
  nlohmann::json j;
  j["rows"] = nlohmann::json::array();
  for (const RunRecord& r : report.rows) {
    nlohmann::json row;
    row["t"] = r.t;
    row["bers_norm"] = r.bers_norm;
    row["k_upper"] = r.k_upper;
    row["teich_dist"] = r.teich_dist;
    row["sup_lambda"] = r.sup_lambda;
    row["width"] = r.width;
    row["pde_residual"] = r.pde_residual;
    row["hull_violation"] = r.hull_violation;
    row["harmonic_residual"] = r.harmonic_residual;
    row["converged"] = r.converged;
    if (!r.error.empty()) row["error"] = r.error;
    row["level_vertices"] = r.level_vertices;
    row["level_sup_lambda"] = r.level_sup_lambda;
    row["level_pde_residual"] = r.level_pde_residual;
    row["level_hull_violation"] = r.level_hull_violation;
    j["rows"].push_back(row);
  }
  j["c_fit"] = report.c_fit;
  j["c_fit_residual"] = report.c_fit_residual;
  j["c_log_fit"] = report.c_log_fit;
  j["c_log_fit_residual"] = report.c_log_fit_residual;
  j["notes"] = report.notes;
  os << j.dump(2) << "\n";
}

void write_report_svg(const VerificationReport& report, std::ostream& os) {
  const double W = 640, H = 480, margin = 60;
  double bmax = 1e-6, lmax = 1e-6;
  for (const RunRecord& r : report.rows) {
    if (!r.converged) continue;
    bmax = std::max(bmax, r.bers_norm);
    lmax = std::max(lmax, r.sup_lambda);
  }
  bmax *= 1.1;
  lmax *= 1.3;
  auto X = [&](double b) { return margin + (W - 2 * margin) * b / bmax; };
  auto Y = [&](double l) { return H - margin - (H - 2 * margin) * l / lmax; };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  char buf[256];
  // axes
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", margin,
                H - margin, W - margin, H - margin);
  os << buf;
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", margin,
                H - margin, margin, margin);
  os << buf;
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 18
     << "\" text-anchor=\"middle\" font-size=\"14\">bers_norm</text>\n";
  os << "<text x=\"18\" y=\"" << H / 2
     << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 " << H / 2
     << ")\">sup_lambda</text>\n";

  // fitted bound curve: C b / sqrt(1 - C b^2)
  if (report.c_fit > 0) {
    os << "<polyline fill=\"none\" stroke=\"crimson\" stroke-width=\"1.5\" points=\"";
    for (int i = 0; i <= 100; ++i) {
      const double b = bmax * i / 100.0;
      const double arg = 1.0 - report.c_fit * b * b;
      if (arg <= 0) break;
      const double l = report.c_fit * b / std::sqrt(arg);
      if (l > lmax) break;
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", X(b), Y(l));
      os << buf;
    }
    os << "\"/>\n";
  }

  for (const RunRecord& r : report.rows) {
    if (!r.converged) continue;
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4\" fill=\"steelblue\"/>\n",
                  X(r.bers_norm), Y(r.sup_lambda));
    os << buf;
  }
  os << "</svg>\n";
}

}  // namespace qd
