#include "qd/quasicircle.hpp"

#include <cmath>
#include <ostream>

#include "qd/univalence.hpp"

namespace qd {

std::vector<MinkVec4> Quasicircle::null_rays() const {
  std::vector<MinkVec4> rays;
  rays.reserve(samples.size());
  for (const cplx& z : samples) rays.push_back(null_from_boundary(BoundaryPoint(z)));
  return rays;
}

void Quasicircle::write_csv(std::ostream& os) const {
  os << "theta,re,im\n";
  char line[96];
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const double th = 2.0 * M_PI * j / samples.size();
    std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g\n", th, samples[j].real(),
                  samples[j].imag());
    os << line;
  }
}

Quasicircle sample_quasicircle(const LaurentMap& psi, int n) {
  if (n < 16) throw domain_error("sample_quasicircle: need at least 16 samples");

  Quasicircle gamma;
  gamma.source = psi;
  if (!gamma.source.is_certified()) {
    UnivalenceOutcome out = univalence_grid_check(psi, std::max(64, n));
    if (!out.ok)
      throw univalence_error("sample_quasicircle: source map is not univalent: " + out.reason,
                             out.witness_a, out.witness_b);
    gamma.source.attach_certificate(out.certificate);
  }

  gamma.samples.resize(n);
  for (int j = 0; j < n; ++j)
    gamma.samples[j] = psi.eval(std::polar(1.0, 2.0 * M_PI * j / n));

  int sa = 0, sb = 0;
  if (polygon_self_intersects(gamma.samples, &sa, &sb))
    throw univalence_error("sample_quasicircle: boundary polygon self-intersects",
                           std::polar(1.0, 2.0 * M_PI * sa / n),
                           std::polar(1.0, 2.0 * M_PI * sb / n));

  BersEstimate est = bers_norm(gamma.source);
  gamma.bers = est.value;
  if (est.value < 0.5) gamma.k_upper = ahlfors_weill_K(est.value);
  return gamma;
}

}  // namespace qd
