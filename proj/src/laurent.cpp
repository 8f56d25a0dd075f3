#include "qd/laurent.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "qd/univalence.hpp"

namespace qd {

LaurentMap::LaurentMap(std::vector<cplx> coefficients) : c_(std::move(coefficients)) {
  for (const cplx& ck : c_)
    if (!std::isfinite(ck.real()) || !std::isfinite(ck.imag()))
      throw domain_error("LaurentMap: non-finite coefficient");
}

LaurentMap LaurentMap::certified(std::vector<cplx> coefficients, int resolution) {
  LaurentMap psi(std::move(coefficients));
  UnivalenceOutcome out = univalence_grid_check(psi, resolution);
  if (!out.ok)
    throw univalence_error("LaurentMap: univalence check failed: " + out.reason, out.witness_a,
                           out.witness_b);
  psi.attach_certificate(out.certificate);
  return psi;
}

cplx LaurentMap::eval(cplx z) const {
  cplx s = z;
  const cplx w = 1.0 / z;
  cplx wk = w;
  for (const cplx& ck : c_) {
    s += ck * wk;
    wk *= w;
  }
  return s;
}

cplx LaurentMap::deriv(cplx z) const {
  cplx s = 1.0;
  const cplx w = 1.0 / z;
  cplx wk = w * w;  // z^{-k-1} starting at k=1
  double k = 1.0;
  for (const cplx& ck : c_) {
    s -= k * ck * wk;
    wk *= w;
    k += 1.0;
  }
  return s;
}

cplx LaurentMap::deriv2(cplx z) const {
  cplx s = 0.0;
  const cplx w = 1.0 / z;
  cplx wk = w * w * w;  // z^{-k-2}
  double k = 1.0;
  for (const cplx& ck : c_) {
    s += k * (k + 1.0) * ck * wk;
    wk *= w;
    k += 1.0;
  }
  return s;
}

cplx LaurentMap::deriv3(cplx z) const {
  cplx s = 0.0;
  const cplx w = 1.0 / z;
  cplx wk = w * w * w * w;  // z^{-k-3}
  double k = 1.0;
  for (const cplx& ck : c_) {
    s -= k * (k + 1.0) * (k + 2.0) * ck * wk;
    wk *= w;
    k += 1.0;
  }
  return s;
}

cplx LaurentMap::schwarzian_tail() const {
  return c_.empty() ? cplx(0, 0) : -6.0 * c_[0];
}

const UnivalenceCertificate& LaurentMap::certificate() const {
  if (!certificate_) throw domain_error("LaurentMap: no univalence certificate attached");
  return *certificate_;
}

void LaurentMap::require_certificate() const {
  if (!certificate_)
    throw domain_error("LaurentMap: operation requires a certified-univalent map");
}

void LaurentMap::write(std::ostream& os) const {
  for (std::size_t k = 0; k < c_.size(); ++k) {
    char line[96];
    std::snprintf(line, sizeof line, "%zu %.17g %.17g\n", k + 1, c_[k].real(), c_[k].imag());
    os << line;
  }
}

LaurentMap LaurentMap::read(std::istream& is) {
  std::vector<cplx> coeffs;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::size_t k;
    double re, im;
    if (!(ls >> k >> re >> im)) throw io_error("LaurentMap::read: malformed line '" + line + "'");
    if (k == 0) throw io_error("LaurentMap::read: coefficient index must be >= 1");
    if (coeffs.size() < k) coeffs.resize(k, cplx(0, 0));
    coeffs[k - 1] = cplx(re, im);
  }
  return LaurentMap(std::move(coeffs));
}

MoebiusTransform::MoebiusTransform(cplx a_, cplx b_, cplx c_, cplx d_)
    : a(a_), b(b_), c(c_), d(d_) {
  const cplx det = a * d - b * c;
  if (std::abs(det) < 1e-14) throw degeneracy_error("MoebiusTransform: singular coefficients");
  const cplx s = std::sqrt(det);
  a /= s;
  b /= s;
  c /= s;
  d /= s;
}

cplx MoebiusTransform::eval(cplx z) const { return (a * z + b) / (c * z + d); }

cplx MoebiusTransform::deriv(cplx z) const {
  const cplx q = c * z + d;
  return 1.0 / (q * q);  // det = 1
}

cplx MoebiusTransform::deriv2(cplx z) const {
  const cplx q = c * z + d;
  return -2.0 * c / (q * q * q);
}

cplx MoebiusTransform::deriv3(cplx z) const {
  const cplx q = c * z + d;
  return 6.0 * c * c / (q * q * q * q);
}

namespace {
cplx schwarzian_from_derivs(cplx f1, cplx f2, cplx f3) {
  if (std::abs(f1) < 1e-12)
    throw degeneracy_error("schwarzian: critical point, f'(z) = 0");
  const cplx r = f2 / f1;
  return f3 / f1 - 1.5 * r * r;
}
}  // namespace

cplx schwarzian(const LaurentMap& f, cplx z) {
  return schwarzian_from_derivs(f.deriv(z), f.deriv2(z), f.deriv3(z));
}

cplx schwarzian(const MoebiusTransform& m, cplx z) {
  if (std::abs(m.c * z + m.d) < 1e-12)
    throw degeneracy_error("schwarzian: z is the pole of the Moebius map");
  return {0, 0};
}

cplx schwarzian(const MoebiusLaurentComposite& g, cplx z) {
  // Chain rule through w = f(z):
  //   g'   = M'(w) f'
  //   g''  = M''(w) f'^2 + M'(w) f''
  //   g''' = M'''(w) f'^3 + 3 M''(w) f' f'' + M'(w) f'''
  const cplx w = g.f.eval(z);
  const cplx f1 = g.f.deriv(z), f2 = g.f.deriv2(z), f3 = g.f.deriv3(z);
  const cplx m1 = g.m.deriv(w), m2 = g.m.deriv2(w), m3 = g.m.deriv3(w);
  const cplx g1 = m1 * f1;
  const cplx g2 = m2 * f1 * f1 + m1 * f2;
  const cplx g3 = m3 * f1 * f1 * f1 + 3.0 * m2 * f1 * f2 + m1 * f3;
  return schwarzian_from_derivs(g1, g2, g3);
}

}  // namespace qd
