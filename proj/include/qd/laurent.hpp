#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "qd/errors.hpp"
#include "qd/vec.hpp"

namespace qd {

// Certificate produced by univalence_grid_check: the resolution it ran at and
// the worst derivative modulus seen on the grid.
struct UnivalenceCertificate {
  int resolution = 0;
  double min_abs_derivative = 0.0;
};

// Conformal map on the exterior disc D* = {|z| > 1},
//   Psi(z) = z + sum_{k=1..m} c_k z^{-k},
// normalized to fix infinity with derivative 1 there. Holds an optional
// univalence certificate; operations that need a univalent map require it.
class LaurentMap {
 public:
  LaurentMap() = default;
  explicit LaurentMap(std::vector<cplx> coefficients);

  // Runs univalence_grid_check and stores the certificate; throws
  // univalence_error (with a witness pair) when the check fails.
  static LaurentMap certified(std::vector<cplx> coefficients, int resolution = 256);

  const std::vector<cplx>& coefficients() const { return c_; }
  bool normalized() const { return true; }

  cplx eval(cplx z) const;
  cplx deriv(cplx z) const;
  cplx deriv2(cplx z) const;
  cplx deriv3(cplx z) const;

  // Limit of z^4 S_Psi(z) as z -> infinity; equals -6 c_1 for any finite
  // Laurent tail. Used for the boundary-at-infinity sample of sup-norms.
  cplx schwarzian_tail() const;

  bool is_certified() const { return certificate_.has_value(); }
  const UnivalenceCertificate& certificate() const;
  void attach_certificate(UnivalenceCertificate cert) { certificate_ = cert; }
  void require_certificate() const;

  void write(std::ostream& os) const;               // lines "k re(c_k) im(c_k)"
  static LaurentMap read(std::istream& is);         // inverse of write (uncertified)

 private:
  std::vector<cplx> c_;
  std::optional<UnivalenceCertificate> certificate_;
};

// Moebius transformation z -> (az + b)/(cz + d), normalized to ad - bc = 1.
struct MoebiusTransform {
  cplx a{1, 0}, b{0, 0}, c{0, 0}, d{1, 0};

  MoebiusTransform() = default;
  MoebiusTransform(cplx a_, cplx b_, cplx c_, cplx d_);  // normalizes determinant to 1

  cplx eval(cplx z) const;
  cplx deriv(cplx z) const;   //  1/(cz+d)^2
  cplx deriv2(cplx z) const;  // -2c/(cz+d)^3
  cplx deriv3(cplx z) const;  //  6c^2/(cz+d)^4
};

// Post-composition M o Psi, kept symbolic so its Schwarzian can be evaluated
// through the chain rule and compared against S_Psi.
struct MoebiusLaurentComposite {
  MoebiusTransform m;
  LaurentMap f;

  cplx eval(cplx z) const { return m.eval(f.eval(z)); }
};

// Schwarzian derivative S_f = f'''/f' - (3/2)(f''/f')^2, evaluated exactly
// from term-wise differentiation (no finite differences). Throws
// degeneracy_error at critical points f'(z) = 0.
cplx schwarzian(const LaurentMap& f, cplx z);
cplx schwarzian(const MoebiusTransform& m, cplx z);  // identically zero
cplx schwarzian(const MoebiusLaurentComposite& g, cplx z);

}  // namespace qd
