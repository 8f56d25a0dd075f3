#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qd {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Inputs violate a geometric invariant (off the hyperboloid, bad frame, ...).
struct geometry_error : error {
  using error::error;
};

// Argument outside the mathematical domain of a formula.
struct domain_error : error {
  using error::error;
};

// A map failed an injectivity test. Carries the offending parameter pair.
struct univalence_error : error {
  std::complex<double> witness_a{0, 0};
  std::complex<double> witness_b{0, 0};
  univalence_error(const std::string& msg, std::complex<double> a, std::complex<double> b)
      : error(msg), witness_a(a), witness_b(b) {}
  explicit univalence_error(const std::string& msg) : error(msg) {}
};

// Grid refinement did not converge; carries the last computed value.
struct resolution_error : error {
  double partial = 0.0;
  resolution_error(const std::string& msg, double partial_value)
      : error(msg), partial(partial_value) {}
  explicit resolution_error(const std::string& msg) : error(msg) {}
};

// Degenerate configuration: critical point, singular operator, collapsed mesh.
struct degeneracy_error : error {
  using error::error;
};

struct chart_error : error {
  using error::error;
};

struct solver_error : error {
  using error::error;
};

struct io_error : error {
  using error::error;
};

}  // namespace qd
