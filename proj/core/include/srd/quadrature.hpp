#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "srd/errors.hpp"

namespace srd {

/// Integrates f over [a, b] with double-exponential quadrature. Integrable
/// endpoint singularities (inverse square roots, logs) are handled without
/// special casing. Throws NumericError if the error estimate stays above
/// the requested tolerance.
template <typename F>
double integrate(const F& f, double a, double b, double tol = 1e-12) {
  if (!(a < b)) {
    if (a == b) return 0.0;
    throw std::invalid_argument("integrate: requires a <= b");
  }
  boost::math::quadrature::tanh_sinh<double> integrator;
  double error = 0.0, l1 = 0.0;
  const double value = integrator.integrate(f, a, b, tol, &error, &l1);
  const double scale = std::max(1.0, l1);
  if (!std::isfinite(value) || error * scale > 1e4 * tol * scale + 1e-14) {
    std::ostringstream msg;
    msg << "integrate: poor convergence on [" << a << ", " << b
        << "], achieved relative error " << error << " (target " << tol << ")";
    throw NumericError(msg.str());
  }
  return value;
}

/// Integrates f over the whole real line (f must decay at both ends).
template <typename F>
double integrate_real_line(const F& f, double tol = 1e-12) {
  boost::math::quadrature::sinh_sinh<double> integrator;
  double error = 0.0, l1 = 0.0;
  const double value = integrator.integrate(f, tol, &error, &l1);
  const double scale = std::max(1.0, l1);
  if (!std::isfinite(value) || error * scale > 1e4 * tol * scale + 1e-14) {
    std::ostringstream msg;
    msg << "integrate_real_line: poor convergence, achieved relative error "
        << error << " (target " << tol << ")";
    throw NumericError(msg.str());
  }
  return value;
}

}  // namespace srd
