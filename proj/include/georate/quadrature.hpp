#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace georate::quad {

struct Tolerance {
  double absolute = 1e-9;
  double relative = 1e-10;
  std::size_t max_intervals = 2000;
};

/// Globally adaptive Gauss-Kronrod (21 point) integral of f over [a, b].
///
/// Throws QuadratureError when the error estimate still exceeds
/// max(absolute, relative * |I|) once max_intervals subintervals are in use,
/// or when f returns a non-finite value. Exceptions thrown by f propagate.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const Tolerance& tol = {});

/// Sum of integrals over consecutive breakpoints; each panel is refined
/// independently so kinks at the breakpoints do not stall convergence.
double integrate_piecewise(const std::function<double(double)>& f,
                           std::span<const double> breakpoints,
                           const Tolerance& tol = {});

}  // namespace georate::quad
