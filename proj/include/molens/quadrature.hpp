// Adaptive Simpson quadrature.

#pragma once

#include "molens/common.hpp"

#include <functional>

namespace molens {

// Integrate f over [a, b] to absolute tolerance abs_tol. Throws
// ConvergenceError when the recursion depth limit is reached before the
// tolerance is met.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 48);

}  // namespace molens
