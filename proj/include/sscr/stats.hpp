#pragma once

#include <utility>

namespace sscr {

/// Regularized incomplete beta function I_x(a, b), continued-fraction
/// evaluation, a, b > 0, x in [0, 1].
double incomplete_beta(double a, double b, double x);

/// Exact (Clopper-Pearson) two-sided binomial confidence interval for k
/// successes in n trials. For k = 0 the lower bound is 0; for k = n the
/// upper bound is 1.
std::pair<double, double> clopper_pearson(int k, int n, double confidence = 0.95);

}  // namespace sscr
