#pragma once

// Reference computations used by the tests. Each one takes a different route
// from the library code it checks.

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace noma::test {

/// Smallest weak-user power share a in [0, 1] whose SINR a*x/((1-a)*x + 1)
/// reaches 2^r - 1, by bisection on the SINR directly.
inline double cr_share_bisection(double x, double r) {
  const double target = std::exp2(r) - 1.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double sinr = mid * x / ((1.0 - mid) * x + 1.0);
    (sinr >= target ? hi : lo) = mid;
  }
  return hi;
}

/// Outage of the weak user's own message for an Exp(mean_gain) channel with
/// weak share a_weak, strong share a_strong and target r:
///   P = 1 - exp(-eps / ((a_weak - eps * a_strong) * rho * mean_gain)).
inline double weak_outage_closed_form(double rho, double mean_gain, double a_weak,
                                      double a_strong, double r) {
  const double eps = std::exp2(r) - 1.0;
  return 1.0 - std::exp(-eps / ((a_weak - eps * a_strong) * rho * mean_gain));
}

/// log2 det of a Hermitian positive-definite matrix via its eigenvalues.
inline double log2det_eigen(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  double total = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    total += std::log2(solver.eigenvalues()(i));
  }
  return total;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

inline LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

}  // namespace noma::test
