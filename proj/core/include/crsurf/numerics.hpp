#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace crsurf::num {

// Step for derivatives of closed-form fields: max(1e-5, 1e-5 |x|).
inline double field_step(double x) {
  const double ax = x < 0 ? -x : x;
  return ax > 1.0 ? 1e-5 * ax : 1e-5;
}

// Five-point centered first derivative of f at 0.
double diff5(const std::function<double(double)>& f, double h);
// Five-point one-sided first derivative of f at 0, sampling f on [0, 4h]; h may be negative.
double diff5_onesided(const std::function<double(double)>& f, double h);
// Five-point centered second derivative of f at 0.
double diff5_2(const std::function<double(double)>& f, double h);

// Pairwise (cascade) summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);

struct AxisRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Midpoint rule with n nodes on a periodic interval [a, b).
AxisRule midpoint_rule(int n, double a, double b);
// Composite Simpson on [a, b]; n is rounded up to an even interval count.
AxisRule simpson_rule(int n, double a, double b);

// Worker count from CRSURF_WORKERS (defaults to the OpenMP default).
int worker_count();

// Runs body(i) for i in [0, n) on worker_count() threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace crsurf::num
