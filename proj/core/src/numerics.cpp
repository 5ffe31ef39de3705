#include "crsurf/numerics.hpp"

#include <omp.h>

#include <cstdlib>
#include <exception>
#include <string>

namespace crsurf::num {

double diff5(const std::function<double(double)>& f, double h) {
  return (f(-2 * h) - 8 * f(-h) + 8 * f(h) - f(2 * h)) / (12 * h);
}

double diff5_onesided(const std::function<double(double)>& f, double h) {
  return (-25 * f(0) + 48 * f(h) - 36 * f(2 * h) + 16 * f(3 * h) - 3 * f(4 * h)) / (12 * h);
}

double diff5_2(const std::function<double(double)>& f, double h) {
  return (-f(-2 * h) + 16 * f(-h) - 30 * f(0) + 16 * f(h) - f(2 * h)) / (12 * h * h);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

AxisRule midpoint_rule(int n, double a, double b) {
  AxisRule r;
  const double h = (b - a) / n;
  r.nodes.resize(n);
  r.weights.assign(n, h);
  for (int i = 0; i < n; ++i) r.nodes[i] = a + (i + 0.5) * h;
  return r;
}

AxisRule simpson_rule(int n, double a, double b) {
  if (n % 2) ++n;
  AxisRule r;
  const double h = (b - a) / n;
  r.nodes.resize(n + 1);
  r.weights.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    r.nodes[i] = a + i * h;
    const double c = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    r.weights[i] = c * h / 3.0;
  }
  return r;
}

int worker_count() {
  if (const char* env = std::getenv("CRSURF_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  return omp_get_max_threads();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const long long count = static_cast<long long>(n);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4) num_threads(worker_count())
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(crsurf_parallel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace crsurf::num
