#include <cmath>
#include <stdexcept>

#include "eur/kernels.hpp"

namespace eur::kernels::scalar {

namespace {

struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

double power_sum(std::span<const double> p, double a) {
  Neumaier acc;
  for (double v : p) {
    if (v > 0.0) acc.add(std::exp(a * std::log(v)));
  }
  return acc.value();
}

double neg_plogp_sum(std::span<const double> p) {
  Neumaier acc;
  for (double v : p) {
    if (v > 0.0) acc.add(-v * std::log(v));
  }
  return acc.value();
}

void scaled_pow(std::span<const double> x, double e, double coeff, std::span<double> out) {
  if (out.size() < x.size()) throw std::invalid_argument("scaled_pow: output too small");
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = x[i] > 0.0 ? coeff * std::exp(e * std::log(x[i])) : 0.0;
  }
}

}  // namespace eur::kernels::scalar
