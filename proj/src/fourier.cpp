#include "nearfield/fourier.hpp"

#include <algorithm>
#include <cmath>

#include "nearfield/errors.hpp"

namespace nearfield {

FourierCoefficients::FourierCoefficients(int max_order)
    : max_order_(max_order), data_(static_cast<std::size_t>(2 * max_order + 1)) {
  if (max_order < 0) throw InputError("FourierCoefficients: negative order");
}

cplx FourierCoefficients::operator()(int k) const {
  if (k < -max_order_ || k > max_order_) return {};
  return data_[static_cast<std::size_t>(k + max_order_)];
}

cplx& FourierCoefficients::at(int k) {
  if (k < -max_order_ || k > max_order_) throw InputError("FourierCoefficients: order out of range");
  return data_[static_cast<std::size_t>(k + max_order_)];
}

double FourierCoefficients::conjugation_defect() const {
  double worst = 0.0;
  for (int k = 0; k <= max_order_; ++k) worst = std::max(worst, std::abs((*this)(k) - std::conj((*this)(-k))));
  return worst;
}

double FourierCoefficients::max_imag() const {
  double worst = 0.0;
  for (const auto& c : data_) worst = std::max(worst, std::abs(c.imag()));
  return worst;
}

FourierCoefficients FourierCoefficients::truncated(int order) const {
  FourierCoefficients out(order);
  for (int k = -order; k <= order; ++k) out.at(k) = (*this)(k);
  return out;
}

cplx FourierCoefficients::evaluate(double theta) const { return derivative(theta, 0); }

cplx FourierCoefficients::derivative(double theta, int p) const {
  cplx sum{};
  for (int k = -max_order_; k <= max_order_; ++k) {
    const cplx c = (*this)(k);
    if (c == cplx{}) continue;
    cplx factor = 1.0;
    for (int q = 0; q < p; ++q) factor *= cplx(0.0, k);
    sum += c * factor * std::polar(1.0, k * theta);
  }
  return sum;
}

std::vector<double> uniform_theta_grid(int M) {
  std::vector<double> t(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) t[static_cast<std::size_t>(j)] = 2.0 * kPi * j / M;
  return t;
}

FourierCoefficients dft(std::span<const cplx> samples) {
  const int M = static_cast<int>(samples.size());
  if (M == 0) throw InputError("dft: empty sample set");
  const int K = M / 2;
  FourierCoefficients c(K);
  for (int k = -K; k <= K; ++k) {
    cplx sum{};
    for (int j = 0; j < M; ++j) sum += samples[static_cast<std::size_t>(j)] * std::polar(1.0, -2.0 * kPi * k * j / M);
    c.at(k) = sum / static_cast<double>(M);
  }
  if (M % 2 == 0) {
    c.at(K) *= 0.5;
    c.at(-K) *= 0.5;
  }
  return c;
}

FourierCoefficients dft(std::span<const double> samples) {
  std::vector<cplx> z(samples.begin(), samples.end());
  return dft(std::span<const cplx>(z));
}

std::vector<double> synthesize_real(const FourierCoefficients& c, std::span<const double> theta) {
  std::vector<double> out;
  out.reserve(theta.size());
  for (double t : theta) out.push_back(c.evaluate(t).real());
  return out;
}

FourierCoefficients exponential_filter(const FourierCoefficients& c, int cutoff, int order, double alpha) {
  if (cutoff < 1) throw InputError("exponential_filter: cutoff must be >= 1");
  FourierCoefficients out(cutoff);
  for (int k = -cutoff; k <= cutoff; ++k)
    out.at(k) = c(k) * std::exp(-alpha * std::pow(std::abs(k) / static_cast<double>(cutoff), order));
  return out;
}

}  // namespace nearfield
