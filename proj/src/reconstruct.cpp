#include "nearfield/reconstruct.hpp"

#include <algorithm>
#include <cmath>

#include "nearfield/errors.hpp"
#include "nearfield/gpt.hpp"

namespace nearfield {

FourierCoefficients fourier_from_shift_values(std::span<const FirstOrderShift> shifts, double lambda_mp, double s,
                                              int N) {
  if (N < 0 || N % 2 != 0) throw InputError("fourier_from_shifts: N must be even and non-negative");
  FourierCoefficients c(N);
  if (N == 0 && shifts.empty()) return c;
  auto find = [&](int n) -> const FirstOrderShift& {
    for (const auto& sh : shifts)
      if (sh.n == n) return sh;
    throw InputError("fourier_from_shifts: missing cluster n = " + std::to_string(n));
  };
  const FirstOrderShift& one = find(1);
  c.at(0) = -lambda_mp * (one.plus + one.minus) * std::exp(2.0 * s);
  for (int n = 1; 2 * n <= N; ++n) {
    const FirstOrderShift& sh = find(n);
    const double v = -2.0 * lambda_mp * lambda_mp * (sh.plus - sh.minus) * std::exp(2.0 * n * s) / n;
    c.at(2 * n) = v;
    c.at(-2 * n) = v;
  }
  return c;
}

FourierCoefficients fourier_from_shifts(const SpectralClusters& clusters, double lambda_mp, double s, int N) {
  if (N < 0 || N % 2 != 0) throw InputError("fourier_from_shifts: N must be even and non-negative");
  std::vector<FirstOrderShift> shifts;
  for (int n = 1; n <= std::max(1, N / 2); ++n) {
    const Cluster* found = nullptr;
    for (const auto& cl : clusters.clusters)
      if (cl.n == n) found = &cl;
    if (found == nullptr) throw InputError("fourier_from_shifts: missing cluster n = " + std::to_string(n));
    if (!found->valid) throw InputError("fourier_from_shifts: cluster n = " + std::to_string(n) + " is invalid (" +
                                        found->flag + ")");
    if (!found->degenerate && found->parity_purity < 0.99)
      throw InputError("fourier_from_shifts: cluster n = " + std::to_string(n) +
                       " has no definite parity; the eigen route needs an even profile");
    shifts.push_back({n, found->shift_plus, found->shift_minus});
  }
  return fourier_from_shift_values(shifts, lambda_mp, s, N);
}

namespace {

std::vector<double> synthesize(const FourierCoefficients& c, int N, int stride, std::span<const double> theta) {
  std::vector<double> out;
  out.reserve(theta.size());
  for (double t : theta) {
    double v = c(0).real();
    for (int k = stride; k <= N; k += stride) {
      const cplx a = c(k);
      v += 2.0 * (a.real() * std::cos(k * t) - a.imag() * std::sin(k * t));
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<double> synthesize_even(const FourierCoefficients& c, int N, std::span<const double> theta) {
  return synthesize(c, N, 2, theta);
}

std::vector<double> synthesize_full(const FourierCoefficients& c, int N, std::span<const double> theta) {
  return synthesize(c, N, 1, theta);
}

CgptInversion fourier_from_cgpt(const Eigen::MatrixXcd& delta_table, double eps_minus, double eps_plus, double delta,
                                int N) {
  if (!(delta > 0.0)) throw DomainError("fourier_from_cgpt: delta must be positive");
  if (eps_minus == eps_plus) throw DomainError("fourier_from_cgpt: zero contrast");
  if (N < 0) throw InputError("fourier_from_cgpt: negative order");
  if (delta_table.rows() != delta_table.cols() || delta_table.rows() % 2 != 0)
    throw InputError("fourier_from_cgpt: table must be square in the signed layout");
  const int order = static_cast<int>(delta_table.rows() / 2);
  if (order < N) throw InputError("fourier_from_cgpt: table order is below N");
  const SignedBasis b(order);

  CgptInversion out;
  out.pairs.resize(static_cast<std::size_t>(2 * N + 1));
  FourierCoefficients raw(N);
  for (int k = -N; k <= N; ++k) {
    auto& list = out.pairs[static_cast<std::size_t>(k + N)];
    for (int n = -N; n <= N; ++n) {
      const int m = n + k;
      if (n == 0 || m == 0 || std::abs(m) > N) continue;
      const double coef = shape_derivative_coefficient(eps_minus, eps_plus, n, m);
      if (std::abs(coef) < 1e-300) continue;
      list.push_back({n, m, delta_table(b.index(n), b.index(m)) / (delta * coef)});
    }
    // k = 0 always admits (n, n); any |k| <= N admits (n, n + k) for some n once N >= 1.
    if (list.empty()) throw InputError("fourier_from_cgpt: no admissible pair for k = " + std::to_string(k));
    cplx sum{};
    for (const auto& p : list) sum += p.value;
    raw.at(k) = sum / static_cast<double>(list.size());
  }
  out.coefficients = FourierCoefficients(N);
  for (int k = -N; k <= N; ++k) out.coefficients.at(k) = 0.5 * (raw(k) + std::conj(raw(-k)));
  return out;
}

FourierCoefficients projection(const FourierCoefficients& c, int N, bool even_only) {
  FourierCoefficients out(N);
  for (int k = -N; k <= N; ++k)
    if (!even_only || k % 2 == 0) out.at(k) = c(k);
  return out;
}

std::vector<PlanePoint> reconstruct_plane(std::span<const double> theta, std::span<const double> h_samples,
                                          const ProbeGeometry& geom, double delta, double x_max) {
  return pullback_curve(theta, h_samples, delta, geom, x_max);
}

ErrorMetrics error_metrics(std::span<const double> reconstructed, std::span<const double> truth,
                           std::span<const double> weights) {
  if (reconstructed.size() != truth.size()) throw InputError("error_metrics: grid mismatch");
  if (!weights.empty() && weights.size() != truth.size()) throw InputError("error_metrics: weight length mismatch");
  double num2 = 0.0, den2 = 0.0, num_inf = 0.0, den_inf = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    const double e = reconstructed[i] - truth[i];
    num2 += w * e * e;
    den2 += w * truth[i] * truth[i];
    num_inf = std::max(num_inf, std::abs(e));
    den_inf = std::max(den_inf, std::abs(truth[i]));
  }
  ErrorMetrics m;
  // A zero truth yields the absolute error so flat-profile runs stay finite.
  m.rel_l2 = den2 > 0.0 ? std::sqrt(num2 / den2) : std::sqrt(num2);
  m.rel_linf = den_inf > 0.0 ? num_inf / den_inf : num_inf;
  return m;
}

std::vector<double> coefficient_errors(const FourierCoefficients& a, const FourierCoefficients& b, int N) {
  std::vector<double> out;
  for (int k = -N; k <= N; ++k) out.push_back(std::abs(a(k) - b(k)));
  return out;
}

}  // namespace nearfield
