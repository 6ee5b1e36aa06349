#include "altzeta/stats.hpp"

#include "altzeta/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace altzeta::stats {

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw Error(Errc::DomainError, "KS test needs nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

double ks_one_sample(std::vector<double> a, const std::function<double(double)>& cdf) {
  if (a.empty()) throw Error(Errc::DomainError, "KS test needs a nonempty sample");
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = cdf(a[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

double ks_critical(std::size_t n, std::size_t m, double alpha) {
  double c;
  if (alpha == 0.05) c = 1.358;
  else if (alpha == 0.01) c = 1.628;
  else if (alpha == 0.001) c = 1.949;
  else throw Error(Errc::DomainError, "untabulated KS level");
  if (m == 0) return c / std::sqrt(static_cast<double>(n));
  return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

double mean(const std::vector<double>& x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double integrated_autocorr_time(const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n < 4) return 1.0;
  const double mu = mean(x);
  auto autocov = [&](std::size_t k) {
    double s = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) s += (x[i] - mu) * (x[i + k] - mu);
    return s / static_cast<double>(n);
  };
  const double c0 = autocov(0);
  if (c0 == 0.0) return 1.0;
  double tau = 1.0;
  for (std::size_t k = 1; k < n / 2; ++k) {
    tau += 2.0 * autocov(k) / c0;
    if (static_cast<double>(k) >= 5.0 * tau) break;
  }
  return std::max(tau, 1.0);
}

}  // namespace altzeta::stats
