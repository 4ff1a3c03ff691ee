#include "symsq/tauber.hpp"

#include <algorithm>
#include <cmath>

namespace symsq {

void DirichletData::validate() const {
  if (lambdas.size() != coeffs.size()) throw std::invalid_argument("DirichletData: lambdas and coeffs differ in length");
  for (size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0)) throw std::invalid_argument("DirichletData: lambdas must be positive");
    if (i && !(lambdas[i] > lambdas[i - 1])) throw std::invalid_argument("DirichletData: lambdas must increase");
    if (!(coeffs[i] >= 0)) throw std::invalid_argument("DirichletData: coefficients must be nonnegative");
  }
  if (!(pole.a > 0) || pole.b < 1 || !(pole.theta > 0)) throw std::invalid_argument("DirichletData: bad pole data");
}

DirichletData DirichletData::from_table(const RepCountTable& t, Pole pole) {
  DirichletData d;
  d.pole = pole;
  d.lambdas.reserve(static_cast<size_t>(t.limit));
  d.coeffs.reserve(static_cast<size_t>(t.limit));
  for (i64 n = 1; n <= t.limit; ++n) {
    d.lambdas.push_back(static_cast<double>(n));
    d.coeffs.push_back(static_cast<double>(t[n]));
  }
  return d;
}

namespace {

long double phi_long(const DirichletData& data, double X, int k) {
  if (!(X > 0)) throw std::domain_error("phi_k: X must be positive");
  if (k < 0) throw std::domain_error("phi_k: k must be >= 0");
  const auto end = std::upper_bound(data.lambdas.begin(), data.lambdas.end(), X);
  const size_t n = static_cast<size_t>(end - data.lambdas.begin());
  long double s = 0;
  const long double lx = std::log(static_cast<long double>(X));
  for (size_t i = 0; i < n; ++i) {
    if (data.coeffs[i] == 0) continue;
    if (k == 0) {
      s += data.coeffs[i];
      continue;
    }
    const long double u = lx - std::log(static_cast<long double>(data.lambdas[i]));
    s += data.coeffs[i] * std::pow(std::max(u, 0.0L), k);
  }
  return s;
}

}  // namespace

double phi_k(const DirichletData& data, double X, int k) { return static_cast<double>(phi_long(data, X, k)); }

Sandwich sandwich_check(const DirichletData& data, double X, double eta, int k) {
  if (!(eta > 0 && eta < 1)) throw std::domain_error("sandwich_check: eta must be in (0, 1)");
  if (k < 1) throw std::domain_error("sandwich_check: k must be >= 1");
  Sandwich s;
  const long double here = phi_long(data, X, k);
  s.lhs = (phi_long(data, X * (1 - eta), k) - here) / std::log1p(static_cast<long double>(-eta));
  s.mid = k * phi_long(data, X, k - 1);
  s.rhs = (phi_long(data, X * (1 + eta), k) - here) / std::log1p(static_cast<long double>(eta));
  const long double slack = 1e-12L * std::max({std::fabs(s.lhs), std::fabs(s.mid), std::fabs(s.rhs), 1.0L});
  s.ok = s.lhs <= s.mid + slack && s.mid <= s.rhs + slack;
  return s;
}

LeadingFit leading_fit(const DirichletData& data, const std::vector<double>& X_grid) {
  if (data.pole.b != 1) throw Unsupported("leading_fit: poles of order b > 1 are not supported");
  for (size_t i = 1; i < X_grid.size(); ++i)
    if (!(X_grid[i] > X_grid[i - 1])) throw std::invalid_argument("leading_fit: X grid must increase");
  LeadingFit fit;
  const double a = data.pole.a, theta = data.pole.theta;
  for (double X : X_grid) {
    const double N = phi_k(data, X, 0);
    const double th = a * N / std::pow(X, a);
    fit.X.push_back(X);
    fit.theta_hat.push_back(th);
    fit.rel_err.push_back(std::fabs(th - theta) / theta);
  }
  return fit;
}

}  // namespace symsq
