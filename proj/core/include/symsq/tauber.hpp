#pragma once

// Weighted partial sums phi_k(X) = sum_{lambda_n <= X} c_n log(X/lambda_n)^k,
// the difference-quotient sandwich around k phi_{k-1}, and leading-term fits
// N(X) ~ Theta X^a / (a (b-1)!) for simple poles.

#include <optional>
#include <stdexcept>
#include <vector>

#include "symsq/lseries.hpp"

namespace symsq {

struct Pole {
  double a = 1;
  int b = 1;
  double theta = 1;
};

struct DirichletData {
  std::vector<double> lambdas;  // strictly increasing, positive
  std::vector<double> coeffs;   // nonnegative
  Pole pole;
  // growth constants of the analytic hypothesis; carried, never used
  std::optional<double> kappa;
  std::optional<double> r;

  // throws std::invalid_argument when an invariant fails
  void validate() const;
  // lambda_n = n, c_n = table[n]
  static DirichletData from_table(const RepCountTable& t, Pole pole);
};

struct Unsupported : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

double phi_k(const DirichletData& data, double X, int k);

struct Sandwich {
  long double lhs = 0, mid = 0, rhs = 0;
  bool ok = false;
};
// lhs = (phi_k(X(1-eta)) - phi_k(X))/log(1-eta), mid = k phi_{k-1}(X),
// rhs = (phi_k(X(1+eta)) - phi_k(X))/log(1+eta). Compared with a relative
// slack of 1e-12 for rounding in the logarithms.
Sandwich sandwich_check(const DirichletData& data, double X, double eta, int k);

struct LeadingFit {
  std::vector<double> X;
  std::vector<double> theta_hat;  // a N(X) / X^a
  std::vector<double> rel_err;    // |theta_hat - theta| / theta
};
// Simple poles only; b > 1 throws Unsupported.
LeadingFit leading_fit(const DirichletData& data, const std::vector<double>& X_grid);

}  // namespace symsq
