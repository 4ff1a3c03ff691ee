#pragma once

// Quadratic etale algebras over Q: discriminants, unit counts, class numbers
// of imaginary fields, and truncated L(chi, 1) values.

#include <optional>
#include <vector>

#include "symsq/arith.hpp"

namespace symsq {

struct QuadExt {
  i64 m = 1;  // squarefree generator; 1 encodes Q+Q
  i64 D = 1;  // fundamental discriminant; 1 for Q+Q
  int w = 2;  // units of the maximal order (2 is a placeholder when D > 0)
  std::optional<i64> h;  // imaginary fields only

  static QuadExt split() { return {}; }
  // m squarefree and nonzero; fills h when D < 0
  static QuadExt from_generator(i64 m);
  bool is_split() const { return m == 1; }
};

// m squarefree, m != 0. Returns m if m = 1 mod 4, else 4m (and 1 for m = 1).
i64 fundamental_discriminant(i64 m);
bool is_fundamental_discriminant(i64 D);
int unit_count(i64 D);

// Reduced primitive forms of discriminant D < 0, D fundamental.
i64 class_number_imaginary(i64 D);

struct LValue {
  double value = 0;
  double tail_bound = 0;  // |L - value| <= tail_bound when convergent
  i64 terms = 0;          // N rounded up to whole periods
  i64 period = 0;
  bool convergent = true;
};

// sum_{n <= N} (disc/n)/n for a non-square discriminant disc = 0, 1 mod 4,
// summed one full period of the character at a time.
LValue kronecker_L1(i64 disc, i64 N);

// L(chi, 1) for the character attached to x: the Kronecker symbol of the
// fundamental discriminant of Q(sqrt x). It agrees with the Jacobi symbol
// (x/n) at odd n. Square x gives the principal character and is reported
// as not convergent.
LValue dirichlet_L1(i64 x, i64 N);

// Exact finite formula for primitive chi_D (D fundamental, D != 1):
// D < 0: -pi |D|^{-3/2} sum a chi(a); D > 0: -D^{-1/2} sum chi(a) log sin(pi a/D).
double l1_closed_form(i64 D);
// D > 1 fundamental: sum over n of chi(n) (erfc(n sqrt(pi/D))/n + E1(pi n^2/D)/sqrt D),
// truncated once exp(-pi n^2/D) drops below 1e-18. About 3.5 sqrt(D) terms.
double l1_real_fast(i64 D);

// chi(n) = (disc/n) for n in [0, |disc|).
std::vector<signed char> kronecker_period(i64 disc);

// Fundamental discriminants D != 1 with |D| <= T, both signs. Counted with
// Moebius sums over odd d <= sqrt(T).
u64 count_quadratic_fields(u64 T);
u64 count_quadratic_fields(double T);
// Same count by sieving every squarefree m with |m| <= T.
u64 count_quadratic_fields_enumerated(u64 T);

std::vector<i64> fundamental_discriminants_in(i64 lo, i64 hi);

struct CnfCheck {
  double lhs = 0;
  double rhs = 0;
  double abs_err = 0;
  double tail_bound = 0;
  i64 h = 0;
  int w = 0;
};

// lhs = truncated L(chi_D, 1); rhs = 2 pi h / (w sqrt|D|).
CnfCheck class_number_formula_check(i64 D, i64 N);

}  // namespace symsq
