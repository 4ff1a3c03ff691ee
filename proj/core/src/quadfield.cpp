#include "symsq/quadfield.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace symsq {

namespace {

i64 mod4(i64 m) { return ((m % 4) + 4) % 4; }

// #{1 <= j <= M : j = r mod 4}, r in {1, 2, 3}
u64 residue_count(u64 M, u64 r) { return M >= r ? (M - r) / 4 + 1 : 0; }

// #{1 <= k <= n : k squarefree, k = r mod 4} for r in {1, 2, 3}. Only odd d
// contribute to the Moebius sum because d^2 = 0 mod 4 for even d, which never
// meets a class r != 0; for odd d, d^2 = 1 mod 4 so j*d^2 = r iff j = r.
u64 squarefree_in_class(u64 n, u64 r, const std::vector<signed char>& mu) {
  i128 s = 0;
  for (u64 d = 1; d * d <= n; d += 2) {
    if (mu[d] == 0) continue;
    s += mu[d] * static_cast<i128>(residue_count(n / (d * d), r));
  }
  return static_cast<u64>(s);
}

u64 count_fields_with(u64 T, const std::vector<signed char>& mu) {
  if (T == 0) return 0;
  // D = m for m = 1 mod 4 (m != 1); D = 4m otherwise. Negative m = -k:
  // -k = 1 mod 4 iff k = 3 mod 4, and -k = 2, 3 mod 4 iff k = 2, 1 mod 4.
  u64 q = T / 4;
  return squarefree_in_class(T, 1, mu) - 1 + squarefree_in_class(T, 3, mu) +
         2 * squarefree_in_class(q, 2, mu) + squarefree_in_class(q, 3, mu) +
         squarefree_in_class(q, 1, mu);
}

}  // namespace

i64 fundamental_discriminant(i64 m) {
  if (m == 0 || !is_squarefree(m))
    throw std::domain_error("fundamental_discriminant: m must be squarefree and nonzero");
  if (m == 1) return 1;
  return mod4(m) == 1 ? m : 4 * m;
}

bool is_fundamental_discriminant(i64 D) {
  if (D == 0 || D == 1) return false;
  if (mod4(D) == 1) return is_squarefree(D);
  if (mod4(D) != 0) return false;
  i64 m = D / 4;
  return (mod4(m) == 2 || mod4(m) == 3) && is_squarefree(m);
}

int unit_count(i64 D) {
  if (D == -4) return 4;
  if (D == -3) return 6;
  return 2;
}

QuadExt QuadExt::from_generator(i64 m) {
  QuadExt K;
  K.m = m;
  K.D = fundamental_discriminant(m);
  K.w = unit_count(K.D);
  if (K.D < 0) K.h = class_number_imaginary(K.D);
  return K;
}

i64 class_number_imaginary(i64 D) {
  if (D >= 0 || !is_fundamental_discriminant(D))
    throw std::domain_error("class_number_imaginary: D must be a negative fundamental discriminant");
  const i64 N = -D;
  i64 h = 0;
  // |B| <= A <= C gives N = 4AC - B^2 >= 3A^2
  for (i64 A = 1; 3 * A * A <= N; ++A) {
    for (i64 B = -A + 1; B <= A; ++B) {
      i64 num = B * B + N;
      if (num % (4 * A)) continue;
      i64 C = num / (4 * A);
      if (C < A) continue;
      if (C == A && B < 0) continue;
      if (std::gcd(std::gcd(A, B < 0 ? -B : B), C) != 1) continue;
      ++h;
    }
  }
  return h;
}

std::vector<signed char> kronecker_period(i64 disc) {
  i64 q = disc < 0 ? -disc : disc;
  if (q < 1) throw std::domain_error("kronecker_period: disc must be nonzero");
  std::vector<signed char> chi(static_cast<size_t>(q), 0);
  for (i64 n = 1; n < q; ++n) chi[static_cast<size_t>(n)] = static_cast<signed char>(kronecker(disc, n));
  if (q == 1) chi[0] = 1;
  return chi;
}

LValue kronecker_L1(i64 disc, i64 N) {
  if (N < 1) throw std::domain_error("kronecker_L1: N must be >= 1");
  if (mod4(disc) > 1) throw std::domain_error("kronecker_L1: disc must be 0 or 1 mod 4");
  LValue out;
  const i64 q = disc < 0 ? -disc : disc;
  out.period = q;
  if (is_perfect_square(disc)) {
    // principal character: the partial sums are harmonic and diverge
    long double s = 0;
    for (i64 n = 1; n <= N; ++n)
      if (std::gcd(n, disc) == 1) s += 1.0L / n;
    out.value = static_cast<double>(s);
    out.terms = N;
    out.convergent = false;
    out.tail_bound = std::numeric_limits<double>::infinity();
    return out;
  }

  const std::vector<signed char> chi = kronecker_period(disc);
  std::vector<std::pair<i64, int>> support;
  i64 partial = 0, peak = 0;
  for (i64 j = 1; j <= q; ++j) {
    int c = chi[static_cast<size_t>(j % q)];
    if (c) support.emplace_back(j, c);
    partial += c;
    peak = std::max(peak, partial < 0 ? -partial : partial);
  }
  if (partial != 0) throw std::logic_error("kronecker_L1: character sum over a period is nonzero");

  const i64 blocks = (N + q - 1) / q;
  long double total = 0;
  for (i64 k = 0; k < blocks; ++k) {
    const long double base = static_cast<long double>(k) * q;
    long double block = 0;
    for (auto [j, c] : support) block += c / (base + j);
    total += block;
  }
  out.terms = blocks * q;
  out.value = static_cast<double>(total);
  // Abel summation: |sum_{n > M} chi(n)/n| <= 2 max|S| / (M + 1)
  out.tail_bound = 2.0 * static_cast<double>(peak) / static_cast<double>(out.terms + 1);
  return out;
}

LValue dirichlet_L1(i64 x, i64 N) {
  if (x == 0) throw std::domain_error("dirichlet_L1: x must be nonzero");
  if (is_perfect_square(x)) return kronecker_L1(1, N);
  return kronecker_L1(fundamental_discriminant(sqf(x)), N);
}

double l1_closed_form(i64 D) {
  if (!is_fundamental_discriminant(D)) throw std::domain_error("l1_closed_form: D must be fundamental");
  const std::vector<signed char> chi = kronecker_period(D);
  const i64 q = D < 0 ? -D : D;
  const long double pi = std::numbers::pi_v<long double>;
  long double s = 0;
  if (D < 0) {
    for (i64 a = 1; a < q; ++a) s += chi[static_cast<size_t>(a)] * static_cast<long double>(a);
    return static_cast<double>(-pi * s / (q * std::sqrt(static_cast<long double>(q))));
  }
  // even character: chi(q - a) = chi(a), so fold the sum in half
  for (i64 a = 1; 2 * a < q; ++a) {
    int c = chi[static_cast<size_t>(a)];
    if (c) s += 2 * c * std::log(std::sin(pi * a / q));
  }
  return static_cast<double>(-s / std::sqrt(static_cast<long double>(q)));
}

double l1_real_fast(i64 D) {
  if (D <= 1 || !is_fundamental_discriminant(D))
    throw std::domain_error("l1_real_fast: D must be a positive fundamental discriminant");
  const double q = static_cast<double>(D);
  const double pi = std::numbers::pi;
  const double rq = std::sqrt(q);
  double s = 0;
  for (i64 n = 1;; ++n) {
    const double a = pi * static_cast<double>(n) * static_cast<double>(n) / q;
    if (a > 41.5) break;  // e^-a < 1e-18
    const int c = kronecker(D, n);
    if (!c) continue;
    const double e1 = -std::expint(-a);  // E1(a) = -Ei(-a)
    s += c * (std::erfc(std::sqrt(a)) / static_cast<double>(n) + e1 / rq);
  }
  return s;
}

u64 count_quadratic_fields(u64 T) {
  return count_fields_with(T, mobius_table(static_cast<u32>(isqrt(T) + 1)));
}

u64 count_quadratic_fields(double T) {
  if (!(T >= 0)) throw std::domain_error("count_quadratic_fields: T must be nonnegative");
  return count_quadratic_fields(static_cast<u64>(std::floor(T)));
}

u64 count_quadratic_fields_enumerated(u64 T) {
  u64 count = 0;
  for_each_squarefree(T, [&](u64 n) {
    // m = n
    if (n % 4 == 1) count += (n != 1);
    else if (4 * n <= T) ++count;
    // m = -n
    if (n % 4 == 3) ++count;
    else if (4 * n <= T) ++count;
  });
  return count;
}

std::vector<i64> fundamental_discriminants_in(i64 lo, i64 hi) {
  std::vector<i64> out;
  for (i64 D = lo; D <= hi; ++D)
    if (is_fundamental_discriminant(D)) out.push_back(D);
  return out;
}

CnfCheck class_number_formula_check(i64 D, i64 N) {
  if (D >= 0 || !is_fundamental_discriminant(D))
    throw std::domain_error("class_number_formula_check: D must be a negative fundamental discriminant");
  CnfCheck c;
  LValue L = kronecker_L1(D, N);
  c.lhs = L.value;
  c.tail_bound = L.tail_bound;
  c.h = class_number_imaginary(D);
  c.w = unit_count(D);
  c.rhs = 2 * std::numbers::pi * static_cast<double>(c.h) / (c.w * std::sqrt(static_cast<double>(-D)));
  c.abs_err = std::abs(c.lhs - c.rhs);
  return c;
}

}  // namespace symsq
