#pragma once

// Representation counts F, F', G_x, their summatory products, the
// trivial-character Euler product, and the character-sum experiments.

#include <iosfwd>
#include <string>
#include <vector>

#include "symsq/arith.hpp"

namespace symsq {

enum class RepKind { F, FCoprime, G };

struct RepCountTable {
  RepKind kind = RepKind::F;
  i64 x = 0;  // G only
  i64 limit = 0;
  std::vector<u64> values;  // values[n] for 0 <= n <= limit; values[0] = 0
  u64 operator[](i64 n) const { return values[static_cast<size_t>(n)]; }
};

// F(n): ordered (u, v), u, v >= 1, u^2 + v^2 = n. F'(n) also needs gcd(u, v) = 1.
RepCountTable F_table(i64 N);
RepCountTable F_coprime_table(i64 N);

// Units of the maximal order of Q(sqrt -x): 4 for x = 1, 6 for x = 3, else 2.
int omega_x(i64 x);

// Principal ideals of norm n in the maximal order of Q(sqrt -x), x squarefree
// >= 1, counted as lattice points divided by the unit count. For x = 3 mod 4
// the order is Z[(1 + sqrt -x)/2]: count (C, Y) with C = Y mod 2 and
// C^2 + x Y^2 = 4n. Otherwise count (c, y) with c^2 + x y^2 = n.
RepCountTable G_table(i64 x, i64 N);

void write_table_csv(std::ostream& out, const RepCountTable& t);
RepCountTable read_table_csv(std::istream& in);
const char* kind_name(RepKind k);

u64 sum_FG(i64 x, i64 X);

struct SxInequality {
  i64 x = 0;
  double B = 0;
  u64 sx = 0;          // |S_x| from the census
  u64 quadruples = 0;  // #{(a, b, c, y) : y >= 1, a^2 + b^2 = c^2 + x y^2, max^4 x <= B^2}
  u64 sum_fg = 0;      // sum_{n <= 2B/sqrt x} F(n) G_x(n)
  u64 envelope = 0;    // 4 omega_x sum_fg
  bool identity_ok() const { return sx == quadruples; }
  bool bound_ok() const { return sx <= envelope; }
};
// x squarefree >= 2.
SxInequality inequality_check_Sx(i64 x, double B);

struct TxEnvelope {
  u64 twice_half_sum = 0;  // sum over n = 5 mod 8, n <= 2B/sqrt x, of F'(n) G_x(n)
  u64 tx_count = 0;
  u64 parity_failures = 0;  // coprime (a, b) with a^2 + b^2 = 5 mod 8 and a, b not of opposite parity
  double half_sum() const { return static_cast<double>(twice_half_sum) / 2; }
  double gap() const { return half_sum() - static_cast<double>(tx_count); }
};
// x even squarefree >= 2.
TxEnvelope sum_FcoprimeG_mod8(i64 x, double B);

// Local factor types of a prime p relative to Q(i) and K = Q(sqrt -x).
enum class SplitType { P11, P10, P01, P00, P1Ram, P0Ram, Two };
SplitType split_type(i64 x, i64 p);
// Trivial-character local factor at p (p = 2 gives the Z_2 factor), t = p^-s.
double local_factor(SplitType type, i64 x, double t);

// Product of the trivial-character local factors over p <= P. This is
// sum_n (r2(n)/4) a_K(n) n^-s with a_K the ideal count of K.
double euler_product_trivial(i64 x, double s, i64 P);

// Residue at s = 1 of the product: L(chi_-4, 1) L(chi_D, 1) L(chi_-4D, 1)
// times the absolutely convergent correction over p <= P.
double residue_trivial(i64 x, i64 P);

// sum_{n <= N} c(n) / n^s for the two coefficient choices.
double dirichlet_sum_FG(i64 x, double s, i64 N);
double dirichlet_sum_r2G(i64 x, double s, i64 N);

// sum_{2 <= x' <= X} |mu(x')| L(chi_{dx'}, 1)/x', chi the primitive real
// character of Q(sqrt dx'). Terms with dx' a square are skipped.
double ayoub_sum(i64 X, i64 d);

struct AyoubRow {
  i64 d = 0;
  i64 X = 0;
  double sum = 0;
  double scale = 0;  // log X + sqrt(d) log max(d, 2)
  double ratio = 0;
};
std::vector<AyoubRow> ayoub_growth_scan(const std::vector<i64>& d_list, const std::vector<i64>& X_list);

struct PolyaVinogradov {
  i64 n = 0;
  i64 max_partial = 0;
  double bound = 0;  // sqrt(n) log n
  bool ok() const { return static_cast<double>(max_partial) <= bound; }
};
// max over k <= K of |sum_{m <= k} (m/n)|; std::domain_error for square n.
PolyaVinogradov polya_vinogradov_check(i64 n, i64 K);

}  // namespace symsq
