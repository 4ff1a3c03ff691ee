#pragma once

// Integer primitives: factorization, squarefree parts, multiplicative
// functions, Jacobi/Kronecker symbols and a few sieved tables.
//
// Everything takes int64. Products that can leave 64 bits (discriminants,
// height keys, squared bounds) are formed in 128-bit by the callers.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace symsq {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;
using i128 = __int128;
using u128 = unsigned __int128;

struct Factorization {
  i64 n = 1;
  int sign = 1;
  std::vector<std::pair<i64, int>> factors;  // primes ascending
};

// Throws std::domain_error for n == 0.
Factorization factor(i64 n);

struct SquarefreeSplit {
  i64 sqf;  // squarefree, same sign as n
  i64 sq;   // positive, sqf * sq^2 == n
};

// Throws std::domain_error for n == 0; callers filter zero discriminants.
SquarefreeSplit squarefree_split(i64 n);
inline i64 sqf(i64 n) { return squarefree_split(n).sqf; }

bool is_squarefree(i64 n);  // n != 0
bool is_perfect_square(i64 n);

// n >= 1, std::domain_error otherwise.
int mobius(i64 n);
i64 euler_phi(i64 n);
int omega(i64 n);
i64 tau(i64 n);

// #{d | n : d <= L and n/d <= L}
i64 tau_prime(i64 n, double L);

// n odd and positive, std::domain_error otherwise.
int jacobi(i64 a, i64 n);
// Kronecker extension to every n >= 1.
int kronecker(i64 a, i64 n);

u64 isqrt(u128 n);
u64 iroot4(u128 n);
u64 iroot8(u128 n);

// Primes below the limit, built once per process and then read-only.
const std::vector<u32>& small_primes();
std::vector<u32> primes_up_to(u32 n);

// Smallest-prime-factor table on [0, n].
std::vector<u32> spf_table(u32 n);
std::vector<signed char> mobius_table(u32 n);
std::vector<u32> phi_table(u32 n);

// sqf(m) for 1 <= m <= limit, by sieving out square factors.
class SquarefreeTable {
 public:
  explicit SquarefreeTable(u64 limit);
  u64 limit() const { return limit_; }
  u32 operator[](u64 m) const { return kernel_[m]; }
  // signed squarefree part of a nonzero d with |d| <= limit
  i64 of(i64 d) const {
    return d > 0 ? static_cast<i64>(kernel_[static_cast<u64>(d)])
                 : -static_cast<i64>(kernel_[static_cast<u64>(-d)]);
  }
  const u32* data() const { return kernel_.data(); }

 private:
  u64 limit_;
  std::vector<u32> kernel_;
};

// Visits every squarefree n in [1, limit] in increasing order, sieving in
// fixed-size segments so memory stays bounded for limits near 1e9.
template <class Visit>
void for_each_squarefree_in(u64 first, u64 last, Visit&& visit) {
  constexpr u64 kSegment = u64{1} << 18;
  if (first < 1) first = 1;
  if (first > last) return;
  const std::vector<u32> primes = primes_up_to(static_cast<u32>(isqrt(last)));
  std::vector<unsigned char> bad(kSegment);
  for (u64 lo = first; lo <= last; lo += kSegment) {
    u64 hi = lo + kSegment - 1 < last ? lo + kSegment - 1 : last;
    std::fill(bad.begin(), bad.end(), 0);
    for (u32 p : primes) {
      u64 pp = static_cast<u64>(p) * p;
      if (pp > hi) break;
      for (u64 k = (lo + pp - 1) / pp * pp; k <= hi; k += pp) bad[k - lo] = 1;
    }
    for (u64 n = lo; n <= hi; ++n)
      if (!bad[n - lo]) visit(n);
    if (hi == last) break;
  }
}

template <class Visit>
void for_each_squarefree(u64 limit, Visit&& visit) {
  for_each_squarefree_in(1, limit, std::forward<Visit>(visit));
}

}  // namespace symsq
