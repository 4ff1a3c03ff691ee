#include "symsq/arith.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace symsq {

namespace {

constexpr u32 kSmallPrimeLimit = 1u << 20;

u64 abs_u(i64 n) { return n < 0 ? 0 - static_cast<u64>(n) : static_cast<u64>(n); }

void require_positive(i64 n, const char* what) {
  if (n <= 0) throw std::domain_error(std::string(what) + ": argument must be >= 1");
}

}  // namespace

std::vector<u32> primes_up_to(u32 n) {
  std::vector<u32> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (u64 p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    out.push_back(static_cast<u32>(p));
    for (u64 k = p * p; k <= n; k += p) composite[k] = true;
  }
  return out;
}

const std::vector<u32>& small_primes() {
  static const std::vector<u32> primes = primes_up_to(kSmallPrimeLimit);
  return primes;
}

Factorization factor(i64 n) {
  if (n == 0) throw std::domain_error("factor: n must be nonzero");
  Factorization f;
  f.n = n;
  f.sign = n < 0 ? -1 : 1;
  u64 m = abs_u(n);
  for (u32 p : small_primes()) {
    if (static_cast<u64>(p) * p > m) break;
    if (m % p) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    f.factors.emplace_back(p, e);
  }
  // beyond the sieve: plain odd trial division (only reached for m > 2^40)
  for (u64 d = kSmallPrimeLimit + 1; d * d <= m; d += 2) {
    if (m % d) continue;
    int e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    f.factors.emplace_back(static_cast<i64>(d), e);
  }
  if (m > 1) f.factors.emplace_back(static_cast<i64>(m), 1);
  return f;
}

SquarefreeSplit squarefree_split(i64 n) {
  if (n == 0) throw std::domain_error("squarefree_split: sqf(0) is undefined");
  Factorization f = factor(n);
  i64 s = f.sign, q = 1;
  for (auto [p, e] : f.factors) {
    if (e & 1) s *= p;
    for (int i = 0; i < e / 2; ++i) q *= p;
  }
  return {s, q};
}

bool is_squarefree(i64 n) {
  if (n == 0) throw std::domain_error("is_squarefree: n must be nonzero");
  for (auto [p, e] : factor(n).factors)
    if (e > 1) return false;
  return true;
}

bool is_perfect_square(i64 n) {
  if (n < 0) return false;
  u64 r = isqrt(static_cast<u128>(n));
  return r * r == static_cast<u64>(n);
}

int mobius(i64 n) {
  require_positive(n, "mobius");
  int mu = 1;
  for (auto [p, e] : factor(n).factors) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

i64 euler_phi(i64 n) {
  require_positive(n, "euler_phi");
  i64 phi = n;
  for (auto [p, e] : factor(n).factors) phi = phi / p * (p - 1);
  return phi;
}

int omega(i64 n) {
  require_positive(n, "omega");
  return static_cast<int>(factor(n).factors.size());
}

i64 tau(i64 n) {
  require_positive(n, "tau");
  i64 t = 1;
  for (auto [p, e] : factor(n).factors) t *= e + 1;
  return t;
}

i64 tau_prime(i64 n, double L) {
  require_positive(n, "tau_prime");
  i64 count = 0;
  for (i64 d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    i64 e = n / d;
    if (static_cast<double>(d) <= L && static_cast<double>(e) <= L) count += (d == e) ? 1 : 2;
  }
  return count;
}

int jacobi(i64 a, i64 n) {
  if (n <= 0 || (n & 1) == 0) throw std::domain_error("jacobi: n must be odd and positive");
  u64 m = static_cast<u64>(n);
  i64 r = a % n;
  if (r < 0) r += n;
  u64 x = static_cast<u64>(r);
  int t = 1;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      u64 m8 = m & 7;
      if (m8 == 3 || m8 == 5) t = -t;
    }
    std::swap(x, m);
    if ((x & 3) == 3 && (m & 3) == 3) t = -t;
    x %= m;
  }
  return m == 1 ? t : 0;
}

int kronecker(i64 a, i64 n) {
  if (n <= 0) throw std::domain_error("kronecker: n must be positive");
  int t = 1;
  while ((n & 1) == 0) {
    if ((a & 1) == 0) return 0;
    i64 a8 = ((a % 8) + 8) % 8;
    if (a8 == 3 || a8 == 5) t = -t;
    n >>= 1;
  }
  return t * jacobi(a, n);
}

u64 isqrt(u128 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

u64 iroot4(u128 n) { return isqrt(isqrt(n)); }
u64 iroot8(u128 n) { return isqrt(iroot4(n)); }

std::vector<u32> spf_table(u32 n) {
  std::vector<u32> spf(static_cast<size_t>(n) + 1, 0);
  for (u64 i = 2; i <= n; ++i) {
    if (spf[i]) continue;
    for (u64 k = i; k <= n; k += i)
      if (!spf[k]) spf[k] = static_cast<u32>(i);
  }
  return spf;
}

std::vector<signed char> mobius_table(u32 n) {
  std::vector<signed char> mu(static_cast<size_t>(n) + 1, 1);
  mu[0] = 0;
  std::vector<bool> composite(static_cast<size_t>(n) + 1, false);
  for (u64 p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    for (u64 k = p; k <= n; k += p) {
      if (k > p) composite[k] = true;
      mu[k] = static_cast<signed char>(-mu[k]);
    }
    for (u64 k = p * p; k <= n; k += p * p) mu[k] = 0;
  }
  return mu;
}

std::vector<u32> phi_table(u32 n) {
  std::vector<u32> phi(static_cast<size_t>(n) + 1);
  std::iota(phi.begin(), phi.end(), 0u);
  for (u64 p = 2; p <= n; ++p) {
    if (phi[p] != p) continue;
    for (u64 k = p; k <= n; k += p) phi[k] -= phi[k] / static_cast<u32>(p);
  }
  return phi;
}

SquarefreeTable::SquarefreeTable(u64 limit) : limit_(limit), kernel_(limit + 1) {
  for (u64 m = 0; m <= limit; ++m) kernel_[m] = static_cast<u32>(m);
  u64 pmax = isqrt(limit);
  for (u32 p : primes_up_to(static_cast<u32>(pmax))) {
    u64 pp = static_cast<u64>(p) * p;
    for (u64 k = pp; k <= limit; k += pp) {
      u32 v = kernel_[k];
      while (v % pp == 0) v /= static_cast<u32>(pp);
      kernel_[k] = v;
    }
  }
}

}  // namespace symsq
