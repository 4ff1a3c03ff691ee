#include "symsq/lseries.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "symsq/census.hpp"
#include "symsq/points.hpp"
#include "symsq/quadfield.hpp"

namespace symsq {

namespace {

void check_limit(i64 N) {
  if (N < 1) throw std::domain_error("table limit must be >= 1");
}

RepCountTable empty_table(RepKind kind, i64 N, i64 x = 0) {
  check_limit(N);
  RepCountTable t;
  t.kind = kind;
  t.x = x;
  t.limit = N;
  t.values.assign(static_cast<size_t>(N) + 1, 0);
  return t;
}

RepCountTable two_squares(i64 N, bool coprime) {
  RepCountTable t = empty_table(coprime ? RepKind::FCoprime : RepKind::F, N);
  for (i64 u = 1; u * u < N; ++u)
    for (i64 v = 1; u * u + v * v <= N; ++v)
      if (!coprime || std::gcd(u, v) == 1) ++t.values[static_cast<size_t>(u * u + v * v)];
  return t;
}

void check_x(i64 x) {
  if (x < 1 || !is_squarefree(x)) throw std::domain_error("x must be squarefree and >= 1");
}

// n <= 2B/sqrt(x)  <=>  n^2 x <= 4 B^2
i64 fg_range(i64 x, double B) {
  const u128 four_b2 = HeightBound(B).floor_pow(2, 4);
  return static_cast<i64>(isqrt(four_b2 / static_cast<u64>(x)));
}

}  // namespace

RepCountTable F_table(i64 N) { return two_squares(N, false); }
RepCountTable F_coprime_table(i64 N) { return two_squares(N, true); }

int omega_x(i64 x) {
  if (x == 1) return 4;
  if (x == 3) return 6;
  return 2;
}

RepCountTable G_table(i64 x, i64 N) {
  check_x(x);
  RepCountTable t = empty_table(RepKind::G, N, x);
  std::vector<u64> raw(static_cast<size_t>(N) + 1, 0);
  if (x % 4 == 3) {
    const i64 M = 4 * N;
    for (i64 Y = 0; x * Y * Y <= M; ++Y)
      for (i64 C = 0; C * C + x * Y * Y <= M; ++C) {
        if ((C - Y) % 2) continue;
        const i64 v = C * C + x * Y * Y;
        if (v == 0 || v % 4) continue;
        raw[static_cast<size_t>(v / 4)] += (C ? 2 : 1) * (Y ? 2 : 1);
      }
  } else {
    for (i64 y = 0; x * y * y <= N; ++y)
      for (i64 c = 0; c * c + x * y * y <= N; ++c) {
        const i64 v = c * c + x * y * y;
        if (v == 0) continue;
        raw[static_cast<size_t>(v)] += (c ? 2 : 1) * (y ? 2 : 1);
      }
  }
  const u64 w = static_cast<u64>(omega_x(x));
  for (i64 n = 1; n <= N; ++n) {
    const u64 r = raw[static_cast<size_t>(n)];
    if (r % w) throw std::logic_error("G_table: lattice count not divisible by the unit count");
    t.values[static_cast<size_t>(n)] = r / w;
  }
  return t;
}

const char* kind_name(RepKind k) {
  switch (k) {
    case RepKind::F: return "F";
    case RepKind::FCoprime: return "F_COPRIME";
    case RepKind::G: return "G";
  }
  return "?";
}

void write_table_csv(std::ostream& out, const RepCountTable& t) {
  out << "# kind=" << kind_name(t.kind);
  if (t.kind == RepKind::G) out << " x=" << t.x;
  out << " limit=" << t.limit << "\n";
  out << "n,value\n";
  for (i64 n = 1; n <= t.limit; ++n) out << n << "," << t[n] << "\n";
}

RepCountTable read_table_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw std::invalid_argument("table: missing header line");
  std::map<std::string, std::string> meta;
  std::istringstream h(line.substr(2));
  for (std::string kv; h >> kv;) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("table: malformed header field '" + kv + "'");
    meta[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  RepCountTable t;
  const std::string kind = meta["kind"];
  if (kind == "F") t.kind = RepKind::F;
  else if (kind == "F_COPRIME") t.kind = RepKind::FCoprime;
  else if (kind == "G") t.kind = RepKind::G;
  else throw std::invalid_argument("table: unknown kind '" + kind + "'");
  if (t.kind == RepKind::G) t.x = std::stoll(meta.at("x"));
  t.limit = std::stoll(meta.at("limit"));
  check_limit(t.limit);
  t.values.assign(static_cast<size_t>(t.limit) + 1, 0);
  if (!std::getline(in, line) || line != "n,value") throw std::invalid_argument("table: missing column header");
  i64 expect = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("table: malformed row '" + line + "'");
    const i64 n = std::stoll(line.substr(0, comma));
    if (n != expect || n > t.limit) throw std::invalid_argument("table: rows out of order at n=" + std::to_string(n));
    t.values[static_cast<size_t>(n)] = std::stoull(line.substr(comma + 1));
    ++expect;
  }
  if (expect != t.limit + 1) throw std::invalid_argument("table: truncated");
  return t;
}

u64 sum_FG(i64 x, i64 X) {
  check_x(x);
  if (X < 1) return 0;
  const RepCountTable F = F_table(X), G = G_table(x, X);
  u64 s = 0;
  for (i64 n = 1; n <= X; ++n) s += F[n] * G[n];
  return s;
}

SxInequality inequality_check_Sx(i64 x, double B) {
  if (x < 2) throw std::domain_error("inequality_check_Sx: x must be >= 2");
  check_x(x);
  SxInequality out;
  out.x = x;
  out.B = B;
  out.sx = count_set(SetId::Sx, B, x).count;

  // quadruples matched through the common value n = a^2 + b^2 = c^2 + x y^2
  const i64 R = static_cast<i64>(iroot4(HeightBound(B).floor_B2() / static_cast<u64>(x)));
  const i64 nmax = 2 * R * R;
  std::vector<u64> ab(static_cast<size_t>(nmax) + 1, 0), cy(static_cast<size_t>(nmax) + 1, 0);
  for (i64 a = -R; a <= R; ++a)
    for (i64 b = -R; b <= R; ++b) ++ab[static_cast<size_t>(a * a + b * b)];
  for (i64 c = -R; c <= R; ++c)
    for (i64 y = 1; c * c + x * y * y <= nmax; ++y) ++cy[static_cast<size_t>(c * c + x * y * y)];
  for (i64 n = 0; n <= nmax; ++n) out.quadruples += ab[static_cast<size_t>(n)] * cy[static_cast<size_t>(n)];

  out.sum_fg = sum_FG(x, fg_range(x, B));
  out.envelope = 4 * static_cast<u64>(omega_x(x)) * out.sum_fg;
  return out;
}

TxEnvelope sum_FcoprimeG_mod8(i64 x, double B) {
  check_x(x);
  if (x < 2 || x % 2) throw std::domain_error("sum_FcoprimeG_mod8: x must be even squarefree >= 2");
  TxEnvelope out;
  const i64 N = fg_range(x, B);
  if (N >= 1) {
    const RepCountTable Fc = F_coprime_table(N), G = G_table(x, N);
    for (i64 n = 5; n <= N; n += 8) out.twice_half_sum += Fc[n] * G[n];
  }
  out.tx_count = count_set(SetId::Tx, B, x).count;
  const i64 R = static_cast<i64>(iroot4(HeightBound(B).floor_B2() / static_cast<u64>(x)));
  for (i64 a = -R; a <= R; ++a)
    for (i64 b = -R; b <= R; ++b) {
      if (std::gcd(a, b) != 1 || (a * a + b * b) % 8 != 5) continue;
      if ((a % 2 == 0) == (b % 2 == 0)) ++out.parity_failures;
    }
  return out;
}

SplitType split_type(i64 x, i64 p) {
  check_x(x);
  if (p == 2) return SplitType::Two;
  const bool gaussian_split = p % 4 == 1;
  const int k = kronecker(fundamental_discriminant(-x), p);
  if (k == 0) return gaussian_split ? SplitType::P1Ram : SplitType::P0Ram;
  if (k == 1) return gaussian_split ? SplitType::P11 : SplitType::P01;
  return gaussian_split ? SplitType::P10 : SplitType::P00;
}

double local_factor(SplitType type, i64 x, double t) {
  const double t2 = t * t;
  switch (type) {
    case SplitType::P11: return (1 + t) / ((1 - t) * (1 - t) * (1 - t));  // sum (k+1)^2 t^k
    case SplitType::P10:
    case SplitType::P01: return (1 + t2) / ((1 - t2) * (1 - t2));  // sum (2k+1) t^2k
    case SplitType::P00: return 1 / (1 - t2);
    case SplitType::P1Ram: return 1 / ((1 - t) * (1 - t));
    case SplitType::P0Ram: return 1 / (1 - t2);
    case SplitType::Two: {
      // 2 ramifies in Q(i); its behaviour in K decides the ideal count a_K(2^k)
      const int k = kronecker(fundamental_discriminant(-x), 2);
      if (k == 1) return 1 / ((1 - t) * (1 - t));
      if (k == 0) return 1 / (1 - t);
      return 1 / (1 - t2);
    }
  }
  return 1;
}

double euler_product_trivial(i64 x, double s, i64 P) {
  check_x(x);
  if (!(s > 1)) throw std::domain_error("euler_product_trivial: s must be > 1");
  if (P < 2) throw std::domain_error("euler_product_trivial: prime cutoff must be >= 2");
  long double prod = 1;
  for (u32 p : primes_up_to(static_cast<u32>(P)))
    prod *= local_factor(split_type(x, p), x, std::pow(static_cast<double>(p), -s));
  return static_cast<double>(prod);
}

double residue_trivial(i64 x, i64 P) {
  check_x(x);
  if (x < 2) throw std::domain_error("residue_trivial: x must be >= 2");
  const i64 D = fundamental_discriminant(-x);
  const double pi = std::numbers::pi;
  const double L4 = pi / 4;
  const double LD = 2 * pi * static_cast<double>(class_number_imaginary(D)) /
                    (unit_count(D) * std::sqrt(static_cast<double>(-D)));
  // chi_-4 chi_D = (-4D / .) = chi_D' away from the primes dividing f, -4D = D' f^2
  const i64 Dp = fundamental_discriminant(sqf(-4 * D));
  const i64 f = isqrt(static_cast<u64>(-4 * D / Dp));
  double Lpsi = l1_real_fast(Dp);
  for (const auto& [p, e] : factor(f).factors) Lpsi *= 1 - kronecker(Dp, p) / static_cast<double>(p);

  long double corr = 1;
  for (u32 p : primes_up_to(static_cast<u32>(P))) {
    const double t = 1.0 / p;
    const int alpha = kronecker(-4, p), beta = kronecker(D, p);
    const double inv = (1 - t) * (1 - alpha * t) * (1 - beta * t) * (1 - alpha * beta * t);
    corr *= local_factor(split_type(x, p), x, t) * inv;
  }
  return static_cast<double>(L4 * LD * Lpsi * corr);
}

double dirichlet_sum_FG(i64 x, double s, i64 N) {
  const RepCountTable F = F_table(N), G = G_table(x, N);
  long double sum = 0;
  for (i64 n = N; n >= 1; --n)
    if (F[n] && G[n]) sum += F[n] * G[n] / std::pow(static_cast<long double>(n), s);
  return static_cast<double>(sum);
}

double dirichlet_sum_r2G(i64 x, double s, i64 N) {
  const RepCountTable F = F_table(N), G = G_table(x, N);
  long double sum = 0;
  for (i64 n = N; n >= 1; --n) {
    // r2(n)/4 = F(n) + [n a square]
    const u64 r = F[n] + (is_perfect_square(n) ? 1 : 0);
    if (r && G[n]) sum += r * G[n] / std::pow(static_cast<long double>(n), s);
  }
  return static_cast<double>(sum);
}

namespace {

// L(chi, 1) for the primitive real character of Q(sqrt m), m > 0 not a square
double real_l1(i64 m) { return l1_real_fast(fundamental_discriminant(sqf(m))); }

}  // namespace

double ayoub_sum(i64 X, i64 d) {
  if (X < 2 || d < 1) throw std::domain_error("ayoub_sum: need X >= 2 and d >= 1");
  double s = 0;
  for (i64 xp = 2; xp <= X; ++xp) {
    if (!is_squarefree(xp) || is_perfect_square(d * xp)) continue;
    s += real_l1(d * xp) / static_cast<double>(xp);
  }
  return s;
}

std::vector<AyoubRow> ayoub_growth_scan(const std::vector<i64>& d_list, const std::vector<i64>& X_list) {
  std::vector<i64> Xs = X_list;
  std::sort(Xs.begin(), Xs.end());
  if (Xs.empty()) return {};
  if (Xs.front() < 2) throw std::domain_error("ayoub_growth_scan: X must be >= 2");
  const std::vector<signed char> mu = mobius_table(static_cast<u32>(Xs.back()));
  std::vector<AyoubRow> rows;
  for (i64 d : d_list) {
    if (d < 1) throw std::domain_error("ayoub_growth_scan: d must be >= 1");
    double s = 0;
    size_t next = 0;
    for (i64 xp = 2; xp <= Xs.back() && next < Xs.size(); ++xp) {
      if (mu[static_cast<size_t>(xp)] && !is_perfect_square(d * xp)) s += real_l1(d * xp) / static_cast<double>(xp);
      while (next < Xs.size() && Xs[next] == xp) {
        AyoubRow r;
        r.d = d;
        r.X = xp;
        r.sum = s;
        r.scale = std::log(static_cast<double>(xp)) +
                  std::sqrt(static_cast<double>(d)) * std::log(static_cast<double>(std::max<i64>(d, 2)));
        r.ratio = r.sum / r.scale;
        rows.push_back(r);
        ++next;
      }
    }
  }
  return rows;
}

PolyaVinogradov polya_vinogradov_check(i64 n, i64 K) {
  if (n < 3) throw std::domain_error("polya_vinogradov_check: n must be >= 3");
  if (is_perfect_square(n)) throw std::domain_error("polya_vinogradov_check: n must not be a square");
  if (K < 1) throw std::domain_error("polya_vinogradov_check: K must be >= 1");
  // m -> (m/n) is completely multiplicative with period n (n odd) or 4n
  const i64 period = n % 2 ? n : 4 * n;
  const i64 span = std::min(K, period);
  static const std::vector<u32> shared_spf = spf_table(u32{1} << 17);
  const std::vector<u32> own_spf = span < (i64{1} << 17) ? std::vector<u32>{} : spf_table(static_cast<u32>(span));
  const std::vector<u32>& spf = own_spf.empty() ? shared_spf : own_spf;
  std::vector<signed char> chi(static_cast<size_t>(span) + 1, 0);
  if (span >= 1) chi[1] = 1;
  for (i64 m = 2; m <= span; ++m) {
    const i64 p = spf[static_cast<size_t>(m)];
    chi[static_cast<size_t>(m)] = static_cast<signed char>(
        p == m ? kronecker(m, n) : chi[static_cast<size_t>(p)] * chi[static_cast<size_t>(m / p)]);
  }
  PolyaVinogradov out;
  out.n = n;
  out.bound = std::sqrt(static_cast<double>(n)) * std::log(static_cast<double>(n));
  i64 partial = 0;
  for (i64 m = 1; m <= span; ++m) {
    partial += chi[static_cast<size_t>(m)];
    out.max_partial = std::max(out.max_partial, partial < 0 ? -partial : partial);
  }
  if (K > period && partial != 0) {
    // a drifting period sum; walk the remaining terms explicitly
    for (i64 m = period + 1; m <= K; ++m) {
      partial += chi[static_cast<size_t>((m - 1) % period + 1)];
      out.max_partial = std::max(out.max_partial, partial < 0 ? -partial : partial);
    }
  }
  return out;
}

}  // namespace symsq
