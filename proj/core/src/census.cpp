#include "symsq/census.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "census_detail.hpp"

namespace symsq {

namespace {

constexpr u128 kU128Max = ~u128{0};

u128 mul_sat(u128 x, u128 y) {
  if (x != 0 && y > kU128Max / x) return kU128Max;
  return x * y;
}

u128 pow_sat(u128 x, int k) {
  u128 r = 1;
  for (int i = 0; i < k; ++i) r = mul_sat(r, x);
  return r;
}

void check_bound(double B) {
  if (!std::isfinite(B) || B < 1) throw std::domain_error("height bound must be finite and >= 1");
}

// #{K : |D_K| <= t}, K a quadratic field or Q+Q
u64 algebras_up_to(u64 t) { return t == 0 ? 0 : 1 + count_quadratic_fields(t); }

}  // namespace

const char* set_name(SetId id) {
  switch (id) {
    case SetId::Diag: return "DIAG";
    case SetId::Split: return "SPLIT";
    case SetId::NonsplitExact: return "NONSPLIT_EXACT";
    case SetId::NonsplitProxy: return "NONSPLIT_PROXY";
    case SetId::S: return "S";
    case SetId::Sx: return "S_X";
    case SetId::Sy: return "S_Y";
    case SetId::SxPrime: return "SX_PRIME";
    case SetId::SyPrime: return "SY_PRIME";
    case SetId::Ry: return "R_Y";
    case SetId::T: return "T";
    case SetId::Tx: return "T_X";
  }
  return "?";
}

std::optional<SetId> parse_set_id(std::string_view name) {
  static constexpr SetId all[] = {SetId::Diag, SetId::Split, SetId::NonsplitExact, SetId::NonsplitProxy,
                                  SetId::S,    SetId::Sx,    SetId::Sy,            SetId::SxPrime,
                                  SetId::SyPrime, SetId::Ry, SetId::T,             SetId::Tx};
  for (SetId id : all)
    if (name == set_name(id)) return id;
  return std::nullopt;
}

bool set_takes_param(SetId id) {
  switch (id) {
    case SetId::Sx:
    case SetId::Sy:
    case SetId::SxPrime:
    case SetId::SyPrime:
    case SetId::Ry:
    case SetId::Tx: return true;
    default: return false;
  }
}

std::vector<ProjRational> points_of_height(i64 h) {
  if (h < 1) throw std::domain_error("points_of_height: h must be >= 1");
  std::vector<ProjRational> out;
  if (h == 1) {
    out = {{-1, 1}, {0, 1}, {1, 0}, {1, 1}};
  } else {
    for (i64 p = -(h - 1); p <= h - 1; ++p)
      if (std::gcd(p, h) == 1) out.push_back({p, h});
    for (i64 q = 1; q < h; ++q)
      if (std::gcd(q, h) == 1) {
        out.push_back({h, q});
        out.push_back({-h, q});
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CountReport count_diagonal(double B, Method method, const ExecPolicy& policy) {
  check_bound(B);
  const auto t0 = detail::Clock::now();
  const HeightBound bound(B);
  // H(r)^8 |D| <= floor(B^2); |D| >= 1 caps H(r) at iroot8(floor(B^2))
  const u128 T = bound.floor_B2();
  const u64 H = iroot8(T);
  CountReport rep;
  rep.set = SetId::Diag;
  rep.B = B;
  rep.partitions = policy.partitions;

  const int P = policy.partitions;
  std::vector<u64> part(static_cast<size_t>(P), 0);

  if (method == Method::Formula) {
    const std::vector<u32> phi = phi_table(static_cast<u32>(H));
    run_partitions(policy, [&](int p) {
      u64 s = 0;
      for (u64 h = 1 + static_cast<u64>(p); h <= H; h += static_cast<u64>(P))
        s += 4 * static_cast<u64>(phi[h]) * algebras_up_to(static_cast<u64>(T / pow_sat(h, 8)));
      part[static_cast<size_t>(p)] = s;
    });
  } else {
    // r side: explicit points, tallied by height
    std::vector<u64> upto(H + 1, 0);
    for (u64 h = 1; h <= H; ++h) upto[h] = upto[h - 1] + points_of_height(static_cast<i64>(h)).size();
    std::vector<u64> thresholds(H + 2, 0);  // thresholds[h] = floor(T / h^8)
    for (u64 h = 1; h <= H; ++h) thresholds[h] = static_cast<u64>(T / pow_sat(h, 8));
    // r's with H(r)^8 |D| <= T, for one algebra of discriminant size v
    auto partners = [&](u64 v) -> u64 {
      u64 h = 0;
      while (h < H && thresholds[h + 1] >= v) ++h;
      return upto[h];
    };
    if (T > static_cast<u128>(~u64{0})) throw std::overflow_error("count_diagonal: brute range too large");
    const u64 Tn = static_cast<u64>(T);
    const u64 chunk = Tn / static_cast<u64>(P) + 1;
    run_partitions(policy, [&](int p) {
      u64 s = p == 0 ? upto[H] : 0;  // Q+Q
      const u64 lo = static_cast<u64>(p) * chunk + 1;
      const u64 hi = std::min(Tn, lo + chunk - 1);
      for_each_squarefree_in(lo, hi, [&](u64 n) {
        // K = Q(sqrt n): D = n when n = 1 mod 4 (n > 1), else 4n
        u64 dp = n % 4 == 1 ? n : 4 * n;
        if (n > 1 && dp <= Tn) s += partners(dp);
        // K = Q(sqrt -n): D = -n when n = 3 mod 4, else -4n
        u64 dn = n % 4 == 3 ? n : 4 * n;
        if (dn <= Tn) s += partners(dn);
      });
      part[static_cast<size_t>(p)] = s;
    });
  }
  rep.count = std::accumulate(part.begin(), part.end(), u64{0});
  rep.elapsed_s = detail::seconds_since(t0);
  return rep;
}

CountReport count_split_nondiagonal(double B, Method method, const ExecPolicy& policy) {
  check_bound(B);
  const auto t0 = detail::Clock::now();
  const HeightBound bound(B);
  // H(r)^2 H(s)^2 <= B  <=>  H(r) H(s) <= isqrt(floor B)
  const u64 N = isqrt(bound.floor_B());
  const int P = policy.partitions;

  // cum[n] = #{r in P^1(Q) : H(r) <= n}
  std::vector<u64> cum(N + 1, 0);
  if (method == Method::Formula) {
    const std::vector<u32> phi = phi_table(static_cast<u32>(N));
    for (u64 h = 1; h <= N; ++h) cum[h] = cum[h - 1] + 4 * static_cast<u64>(phi[h]);
  } else {
    for (u64 h = 1; h <= N; ++h) cum[h] = cum[h - 1] + points_of_height(static_cast<i64>(h)).size();
  }

  std::vector<u64> part(static_cast<size_t>(P), 0);
  run_partitions(policy, [&](int p) {
    u64 s = 0;
    for (u64 h = 1 + static_cast<u64>(p); h <= N; h += static_cast<u64>(P)) {
      const u64 here = cum[h] - cum[h - 1];
      s += here * cum[N / h];
    }
    part[static_cast<size_t>(p)] = s;
  });
  const u64 with_diag = std::accumulate(part.begin(), part.end(), u64{0});
  const u64 diag = cum[isqrt(N)];

  CountReport rep;
  rep.set = SetId::Split;
  rep.B = B;
  rep.partitions = P;
  rep.count = with_diag - diag;
  rep.extras = {{"with_diagonal", with_diag}, {"unordered", rep.count / 2}};
  rep.elapsed_s = detail::seconds_since(t0);
  return rep;
}

// Box bounds for the non-split scan, T = floor(B^2).
//
// Proxy: |sqf(disc)| >= 1, so max(a,|b|,|c|)^4 <= T.
//
// Exact: M(f) >= a and M(f) >= a|root1 root2| = |c|, while
// |b| = a|root1 + root2| <= 2 a max(1,|root1|) max(1,|root2|) = 2 M(f).
// With |D_K| >= 3 this gives a, |c| <= (T/3)^{1/4} and |b| <= (16T/3)^{1/4}.
namespace {

struct Box {
  u64 a = 0, b = 0, c = 0;
};

Box nonsplit_box(u128 T, HeightMode mode) {
  if (mode == HeightMode::Proxy) {
    u64 m = iroot4(T);
    return {m, m, m};
  }
  u64 ac = iroot4(T / 3);
  return {ac, iroot4(T * 16 / 3), ac};
}

struct GridScan {
  std::vector<double> sorted_bounds;
  std::vector<size_t> order;  // order[k] = input position of sorted_bounds[k]
  std::vector<u128> T;        // floor(B_k^2), ascending
  std::vector<double> Tf;     // B_k^2, for the straddle prefilter
  std::vector<HeightBound> hb;
};

GridScan make_grid(const std::vector<double>& bounds) {
  GridScan g;
  g.order.resize(bounds.size());
  std::iota(g.order.begin(), g.order.end(), size_t{0});
  std::stable_sort(g.order.begin(), g.order.end(), [&](size_t i, size_t j) { return bounds[i] < bounds[j]; });
  for (size_t k : g.order) {
    check_bound(bounds[k]);
    g.sorted_bounds.push_back(bounds[k]);
    g.hb.emplace_back(bounds[k]);
    g.T.push_back(g.hb.back().floor_B2());
    g.Tf.push_back(bounds[k] * bounds[k]);
  }
  return g;
}

}  // namespace

namespace detail {

// Calls hit(a, b, c, k) for every triple with b >= 0 that passes the height
// test for sorted bound k (k the smallest such index). gcd is checked last.
template <HeightMode mode, class Hit>
void scan_rows(const GridScan& g, const Box& box, const SquarefreeTable& kernel, const std::vector<u64>& limit,
               int p, int P, Hit& hit) {
  const size_t K = g.T.size();
  auto first_ok = [&](u64 m, u64 s) -> size_t {
    const u64* row = &limit[m * K];
    if (s > row[K - 1]) return K;
    size_t k = 0;
    while (s > row[k]) ++k;
    return k;
  };
  const u32* ker = kernel.data();
  const i64 cm = static_cast<i64>(box.c);
  for (u64 ua = 1 + static_cast<u64>(p); ua <= box.a; ua += static_cast<u64>(P)) {
    const i64 a = static_cast<i64>(ua);
    for (i64 b = 0; b <= static_cast<i64>(box.b); ++b) {
      i64 d = b * b + 4 * a * cm;  // disc at c = -cm, drops by 4a per step
      for (i64 c = -cm; c <= cm; ++c, d -= 4 * a) {
        if (d == 0) continue;
        const u64 ad = d < 0 ? static_cast<u64>(-d) : static_cast<u64>(d);
        const u64 s = ker[ad];
        if (d > 0 && s == 1) continue;  // square discriminant
        const u64 ac = c < 0 ? static_cast<u64>(-c) : static_cast<u64>(c);
        size_t k;
        if constexpr (mode == HeightMode::Proxy) {
          k = first_ok(std::max({ua, static_cast<u64>(b), ac}), s);
        } else {
          // |D_K| from the signed kernel
          const bool one_mod_4 = d < 0 ? s % 4 == 3 : s % 4 == 1;
          const u64 dk = one_mod_4 ? s : 4 * s;
          if (a + c < b && -(a + c) < b) {
            // f(1) > 0 > f(-1) or the reverse: one root in (-1, 1) and
            // M = (b + sqrt d)/2, which is at least max(a, |c|, b/2)
            k = first_ok(std::max({ua, ac, static_cast<u64>(b) / 2}), dk);
            if (k == K) continue;
            const double M = (static_cast<double>(b) + std::sqrt(static_cast<double>(d))) / 2;
            const double key = M * M * M * M * static_cast<double>(dk);
            for (; k < K; ++k) {
              const double t = g.Tf[k];
              if (key < t * (1 - 1e-9)) break;
              if (key <= t * (1 + 1e-9) &&
                  straddle_key_at_most(static_cast<u64>(b), static_cast<u64>(d), dk, g.hb[k]))
                break;
            }
          } else {
            k = first_ok(std::max(ua, ac), dk);
          }
        }
        if (k == K) continue;
        if (std::gcd(std::gcd(a, b), c) != 1) continue;
        hit(a, b, c, k);
      }
    }
  }
}

// Calls hit(a, b, c, k) for every triple with b >= 0 that passes the height
// test for sorted bound k (k the smallest such index). gcd is checked last.
template <class Hit>
void scan_nonsplit(const GridScan& g, HeightMode mode, const ExecPolicy& policy,
                   const std::function<Hit()>& make_hit, std::vector<Hit>& hits) {
  const size_t K = g.T.size();
  const Box box = nonsplit_box(g.T.back(), mode);
  const int P = policy.partitions;
  hits.clear();
  for (int p = 0; p < P; ++p) hits.push_back(make_hit());
  if (box.a == 0) return;

  const SquarefreeTable kernel(box.b * box.b + 4 * box.a * box.c);
  // limit[m K + k] = floor(T_k / m^4), the largest key factor allowed at m
  const u64 mtop = std::max({box.a, box.b, box.c});
  std::vector<u64> limit((mtop + 1) * K);
  for (u64 m = 1; m <= mtop; ++m)
    for (size_t k = 0; k < K; ++k) {
      u128 v = g.T[k] / pow_sat(m, 4);
      limit[m * K + k] = v > static_cast<u128>(~u64{0}) ? ~u64{0} : static_cast<u64>(v);
    }

  run_partitions(policy, [&](int p) {
    Hit& hit = hits[static_cast<size_t>(p)];
    if (mode == HeightMode::Proxy) scan_rows<HeightMode::Proxy>(g, box, kernel, limit, p, P, hit);
    else scan_rows<HeightMode::Exact>(g, box, kernel, limit, p, P, hit);
  });
}

}  // namespace detail

namespace {

struct Histogram {
  std::vector<u64> h;
  void operator()(i64, i64 b, i64, size_t k) { h[k] += b == 0 ? 1 : 2; }
};

}  // namespace

std::vector<CountReport> count_nonsplit_grid(const std::vector<double>& bounds, HeightMode mode,
                                             const ExecPolicy& policy) {
  if (bounds.empty()) return {};
  const auto t0 = detail::Clock::now();
  const GridScan g = make_grid(bounds);
  const size_t K = g.T.size();
  std::vector<Histogram> hists;
  detail::scan_nonsplit<Histogram>(g, mode, policy, [K] { return Histogram{std::vector<u64>(K, 0)}; }, hists);

  std::vector<u64> total(K, 0);
  for (const auto& hist : hists)
    for (size_t k = 0; k < K; ++k) total[k] += hist.h[k];
  for (size_t k = 1; k < K; ++k) total[k] += total[k - 1];

  const double elapsed = detail::seconds_since(t0);
  std::vector<CountReport> out(bounds.size());
  for (size_t k = 0; k < K; ++k) {
    CountReport& r = out[g.order[k]];
    r.set = mode == HeightMode::Exact ? SetId::NonsplitExact : SetId::NonsplitProxy;
    r.B = g.sorted_bounds[k];
    r.count = total[k];
    r.partitions = policy.partitions;
    r.elapsed_s = elapsed;
  }
  return out;
}

CountReport count_nonsplit(double B, HeightMode mode, const ExecPolicy& policy) {
  return count_nonsplit_grid({B}, mode, policy).front();
}

std::vector<StackPoint> enumerate_points(SetId id, double B) {
  check_bound(B);
  const HeightBound bound(B);
  std::vector<StackPoint> out;
  switch (id) {
    case SetId::Diag: {
      const u128 T = bound.floor_B2();
      const u64 H = iroot8(T);
      std::vector<QuadExt> algebras{QuadExt::split()};
      const u64 Dmax = static_cast<u64>(T);
      for (i64 D : fundamental_discriminants_in(-static_cast<i64>(Dmax), static_cast<i64>(Dmax))) {
        i64 m = D % 4 == 0 ? D / 4 : D;
        algebras.push_back(QuadExt::from_generator(m));
      }
      for (u64 h = 1; h <= H; ++h)
        for (const ProjRational& r : points_of_height(static_cast<i64>(h)))
          for (const QuadExt& K : algebras) {
            StackPoint x = Diagonal{r, K};
            if (height_at_most(x, bound)) out.push_back(x);
          }
      break;
    }
    case SetId::Split: {
      const u64 N = isqrt(bound.floor_B());
      std::vector<ProjRational> pts;
      for (u64 h = 1; h <= N; ++h)
        for (const ProjRational& r : points_of_height(static_cast<i64>(h))) pts.push_back(r);
      for (const auto& r : pts)
        for (const auto& s : pts) {
          if (r == s) continue;
          StackPoint x = Split{r, s};
          if (height_at_most(x, bound)) out.push_back(x);
        }
      break;
    }
    case SetId::NonsplitExact:
    case SetId::NonsplitProxy: {
      const HeightMode mode = id == SetId::NonsplitExact ? HeightMode::Exact : HeightMode::Proxy;
      const GridScan g = make_grid({B});
      using Collect = std::function<void(i64, i64, i64, size_t)>;
      std::vector<MinPoly> polys;
      std::vector<Collect> hits;
      detail::scan_nonsplit<Collect>(
          g, mode, ExecPolicy{1, 1},
          [&] {
            return Collect([&](i64 a, i64 b, i64 c, size_t) {
              polys.push_back({a, b, c});
              if (b) polys.push_back({a, -b, c});
            });
          },
          hits);
      std::sort(polys.begin(), polys.end());
      for (const auto& f : polys) out.push_back(NonSplit{f});
      break;
    }
    default: throw std::invalid_argument(std::string("enumerate_points: not a point class: ") + set_name(id));
  }
  return out;
}

}  // namespace symsq
