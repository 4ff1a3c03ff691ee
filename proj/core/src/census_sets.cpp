#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "census_detail.hpp"
#include "symsq/census.hpp"

namespace symsq {

namespace {

u64 abs_u(i64 v) { return v < 0 ? 0 - static_cast<u64>(v) : static_cast<u64>(v); }

u128 pow4(u64 m) {
  u128 m2 = u128{m} * m;
  return m2 * m2;
}

u64 max3(i64 a, i64 b, i64 c) { return std::max({abs_u(a), abs_u(b), abs_u(c)}); }

std::string tuple_text(const Tuple& t, int arity = 3) {
  std::ostringstream s;
  s << "(" << t[0];
  for (int i = 1; i < arity; ++i) s << "," << t[static_cast<size_t>(i)];
  s << ")";
  return s.str();
}

void check_bound(double B) {
  if (!std::isfinite(B) || B < 1) throw std::domain_error("height bound must be finite and >= 1");
}

void check_kernel_param(SetId id, std::optional<i64> x) {
  if (!x) throw std::invalid_argument(std::string(set_name(id)) + " needs a parameter x");
  if (*x == 0 || *x == 1 || !is_squarefree(*x))
    throw std::domain_error(std::string(set_name(id)) + ": x must be squarefree and not in {0, 1}");
}

void check_square_param(SetId id, std::optional<i64> y) {
  if (!y) throw std::invalid_argument(std::string(set_name(id)) + " needs a parameter y");
  if (*y < 1) throw std::domain_error(std::string(set_name(id)) + ": y must be >= 1");
}

// Membership test and enumeration radius for one auxiliary set.
struct SetScan {
  int arity = 3;
  i64 lo0 = 0, hi0 = 0;  // range of the first coordinate
  i64 R = 0;             // range [-R, R] of the others
  u64 table = 0;         // largest |value| whose squarefree part is needed
  std::function<bool(const SquarefreeTable&, i64, i64, i64)> member;
};

SetScan make_scan(SetId id, double B, std::optional<i64> param) {
  check_bound(B);
  const HeightBound bound(B);
  const u128 T = bound.floor_B2();
  SetScan sc;
  auto cube = [&](u64 R) {
    sc.R = static_cast<i64>(R);
    sc.lo0 = -sc.R;
    sc.hi0 = sc.R;
    sc.table = 3 * R * R;
  };
  switch (id) {
    case SetId::S:
    case SetId::Sx:
    case SetId::Sy: {
      if (id == SetId::Sx) check_kernel_param(id, param);
      if (id == SetId::Sy) check_square_param(id, param);
      if (id == SetId::S && param) throw std::invalid_argument("S takes no parameter");
      // |sqf| >= 1, so max^4 <= T
      cube(iroot4(T));
      const i64 want = param.value_or(0);
      sc.member = [T, id, want](const SquarefreeTable& ker, i64 a, i64 b, i64 c) {
        const i64 d = a * a + b * b - c * c;
        if (d == 0) return false;
        const i64 s = ker.of(d);
        if (s == 1) return false;
        if (pow4(max3(a, b, c)) * abs_u(s) > T) return false;
        if (id == SetId::Sx) return s == want;
        if (id == SetId::Sy) return static_cast<i64>(isqrt(static_cast<u64>(d / s))) == want;
        return true;
      };
      break;
    }
    case SetId::SxPrime: {
      check_kernel_param(id, param);
      const i64 x = *param;
      // max^4 |x| <= T
      cube(iroot4(T / abs_u(x)));
      sc.table = 2 * static_cast<u64>(sc.R) * static_cast<u64>(sc.R);
      sc.member = [T, x](const SquarefreeTable& ker, i64 a, i64 b, i64 c) {
        const i64 d = a * a - b * c;
        if (d == 0 || ker.of(d) != x) return false;
        return pow4(max3(a, b, c)) * abs_u(x) <= T;
      };
      break;
    }
    case SetId::SyPrime: {
      check_square_param(id, param);
      const i64 y = *param;
      // y^2 <= |d| turns (a^2+b^2+c^2)|d|^{1/2} <= By into a^2+b^2+c^2 <= B
      cube(isqrt(bound.floor_B()));
      sc.table = 0;
      const u128 T2 = bound.floor_pow(2, static_cast<u64>(y) * static_cast<u64>(y));
      const i64 yy = y * y;
      sc.member = [T2, yy](const SquarefreeTable&, i64 a, i64 b, i64 c) {
        const i64 d = a * a + b * b - c * c;
        if (d == 0 || d % yy) return false;
        const u128 Q = static_cast<u128>(a * a + b * b + c * c);
        return Q * Q * abs_u(d) <= T2;
      };
      break;
    }
    case SetId::Ry: {
      check_square_param(id, param);
      const i64 y = *param;
      // r + c^2 <= B for the same reason as SY'
      sc.arity = 2;
      sc.lo0 = 0;
      sc.hi0 = static_cast<i64>(bound.floor_B());
      sc.R = static_cast<i64>(isqrt(bound.floor_B()));
      sc.table = 0;
      const u128 T2 = bound.floor_pow(2, static_cast<u64>(y) * static_cast<u64>(y));
      const i64 yy = y * y;
      sc.member = [T2, yy](const SquarefreeTable&, i64 r, i64 c, i64) {
        const i64 d = r - c * c;
        if (d == 0 || d % yy) return false;
        const u128 Q = static_cast<u128>(r + c * c);
        return Q * Q * abs_u(d) <= T2;
      };
      break;
    }
    case SetId::T:
    case SetId::Tx: {
      i64 want = 0;
      if (id == SetId::Tx) {
        check_kernel_param(id, param);
        want = *param;
        if (want < 2 || want % 2) throw std::domain_error("T_X: x must be even and >= 2");
      } else if (param) {
        throw std::invalid_argument("T takes no parameter");
      }
      // x >= 2, so max^4 <= T/2
      cube(iroot4(T / 2));
      sc.member = [T, want](const SquarefreeTable& ker, i64 a, i64 b, i64 c) {
        if (b % 2 || std::gcd(a, b) != 1) return false;
        if ((a * a + b * b) % 8 != 5) return false;
        const i64 d = a * a + b * b - c * c;
        if (d == 0) return false;
        const i64 x = ker.of(d);
        if (x < 2 || x % 2) return false;
        if (want && x != want) return false;
        return pow4(max3(a, b, c)) * static_cast<u64>(x) <= T;
      };
      break;
    }
    default: throw std::invalid_argument(std::string("not an auxiliary set: ") + set_name(id));
  }
  return sc;
}

template <class Visit>
void scan_set(const SetScan& sc, const ExecPolicy& policy, std::vector<Visit>& visits) {
  const SquarefreeTable ker(sc.table);
  const int P = policy.partitions;
  run_partitions(policy, [&](int p) {
    Visit& visit = visits[static_cast<size_t>(p)];
    for (i64 u = sc.lo0 + p; u <= sc.hi0; u += P) {
      if (sc.arity == 2) {
        for (i64 c = -sc.R; c <= sc.R; ++c)
          if (sc.member(ker, u, c, 0)) visit(Tuple{u, c, 0});
        continue;
      }
      for (i64 b = -sc.R; b <= sc.R; ++b)
        for (i64 c = -sc.R; c <= sc.R; ++c)
          if (sc.member(ker, u, b, c)) visit(Tuple{u, b, c});
    }
  });
}

struct Counter {
  u64 n = 0;
  void operator()(const Tuple&) { ++n; }
};

struct Collector {
  std::vector<Tuple> out;
  void operator()(const Tuple& t) { out.push_back(t); }
};

CountReport base_report(SetId id, double B, std::optional<i64> param, const ExecPolicy& policy) {
  CountReport r;
  r.set = id;
  r.B = B;
  r.param = param;
  r.partitions = policy.partitions;
  return r;
}

}  // namespace

Materialized materialize(SetId id, double B, std::optional<i64> param, const ExecPolicy& policy) {
  const auto t0 = detail::Clock::now();
  Materialized m;
  if (id == SetId::NonsplitExact || id == SetId::NonsplitProxy) {
    if (param) throw std::invalid_argument(std::string(set_name(id)) + " takes no parameter");
    for (const StackPoint& x : enumerate_points(id, B)) {
      const MinPoly& f = std::get<NonSplit>(x).f;
      m.tuples.push_back({f.a, f.b, f.c});
    }
  } else {
    const SetScan sc = make_scan(id, B, param);
    std::vector<Collector> parts(static_cast<size_t>(policy.partitions));
    scan_set(sc, policy, parts);
    for (auto& p : parts) m.tuples.insert(m.tuples.end(), p.out.begin(), p.out.end());
    m.arity = sc.arity;
  }
  std::sort(m.tuples.begin(), m.tuples.end());
  m.report = base_report(id, B, param, policy);
  m.report.count = m.tuples.size();
  m.report.elapsed_s = detail::seconds_since(t0);
  return m;
}

CountReport count_set(SetId id, double B, std::optional<i64> param, const ExecPolicy& policy) {
  auto no_param = [&] {
    if (param) throw std::invalid_argument(std::string(set_name(id)) + " takes no parameter");
  };
  switch (id) {
    case SetId::Diag: no_param(); return count_diagonal(B, Method::Formula, policy);
    case SetId::Split: no_param(); return count_split_nondiagonal(B, Method::Formula, policy);
    case SetId::NonsplitExact: no_param(); return count_nonsplit(B, HeightMode::Exact, policy);
    case SetId::NonsplitProxy: no_param(); return count_nonsplit(B, HeightMode::Proxy, policy);
    default: break;
  }
  const auto t0 = detail::Clock::now();
  const SetScan sc = make_scan(id, B, param);
  std::vector<Counter> parts(static_cast<size_t>(policy.partitions));
  scan_set(sc, policy, parts);
  CountReport r = base_report(id, B, param, policy);
  for (const auto& p : parts) r.count += p.n;
  r.elapsed_s = detail::seconds_since(t0);
  return r;
}

SPartition partition_S(double B, const ExecPolicy& policy) {
  const SetScan sc = make_scan(SetId::S, B, std::nullopt);
  struct Tally {
    SPartition part;
    const SquarefreeTable* ker = nullptr;
    void operator()(const Tuple& t) {
      const i64 d = t[0] * t[0] + t[1] * t[1] - t[2] * t[2];
      const i64 s = ker->of(d);
      ++part.total;
      ++part.by_kernel[s];
      ++part.by_square[static_cast<i64>(isqrt(static_cast<u64>(d / s)))];
    }
  };
  const SquarefreeTable ker(sc.table);
  std::vector<Tally> parts(static_cast<size_t>(policy.partitions));
  for (auto& p : parts) p.ker = &ker;
  scan_set(sc, policy, parts);
  SPartition out;
  for (const auto& p : parts) {
    out.total += p.part.total;
    for (auto [k, v] : p.part.by_kernel) out.by_kernel[k] += v;
    for (auto [k, v] : p.part.by_square) out.by_square[k] += v;
  }
  return out;
}

namespace {

// Proxy non-split source set of the upper map: a > 0, content 1, sqf(disc)
// not in {0, 1}, max^4 |sqf| <= floor(B^2). Lexicographic order.
std::vector<Tuple> proxy_source(const HeightBound& bound) {
  const u128 T = bound.floor_B2();
  const i64 R = static_cast<i64>(iroot4(T));
  std::vector<Tuple> out;
  for (i64 a = 1; a <= R; ++a)
    for (i64 b = -R; b <= R; ++b)
      for (i64 c = -R; c <= R; ++c) {
        if (std::gcd(std::gcd(a, b), c) != 1) continue;
        const i64 d = b * b - 4 * a * c;
        if (d == 0) continue;
        const i64 s = sqf(d);
        if (s == 1) continue;
        if (pow4(max3(a, b, c)) * abs_u(s) <= T) out.push_back({a, b, c});
      }
  return out;
}

void add_note(LemmaReport& r, const std::string& key, u64 v) { r.notes.emplace_back(key, std::to_string(v)); }

void violation(LemmaReport& r, const Tuple& t, const std::string& why) {
  if (r.violations++ == 0) r.witness = tuple_text(t) + " " + why;
}

}  // namespace

LemmaReport verify_lemma_upper(double B, double image_scale) {
  check_bound(B);
  if (!(image_scale >= 1)) throw std::domain_error("verify_lemma_upper: image_scale must be >= 1");
  const HeightBound src(B), dst(B * image_scale);
  const u128 Tdst = dst.floor_B2();
  LemmaReport rep;
  u64 disc_bad = 0, height_bad = 0, kernel_bad = 0;
  double worst = 0;
  std::vector<std::pair<Tuple, Tuple>> images;
  for (const Tuple& t : proxy_source(src)) {
    ++rep.checked;
    const auto [a, b, c] = t;
    const Tuple img{a - c, b, a + c};
    images.push_back({img, t});
    const i64 d = b * b - 4 * a * c;
    const i64 d2 = img[0] * img[0] + img[1] * img[1] - img[2] * img[2];
    if (d2 != d) {
      ++disc_bad;
      violation(rep, t, "discriminant not preserved");
      continue;
    }
    const i64 s = sqf(d2);
    if (s == 1) {
      ++kernel_bad;
      violation(rep, t, "image kernel in {0, 1}");
      continue;
    }
    const u64 m = max3(a, b, c), m2 = max3(img[0], img[1], img[2]);
    worst = std::max(worst, static_cast<double>(m2) * m2 / (static_cast<double>(m) * m));
    if (pow4(m2) * abs_u(s) > Tdst) {
      ++height_bad;
      violation(rep, t, "image " + tuple_text(img) + " exceeds the height bound at the scaled B");
    }
  }
  std::sort(images.begin(), images.end());
  u64 collisions = 0;
  for (size_t i = 1; i < images.size(); ++i)
    if (images[i].first == images[i - 1].first) {
      ++collisions;
      violation(rep, images[i].second, "collides with " + tuple_text(images[i - 1].second));
    }
  add_note(rep, "discriminant_mismatch", disc_bad);
  add_note(rep, "kernel_rejected", kernel_bad);
  add_note(rep, "height_exceeded", height_bad);
  add_note(rep, "collisions", collisions);
  std::ostringstream w;
  w << worst;
  rep.notes.emplace_back("worst_scale_sq", w.str());
  return rep;
}

LemmaReport verify_lemma_lower(double B, LowerSource source, LowerMap map) {
  check_bound(B);
  const HeightBound bound(B);
  const u128 T = bound.floor_B2();
  // sqf >= 2 gives max^4 <= T/2
  const i64 R = static_cast<i64>(iroot4(T / 2));
  LemmaReport rep;
  u64 parity_bad = 0, nonintegral = 0, gcd_bad = 0, disc_bad = 0, rejected = 0, height_bad = 0;
  u64 negative_a = 0;
  std::vector<std::pair<Tuple, Tuple>> raw, normalized;

  for (i64 a = -R; a <= R; ++a)
    for (i64 b = -R; b <= R; b += 1) {
      if (b % 2 || std::gcd(a, b) != 1 || (a * a + b * b) % 8 != 5) continue;
      for (i64 c = -R; c <= R; ++c) {
        const i64 d = a * a + b * b - c * c;
        if (d == 0) continue;
        const i64 x = sqf(d);
        if (x < 2) continue;
        if (source == LowerSource::AsStated ? x % 2 != 0 : c % 2 == 0) continue;
        if (pow4(max3(a, b, c)) * static_cast<u64>(x) > T) continue;
        const Tuple t{a, b, c};
        ++rep.checked;

        if (a % 2 == 0 || c % 2 == 0 || ((b % 4) + 4) % 4 != 2) {
          ++parity_bad;
          violation(rep, t, "parity: expected a, c odd and b = 2 mod 4");
          continue;
        }
        Tuple img;
        i64 want_disc;
        if (map == LowerMap::AsStated) {
          if ((a - c) % 2 || b % 2 || (a + c) % 2) {
            ++nonintegral;
            violation(rep, t, "image not integral");
            continue;
          }
          img = {(a - c) / 2, b / 2, (a + c) / 2};
          want_disc = d;  // claimed: 4 * disc(image) = d
        } else {
          img = {(a + c) / 2, b, (c - a) / 2};
          want_disc = d;
        }
        const i128 di = static_cast<i128>(img[1]) * img[1] - static_cast<i128>(4) * img[0] * img[2];
        const i128 got = map == LowerMap::AsStated ? 4 * di : di;
        if (got != want_disc) {
          ++disc_bad;
          violation(rep, t, "image " + tuple_text(img) + " changes the discriminant");
        }
        raw.push_back({img, t});
        if (std::gcd(std::gcd(img[0], img[1]), img[2]) != 1) {
          ++gcd_bad;
          violation(rep, t, "image " + tuple_text(img) + " has a common factor");
          continue;
        }
        if (img[0] < 0) ++negative_a;
        auto f = normalize(img[0], img[1], img[2]);
        if (std::holds_alternative<Rejection>(f)) {
          ++rejected;
          violation(rep, t, "image " + tuple_text(img) + " rejected: " + rejection_name(std::get<Rejection>(f)));
          continue;
        }
        const MinPoly& g = std::get<MinPoly>(f);
        normalized.push_back({Tuple{g.a, g.b, g.c}, t});
        const i64 s = sqf(static_cast<i64>(g.disc()));
        if (pow4(max3(g.a, g.b, g.c)) * abs_u(s) > T) {
          ++height_bad;
          violation(rep, t, "image " + tuple_text(img) + " exceeds the height bound");
        }
      }
    }

  auto collisions = [](std::vector<std::pair<Tuple, Tuple>>& v) {
    std::sort(v.begin(), v.end());
    u64 n = 0;
    for (size_t i = 1; i < v.size(); ++i) n += v[i].first == v[i - 1].first;
    return n;
  };
  const u64 raw_coll = collisions(raw);
  for (size_t i = 1; i < raw.size(); ++i)
    if (raw[i].first == raw[i - 1].first) violation(rep, raw[i].second, "collides with " + tuple_text(raw[i - 1].second));
  // t and -t share a normalized image; the fibre size is reported, not failed
  const u64 norm_coll = collisions(normalized);

  add_note(rep, "parity_failures", parity_bad);
  add_note(rep, "nonintegral", nonintegral);
  add_note(rep, "gcd_failures", gcd_bad);
  add_note(rep, "discriminant_mismatch", disc_bad);
  add_note(rep, "rejected_images", rejected);
  add_note(rep, "height_exceeded", height_bad);
  add_note(rep, "raw_collisions", raw_coll);
  add_note(rep, "negative_a_images", negative_a);
  add_note(rep, "normalized_collisions", norm_coll);
  return rep;
}

RyReport verify_ry(double B, i64 y, const ExecPolicy& policy) {
  RyReport rep;
  rep.sy_prime = count_set(SetId::SyPrime, B, y, policy).count;
  const Materialized ry = materialize(SetId::Ry, B, y, policy);
  const HeightBound bound(B);
  const u128 T2 = bound.floor_pow(2, static_cast<u64>(y) * static_cast<u64>(y));

  i64 rmax = 0;
  for (const Tuple& t : ry.tuples) rmax = std::max(rmax, t[0]);
  // F(r): ordered representations r = u^2 + v^2 with u, v >= 1
  std::vector<u64> F(static_cast<size_t>(rmax) + 1, 0);
  for (i64 u = 1; u * u < rmax + 1; ++u)
    for (i64 v = 1; u * u + v * v <= rmax; ++v) ++F[static_cast<size_t>(u * u + v * v)];

  for (const Tuple& t : ry.tuples) {
    const i64 r = t[0], c = t[1];
    rep.four_sum_F += 4 * F[static_cast<size_t>(r)];
    if (r == 0) rep.boundary += 1;
    else if (is_perfect_square(r)) rep.boundary += 4;
    if (c == 0) continue;
    // c^2 - (By)^2/c^4 <= r <= c^2 + (By)^2/c^4  <=>  c^4 |r - c^2| <= (By)^2
    ++rep.window_checked;
    const u128 c4 = pow4(abs_u(c));
    if (c4 * abs_u(r - c * c) > T2) {
      if (rep.window_violations++ == 0) rep.witness = tuple_text(t, 2);
    }
  }
  return rep;
}

ErdosTuranCount erdos_turan_count(i64 y, i64 l, double i, double j) {
  if (y < 1 || l < 1) throw std::domain_error("erdos_turan_count: y and l must be positive");
  if (y % l) throw std::domain_error("erdos_turan_count: l must divide y");
  if (!(0 <= i && i <= j && j <= static_cast<double>(y)))
    throw std::domain_error("erdos_turan_count: need 0 <= i <= j <= y");
  const i64 m = y / l;
  const i64 first = static_cast<i64>(std::ceil(i)), stop = static_cast<i64>(std::ceil(j));
  ErdosTuranCount out;
  // multiples c = l k with first <= c < stop
  for (i64 k = (first + l - 1) / l; k * l < stop; ++k)
    if (std::gcd(k, m) == 1) ++out.exact;
  out.main = static_cast<double>(euler_phi(m)) * (j - i) / static_cast<double>(y);
  out.deviation = static_cast<double>(out.exact) - out.main;
  return out;
}

}  // namespace symsq
