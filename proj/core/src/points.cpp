#include "symsq/points.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace symsq {

namespace mp = boost::multiprecision;

namespace {

u128 to_u128(const mp::cpp_int& v) {
  if (v < 0) throw std::logic_error("negative value where unsigned expected");
  if (v != 0 && mp::msb(v) >= 128) throw std::overflow_error("height bound exceeds 128-bit range");
  const mp::cpp_int mask = (mp::cpp_int(1) << 64) - 1;
  u64 lo = static_cast<u64>(v & mask);
  u64 hi = static_cast<u64>(v >> 64);
  return (u128{hi} << 64) | lo;
}

mp::cpp_int from_u128(u128 v) {
  mp::cpp_int r = static_cast<u64>(v >> 64);
  r <<= 64;
  r += static_cast<u64>(v);
  return r;
}

u64 abs_u(i64 v) { return v < 0 ? 0 - static_cast<u64>(v) : static_cast<u64>(v); }

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

std::string rational_text(const ProjRational& r) {
  return std::to_string(r.p) + "/" + std::to_string(r.q);
}

ProjRational parse_rational(const std::string& tok) {
  auto slash = tok.find('/');
  if (slash == std::string::npos) throw std::invalid_argument("expected p/q, got '" + tok + "'");
  return ProjRational::make(std::stoll(tok.substr(0, slash)), std::stoll(tok.substr(slash + 1)));
}

}  // namespace

HeightBound::HeightBound(double B) : B_(B) {
  if (!std::isfinite(B) || B < 0) throw std::domain_error("height bound must be finite and >= 0");
  int e = 0;
  double f = std::frexp(B, &e);
  mant_ = static_cast<u64>(std::ldexp(f, 53));
  exp_ = e - 53;
  if (mant_ == 0) exp_ = 0;
  while (mant_ && (mant_ & 1) == 0) {
    mant_ >>= 1;
    ++exp_;
  }
  floor_B_ = floor_pow(1);
  floor_B2_ = floor_pow(2);
}

u128 HeightBound::floor_pow(int k, u64 m) const {
  if (k != 1 && k != 2) throw std::invalid_argument("floor_pow: k must be 1 or 2");
  mp::cpp_int v = mant_;
  if (k == 2) v *= mant_;
  v *= m;
  int shift = k * exp_;
  if (shift >= 0) v <<= shift;
  else v >>= -shift;
  return to_u128(v);
}

ProjRational ProjRational::make(i64 p, i64 q) {
  if (p == 0 && q == 0) throw std::domain_error("(0:0) is not a point of P^1");
  i64 g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  return {p, q};
}

i64 weil_height(const ProjRational& r) { return static_cast<i64>(std::max(abs_u(r.p), abs_u(r.q))); }

double log_weil_height(const ProjRational& r) { return std::log(static_cast<double>(weil_height(r))); }

const char* rejection_name(Rejection r) {
  switch (r) {
    case Rejection::NotQuadratic: return "NotQuadratic";
    case Rejection::RationalRoots: return "RationalRoots";
    case Rejection::RepeatedRoot: return "RepeatedRoot";
  }
  return "?";
}

std::variant<MinPoly, Rejection> normalize(i64 a, i64 b, i64 c) {
  if (a == 0 && b == 0 && c == 0) throw std::domain_error("normalize: zero polynomial");
  if (a == 0) return Rejection::NotQuadratic;
  i64 g = std::gcd(std::gcd(a, b), c);
  a /= g;
  b /= g;
  c /= g;
  if (a < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  MinPoly f{a, b, c};
  i128 d = f.disc();
  if (d == 0) return Rejection::RepeatedRoot;
  if (d > 0 && d <= std::numeric_limits<i64>::max() && is_perfect_square(static_cast<i64>(d)))
    return Rejection::RationalRoots;
  if (d > std::numeric_limits<i64>::max() || d < std::numeric_limits<i64>::min())
    throw std::overflow_error("normalize: discriminant outside 64-bit range");
  return f;
}

RootLayout root_layout(const MinPoly& f) {
  if (f.disc() < 0) return RootLayout::Complex;
  const i128 at1 = static_cast<i128>(f.a) + f.b + f.c;
  const i128 atm1 = static_cast<i128>(f.a) - f.b + f.c;
  if ((at1 > 0) != (atm1 > 0)) return RootLayout::Straddle;
  if (at1 < 0) return RootLayout::Outside;  // f(+-1) < 0: one root below -1, one above 1
  // f(+-1) > 0: both roots on the same side of each of +-1; the vertex decides
  return static_cast<i128>(abs_u(f.b)) < 2 * static_cast<i128>(f.a) ? RootLayout::Inside
                                                                      : RootLayout::Outside;
}

double mahler_measure(const MinPoly& f) {
  if (root_layout(f) == RootLayout::Straddle) {
    long double d = static_cast<long double>(f.disc());
    return static_cast<double>((static_cast<long double>(abs_u(f.b)) + std::sqrt(d)) / 2);
  }
  return static_cast<double>(std::max(abs_u(f.a), abs_u(f.c)));
}

i64 field_discriminant(const MinPoly& f) {
  i128 d = f.disc();
  if (d > std::numeric_limits<i64>::max() || d < std::numeric_limits<i64>::min())
    throw std::overflow_error("field_discriminant: discriminant outside 64-bit range");
  return fundamental_discriminant(sqf(static_cast<i64>(d)));
}

double stacky_height(const StackPoint& x) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Split>) {
          double hr = static_cast<double>(weil_height(v.r)), hs = static_cast<double>(weil_height(v.s));
          return hr * hr * hs * hs;
        } else if constexpr (std::is_same_v<T, Diagonal>) {
          double h = static_cast<double>(weil_height(v.r));
          return h * h * h * h * std::sqrt(std::abs(static_cast<double>(v.K.D)));
        } else {
          double M = mahler_measure(v.f);
          return M * M * std::sqrt(std::abs(static_cast<double>(field_discriminant(v.f))));
        }
      },
      x);
}

bool straddle_key_at_most(u64 b, u64 disc, u64 dk, const HeightBound& B) {
  const long double bb = b, dd = disc;
  const long double m = (bb + std::sqrt(dd)) / 2;
  const long double approx = m * m * m * m * dk;
  const long double target = std::ldexp(static_cast<long double>(B.square_mantissa()), B.square_exponent());
  if (approx < target * (1 - 1e-12L)) return true;
  if (approx > target * (1 + 1e-12L)) return false;

  // (b + sqrt d)^4 = P + Q sqrt d
  const mp::cpp_int b2 = mp::cpp_int(b) * b;
  const mp::cpp_int d = disc;
  const mp::cpp_int P = b2 * b2 + 6 * b2 * d + d * d;
  const mp::cpp_int Q = 4 * mp::cpp_int(b) * (b2 + d);
  // dk (P + Q sqrt d) <= 16 mant^2 2^E, scaled to integers on both sides
  const int E = B.square_exponent();
  mp::cpp_int S = 1, T = 16 * from_u128(B.square_mantissa());
  if (E < 0) S <<= -E;
  else T <<= E;
  const mp::cpp_int lhs_coeff = S * dk * Q;
  const mp::cpp_int rhs = T - S * dk * P;
  if (rhs < 0) return false;
  return lhs_coeff * lhs_coeff * d <= rhs * rhs;
}

bool height_at_most(const StackPoint& x, const HeightBound& B) {
  return std::visit(
      [&](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Split>) {
          u128 h = mul_sat(abs_u(weil_height(v.r)), abs_u(weil_height(v.s)));
          return mul_sat(h, h) <= B.floor_B();
        } else if constexpr (std::is_same_v<T, Diagonal>) {
          // H^4 |D|^{1/2} <= B  <=>  H^8 |D| <= B^2
          u128 key = mul_sat(pow_sat(abs_u(weil_height(v.r)), 8), abs_u(v.K.D));
          return key <= B.floor_B2();
        } else {
          const u64 dk = abs_u(field_discriminant(v.f));
          if (root_layout(v.f) == RootLayout::Straddle)
            return straddle_key_at_most(abs_u(v.f.b), static_cast<u64>(v.f.disc()), dk, B);
          u128 key = mul_sat(pow_sat(std::max(abs_u(v.f.a), abs_u(v.f.c)), 4), dk);
          return key <= B.floor_B2();
        }
      },
      x);
}

namespace {

i64 proxy_kernel(i64 a, i64 b, i64 c) {
  i128 d = static_cast<i128>(b) * b - static_cast<i128>(4) * a * c;
  if (d == 0) throw ClassificationError("proxy_height: zero discriminant");
  if (d > std::numeric_limits<i64>::max() || d < std::numeric_limits<i64>::min())
    throw std::overflow_error("proxy_height: discriminant outside 64-bit range");
  if (is_perfect_square(static_cast<i64>(d))) throw ClassificationError("proxy_height: square discriminant");
  return sqf(static_cast<i64>(d));
}

}  // namespace

double proxy_height(i64 a, i64 b, i64 c) {
  i64 s = proxy_kernel(a, b, c);
  double m = static_cast<double>(std::max({abs_u(a), abs_u(b), abs_u(c)}));
  return m * m * std::sqrt(static_cast<double>(abs_u(s)));
}

bool proxy_height_at_most(i64 a, i64 b, i64 c, const HeightBound& B) {
  i64 s = proxy_kernel(a, b, c);
  u128 key = mul_sat(pow_sat(std::max({abs_u(a), abs_u(b), abs_u(c)}), 4), abs_u(s));
  return key <= B.floor_B2();
}

std::string serialize(const StackPoint& x) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Split>) {
          return "S " + rational_text(v.r) + " " + rational_text(v.s);
        } else if constexpr (std::is_same_v<T, Diagonal>) {
          return "D r=" + rational_text(v.r) + " D=" + std::to_string(v.K.D);
        } else {
          return "N " + std::to_string(v.f.a) + " " + std::to_string(v.f.b) + " " + std::to_string(v.f.c);
        }
      },
      x);
}

StackPoint parse_point(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string tag;
  in >> tag;
  if (tag == "S") {
    std::string r, s;
    if (!(in >> r >> s)) throw std::invalid_argument("malformed split point");
    return Split{parse_rational(r), parse_rational(s)};
  }
  if (tag == "D") {
    std::string r, d;
    if (!(in >> r >> d) || r.rfind("r=", 0) != 0 || d.rfind("D=", 0) != 0)
      throw std::invalid_argument("malformed diagonal point");
    i64 D = std::stoll(d.substr(2));
    QuadExt K = QuadExt::split();
    if (D != 1) {
      i64 m = (D % 4 == 0) ? D / 4 : D;
      K = QuadExt::from_generator(m);
      if (K.D != D) throw std::invalid_argument("not a fundamental discriminant: " + d.substr(2));
    }
    return Diagonal{parse_rational(r.substr(2)), K};
  }
  if (tag == "N") {
    i64 a, b, c;
    if (!(in >> a >> b >> c)) throw std::invalid_argument("malformed non-split point");
    auto f = normalize(a, b, c);
    if (auto* r = std::get_if<Rejection>(&f)) throw ClassificationError(rejection_name(*r));
    if (std::get<MinPoly>(f) != MinPoly{a, b, c}) throw std::invalid_argument("non-split point is not normalized");
    return NonSplit{std::get<MinPoly>(f)};
  }
  throw std::invalid_argument("unknown point tag '" + tag + "'");
}

}  // namespace symsq
