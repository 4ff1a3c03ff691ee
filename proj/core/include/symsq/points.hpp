#pragma once

// Points of Sym^2 P^1 over Q and their heights.
//
//   Split(r, s)      H(r)^2 H(s)^2
//   Diagonal(r, K)   H(r)^4 |D_K|^{1/2}
//   NonSplit(f)      M(f)^2 |D_K|^{1/2},  K = Q(root of f), M = Mahler measure
//
// Cutoff tests never go through floating point: every comparison against a
// bound B is reduced to an integer inequality against floor(B) or floor(B^2),
// except the one irrational case (a real quadratic with exactly one root in
// (-1, 1)), which gets an interval check and an exact big-integer fallback.

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "symsq/arith.hpp"
#include "symsq/quadfield.hpp"

namespace symsq {

// A height cutoff. B is taken as the exact binary value of the double.
class HeightBound {
 public:
  explicit HeightBound(double B);
  double value() const { return B_; }
  // floor(B^k * m) for k in {1, 2}; std::overflow_error past 128 bits
  u128 floor_pow(int k, u64 m = 1) const;
  u128 floor_B() const { return floor_B_; }
  u128 floor_B2() const { return floor_B2_; }
  // B^2 == square_mantissa() * 2^square_exponent()
  u128 square_mantissa() const { return u128{mant_} * mant_; }
  int square_exponent() const { return 2 * exp_; }

 private:
  double B_;
  u64 mant_;  // odd (or zero)
  int exp_;
  u128 floor_B_;
  u128 floor_B2_;
};

struct ProjRational {
  i64 p = 0;
  i64 q = 1;
  // reduces and fixes the sign: q > 0, or (1:0); throws on (0:0)
  static ProjRational make(i64 p, i64 q);
  friend bool operator==(const ProjRational&, const ProjRational&) = default;
  friend auto operator<=>(const ProjRational&, const ProjRational&) = default;
};

i64 weil_height(const ProjRational& r);
double log_weil_height(const ProjRational& r);

struct MinPoly {
  i64 a = 1, b = 0, c = 1;
  i128 disc() const { return static_cast<i128>(b) * b - static_cast<i128>(4) * a * c; }
  friend bool operator==(const MinPoly&, const MinPoly&) = default;
  friend auto operator<=>(const MinPoly&, const MinPoly&) = default;
};

enum class Rejection { NotQuadratic, RationalRoots, RepeatedRoot };
const char* rejection_name(Rejection r);

struct ClassificationError : std::domain_error {
  using std::domain_error::domain_error;
};

// Divide by the content, make a > 0. (0,0,0) throws std::domain_error.
std::variant<MinPoly, Rejection> normalize(i64 a, i64 b, i64 c);

// Where the two roots of a valid MinPoly sit relative to the unit circle.
// Real roots are irrational, so they are never +-1 and f(+-1) decides.
enum class RootLayout { Complex, Inside, Outside, Straddle };
RootLayout root_layout(const MinPoly& f);

double mahler_measure(const MinPoly& f);

struct Diagonal {
  ProjRational r;
  QuadExt K;
};
struct Split {
  ProjRational r, s;
};
struct NonSplit {
  MinPoly f;
};
using StackPoint = std::variant<Diagonal, Split, NonSplit>;

// Fundamental discriminant of Q(root of f).
i64 field_discriminant(const MinPoly& f);

double stacky_height(const StackPoint& x);
bool height_at_most(const StackPoint& x, const HeightBound& B);

// max(|a|,|b|,|c|)^2 |sqf(b^2 - 4ac)|^{1/2}; ClassificationError when the
// discriminant is zero or a square.
double proxy_height(i64 a, i64 b, i64 c);
bool proxy_height_at_most(i64 a, i64 b, i64 c, const HeightBound& B);

// Exact test of ((b + sqrt(disc))/2)^4 * dk <= B^2 for b >= 0, disc > 0 not
// a square. This is M(f)^4 |D_K| for a straddling f.
bool straddle_key_at_most(u64 b, u64 disc, u64 dk, const HeightBound& B);

// Canonical text forms: "D r=p/q D=<disc>", "S p/q p/q", "N a b c".
std::string serialize(const StackPoint& x);
StackPoint parse_point(std::string_view line);

}  // namespace symsq
