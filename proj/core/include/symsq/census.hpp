#pragma once

// Exact point counts by class, the auxiliary lattice sets that bound the
// non-split count, and verifiers for the two maps relating them.
//
// Every count is a sum of per-partition integer counts, so results do not
// depend on how the outer loop is split.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symsq/arith.hpp"
#include "symsq/parallel.hpp"
#include "symsq/points.hpp"

namespace symsq {

enum class SetId { Diag, Split, NonsplitExact, NonsplitProxy, S, Sx, Sy, SxPrime, SyPrime, Ry, T, Tx };

const char* set_name(SetId id);
std::optional<SetId> parse_set_id(std::string_view name);
bool set_takes_param(SetId id);

struct CountReport {
  SetId set = SetId::S;
  double B = 0;
  std::optional<i64> param;
  u64 count = 0;
  double elapsed_s = 0;
  int partitions = 1;
  std::vector<std::pair<std::string, u64>> extras;  // secondary counts, e.g. unordered split pairs
};

enum class Method { Brute, Formula };
enum class HeightMode { Exact, Proxy };

// Pairs (r, K) with H(r)^4 |D_K|^{1/2} <= B, K running over quadratic fields
// and Q+Q. Brute enumerates r and sieves K; formula multiplies the number of r
// of each height (4 phi(h)) by a Moebius count of fields.
CountReport count_diagonal(double B, Method method, const ExecPolicy& policy = {});

// Ordered pairs r != s with H(r)^2 H(s)^2 <= B. extras: with_diagonal
// (r = s allowed) and unordered.
CountReport count_split_nondiagonal(double B, Method method = Method::Formula, const ExecPolicy& policy = {});

// Minimal polynomials (a > 0, content 1, non-square nonzero discriminant) of
// exact or proxy height <= B.
CountReport count_nonsplit(double B, HeightMode mode, const ExecPolicy& policy = {});
// One pass over the largest box, counting every bound at once. Reports come
// back in the order of `bounds`.
std::vector<CountReport> count_nonsplit_grid(const std::vector<double>& bounds, HeightMode mode,
                                             const ExecPolicy& policy = {});

// Points of one class with height <= B, in a fixed order. Meant for small B (dump).
std::vector<StackPoint> enumerate_points(SetId id, double B);

using Tuple = std::array<i64, 3>;

struct Materialized {
  std::vector<Tuple> tuples;  // lexicographic; R_Y uses the first two slots
  int arity = 3;
  CountReport report;
};

// The auxiliary sets, with x = sqf and y = sq of the quadratic form value:
//   S      (a, b, c), sqf(a^2+b^2-c^2) not in {0, 1}, max^2 |sqf|^{1/2} <= B
//   S_X    members of S with sqf = x           S_Y   members of S with sq = y
//   SX'    (a, b, c), sqf(a^2 - bc) = x, max^2 |x|^{1/2} <= B
//   SY'    (a, b, c), (a^2+b^2+c^2)|a^2+b^2-c^2|^{1/2} <= By, y^2 | a^2+b^2-c^2 != 0
//   R_Y    (r, c), r >= 0, (r+c^2)|r-c^2|^{1/2} <= By, y^2 | r-c^2 != 0
//   T      (a, b, c), gcd(a,b) = 1, a^2+b^2 = 5 mod 8, b even, x = sqf(a^2+b^2-c^2)
//          even and >= 2, max^2 x^{1/2} <= B
//   T_X    members of T with sqf = x
Materialized materialize(SetId id, double B, std::optional<i64> param, const ExecPolicy& policy = {});
CountReport count_set(SetId id, double B, std::optional<i64> param, const ExecPolicy& policy = {});

// |S| together with |S_x| for every x and |S_y| for every y, in one pass.
struct SPartition {
  u64 total = 0;
  std::map<i64, u64> by_kernel;
  std::map<i64, u64> by_square;
};
SPartition partition_S(double B, const ExecPolicy& policy = {});

struct LemmaReport {
  u64 checked = 0;
  u64 violations = 0;
  std::string witness;  // first violating tuple in lexicographic order
  std::vector<std::pair<std::string, std::string>> notes;
  bool ok() const { return violations == 0; }
};

// (a, b, c) -> (a - c, b, a + c) from the proxy non-split set at B into S at
// image_scale * B. The linear map only guarantees image_scale = 4.
LemmaReport verify_lemma_upper(double B, double image_scale = 2.0);

// Source: gcd(a,b) = 1, a^2+b^2 = 5 mod 8, b even, sqf(a^2+b^2-c^2) >= 2 and
// even, height bound. AsStated is empty (a^2+b^2-c^2 is odd or 4 mod 8);
// OddC replaces "sqf even" with "c odd", the property the map actually uses.
enum class LowerSource { AsStated, OddC };
// AsStated: ((a-c)/2, b/2, (a+c)/2). Corrected: ((a+c)/2, b, (c-a)/2), which
// preserves the discriminant exactly.
enum class LowerMap { AsStated, Corrected };
LemmaReport verify_lemma_lower(double B, LowerSource source = LowerSource::AsStated,
                               LowerMap map = LowerMap::AsStated);

// |SY'| against sum over R_y of r2(r) = 4 F(r) + [r a nonzero square]*4 + [r = 0],
// plus the r-versus-c window c^2 - (By)^2/c^4 <= r <= c^2 + (By)^2/c^4.
struct RyReport {
  u64 sy_prime = 0;
  u64 four_sum_F = 0;
  u64 boundary = 0;  // tuples with a*b = 0
  u64 window_checked = 0;
  u64 window_violations = 0;
  std::string witness;
  bool consistent() const { return sy_prime == four_sum_F + boundary && window_violations == 0; }
};
RyReport verify_ry(double B, i64 y, const ExecPolicy& policy = {});

struct ErdosTuranCount {
  i64 exact = 0;
  double main = 0;
  double deviation = 0;
};
// #{c in [i, j) : l | c, gcd(c/l, y/l) = 1} against phi(y/l)(j - i)/y.
ErdosTuranCount erdos_turan_count(i64 y, i64 l, double i, double j);

// P^1(Q) points of exact height h, sorted.
std::vector<ProjRational> points_of_height(i64 h);

}  // namespace symsq
