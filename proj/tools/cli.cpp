#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "symsq/lseries.hpp"
#include "symsq/quadfield.hpp"
#include "symsq/tauber.hpp"

namespace symsq::cli {

std::vector<double> geometric_grid(double start, double stop, int points) {
  if (!(start > 0) || !(stop >= start)) throw std::invalid_argument("grid: need 0 < start <= stop");
  if (points < 2) throw std::invalid_argument("grid: need at least 2 points");
  std::vector<double> out(static_cast<size_t>(points));
  const double ratio = std::log(stop / start) / (points - 1);
  for (int i = 0; i < points; ++i) out[static_cast<size_t>(i)] = start * std::exp(ratio * i);
  out.front() = start;
  out.back() = stop;
  return out;
}

std::optional<SetId> resolve_class(std::string_view name, HeightMode height) {
  std::string up(name);
  for (char& ch : up) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (up == "DIAGONAL") return SetId::Diag;
  if (up == "NONSPLIT") return height == HeightMode::Exact ? SetId::NonsplitExact : SetId::NonsplitProxy;
  return parse_set_id(up);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

namespace {

constexpr int kUsage = 2;
constexpr int kViolation = 1;

struct Options {
  std::string cls;
  std::string height = "exact";
  std::string method = "formula";
  std::string format = "csv";
  std::string normalize = "none";
  std::string out_path;
  std::string suite;
  std::string variant = "as-stated";
  std::optional<double> bound;
  std::string bounds;
  std::optional<i64> param;
  std::optional<double> scale;
  std::optional<i64> terms;
  int workers = 0;
  int partitions = 0;
  int trials = 1000;
  u64 seed = 1;
  bool deterministic = false;
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

ExecPolicy policy_of(const Options& o) {
  ExecPolicy p;
  p.workers = o.workers > 0 ? o.workers : default_workers();
  p.partitions = o.partitions > 0 ? o.partitions : p.workers;
  return p;
}

HeightMode height_of(const Options& o) {
  if (o.height == "exact") return HeightMode::Exact;
  if (o.height == "proxy") return HeightMode::Proxy;
  throw UsageError("unknown height mode: " + o.height);
}

Method method_of(const Options& o) {
  if (o.method == "formula") return Method::Formula;
  if (o.method == "brute") return Method::Brute;
  throw UsageError("unknown method: " + o.method);
}

SetId class_of(const Options& o) {
  if (o.cls.empty()) throw UsageError("--class is required");
  auto id = resolve_class(o.cls, height_of(o));
  if (!id) throw UsageError("unknown class: " + o.cls);
  if (set_takes_param(*id) && !o.param) throw UsageError(std::string(set_name(*id)) + " needs --param");
  if (!set_takes_param(*id) && o.param) throw UsageError(std::string(set_name(*id)) + " takes no --param");
  return *id;
}

std::optional<double> normalizer(const std::string& how, double B) {
  if (how == "none") return std::nullopt;
  if (how == "b2") return B * B;
  if (how == "blogb") return B * std::log(B);
  throw UsageError("unknown normalization: " + how);
}

CountReport count_one(SetId id, double B, const Options& o) {
  const ExecPolicy policy = policy_of(o);
  switch (id) {
    case SetId::Diag: return count_diagonal(B, method_of(o), policy);
    case SetId::Split: return count_split_nondiagonal(B, method_of(o), policy);
    case SetId::NonsplitExact: return count_nonsplit(B, HeightMode::Exact, policy);
    case SetId::NonsplitProxy: return count_nonsplit(B, HeightMode::Proxy, policy);
    default: return count_set(id, B, o.param, policy);
  }
}

void emit_counts(const std::vector<CountReport>& reports, const Options& o, std::ostream& out) {
  if (o.format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
      nlohmann::ordered_json row;
      row["set_id"] = set_name(r.set);
      row["B"] = r.B;
      row["param"] = r.param ? nlohmann::ordered_json(*r.param) : nlohmann::ordered_json(nullptr);
      row["count"] = r.count;
      auto norm = normalizer(o.normalize, r.B);
      row["normalized"] = norm ? nlohmann::ordered_json(static_cast<double>(r.count) / *norm)
                               : nlohmann::ordered_json(nullptr);
      row["elapsed_s"] = o.deterministic ? 0.0 : r.elapsed_s;
      row["partitions"] = r.partitions;
      arr.push_back(row);
    }
    out << arr.dump(2) << '\n';
    return;
  }
  out << "set_id,B,param,count,normalized,elapsed_s,partitions\n";
  for (const auto& r : reports) {
    auto norm = normalizer(o.normalize, r.B);
    out << csv_field(set_name(r.set)) << ',' << format_number(r.B) << ','
        << (r.param ? std::to_string(*r.param) : "") << ',' << r.count << ','
        << (norm ? format_number(static_cast<double>(r.count) / *norm) : "") << ','
        << format_number(o.deterministic ? 0.0 : r.elapsed_s) << ',' << r.partitions << '\n';
  }
}

void check_format(const Options& o) {
  if (o.format != "csv" && o.format != "json") throw UsageError("unknown format: " + o.format);
  normalizer(o.normalize, 1);
}

int cmd_count(const Options& o, std::ostream& out) {
  check_format(o);
  if (!o.bound) throw UsageError("--bound is required");
  if (!(*o.bound > 0)) throw UsageError("--bound must be positive");
  emit_counts({count_one(class_of(o), *o.bound, o)}, o, out);
  return 0;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw UsageError("--bounds wants start:stop:points");
  try {
    size_t used = 0;
    const double start = std::stod(parts[0]);
    const double stop = std::stod(parts[1]);
    const int points = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw UsageError("--bounds: points must be an integer");
    return geometric_grid(start, stop, points);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(std::string("--bounds: ") + e.what());
  }
}

int cmd_scan(const Options& o, std::ostream& out) {
  check_format(o);
  if (o.bounds.empty()) throw UsageError("--bounds is required");
  const std::vector<double> grid = parse_grid(o.bounds);
  const SetId id = class_of(o);
  std::vector<CountReport> reports;
  if (id == SetId::NonsplitExact || id == SetId::NonsplitProxy) {
    reports = count_nonsplit_grid(grid, id == SetId::NonsplitExact ? HeightMode::Exact : HeightMode::Proxy,
                                  policy_of(o));
  } else {
    for (double B : grid) reports.push_back(count_one(id, B, o));
  }
  emit_counts(reports, o, out);
  return 0;
}

int cmd_dump(const Options& o, std::ostream& out) {
  if (!o.bound) throw UsageError("--bound is required");
  const SetId id = class_of(o);
  if (id != SetId::Diag && id != SetId::Split && id != SetId::NonsplitExact && id != SetId::NonsplitProxy)
    throw UsageError("dump supports the point classes diag, split and nonsplit");
  for (const StackPoint& p : enumerate_points(id, *o.bound)) out << serialize(p) << '\n';
  return 0;
}

// ---- verification suites

struct Row {
  std::string check;
  std::string value;
  bool ok = true;
};

struct SuiteResult {
  std::vector<Row> rows;
  std::string witness;
  bool ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.ok; });
  }
};

double bound_or(const Options& o, double fallback) { return o.bound ? *o.bound : fallback; }

void add_lemma_rows(SuiteResult& res, const LemmaReport& r) {
  res.rows.push_back({"checked", std::to_string(r.checked), true});
  res.rows.push_back({"violations", std::to_string(r.violations), r.ok()});
  for (const auto& [k, v] : r.notes) res.rows.push_back({k, v, true});
  res.witness = r.witness;
}

SuiteResult suite_lemma_upper(const Options& o) {
  SuiteResult res;
  add_lemma_rows(res, verify_lemma_upper(bound_or(o, 100), o.scale.value_or(2.0)));
  return res;
}

SuiteResult suite_lemma_lower(const Options& o) {
  LowerSource source = LowerSource::AsStated;
  LowerMap map = LowerMap::AsStated;
  if (o.variant == "odd-c") {
    source = LowerSource::OddC;
  } else if (o.variant == "corrected") {
    source = LowerSource::OddC;
    map = LowerMap::Corrected;
  } else if (o.variant != "as-stated") {
    throw UsageError("unknown lemma-lower variant: " + o.variant);
  }
  SuiteResult res;
  add_lemma_rows(res, verify_lemma_lower(bound_or(o, 500), source, map));
  return res;
}

std::vector<i64> squarefree_range(i64 lo, i64 hi, bool even_only) {
  std::vector<i64> xs;
  for (i64 x = lo; x <= hi; ++x)
    if (is_squarefree(x) && (!even_only || x % 2 == 0)) xs.push_back(x);
  return xs;
}

SuiteResult suite_sx_identity(const Options& o) {
  SuiteResult res;
  const double B = bound_or(o, 300);
  const std::vector<i64> xs = o.param ? std::vector<i64>{*o.param} : squarefree_range(2, 30, false);
  for (i64 x : xs) {
    const SxInequality r = inequality_check_Sx(x, B);
    std::ostringstream v;
    v << "sx=" << r.sx << " quadruples=" << r.quadruples << " envelope=" << r.envelope;
    const bool ok = r.identity_ok() && r.bound_ok();
    res.rows.push_back({"x=" + std::to_string(x), v.str(), ok});
    if (!ok && res.witness.empty()) res.witness = "x=" + std::to_string(x) + " " + v.str();
  }
  return res;
}

SuiteResult suite_tx_envelope(const Options& o) {
  SuiteResult res;
  const double B = bound_or(o, 300);
  const std::vector<i64> xs = o.param ? std::vector<i64>{*o.param} : squarefree_range(2, 30, true);
  for (i64 x : xs) {
    const TxEnvelope r = sum_FcoprimeG_mod8(x, B);
    std::ostringstream v;
    v << "tx=" << r.tx_count << " half_sum=" << format_number(r.half_sum())
      << " parity_failures=" << r.parity_failures;
    const bool ok = static_cast<double>(r.tx_count) <= r.half_sum() && r.parity_failures == 0;
    res.rows.push_back({"x=" + std::to_string(x), v.str(), ok});
    if (!ok && res.witness.empty()) res.witness = "x=" + std::to_string(x) + " " + v.str();
  }
  return res;
}

SuiteResult suite_cnf(const Options& o) {
  SuiteResult res;
  const i64 N = o.terms.value_or(1000000);
  const i64 lo = o.bound ? -static_cast<i64>(*o.bound) : -200;
  double worst = 0;
  u64 checked = 0;
  for (i64 D : fundamental_discriminants_in(lo, -3)) {
    const CnfCheck c = class_number_formula_check(D, N);
    ++checked;
    worst = std::max(worst, c.abs_err);
    if (c.abs_err > 1e-3 && res.witness.empty())
      res.witness = "D=" + std::to_string(D) + " L=" + format_number(c.lhs) + " formula=" + format_number(c.rhs);
  }
  res.rows.push_back({"discriminants", std::to_string(checked), true});
  res.rows.push_back({"max_abs_err", format_number(worst), worst <= 1e-3});
  return res;
}

SuiteResult suite_euler_product(const Options& o) {
  SuiteResult res;
  const i64 P = 10000, N = o.terms.value_or(1000000);
  const std::vector<i64> xs = o.param ? std::vector<i64>{*o.param} : std::vector<i64>{2, 3, 7};
  for (i64 x : xs) {
    const double prod = euler_product_trivial(x, 2.0, P);
    const double series = dirichlet_sum_r2G(x, 2.0, N);
    const double diff = std::fabs(prod - series);
    std::ostringstream v;
    v << "product=" << format_number(prod) << " series=" << format_number(series) << " diff=" << format_number(diff);
    res.rows.push_back({"x=" + std::to_string(x), v.str(), diff <= 1e-4});
    if (diff > 1e-4 && res.witness.empty()) res.witness = "x=" + std::to_string(x) + " " + v.str();
  }
  return res;
}

DirichletData random_dataset(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(1, 200);
  std::uniform_real_distribution<double> gap(0.01, 2.0), coeff(0.0, 10.0), unit(0.0, 1.0);
  DirichletData d;
  double lam = 0;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    lam += gap(rng);
    d.lambdas.push_back(lam);
    d.coeffs.push_back(unit(rng) < 0.3 ? 0.0 : coeff(rng));
  }
  return d;
}

SuiteResult suite_tauber(const Options& o) {
  SuiteResult res;
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> kdist(1, 4);
  u64 failures = 0;
  for (int t = 0; t < o.trials; ++t) {
    DirichletData d = random_dataset(rng);
    d.validate();
    const double X = d.lambdas.back() * (0.05 + 1.2 * unit(rng));
    const double eta = 0.001 + 0.498 * unit(rng);
    const int k = kdist(rng);
    const Sandwich s = sandwich_check(d, X, eta, k);
    if (!s.ok) {
      ++failures;
      if (res.witness.empty()) {
        std::ostringstream w;
        w << "trial=" << t << " X=" << format_number(X) << " eta=" << format_number(eta) << " k=" << k;
        res.witness = w.str();
      }
    }
  }
  res.rows.push_back({"sandwich_trials", std::to_string(o.trials), true});
  res.rows.push_back({"sandwich_failures", std::to_string(failures), failures == 0});

  const i64 X = o.terms.value_or(1000000);
  DirichletData zeta;
  for (i64 n = 1; n <= X; ++n) {
    zeta.lambdas.push_back(static_cast<double>(n));
    zeta.coeffs.push_back(1.0);
  }
  zeta.pole = {1.0, 1, 1.0};
  const double ez = leading_fit(zeta, {static_cast<double>(X)}).rel_err.back();
  res.rows.push_back({"zeta_rel_err", format_number(ez), ez <= 1e-3});

  // r2(n)/4 = F(n) + [n a square]; sum_{n <= X} r2(n)/4 ~ pi X / 4
  const RepCountTable F = F_table(X);
  DirichletData r2;
  for (i64 n = 1; n <= X; ++n) {
    r2.lambdas.push_back(static_cast<double>(n));
    r2.coeffs.push_back(static_cast<double>(F[n]) + (is_perfect_square(n) ? 1.0 : 0.0));
  }
  r2.pole = {1.0, 1, std::numbers::pi / 4};
  const double er = leading_fit(r2, {static_cast<double>(X)}).rel_err.back();
  res.rows.push_back({"r2_rel_err", format_number(er), er <= 1e-2});
  if (res.witness.empty() && !(ez <= 1e-3 && er <= 1e-2))
    res.witness = "leading fit: zeta " + format_number(ez) + " r2/4 " + format_number(er);
  return res;
}

// |#{c in [i, j) : l | c, gcd(c/l, y/l) = 1} - phi(y/l)(j - i)/y| <= 4 sqrt(phi(y/l))
constexpr double kErdosTuranConstant = 4.0;

SuiteResult suite_erdos_turan(const Options& o) {
  SuiteResult res;
  std::mt19937_64 rng(o.seed);
  const i64 ymax = o.bound ? static_cast<i64>(*o.bound) : 10000;
  std::uniform_int_distribution<i64> ydist(1, ymax);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  u64 exceptions = 0;
  double worst = 0;
  for (int t = 0; t < o.trials; ++t) {
    const i64 y = ydist(rng);
    std::vector<i64> divisors;
    for (i64 l = 1; l <= y; ++l)
      if (y % l == 0) divisors.push_back(l);
    const i64 l = divisors[std::uniform_int_distribution<size_t>(0, divisors.size() - 1)(rng)];
    double i = unit(rng) * static_cast<double>(y), j = unit(rng) * static_cast<double>(y);
    if (i > j) std::swap(i, j);
    const ErdosTuranCount c = erdos_turan_count(y, l, i, j);
    const double scale = std::sqrt(static_cast<double>(euler_phi(y / l)));
    worst = std::max(worst, std::fabs(c.deviation) / scale);
    if (std::fabs(c.deviation) > kErdosTuranConstant * scale) {
      ++exceptions;
      if (res.witness.empty()) {
        std::ostringstream w;
        w << "y=" << y << " l=" << l << " i=" << format_number(i) << " j=" << format_number(j)
          << " deviation=" << format_number(c.deviation);
        res.witness = w.str();
      }
    }
  }
  res.rows.push_back({"samples", std::to_string(o.trials), true});
  res.rows.push_back({"max_ratio", format_number(worst), true});
  res.rows.push_back({"exceptions", std::to_string(exceptions), exceptions == 0});
  return res;
}

SuiteResult suite_polya_vinogradov(const Options& o) {
  SuiteResult res;
  const i64 nmax = o.bound ? static_cast<i64>(*o.bound) : 10000;
  const i64 K = o.terms.value_or(100000);
  u64 checked = 0, failures = 0;
  double worst = 0;
  for (i64 n = 3; n <= nmax; ++n) {
    if (is_perfect_square(n)) continue;
    const PolyaVinogradov r = polya_vinogradov_check(n, K);
    ++checked;
    worst = std::max(worst, static_cast<double>(r.max_partial) / r.bound);
    if (!r.ok()) {
      ++failures;
      if (res.witness.empty())
        res.witness = "n=" + std::to_string(n) + " max_partial=" + std::to_string(r.max_partial);
    }
  }
  res.rows.push_back({"moduli", std::to_string(checked), true});
  res.rows.push_back({"max_ratio", format_number(worst), true});
  res.rows.push_back({"failures", std::to_string(failures), failures == 0});
  return res;
}

SuiteResult suite_partitions(const Options& o) {
  SuiteResult res;
  const double B = bound_or(o, 200);
  SPartition base;
  for (int parts : {1, 4, 16}) {
    const SPartition p = partition_S(B, {parts, o.workers});
    u64 sum_x = 0, sum_y = 0;
    for (const auto& [x, n] : p.by_kernel) sum_x += n;
    for (const auto& [y, n] : p.by_square) sum_y += n;
    const std::string tag = "partitions=" + std::to_string(parts);
    const bool identity = sum_x == p.total && sum_y == p.total;
    res.rows.push_back({tag + " |S|", std::to_string(p.total), true});
    res.rows.push_back({tag + " sum_x", std::to_string(sum_x), sum_x == p.total});
    res.rows.push_back({tag + " sum_y", std::to_string(sum_y), sum_y == p.total});
    if (!identity && res.witness.empty())
      res.witness = tag + " |S|=" + std::to_string(p.total) + " sum_x=" + std::to_string(sum_x) +
                    " sum_y=" + std::to_string(sum_y);
    if (parts == 1) {
      base = p;
    } else {
      const bool same = p.total == base.total && p.by_kernel == base.by_kernel && p.by_square == base.by_square;
      res.rows.push_back({tag + " matches_serial", same ? "yes" : "no", same});
      if (!same && res.witness.empty()) res.witness = tag + " differs from the serial partition";
    }
  }
  return res;
}

SuiteResult suite_injected_fault(const Options&) {
  SuiteResult res;
  res.rows.push_back({"injected", "1", false});
  res.witness = "injected fault";
  return res;
}

using SuiteFn = std::function<SuiteResult(const Options&)>;

const std::map<std::string, SuiteFn>& suites() {
  static const std::map<std::string, SuiteFn> table = {
      {"lemma-upper", suite_lemma_upper},
      {"lemma-lower", suite_lemma_lower},
      {"sx-identity", suite_sx_identity},
      {"tx-envelope", suite_tx_envelope},
      {"cnf", suite_cnf},
      {"euler-product", suite_euler_product},
      {"tauber", suite_tauber},
      {"erdos-turan", suite_erdos_turan},
      {"polya-vinogradov", suite_polya_vinogradov},
      {"partitions", suite_partitions},
      {"injected-fault", suite_injected_fault},
  };
  return table;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  check_format(o);
  const auto it = suites().find(o.suite);
  if (it == suites().end()) throw UsageError("unknown suite: " + o.suite);
  if (o.trials < 1) throw UsageError("--trials must be >= 1");
  const SuiteResult res = it->second(o);
  if (o.format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Row& r : res.rows)
      arr.push_back({{"suite", o.suite}, {"check", r.check}, {"value", r.value}, {"ok", r.ok}});
    out << arr.dump(2) << '\n';
  } else {
    out << "suite,check,value,ok\n";
    for (const Row& r : res.rows)
      out << csv_field(o.suite) << ',' << csv_field(r.check) << ',' << csv_field(r.value) << ','
          << (r.ok ? "true" : "false") << '\n';
  }
  if (res.ok()) return 0;
  err << "violation in " << o.suite << ": " << res.witness << '\n';
  return kViolation;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, fn] : suites()) v.push_back(k);
    return v;
  }();
  return names;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Point counts on the symmetric square of P^1 and the checks around them", "symsq"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--workers", o.workers, "worker threads (default SYMSQ_WORKERS or all cores)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--partitions", o.partitions, "outer-loop partitions (default: workers)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "csv or json");
    sub->add_option("--out", o.out_path, "write output here instead of stdout");
  };
  auto selection = [&](CLI::App* sub) {
    sub->add_option("--class", o.cls, "diag, split, nonsplit or a set name (s, s_x, sx_prime, ...)")->required();
    sub->add_option("--height", o.height, "exact or proxy (nonsplit)");
    sub->add_option("--method", o.method, "formula or brute (diag, split)");
    sub->add_option("--param", o.param, "x or y for the parametrized sets");
  };

  CLI::App* count = app.add_subcommand("count", "count one class or set at one bound");
  selection(count);
  common(count);
  count->add_option("--bound", o.bound, "height bound B");
  count->add_option("--normalize", o.normalize, "none, b2 or blogb");
  count->add_flag("--deterministic", o.deterministic, "write 0 for elapsed times");

  CLI::App* scan = app.add_subcommand("scan", "count over a geometric grid of bounds");
  selection(scan);
  common(scan);
  scan->add_option("--bounds", o.bounds, "start:stop:points");
  scan->add_option("--normalize", o.normalize, "none, b2 or blogb");
  scan->add_flag("--deterministic", o.deterministic, "write 0 for elapsed times");

  CLI::App* verify = app.add_subcommand("verify", "run a named check suite");
  common(verify);
  verify->add_option("--suite", o.suite, "suite name")->required();
  verify->add_option("--bound", o.bound, "bound (suite specific default)");
  verify->add_option("--param", o.param, "restrict to one x");
  verify->add_option("--scale", o.scale, "lemma-upper image scale (default 2)");
  verify->add_option("--variant", o.variant, "lemma-lower: as-stated, odd-c or corrected");
  verify->add_option("--terms", o.terms, "series length or K, suite specific");
  verify->add_option("--trials", o.trials, "random samples (tauber, erdos-turan)");
  verify->add_option("--seed", o.seed, "random seed");

  CLI::App* dump = app.add_subcommand("dump", "write the points of a class, one per line");
  selection(dump);
  dump->add_option("--bound", o.bound, "height bound B");
  dump->add_option("--out", o.out_path, "write output here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  std::ofstream file;
  if (!o.out_path.empty()) {
    file.open(o.out_path);
    if (!file) {
      err << "usage error: cannot open " << o.out_path << '\n';
      return kUsage;
    }
  }
  std::ostream& sink = o.out_path.empty() ? out : file;

  try {
    if (count->parsed()) return cmd_count(o, sink);
    if (scan->parsed()) return cmd_scan(o, sink);
    if (verify->parsed()) return cmd_verify(o, sink, err);
    return cmd_dump(o, sink);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace symsq::cli
