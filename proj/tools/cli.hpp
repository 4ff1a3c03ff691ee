#pragma once

// Command-line front end. run() is the whole program minus argv handling so
// that tests can drive it with in-memory streams.
//
//   count   one bound            scan    geometric bound grid
//   verify  named check suite    dump    points of a class, one per line
//
// Exit codes: 0 success, 1 a verification found a violation (witness on the
// error stream), 2 usage error.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symsq/census.hpp"

namespace symsq::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// start, start r, ..., stop with r = (stop/start)^{1/(points-1)}; the ends are exact.
std::vector<double> geometric_grid(double start, double stop, int points);

// "diag", "split", "nonsplit" (picks the height mode) or a set name such as
// "s_x"; case-insensitive.
std::optional<SetId> resolve_class(std::string_view name, HeightMode height);

// RFC 4180 field quoting.
std::string csv_field(std::string_view s);

// Locale-free shortest-ish decimal for CSV/JSON cells.
std::string format_number(double v);

const std::vector<std::string>& suite_names();

}  // namespace symsq::cli
