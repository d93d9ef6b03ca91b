#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lsol/model.hpp"

namespace lsol {

/// Problem from a JSON file. Malformed input raises ParseError, rejected values
/// ValidationError; both carry the dotted field path.
Problem load_config(const std::string& path);
Problem parse_config(const std::string& text);

enum class TableFormat { Csv, Json };

/// CSV: header line then rows, 17 significant digits, LF line ends.
/// JSON: array of objects keyed by the header. Throws IoError if the sink fails.
void write_table(const std::vector<std::vector<double>>& rows, const std::vector<std::string>& header,
                 TableFormat format, std::ostream& sink);

/// "dirichlet", "neumann" or "robin:<beta>".
BoundaryOp parse_bc(const std::string& s);

/// N points on [0, 0.98R], clustered like Chebyshev–Lobatto nodes; the middle node is R/2.
std::vector<double> profile_samples(double R, int N);

/// Entry point of the command-line tool (arguments without the program name).
/// Exit codes: 0 success, 1 validation error, 2 solver failure, 3 verify failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lsol
