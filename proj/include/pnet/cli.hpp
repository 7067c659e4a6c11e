#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pnet/hilbert.hpp"

namespace pnet::cli {

// Whole-tool entry point; args excludes the program name. Reports go to
// `out`, diagnostics to `err`. Exit codes: 0 success or positive verdict,
// 1 negative verdict, 2 input error, 3 budget overflow.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Matrix / vector-set text format: first line "m n", then m rows of n
// decimal integers. '#' starts a comment.
Matrix parse_matrix(const std::string& text);
std::string write_matrix(const Matrix& m);
std::vector<IntVec> parse_vecset(const std::string& text, int* dim_out);
std::string write_vecset(const std::vector<IntVec>& vs, int dim);

}  // namespace pnet::cli
