#pragma once

#include <iosfwd>
#include <string>

#include "z4ap/poly.hpp"

namespace z4ap {

/// Polynomial text format: header line `p=<prime> n=<vars>`, then one
/// monomial per line as non-descending 1-based variable indices joined by
/// `*` (duplicates collapse multilinearly); the constant monomial is the
/// literal `1`, so a bare x_1 is written `1*1`. Repeated lines accumulate,
/// so coefficients over p > 2 are written as repetition. '#' comments and
/// blank lines are ignored.
MultilinearPoly read_poly(std::istream& in);
MultilinearPoly read_poly_file(const std::string& path);

void write_poly(std::ostream& out, const MultilinearPoly& p);
void write_poly_file(const std::string& path, const MultilinearPoly& p);

}  // namespace z4ap
