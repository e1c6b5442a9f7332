#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "z4ap/group.hpp"

namespace z4ap {

/// Set file format: UTF-8 text, '#' starts a comment, blank lines ignored,
/// one element per line as exactly n characters from {0,1,2,3} with
/// coordinate 1 leftmost. The dimension is inferred from the first element;
/// mixed lengths are a ParseError carrying the 1-based line number.
/// A file with no elements parses as the empty set in dimension 0.
PointSet read_set(std::istream& in);
PointSet read_set_file(const std::string& path);

void write_set(std::ostream& out, const PointSet& s,
               std::span<const std::string> comments = {});
void write_set_file(const std::string& path, const PointSet& s,
                    std::span<const std::string> comments = {});

}  // namespace z4ap
