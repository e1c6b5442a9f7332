#include "z4ap/set_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace z4ap {

namespace {

// strip comment, trailing CR, and surrounding whitespace
std::string clean_line(std::string line) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    auto is_space = [](char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
               c == '\v';
    };
    std::size_t b = 0, e = line.size();
    while (b < e && is_space(line[b])) ++b;
    while (e > b && is_space(line[e - 1])) --e;
    return line.substr(b, e - b);
}

}  // namespace

PointSet read_set(std::istream& in) {
    std::vector<std::uint64_t> elems;
    int n = -1;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = clean_line(raw);
        if (line.empty()) continue;
        if (n == -1) {
            if (line.size() > GroupVector::kMaxDim)
                throw ParseError(lineno, "element has " +
                                             std::to_string(line.size()) +
                                             " coordinates, cap is " +
                                             std::to_string(GroupVector::kMaxDim));
            n = static_cast<int>(line.size());
        } else if (static_cast<int>(line.size()) != n) {
            throw ParseError(lineno, "element has " +
                                         std::to_string(line.size()) +
                                         " coordinates, expected " +
                                         std::to_string(n));
        }
        std::uint64_t bits = 0;
        for (int i = 0; i < n; ++i) {
            char c = line[static_cast<std::size_t>(i)];
            if (c < '0' || c > '3')
                throw ParseError(lineno, std::string("invalid digit '") + c +
                                             "', expected 0..3");
            bits |= static_cast<std::uint64_t>(c - '0') << (2 * i);
        }
        elems.push_back(bits);
    }
    if (n == -1) return PointSet(0);
    return PointSet::from_packed(n, std::move(elems));
}

PointSet read_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open set file: " + path);
    return read_set(in);
}

void write_set(std::ostream& out, const PointSet& s,
               std::span<const std::string> comments) {
    for (const auto& c : comments) out << "# " << c << "\n";
    for (std::size_t i = 0; i < s.size(); ++i) out << s.at(i).str() << "\n";
}

void write_set_file(const std::string& path, const PointSet& s,
                    std::span<const std::string> comments) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open set file for writing: " + path);
    write_set(out, s, comments);
}

}  // namespace z4ap
