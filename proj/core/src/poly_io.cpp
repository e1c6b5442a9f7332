#include "z4ap/poly_io.hpp"

#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

namespace z4ap {

namespace {

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

int parse_int(std::string_view s, int lineno, const std::string& what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError(lineno, "bad " + what + " '" + std::string(s) + "'");
    return v;
}

}  // namespace

MultilinearPoly read_poly(std::istream& in) {
    std::string raw;
    int lineno = 0;
    int p = -1, n = -1;
    std::vector<std::pair<Monomial, int>> terms;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = clean_line(raw);
        if (line.empty()) continue;
        if (p == -1) {
            std::istringstream hs(line);
            std::string ptok, ntok;
            hs >> ptok >> ntok;
            std::string rest;
            if (!(hs >> rest).fail() || !ptok.starts_with("p=") ||
                !ntok.starts_with("n="))
                throw ParseError(lineno, "expected header 'p=<prime> n=<vars>'");
            p = parse_int(std::string_view(ptok).substr(2), lineno, "prime");
            n = parse_int(std::string_view(ntok).substr(2), lineno,
                          "variable count");
            if (!is_supported_prime(p))
                throw ParseError(lineno,
                                 "unsupported field size " + std::to_string(p));
            if (n < 0 || n > 32)
                throw ParseError(lineno, "variable count " + std::to_string(n) +
                                             " outside [0, 32]");
            continue;
        }
        if (line == "1") {
            terms.emplace_back(0, 1);
            continue;
        }
        Monomial m = 0;
        int prev = 0;
        std::size_t start = 0;
        while (start <= line.size()) {
            std::size_t stop = line.find('*', start);
            if (stop == std::string::npos) stop = line.size();
            int idx = parse_int(
                std::string_view(line).substr(start, stop - start), lineno,
                "variable index");
            if (idx < 1 || idx > n)
                throw ParseError(lineno, "variable index " +
                                             std::to_string(idx) +
                                             " outside [1, " +
                                             std::to_string(n) + "]");
            if (idx < prev)
                throw ParseError(lineno,
                                 "variable indices must be non-descending");
            prev = idx;
            m |= Monomial(1) << (idx - 1);
            if (stop == line.size()) break;
            start = stop + 1;
        }
        terms.emplace_back(m, 1);
    }
    if (p == -1) throw ParseError(lineno + 1, "missing header line");
    return MultilinearPoly::from_terms(n, p, std::move(terms));
}

MultilinearPoly read_poly_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open polynomial file: " + path);
    return read_poly(in);
}

void write_poly(std::ostream& out, const MultilinearPoly& p) {
    out << "p=" << p.field() << " n=" << p.nvars() << "\n";
    for (const auto& [m, c] : p.terms()) {
        std::string line;
        if (m == 0) {
            line = "1";
        } else if (m == 1) {
            // bare x_1 would collide with the constant's literal "1"; the
            // repeated index collapses multilinearly to the same monomial
            line = "1*1";
        } else {
            for (std::uint32_t rest = m; rest; rest &= rest - 1) {
                if (!line.empty()) line += '*';
                line += std::to_string(std::countr_zero(rest) + 1);
            }
        }
        for (int rep = 0; rep < c; ++rep) out << line << "\n";
    }
}

void write_poly_file(const std::string& path, const MultilinearPoly& p) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open polynomial file for writing: " + path);
    write_poly(out, p);
}

}  // namespace z4ap
