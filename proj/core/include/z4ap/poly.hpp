#pragma once

#include <gmpxx.h>

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "z4ap/group.hpp"
#include "z4ap/linalg.hpp"

namespace z4ap {

/// A multilinear monomial as its support bitmask: variable i (1-based in
/// text form) sits at bit i-1. Canonical order everywhere: ascending degree,
/// then ascending bitmask value.
using Monomial = std::uint32_t;

inline int monomial_degree(Monomial m) { return std::popcount(m); }
bool monomial_less(Monomial a, Monomial b);
/// All supports over n variables with degree <= d, canonical order.
std::vector<Monomial> monomials_up_to(int n, int d);

/// Multilinear polynomial over F_p, p a supported prime. Terms are stored
/// in canonical order with nonzero coefficients only. The zero polynomial
/// reports degree 0; is_zero is the authoritative flag.
class MultilinearPoly {
public:
    MultilinearPoly() = default;
    MultilinearPoly(int n, int p);
    static MultilinearPoly from_terms(
        int n, int p, std::vector<std::pair<Monomial, int>> terms);

    int nvars() const { return n_; }
    int field() const { return p_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;

    void set_coeff(Monomial m, int v);
    int coeff(Monomial m) const;
    const std::vector<std::pair<Monomial, std::uint8_t>>& terms() const {
        return terms_;
    }

    /// Value at a point of {0,1}^n given as a bitmask (valid for any p).
    int eval_mask(std::uint32_t x) const;
    /// Value at a general point of F_p^n.
    int eval(std::span<const std::uint8_t> x) const;

    /// x -> P(c + x).
    MultilinearPoly shift(std::span<const std::uint8_t> c) const;
    MultilinearPoly shift_mask(std::uint32_t c) const;

    friend bool operator==(const MultilinearPoly&,
                           const MultilinearPoly&) = default;

private:
    int n_ = 0, p_ = 2;
    std::vector<std::pair<Monomial, std::uint8_t>> terms_;
};

/// Values-of-monomials matrix: row per point, column per canonical monomial
/// of degree <= d.
struct EvalMatrixF2 {
    int n = 0, d = 0;
    std::vector<Monomial> monomials;
    Gf2Matrix mat;
};
EvalMatrixF2 evaluation_matrix(std::span<const std::uint32_t> points, int n,
                               int d);

struct EvalMatrixFp {
    int n = 0, d = 0, p = 2;
    std::vector<Monomial> monomials;
    FpMatrix mat;
};
EvalMatrixFp evaluation_matrix(
    const std::vector<std::vector<std::uint8_t>>& points, int n, int d, int p);

/// Nonzero polynomial of degree <= d vanishing on all the points, or
/// nullopt when only the zero polynomial does. Deterministic choice: among
/// the RREF kernel basis, the vector whose first nonzero coordinate in
/// canonical order is smallest, ties broken by lexicographically smaller
/// coefficient sequence.
std::optional<MultilinearPoly> vanishing_poly(
    std::span<const std::uint32_t> points, int n, int d);
std::optional<MultilinearPoly> vanishing_poly(const PointSet& s, int d);

/// Number of exponent vectors 0 <= i_1,...,i_n <= delta with sum <= d,
/// exact, by dynamic programming over the truncated product of geometric
/// series.
mpz_class monomial_count_fdelta(int n, int d, int delta);

}  // namespace z4ap
