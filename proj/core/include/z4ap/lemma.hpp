#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "z4ap/poly.hpp"

namespace z4ap {

/// Point set in F_p^n, one byte per coordinate.
struct FpPointSet {
    int n = 0;
    int p = 2;
    std::vector<std::vector<std::uint8_t>> pts;

    static FpPointSet from_masks(int n, std::span<const std::uint32_t> masks);
    static FpPointSet from_binary(const PointSet& s);
};

/// Coefficients C_{I,J} of the two-variable expansion
/// P(x-y) = Σ C_{I,J} x^I y^J over disjoint supports I, J.
struct DifferenceExpansion {
    int n = 0, p = 2, d = 0;  // d = degree of the expanded polynomial
    std::unordered_map<std::uint64_t, std::uint8_t> c;  // nonzero only

    static std::uint64_t key(Monomial i, Monomial j) {
        return std::uint64_t(i) | (std::uint64_t(j) << 32);
    }
    int coeff(Monomial i, Monomial j) const;
};

/// Derives the coefficients by expanding prod_{i in K}(x_i - y_i) term by
/// term. The closed form (sign times a coefficient of P) is test-side
/// oracle material, never the production path.
DifferenceExpansion difference_expansion(const MultilinearPoly& p);

struct LemmaCertificate {
    int n = 0, p = 2, d = 0;
    std::size_t m = 0;            // Σ_{i<=floor(d/2)} C(n,i), checked to fit
    std::vector<Monomial> kappa;  // K_1..K_m, canonical order
    FpPointSet points;
    std::vector<std::vector<std::uint8_t>> u;  // per point, length 2m
    std::vector<std::vector<std::uint8_t>> v;
    std::vector<std::vector<std::uint8_t>> gram;  // pairwise <u(a), v(b)>
};

/// Populates u and v exactly per the four displayed block formulas: first
/// u-block and last v-block are monomial evaluations x^{K_i} / y^{K_i}; the
/// other blocks sum expansion coefficients over the complementary supports,
/// high degrees paired with u, all degrees with v. degree_bound is the
/// declared d, not deg P.
LemmaCertificate build_certificate(const MultilinearPoly& p,
                                   const FpPointSet& a, int degree_bound,
                                   int threads = 1);

struct LemmaReport {
    mpz_class m;
    std::size_t set_size = 0;
    bool size_ok = false;        // |A| > 2m
    bool hypothesis_ok = false;  // every off-diagonal gram entry is 0
    bool p0_zero = false;
    std::size_t u_rank = 0;
    bool contract_ok = false;  // size_ok && hypothesis_ok implies p0_zero
};

LemmaReport check_lemma(const MultilinearPoly& p, const FpPointSet& a,
                        int degree_bound, int threads = 1);

struct IndependenceResult {
    std::size_t u_rank = 0;
    std::size_t set_size = 0;
    std::size_t two_m = 0;
    bool rank_equals_size = false;
};

/// Precondition: the contradiction configuration (nonzero diagonal, zero
/// off-diagonal); violations throw naming the failing gram entry. Returns
/// the u-family rank next to |A| and 2m.
IndependenceResult independence_witness(const LemmaCertificate& cert);

/// Σ_{i<=floor(d/2)} C(n,i), exact.
mpz_class lemma_m(int n, int d);

}  // namespace z4ap
