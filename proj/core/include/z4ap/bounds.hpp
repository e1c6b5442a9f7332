#pragma once

#include <gmpxx.h>

#include <vector>

#include "z4ap/cosets.hpp"
#include "z4ap/hp.hpp"

namespace z4ap {

/// Binary entropy in double precision. Domain [0,1]; the endpoints return 0
/// by continuous extension.
double entropy(double x);

mpz_class binomial(int n, int k);
/// Exact Σ_{i=0}^{d} C(n,i), 0 <= d <= n.
mpz_class binom_sum(int n, int d);

struct EntropyBoundCheck {
    int n = 0;
    double z = 0;
    mpz_class lhs;           // Σ_{i<=floor(z)} C(n,i)
    double lhs_log2 = 0;     // rounded up
    double rhs_log2 = 0;     // n*H(z/n), rounded down
    bool holds = false;
    int precision_bits = 0;  // precision that settled the comparison
};

/// Certifies Σ_{i<=floor(z)} C(n,i) < 2^{n H(z/n)} by comparing the exact
/// sum against the directed-rounded right side, escalating precision on an
/// undecided margin. The sum truncates at floor(z); H is taken at z/n.
EntropyBoundCheck check_entropy_bound(int n, const Rational& z,
                                      int digits = 50);
EntropyBoundCheck check_entropy_bound(int n, double z, int digits = 50);

struct GammaResult {
    double gamma = 0;
    double eps_star = 0;
    int iterations = 0;
    double tolerance_achieved = 0;
};

/// Maximizes (H(1/2 - e) + H(2e))/2 over e in (0, 1/4): golden-section
/// bracketing refined by bisection on the finite-difference derivative.
GammaResult compute_gamma(double tolerance);

/// 4^{gamma n} with gamma from compute_gamma at tolerance 1e-12.
double theorem_bound(int n);
/// (n+2) * 4^{gamma n}.
double finite_bound(int n);

struct IntegralCheckReport {
    int n = 0;
    mpz_class total;          // |A|
    mpz_class step_integral;  // integral of N as a step function, exact
    bool identity_exact = false;
    double x0 = 0;               // 2^{n H(1/4) + 1}
    double head_value = 0;       // integral of N over [0, x0]
    double head_cap_log2 = 0;    // (H(1/4) + 1) n + 1
    bool head_bounded = false;   // certified head_value <= 2^{head_cap_log2}
    double tail_step = 0;        // integral of N over [x0, 2^{n+1}], exact form
    double tail_quadrature = 0;  // same integral after the eps substitution
    double tail_rel_err = 0;
    bool tail_ok = false;        // relative error <= 1e-6
    bool all_ok = false;
};

/// Exact layer-cake identity |A| = ∫ N, the head-segment cap, and the
/// substituted tail integral checked by adaptive quadrature against the
/// exact step value.
IntegralCheckReport integral_decomposition_check(const CosetProfile& profile,
                                                 int digits = 50);

struct InvariantFactorization {
    std::vector<unsigned long> factors;  // m_1 | m_2 | ... | m_k
};

struct CorollaryBound {
    int rk4 = 0;
    double order = 0;  // |G|
    double bound = 0;  // 4^{-(1-gamma) rk4} |G|
};

/// rk4 = number of invariant factors divisible by 4; bound per the group
/// reduction. Throws on a broken divisibility chain.
CorollaryBound corollary_bound(const InvariantFactorization& f);

}  // namespace z4ap
