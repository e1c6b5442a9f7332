#include "z4ap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace z4ap {

namespace {

constexpr int kMaxEscalations = 8;

double entropy_unchecked(double x) {
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

// inverse of H on [0, 1/2], double precision bisection
double entropy_inverse(double y) {
    double lo = 0.0, hi = 0.5;
    for (int i = 0; i < 200 && hi - lo > 1e-17; ++i) {
        double mid = 0.5 * (lo + hi);
        (entropy_unchecked(mid) < y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double fa, double b, double fb, double m, double fm,
                        double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, tol / 2, depth - 1) +
           adaptive_simpson(f, m, fm, b, fb, rm, frm, right, tol / 2,
                            depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
    if (!(b > a)) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fb = f(b), fm = f(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

}  // namespace

double entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("entropy argument " + std::to_string(x) +
                          " outside [0, 1]");
    return entropy_unchecked(x);
}

mpz_class binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return out;
}

mpz_class binom_sum(int n, int d) {
    if (n < 0 || d < 0 || d > n)
        throw DomainError("binom_sum needs 0 <= d <= n");
    mpz_class out = 0;
    for (int i = 0; i <= d; ++i) out += binomial(n, i);
    return out;
}

EntropyBoundCheck check_entropy_bound(int n, const Rational& z, int digits) {
    if (n < 1) throw DomainError("need n >= 1");
    if (z <= 0 || z * 2 > n)
        throw DomainError("need 0 < z <= n/2");
    EntropyBoundCheck out;
    out.n = n;
    out.z = Hp::from_rational(z, 64, MPFR_RNDN).to_double(MPFR_RNDN);
    mpz_class zfloor;
    mpz_fdiv_q(zfloor.get_mpz_t(), z.get_num().get_mpz_t(),
               z.get_den().get_mpz_t());
    out.lhs = binom_sum(n, static_cast<int>(zfloor.get_si()));
    Rational ratio = z / n;
    mpz_class lhs = out.lhs;
    auto lhs_log2 = [&lhs](mpfr_prec_t prec, mpfr_rnd_t rnd) {
        return log2_of(Hp::from_int(lhs, prec, rnd), rnd);
    };
    auto rhs = [&ratio, n](mpfr_prec_t prec, mpfr_rnd_t rnd) {
        return mul_si(entropy_hp(ratio, prec, rnd), n, rnd);
    };
    mpfr_prec_t prec0 = digits_to_bits(digits);
    mpfr_prec_t settled = 0;
    out.holds = certified_cmp(lhs_log2, rhs, prec0, &settled) < 0;
    out.precision_bits = static_cast<int>(settled);
    out.lhs_log2 = lhs_log2(prec0, MPFR_RNDU).to_double(MPFR_RNDU);
    out.rhs_log2 = rhs(prec0, MPFR_RNDD).to_double(MPFR_RNDD);
    return out;
}

EntropyBoundCheck check_entropy_bound(int n, double z, int digits) {
    return check_entropy_bound(n, Rational(z), digits);
}

GammaResult compute_gamma(double tolerance) {
    if (!(tolerance > 0)) throw DomainError("tolerance must be positive");
    auto g = [](double e) {
        return 0.5 * (entropy_unchecked(0.5 - e) + entropy_unchecked(2 * e));
    };
    GammaResult out;
    double a = 1e-9, b = 0.25 - 1e-9;
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = g(x1), f2 = g(x2);
    while (b - a > 1e-6) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = g(x1);
        }
        ++out.iterations;
    }
    // refine on the derivative sign: g is strictly concave, so g' crosses
    // zero once; central differences are plenty above the noise floor
    const double h = 1e-8;
    auto dg = [&](double e) { return (g(e + h) - g(e - h)) / (2 * h); };
    double lo = std::max(1e-9, a - 1e-5), hi = std::min(0.25 - 1e-9, b + 1e-5);
    double tol = std::max(tolerance, 1e-13);
    while (dg(lo) <= 0 && lo > 1e-9) lo = std::max(1e-9, lo - 1e-4);
    while (dg(hi) >= 0 && hi < 0.25 - 1e-9) hi = std::min(0.25 - 1e-9, hi + 1e-4);
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (dg(mid) > 0 ? lo : hi) = mid;
        ++out.iterations;
    }
    out.eps_star = 0.5 * (lo + hi);
    out.gamma = g(out.eps_star);
    out.tolerance_achieved = hi - lo;
    return out;
}

namespace {
double cached_gamma() {
    static const double g = compute_gamma(1e-12).gamma;
    return g;
}
}  // namespace

double theorem_bound(int n) {
    if (n < 1) throw DomainError("need n >= 1");
    return std::exp2(2.0 * cached_gamma() * n);
}

double finite_bound(int n) { return (n + 2) * theorem_bound(n); }

IntegralCheckReport integral_decomposition_check(const CosetProfile& profile,
                                                 int digits) {
    IntegralCheckReport out;
    const int n = profile.n;
    out.n = n;
    for (std::uint32_t c : profile.counts) out.total += c;

    // survival-function route: sum segment lengths times level counts over
    // the distinct count values, descending
    std::vector<std::uint64_t> distinct(profile.counts.begin(),
                                        profile.counts.end());
    std::sort(distinct.begin(), distinct.end(), std::greater<>());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        std::uint64_t upper = distinct[i];
        std::uint64_t lower = i + 1 < distinct.size() ? distinct[i + 1] : 0;
        out.step_integral += mpz_class(static_cast<unsigned long>(
                                 profile.n_at_least_int(upper))) *
                             static_cast<unsigned long>(upper - lower);
    }
    out.identity_exact = out.step_integral == out.total;

    // x0 = 2^{n H(1/4) + 1}; never an integer for n >= 1, so the certified
    // floor settles
    const Rational quarter(1, 4);
    auto x0_hp = [&](mpfr_prec_t prec, mpfr_rnd_t rnd) {
        if (n == 0) return Hp::from_int(2L, prec, rnd);
        return exp2_of(add_si(mul_si(entropy_hp(quarter, prec, rnd), n, rnd),
                              1, rnd),
                       rnd);
    };
    mpfr_prec_t prec0 = digits_to_bits(digits);
    std::uint64_t w = 0;
    {
        mpfr_prec_t prec = prec0;
        for (int round = 0;; ++round, prec *= 2) {
            if (round >= kMaxEscalations)
                throw Error("x0 floor undecided after precision escalation");
            Hp dn = x0_hp(prec, MPFR_RNDD), up = x0_hp(prec, MPFR_RNDU);
            mpz_class fdn, fup;
            mpfr_get_z(fdn.get_mpz_t(), dn.raw(), MPFR_RNDD);
            mpfr_get_z(fup.get_mpz_t(), up.raw(), MPFR_RNDD);
            if (fdn == fup) {
                w = fdn.get_ui();
                break;
            }
        }
    }
    out.x0 = x0_hp(prec0, MPFR_RNDN).to_double(MPFR_RNDN);
    out.head_cap_log2 = (entropy_unchecked(0.25) + 1.0) * n + 1.0;

    mpz_class head_int = 0, tail_int = 0;
    std::uint64_t cross = 0;
    for (std::uint32_t c : profile.counts) {
        if (c <= w)
            head_int += static_cast<unsigned long>(c);
        else {
            tail_int += static_cast<unsigned long>(c);
            ++cross;
        }
    }
    out.head_value = head_int.get_d() + static_cast<double>(cross) * out.x0;
    out.tail_step = tail_int.get_d() - static_cast<double>(cross) * out.x0;

    // head <= x0 * 2^n  <=>  head_int <= x0 * (2^n - cross)
    mpz_class room = (mpz_class(1) << n) - static_cast<unsigned long>(cross);
    auto head_lhs = [&head_int](mpfr_prec_t prec, mpfr_rnd_t rnd) {
        return Hp::from_int(head_int, prec, rnd);
    };
    auto head_rhs = [&](mpfr_prec_t prec, mpfr_rnd_t rnd) {
        return mul(x0_hp(prec, rnd), Hp::from_int(room, prec, rnd), rnd);
    };
    if (head_int == 0) {
        out.head_bounded = true;
    } else {
        out.head_bounded = certified_cmp(head_lhs, head_rhs, prec0, nullptr) < 0;
    }

    // substituted tail: integrate N(x(e)) x(e) n ln((1/2+e)/(1/2-e)) de over
    // (0, 1/4), split at the e-values where x crosses a count
    if (cross == 0) {
        out.tail_quadrature = 0.0;
        out.tail_ok = out.tail_step == 0.0;
        if (out.tail_step == 0.0) out.tail_rel_err = 0.0;
    } else {
        auto x_of = [&](double e) {
            return std::exp2(n * entropy_unchecked(0.5 - e) + 1.0);
        };
        auto weight = [&](double e) {
            return x_of(e) * n * std::log((0.5 + e) / (0.5 - e));
        };
        std::vector<std::uint64_t> levels;  // distinct counts above x0
        for (std::uint64_t v : distinct)
            if (v > w) levels.push_back(v);  // descending already
        auto eps_at = [&](double v) {
            return 0.5 - entropy_inverse((std::log2(v) - 1.0) / n);
        };
        double quad = 0.0;
        for (std::size_t i = 0; i < levels.size(); ++i) {
            double e_lo = eps_at(static_cast<double>(levels[i]));
            double e_hi =
                i + 1 < levels.size()
                    ? eps_at(static_cast<double>(levels[i + 1]))
                    : 0.25;
            double piece = integrate(weight, e_lo, e_hi, 1e-12);
            quad += static_cast<double>(profile.n_at_least_int(levels[i])) *
                    piece;
        }
        out.tail_quadrature = quad;
        double denom = std::abs(out.tail_step);
        out.tail_rel_err =
            denom > 0 ? std::abs(quad - out.tail_step) / denom : std::abs(quad);
        out.tail_ok = out.tail_rel_err <= 1e-6;
    }
    out.all_ok = out.identity_exact && out.head_bounded && out.tail_ok;
    return out;
}

CorollaryBound corollary_bound(const InvariantFactorization& f) {
    CorollaryBound out;
    mpz_class order = 1;
    unsigned long prev = 0;
    for (unsigned long m : f.factors) {
        if (m < 1) throw DomainError("invariant factors must be positive");
        if (prev != 0 && m % prev != 0)
            throw DomainError("divisibility chain violated: " +
                              std::to_string(prev) + " does not divide " +
                              std::to_string(m));
        prev = m;
        order *= m;
        if (m % 4 == 0) ++out.rk4;
    }
    out.order = order.get_d();
    out.bound = std::exp2(-2.0 * (1.0 - cached_gamma()) * out.rk4) * out.order;
    return out;
}

}  // namespace z4ap
