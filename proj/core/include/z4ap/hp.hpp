#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <functional>
#include <string>

#include "z4ap/error.hpp"

namespace z4ap {

using Rational = mpq_class;

/// Parses an exact rational from "p/q" or a plain decimal string
/// ("0.01", "-3", "1.25"). No exponent notation.
Rational parse_rational(const std::string& text);
/// Exact ceiling, must fit a long.
long ceil_rational(const Rational& x);
long digits_to_bits(int decimal_digits);

/// Value wrapper around mpfr_t with explicit rounding on every operation.
/// Every arithmetic helper takes the rounding direction; results carry the
/// max precision of the operands so directed chains stay certified.
class Hp {
public:
    explicit Hp(mpfr_prec_t prec);
    Hp(const Hp& o);
    Hp(Hp&& o) noexcept;
    Hp& operator=(const Hp& o);
    Hp& operator=(Hp&& o) noexcept;
    ~Hp();

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    static Hp from_double(double x, mpfr_prec_t prec, mpfr_rnd_t rnd);
    static Hp from_int(const mpz_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd);
    static Hp from_int(long x, mpfr_prec_t prec, mpfr_rnd_t rnd);
    static Hp from_rational(const Rational& x, mpfr_prec_t prec,
                            mpfr_rnd_t rnd);

    double to_double(mpfr_rnd_t rnd) const;
    int cmp(const Hp& o) const { return mpfr_cmp(v_, o.v_); }
    int sign() const { return mpfr_sgn(v_); }

    friend Hp add(const Hp& a, const Hp& b, mpfr_rnd_t rnd);
    friend Hp sub(const Hp& a, const Hp& b, mpfr_rnd_t rnd);
    friend Hp mul(const Hp& a, const Hp& b, mpfr_rnd_t rnd);
    friend Hp div(const Hp& a, const Hp& b, mpfr_rnd_t rnd);
    friend Hp mul_si(const Hp& a, long b, mpfr_rnd_t rnd);
    friend Hp add_si(const Hp& a, long b, mpfr_rnd_t rnd);
    friend Hp log2_of(const Hp& a, mpfr_rnd_t rnd);
    friend Hp exp2_of(const Hp& a, mpfr_rnd_t rnd);

private:
    mpfr_t v_;
};

/// Binary entropy of an exact rational x in (0,1), directed: MPFR_RNDU
/// yields a certified upper bound, MPFR_RNDD a certified lower bound,
/// MPFR_RNDN a plain approximation.
Hp entropy_hp(const Rational& x, mpfr_prec_t prec, mpfr_rnd_t rnd);

/// A directed evaluator: returns a one-sided enclosure of its quantity at
/// the requested precision (RNDD: certified lower bound, RNDU: upper).
using DirectedFn = std::function<Hp(mpfr_prec_t, mpfr_rnd_t)>;

/// Certified strict comparison of two quantities known to be unequal.
/// Returns -1 if lhs < rhs, +1 if lhs > rhs, deciding only when the
/// one-sided enclosures separate; escalates precision (doubling, a few
/// rounds) until they do. Throws DomainError if the bounds never split,
/// which for unequal inputs means the escalation cap is too tight.
/// If settled_bits is non-null it receives the deciding precision.
int certified_cmp(const DirectedFn& lhs, const DirectedFn& rhs,
                  mpfr_prec_t start_prec, mpfr_prec_t* settled_bits = nullptr);

}  // namespace z4ap
