#include "z4ap/hp.hpp"

#include <cctype>
#include <cmath>

namespace z4ap {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw DomainError("empty rational literal");
    auto all_digits = [](const std::string& s) {
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    std::string body = text;
    bool neg = false;
    if (body[0] == '+' || body[0] == '-') {
        neg = body[0] == '-';
        body.erase(0, 1);
    }
    Rational out;
    if (auto slash = body.find('/'); slash != std::string::npos) {
        std::string num = body.substr(0, slash), den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw DomainError("bad rational literal '" + text + "'");
        out = Rational(mpz_class(num), mpz_class(den));
        if (out.get_den() == 0)
            throw DomainError("zero denominator in '" + text + "'");
        out.canonicalize();
    } else {
        std::string ip = body, fp;
        if (auto dot = body.find('.'); dot != std::string::npos) {
            ip = body.substr(0, dot);
            fp = body.substr(dot + 1);
        }
        if (ip.empty()) ip = "0";
        if (!all_digits(ip) || (!fp.empty() && !all_digits(fp)))
            throw DomainError("bad decimal literal '" + text + "'");
        mpz_class den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        out = Rational(mpz_class(ip) * den + mpz_class(fp.empty() ? "0" : fp),
                       den);
        out.canonicalize();
    }
    if (neg) out = -out;
    return out;
}

long ceil_rational(const Rational& x) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(),
               x.get_den().get_mpz_t());
    if (!q.fits_slong_p()) throw CapacityError("ceiling does not fit a long");
    return q.get_si();
}

long digits_to_bits(int decimal_digits) {
    if (decimal_digits < 1) throw DomainError("precision needs >= 1 digit");
    return static_cast<long>(std::ceil(decimal_digits * 3.3219280948873623)) +
           16;
}

Hp::Hp(mpfr_prec_t prec) { mpfr_init2(v_, prec); }

Hp::Hp(const Hp& o) {
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);  // same precision, exact copy
}

Hp::Hp(Hp&& o) noexcept {
    mpfr_init2(v_, o.prec());
    mpfr_swap(v_, o.v_);
}

Hp& Hp::operator=(const Hp& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Hp& Hp::operator=(Hp&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
}

Hp::~Hp() { mpfr_clear(v_); }

Hp Hp::from_double(double x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Hp out(prec);
    mpfr_set_d(out.v_, x, rnd);
    return out;
}

Hp Hp::from_int(const mpz_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Hp out(prec);
    mpfr_set_z(out.v_, x.get_mpz_t(), rnd);
    return out;
}

Hp Hp::from_int(long x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Hp out(prec);
    mpfr_set_si(out.v_, x, rnd);
    return out;
}

Hp Hp::from_rational(const Rational& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Hp out(prec);
    mpfr_set_q(out.v_, x.get_mpq_t(), rnd);
    return out;
}

double Hp::to_double(mpfr_rnd_t rnd) const { return mpfr_get_d(v_, rnd); }

namespace {
mpfr_prec_t join_prec(const Hp& a, const Hp& b) {
    return std::max(a.prec(), b.prec());
}
}  // namespace

Hp add(const Hp& a, const Hp& b, mpfr_rnd_t rnd) {
    Hp out(join_prec(a, b));
    mpfr_add(out.v_, a.v_, b.v_, rnd);
    return out;
}

Hp sub(const Hp& a, const Hp& b, mpfr_rnd_t rnd) {
    Hp out(join_prec(a, b));
    mpfr_sub(out.v_, a.v_, b.v_, rnd);
    return out;
}

Hp mul(const Hp& a, const Hp& b, mpfr_rnd_t rnd) {
    Hp out(join_prec(a, b));
    mpfr_mul(out.v_, a.v_, b.v_, rnd);
    return out;
}

Hp div(const Hp& a, const Hp& b, mpfr_rnd_t rnd) {
    Hp out(join_prec(a, b));
    mpfr_div(out.v_, a.v_, b.v_, rnd);
    return out;
}

Hp mul_si(const Hp& a, long b, mpfr_rnd_t rnd) {
    Hp out(a.prec());
    mpfr_mul_si(out.v_, a.v_, b, rnd);
    return out;
}

Hp add_si(const Hp& a, long b, mpfr_rnd_t rnd) {
    Hp out(a.prec());
    mpfr_add_si(out.v_, a.v_, b, rnd);
    return out;
}

Hp log2_of(const Hp& a, mpfr_rnd_t rnd) {
    if (a.sign() <= 0) throw DomainError("log2 of a nonpositive value");
    Hp out(a.prec());
    mpfr_log2(out.v_, a.v_, rnd);
    return out;
}

Hp exp2_of(const Hp& a, mpfr_rnd_t rnd) {
    Hp out(a.prec());
    mpfr_exp2(out.v_, a.v_, rnd);
    return out;
}

Hp entropy_hp(const Rational& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    if (x <= 0 || x >= 1)
        throw DomainError("entropy with certified direction needs 0 < x < 1");
    if (rnd != MPFR_RNDU && rnd != MPFR_RNDD && rnd != MPFR_RNDN)
        throw DomainError("entropy direction must be up, down or nearest");
    // RNDN gives a plain approximation (display paths); the directed modes
    // give one-sided bounds
    mpfr_rnd_t anti = rnd == MPFR_RNDU   ? MPFR_RNDD
                      : rnd == MPFR_RNDD ? MPFR_RNDU
                                         : MPFR_RNDN;
    // q log2(1/q) with q in (0,1) is a product of positives; rounding the
    // factor toward rnd and 1/q via the opposite direction on q keeps the
    // whole term a one-sided bound
    auto term = [&](const Rational& q) {
        Hp qr = Hp::from_rational(q, prec, rnd);
        Hp qa = Hp::from_rational(q, prec, anti);
        Hp inv = div(Hp::from_int(1L, prec, rnd), qa, rnd);
        return mul(qr, log2_of(inv, rnd), rnd);
    };
    return add(term(x), term(Rational(1) - x), rnd);
}

int certified_cmp(const DirectedFn& lhs, const DirectedFn& rhs,
                  mpfr_prec_t start_prec, mpfr_prec_t* settled_bits) {
    constexpr int kMaxEscalations = 8;
    mpfr_prec_t prec = start_prec;
    for (int round = 0; round < kMaxEscalations; ++round, prec *= 2) {
        if (lhs(prec, MPFR_RNDU).cmp(rhs(prec, MPFR_RNDD)) < 0) {
            if (settled_bits) *settled_bits = prec;
            return -1;
        }
        if (lhs(prec, MPFR_RNDD).cmp(rhs(prec, MPFR_RNDU)) > 0) {
            if (settled_bits) *settled_bits = prec;
            return 1;
        }
    }
    throw DomainError("comparison undecided after precision escalation");
}

}  // namespace z4ap
