#include "z4ap/cosets.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "z4ap/lemma.hpp"
#include "z4ap/poly.hpp"

namespace z4ap {

namespace {

void require_eps(const Rational& eps) {
    if (eps <= 0 || eps * 4 >= 1)
        throw DomainError("epsilon must lie in (0, 1/4)");
}

// 2^{n H(1/2 - eps) + 1} as a directed evaluator; exact 2 when n = 0
DirectedFn threshold_fn(int n, const Rational& eps) {
    Rational q = Rational(1, 2) - eps;
    return [n, q](mpfr_prec_t prec, mpfr_rnd_t rnd) {
        if (n == 0) return Hp::from_int(2L, prec, rnd);
        return exp2_of(
            add_si(mul_si(entropy_hp(q, prec, rnd), n, rnd), 1, rnd), rnd);
    };
}

// 2^{n H(2 eps)}
DirectedFn bound_fn(int n, const Rational& eps) {
    Rational q = eps * 2;
    return [n, q](mpfr_prec_t prec, mpfr_rnd_t rnd) {
        if (n == 0) return Hp::from_int(1L, prec, rnd);
        return exp2_of(mul_si(entropy_hp(q, prec, rnd), n, rnd), rnd);
    };
}

DirectedFn int_fn(mpz_class v) {
    return [v = std::move(v)](mpfr_prec_t prec, mpfr_rnd_t rnd) {
        return Hp::from_int(v, prec, rnd);
    };
}

// count >= threshold? The threshold is irrational for n >= 1 (and the n = 0
// case separates at once), so the certified compare always settles.
bool is_rich(std::uint64_t count, const DirectedFn& thr, mpfr_prec_t prec0,
             mpfr_prec_t* settled) {
    return certified_cmp(int_fn(mpz_class(static_cast<unsigned long>(count))),
                         thr, prec0, settled) > 0;
}

}  // namespace

std::uint64_t CosetProfile::n_at_least(double x) const {
    if (x <= 0.0) return std::uint64_t(1) << n;
    auto it = std::partition_point(
        counts.begin(), counts.end(),
        [x](std::uint32_t c) { return static_cast<double>(c) >= x; });
    return static_cast<std::uint64_t>(it - counts.begin());
}

std::uint64_t CosetProfile::n_at_least_int(std::uint64_t x) const {
    if (x == 0) return std::uint64_t(1) << n;
    auto it = std::partition_point(counts.begin(), counts.end(),
                                   [x](std::uint32_t c) { return c >= x; });
    return static_cast<std::uint64_t>(it - counts.begin());
}

CosetProfile coset_profile(const PointSet& a) {
    CosetProfile out;
    out.n = a.dim();
    out.total = a.size();
    CosetDecomposition dec = coset_decompose(a);
    out.counts.reserve(dec.parts.size());
    for (const auto& part : dec.parts)
        out.counts.push_back(static_cast<std::uint32_t>(part.elements.size()));
    std::sort(out.counts.begin(), out.counts.end(), std::greater<>());
    return out;
}

BCResult build_B_and_C(const PointSet& a,
                       std::span<const GroupVector> selected) {
    const int n = a.dim();
    CosetDecomposition dec = coset_decompose(a);
    std::unordered_map<std::uint64_t, const CosetDecomposition::Part*> by_key;
    for (const auto& part : dec.parts)
        by_key[part.representative.packed()] = &part;

    BCResult out;
    out.b = PointSet(n, true);
    out.c = PointSet(n, true);
    for (const GroupVector& r : selected) {
        if (r.dim() != n)
            throw DimensionError("selected coset representative has dimension " +
                                 std::to_string(r.dim()) + ", set has " +
                                 std::to_string(n));
        auto it = by_key.find(r.mod2_key());
        if (it == by_key.end())
            throw DomainError("selected coset " + r.str() +
                              " holds no elements of the set");
        const PointSet& part = it->second->elements;
        PointSet sums = torsion_to_binary(two_dot(part));
        for (std::size_t i = 0; i < sums.size(); ++i) out.b.insert(sums.at(i));
        // the doubling image of a full coset r + F_n is the singleton {2r}
        GroupVector two_r = part.at(0).doubled();
        out.c.insert(GroupVector::from_binary_mask(n, two_r.torsion_mask()));
    }
    const auto& bk = out.b.lex_keys();
    const auto& ck = out.c.lex_keys();
    std::vector<std::uint64_t> both;
    std::set_intersection(bk.begin(), bk.end(), ck.begin(), ck.end(),
                          std::back_inserter(both));
    out.disjoint = both.empty();
    return out;
}

RichCosetReport rich_coset_report(const PointSet& a, const Rational& eps,
                                  int digits) {
    require_eps(eps);
    RichCosetReport out;
    const int n = a.dim();
    out.n = n;
    out.epsilon = eps;
    out.eps_value = Hp::from_rational(eps, 64, MPFR_RNDN).to_double(MPFR_RNDN);

    CosetProfile prof = coset_profile(a);
    const mpfr_prec_t prec0 = digits_to_bits(digits);
    DirectedFn thr = threshold_fn(n, eps);
    DirectedFn bnd = bound_fn(n, eps);

    mpfr_prec_t settled = prec0, worst = prec0;
    // counts are descending and richness is monotone in the count, so the
    // rich prefix ends at the partition point
    auto first_poor = std::partition_point(
        prof.counts.begin(), prof.counts.end(), [&](std::uint32_t c) {
            bool rich = is_rich(c, thr, prec0, &settled);
            worst = std::max(worst, settled);
            return rich;
        });
    out.rich_count =
        static_cast<std::uint64_t>(first_poor - prof.counts.begin());

    out.vacuous =
        certified_cmp(thr, int_fn(mpz_class(1) << n), prec0, &settled) > 0;
    worst = std::max(worst, settled);
    out.assertion_holds =
        certified_cmp(
            int_fn(mpz_class(static_cast<unsigned long>(out.rich_count))), bnd,
            prec0, &settled) < 0;
    worst = std::max(worst, settled);
    out.precision_bits = static_cast<int>(worst);

    out.threshold = thr(prec0, MPFR_RNDU).to_double(MPFR_RNDN);
    out.bound = bnd(prec0, MPFR_RNDU).to_double(MPFR_RNDN);
    if (n > 0) {
        Rational q = Rational(1, 2) - eps;
        out.threshold_log2 =
            mul_si(entropy_hp(q, prec0, MPFR_RNDU), n, MPFR_RNDN)
                .to_double(MPFR_RNDN) +
            1.0;
        out.bound_log2 = mul_si(entropy_hp(eps * 2, prec0, MPFR_RNDU), n,
                                MPFR_RNDN)
                             .to_double(MPFR_RNDN);
    } else {
        out.threshold_log2 = 1.0;
        out.bound_log2 = 0.0;
    }
    return out;
}

std::vector<GroupVector> rich_cosets(const PointSet& a, const Rational& eps,
                                     int digits) {
    require_eps(eps);
    const int n = a.dim();
    CosetDecomposition dec = coset_decompose(a);
    DirectedFn thr = threshold_fn(n, eps);
    const mpfr_prec_t prec0 = digits_to_bits(digits);
    std::map<std::uint64_t, bool> memo;
    std::vector<GroupVector> out;
    for (const auto& part : dec.parts) {
        std::uint64_t c = part.elements.size();
        auto it = memo.find(c);
        if (it == memo.end())
            it = memo.emplace(c, is_rich(c, thr, prec0, nullptr)).first;
        if (it->second) out.push_back(part.representative);
    }
    return out;
}

ReplayTrace replay_proposition(const PointSet& a, const Rational& eps,
                               int digits) {
    require_eps(eps);
    const int n = a.dim();
    if (n > 20)
        throw CapacityError("replay enumerates F_2^n and needs n <= 20");
    auto pf = is_progression_free(a);
    if (!pf.progression_free)
        throw DomainError("replay needs a progression-free input set");

    ReplayTrace t;
    t.n = n;
    t.epsilon = eps;
    t.ceil_2eps_n = ceil_rational(eps * 2 * n);
    t.d = n - static_cast<int>(t.ceil_2eps_n);
    t.rich = rich_coset_report(a, eps, digits);
    t.hypothesis_satisfiable = !t.rich.assertion_holds;
    auto push = [&t](std::string name, bool ok, std::string detail) {
        t.steps.push_back({std::move(name), ok, std::move(detail)});
    };

    if (t.rich.vacuous) {
        push("vacuous", true,
             "threshold exceeds 2^n, no coset can reach it; nothing to replay");
        t.all_ok = true;
        return t;
    }

    const mpfr_prec_t prec0 = digits_to_bits(digits);
    std::vector<GroupVector> rich = rich_cosets(a, eps, digits);
    BCResult bc = build_B_and_C(a, rich);
    mpz_class two_m = 2 * lemma_m(n, t.d);

    if (!t.hypothesis_satisfiable) {
        push("rich_assertion", true,
             std::to_string(t.rich.rich_count) + " rich cosets, below 2^{nH(2eps)}");
        push("c_size", bc.c.size() == rich.size(),
             "doubling images are pairwise distinct singletons: |C| = " +
                 std::to_string(bc.c.size()) + " from " +
                 std::to_string(rich.size()) + " cosets");
        push("disjoint", bc.disjoint,
             "B and C share no point, |B| = " + std::to_string(bc.b.size()) +
                 ", |C| = " + std::to_string(bc.c.size()));
        // vanishing choices on the complement of C
        std::vector<std::uint32_t> cbar;
        {
            std::vector<std::uint32_t> cm = bc.c.binary_masks();
            std::sort(cm.begin(), cm.end());
            for (std::uint32_t x = 0; x < (std::uint32_t(1) << n); ++x)
                if (!std::binary_search(cm.begin(), cm.end(), x))
                    cbar.push_back(x);
        }
        bool b_in_cbar = true;
        {
            std::vector<std::uint32_t> cm = bc.c.binary_masks();
            std::sort(cm.begin(), cm.end());
            for (std::uint32_t bm : bc.b.binary_masks())
                if (std::binary_search(cm.begin(), cm.end(), bm))
                    b_in_cbar = false;
        }
        push("b_in_c_complement", b_in_cbar,
             "every pairwise-sum point avoids C");
        auto p = vanishing_poly(cbar, n, t.d);
        if (p) {
            bool on_b = true;
            for (std::uint32_t bm : bc.b.binary_masks())
                if (p->eval_mask(bm) != 0) on_b = false;
            push("vanishing_poly", true,
                 "nonzero polynomial of degree " + std::to_string(p->degree()) +
                     " <= " + std::to_string(t.d) +
                     " vanishing off C exists");
            push("p_vanishes_on_b", on_b,
                 "the polynomial vanishes on all " +
                     std::to_string(bc.b.size()) + " points of B");
        } else {
            push("vanishing_poly", true,
                 "only the zero polynomial of degree <= " +
                     std::to_string(t.d) + " vanishes off C here");
        }
        bool thr_gt = certified_cmp(int_fn(two_m), threshold_fn(n, eps), prec0,
                                    nullptr) < 0;
        push("threshold_exceeds_2m", thr_gt,
             "2^{nH(1/2-eps)+1} > 2m with 2m = " + two_m.get_str());
        bool sizes_ok = true;
        CosetDecomposition dec = coset_decompose(a);
        std::unordered_map<std::uint64_t, std::size_t> size_by_key;
        for (const auto& part : dec.parts)
            size_by_key[part.representative.packed()] = part.elements.size();
        for (const GroupVector& r : rich)
            if (mpz_class(static_cast<unsigned long>(
                    size_by_key[r.mod2_key()])) <= two_m)
                sizes_ok = false;
        push("rich_sizes_exceed_2m", sizes_ok,
             rich.empty() ? "no rich cosets at this epsilon"
                          : "every rich coset holds more than 2m elements");
        push("hypothesis", true, "hypothesis of contradiction not satisfiable");
        t.contradiction_found = false;
    } else {
        // counterfactual: the rich-coset count violated its bound, so chase
        // the vanishing polynomial through the doubling points
        push("rich_assertion", false,
             std::to_string(t.rich.rich_count) +
                 " rich cosets meet or exceed 2^{nH(2eps)}; replaying the "
                 "contradiction");
        push("c_size", bc.c.size() == rich.size(),
             "|C| = " + std::to_string(bc.c.size()));
        push("disjoint", bc.disjoint, "B and C share no point");
        std::vector<std::uint32_t> cm = bc.c.binary_masks();
        std::sort(cm.begin(), cm.end());
        std::vector<std::uint32_t> cbar;
        for (std::uint32_t x = 0; x < (std::uint32_t(1) << n); ++x)
            if (!std::binary_search(cm.begin(), cm.end(), x)) cbar.push_back(x);
        auto p = vanishing_poly(cbar, n, t.d);
        if (!p) {
            push("vanishing_poly", false,
                 "no nonzero polynomial of degree <= " + std::to_string(t.d) +
                     " vanishes off C; the dimension count failed");
            t.all_ok = false;
            return t;
        }
        push("vanishing_poly", true,
             "nonzero polynomial of degree " + std::to_string(p->degree()) +
                 " <= " + std::to_string(t.d) + " vanishing off C");
        bool on_b = true;
        for (std::uint32_t bm : bc.b.binary_masks())
            if (p->eval_mask(bm) != 0) on_b = false;
        push("p_vanishes_on_doubled_pairs", on_b,
             "the polynomial vanishes on every pairwise-sum point");
        CosetDecomposition dec = coset_decompose(a);
        std::unordered_map<std::uint64_t, const CosetDecomposition::Part*>
            by_key;
        for (const auto& part : dec.parts)
            by_key[part.representative.packed()] = &part;
        bool lemma_ok = true;
        for (const GroupVector& r : rich) {
            const PointSet& part = by_key[r.mod2_key()]->elements;
            GroupVector base = part.at(0);
            std::uint32_t c_mask = base.doubled().torsion_mask();
            MultilinearPoly q = p->shift_mask(c_mask);
            std::vector<std::uint32_t> masks;
            masks.reserve(part.size());
            for (std::size_t i = 0; i < part.size(); ++i)
                masks.push_back(part.at(i).sub(base).torsion_mask());
            FpPointSet pts = FpPointSet::from_masks(n, masks);
            LemmaReport rep = check_lemma(q, pts, t.d);
            if (!(rep.size_ok && rep.hypothesis_ok && rep.p0_zero))
                lemma_ok = false;
        }
        push("lemma_per_coset", lemma_ok,
             "shifted polynomial vanishes at the doubling point of each of " +
                 std::to_string(rich.size()) + " rich cosets");
        bool everywhere = !p->is_zero();
        for (std::uint32_t x = 0; x < (std::uint32_t(1) << n); ++x)
            if (p->eval_mask(x) != 0) everywhere = false;
        t.contradiction_found = everywhere && lemma_ok && on_b;
        push("contradiction", t.contradiction_found,
             "a nonzero polynomial vanishes on all of F_2^n");
    }
    t.all_ok = std::all_of(t.steps.begin(), t.steps.end(),
                           [](const ReplayStep& s) { return s.ok; });
    return t;
}

}  // namespace z4ap
