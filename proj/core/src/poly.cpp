#include "z4ap/poly.hpp"

#include <algorithm>
#include <bit>

namespace z4ap {

namespace {

constexpr std::size_t kMonomialCap = std::size_t(1) << 22;

// next bitmask with the same popcount, ascending
std::uint64_t next_same_weight(std::uint64_t m) {
    std::uint64_t u = m & (~m + 1);
    std::uint64_t v = m + u;
    return v | (((m ^ v) >> 2) / u);
}

void check_poly_domain(int n, int p) {
    if (n < 0 || n > 32)
        throw DimensionError("variable count " + std::to_string(n) +
                             " outside [0, 32]");
    if (!is_supported_prime(p))
        throw DomainError("unsupported field size " + std::to_string(p));
}

}  // namespace

bool monomial_less(Monomial a, Monomial b) {
    int da = monomial_degree(a), db = monomial_degree(b);
    return da != db ? da < db : a < b;
}

std::vector<Monomial> monomials_up_to(int n, int d) {
    if (n < 0 || n > 32) throw DimensionError("variable count out of range");
    if (d < 0) throw DomainError("degree bound must be >= 0");
    std::vector<Monomial> out;
    std::uint64_t limit = std::uint64_t(1) << n;
    for (int t = 0; t <= std::min(d, n); ++t) {
        if (t == 0) {
            out.push_back(0);
            continue;
        }
        for (std::uint64_t m = (std::uint64_t(1) << t) - 1; m < limit;
             m = next_same_weight(m)) {
            if (out.size() >= kMonomialCap)
                throw CapacityError("monomial list over the cap " +
                                    std::to_string(kMonomialCap));
            out.push_back(static_cast<Monomial>(m));
        }
    }
    return out;
}

MultilinearPoly::MultilinearPoly(int n, int p) : n_(n), p_(p) {
    check_poly_domain(n, p);
}

MultilinearPoly MultilinearPoly::from_terms(
    int n, int p, std::vector<std::pair<Monomial, int>> terms) {
    MultilinearPoly out(n, p);
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) {
                  return monomial_less(a.first, b.first);
              });
    for (std::size_t i = 0; i < terms.size();) {
        Monomial m = terms[i].first;
        long long acc = 0;
        while (i < terms.size() && terms[i].first == m) acc += terms[i++].second;
        int v = static_cast<int>(acc % p);
        if (v < 0) v += p;
        if (n < 32 && (m >> n) != 0)
            throw DomainError("monomial uses a variable beyond x" +
                              std::to_string(n));
        if (v != 0) out.terms_.emplace_back(m, static_cast<std::uint8_t>(v));
    }
    return out;
}

int MultilinearPoly::degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
    return d;
}

void MultilinearPoly::set_coeff(Monomial m, int v) {
    if (n_ < 32 && (m >> n_) != 0)
        throw DomainError("monomial uses a variable beyond x" +
                          std::to_string(n_));
    v %= p_;
    if (v < 0) v += p_;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const auto& t, Monomial key) {
                                   return monomial_less(t.first, key);
                               });
    bool present = it != terms_.end() && it->first == m;
    if (v == 0) {
        if (present) terms_.erase(it);
    } else if (present) {
        it->second = static_cast<std::uint8_t>(v);
    } else {
        terms_.insert(it, {m, static_cast<std::uint8_t>(v)});
    }
}

int MultilinearPoly::coeff(Monomial m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const auto& t, Monomial key) {
                                   return monomial_less(t.first, key);
                               });
    return (it != terms_.end() && it->first == m) ? it->second : 0;
}

int MultilinearPoly::eval_mask(std::uint32_t x) const {
    int acc = 0;
    for (const auto& [m, c] : terms_)
        if ((m & ~x) == 0) acc += c;
    return acc % p_;
}

int MultilinearPoly::eval(std::span<const std::uint8_t> x) const {
    if (static_cast<int>(x.size()) != n_)
        throw DimensionError("point has " + std::to_string(x.size()) +
                             " coordinates, expected " + std::to_string(n_));
    long long acc = 0;
    for (const auto& [m, c] : terms_) {
        int prod = c;
        for (std::uint32_t rest = m; rest; rest &= rest - 1)
            prod = prod * x[std::countr_zero(rest)] % p_;
        acc += prod;
    }
    return static_cast<int>(acc % p_);
}

MultilinearPoly MultilinearPoly::shift(std::span<const std::uint8_t> c) const {
    if (static_cast<int>(c.size()) != n_)
        throw DimensionError("shift point has " + std::to_string(c.size()) +
                             " coordinates, expected " + std::to_string(n_));
    std::vector<std::pair<Monomial, int>> acc;
    for (const auto& [k, coef] : terms_) {
        // c_K prod_{i in K}(c_i + x_i) = sum_{S subset K} c^{K\S} x^S
        std::uint32_t s = k;
        while (true) {
            int factor = coef;
            for (std::uint32_t rest = k & ~s; rest; rest &= rest - 1)
                factor = factor * c[std::countr_zero(rest)] % p_;
            if (factor != 0) acc.emplace_back(s, factor);
            if (s == 0) break;
            s = (s - 1) & k;
        }
    }
    return from_terms(n_, p_, std::move(acc));
}

MultilinearPoly MultilinearPoly::shift_mask(std::uint32_t c) const {
    std::vector<std::uint8_t> v(static_cast<std::size_t>(n_), 0);
    for (int i = 0; i < n_; ++i) v[i] = (c >> i) & 1u;
    return shift(v);
}

EvalMatrixF2 evaluation_matrix(std::span<const std::uint32_t> points, int n,
                               int d) {
    EvalMatrixF2 out;
    out.n = n;
    out.d = d;
    out.monomials = monomials_up_to(n, d);
    out.mat = Gf2Matrix(points.size(), out.monomials.size());
    for (std::size_t r = 0; r < points.size(); ++r)
        for (std::size_t c = 0; c < out.monomials.size(); ++c)
            if ((out.monomials[c] & ~points[r]) == 0) out.mat.set(r, c, true);
    return out;
}

EvalMatrixFp evaluation_matrix(
    const std::vector<std::vector<std::uint8_t>>& points, int n, int d,
    int p) {
    EvalMatrixFp out;
    out.n = n;
    out.d = d;
    out.p = p;
    out.monomials = monomials_up_to(n, d);
    out.mat = FpMatrix(points.size(), out.monomials.size(), p);
    for (std::size_t r = 0; r < points.size(); ++r) {
        if (static_cast<int>(points[r].size()) != n)
            throw DimensionError("point has wrong dimension");
        for (std::size_t c = 0; c < out.monomials.size(); ++c) {
            int prod = 1;
            for (std::uint32_t rest = out.monomials[c]; rest; rest &= rest - 1)
                prod = prod * points[r][std::countr_zero(rest)] % p;
            out.mat.set(r, c, prod);
        }
    }
    return out;
}

std::optional<MultilinearPoly> vanishing_poly(
    std::span<const std::uint32_t> points, int n, int d) {
    EvalMatrixF2 em = evaluation_matrix(points, n, d);
    auto basis = em.mat.kernel_basis();
    if (basis.empty()) return std::nullopt;
    auto bit = [](const std::vector<std::uint64_t>& v, std::size_t i) {
        return (v[i / 64] >> (i % 64)) & 1u;
    };
    const std::size_t cols = em.monomials.size();
    std::size_t best = 0;
    auto leading = [&](const std::vector<std::uint64_t>& v) {
        for (std::size_t i = 0; i < cols; ++i)
            if (bit(v, i)) return i;
        return cols;
    };
    for (std::size_t b = 1; b < basis.size(); ++b) {
        std::size_t lb = leading(basis[b]), lbest = leading(basis[best]);
        if (lb != lbest) {
            if (lb < lbest) best = b;
            continue;
        }
        for (std::size_t i = 0; i < cols; ++i) {
            unsigned x = bit(basis[b], i), y = bit(basis[best], i);
            if (x != y) {
                if (x < y) best = b;
                break;
            }
        }
    }
    MultilinearPoly p(n, 2);
    for (std::size_t i = 0; i < cols; ++i)
        if (bit(basis[best], i)) p.set_coeff(em.monomials[i], 1);
    return p;
}

std::optional<MultilinearPoly> vanishing_poly(const PointSet& s, int d) {
    auto masks = s.binary_masks();
    return vanishing_poly(masks, s.dim(), d);
}

mpz_class monomial_count_fdelta(int n, int d, int delta) {
    if (n < 1) throw DomainError("need n >= 1");
    if (d < 0 || delta < 0) throw DomainError("need d >= 0 and delta >= 0");
    std::vector<mpz_class> dp(static_cast<std::size_t>(d) + 1, 0);
    dp[0] = 1;
    for (int var = 0; var < n; ++var) {
        std::vector<mpz_class> next(dp.size(), 0);
        for (int t = 0; t <= d; ++t) {
            if (dp[t] == 0) continue;
            for (int e = 0; e <= delta && t + e <= d; ++e) next[t + e] += dp[t];
        }
        dp = std::move(next);
    }
    mpz_class total = 0;
    for (const auto& v : dp) total += v;
    return total;
}

}  // namespace z4ap
