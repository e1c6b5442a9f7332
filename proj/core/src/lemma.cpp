#include "z4ap/lemma.hpp"

#include <algorithm>

#include "z4ap/linalg.hpp"
#include "z4ap/parallel.hpp"

namespace z4ap {

namespace {

constexpr std::size_t kCertificateCap = std::size_t(1) << 20;

int eval_monomial(Monomial m, const std::vector<std::uint8_t>& pt, int p) {
    int prod = 1;
    for (std::uint32_t rest = m; rest; rest &= rest - 1)
        prod = prod * pt[std::countr_zero(rest)] % p;
    return prod;
}

void validate_points(const MultilinearPoly& p, const FpPointSet& a) {
    if (a.p != p.field())
        throw DomainError("point set field F_" + std::to_string(a.p) +
                          " does not match polynomial field F_" +
                          std::to_string(p.field()));
    if (a.n != p.nvars())
        throw DimensionError("point set dimension " + std::to_string(a.n) +
                             " does not match polynomial on " +
                             std::to_string(p.nvars()) + " variables");
    for (const auto& pt : a.pts) {
        if (static_cast<int>(pt.size()) != a.n)
            throw DimensionError("point with wrong coordinate count");
        for (std::uint8_t c : pt)
            if (c >= a.p)
                throw DomainError("coordinate " + std::to_string(int(c)) +
                                  " outside F_" + std::to_string(a.p));
    }
}

}  // namespace

FpPointSet FpPointSet::from_masks(int n, std::span<const std::uint32_t> masks) {
    FpPointSet out;
    out.n = n;
    out.p = 2;
    out.pts.reserve(masks.size());
    for (std::uint32_t m : masks) {
        std::vector<std::uint8_t> pt(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i) pt[i] = (m >> i) & 1u;
        out.pts.push_back(std::move(pt));
    }
    return out;
}

FpPointSet FpPointSet::from_binary(const PointSet& s) {
    auto masks = s.binary_masks();
    return from_masks(s.dim(), masks);
}

int DifferenceExpansion::coeff(Monomial i, Monomial j) const {
    auto it = c.find(key(i, j));
    return it == c.end() ? 0 : it->second;
}

DifferenceExpansion difference_expansion(const MultilinearPoly& p) {
    DifferenceExpansion out;
    out.n = p.nvars();
    out.p = p.field();
    out.d = p.degree();
    const int q = p.field();
    for (const auto& [k, coef] : p.terms()) {
        // prod_{i in K}(x_i - y_i) = Σ_{J subset K} (-1)^{|J|} x^{K\J} y^J
        std::uint32_t j = k;
        while (true) {
            int sign = monomial_degree(j) % 2 == 0 ? 1 : q - 1;
            std::uint64_t key = DifferenceExpansion::key(k & ~j, j);
            int v = (out.c.count(key) ? out.c[key] : 0) + coef * sign % q;
            v %= q;
            if (v == 0)
                out.c.erase(key);
            else
                out.c[key] = static_cast<std::uint8_t>(v);
            if (j == 0) break;
            j = (j - 1) & k;
        }
    }
    return out;
}

mpz_class lemma_m(int n, int d) {
    if (n < 0 || d < 0) throw DomainError("need n >= 0 and d >= 0");
    mpz_class out = 0, term;
    for (int i = 0; i <= std::min(n, d / 2); ++i) {
        mpz_bin_uiui(term.get_mpz_t(), static_cast<unsigned long>(n),
                     static_cast<unsigned long>(i));
        out += term;
    }
    return out;
}

LemmaCertificate build_certificate(const MultilinearPoly& p,
                                   const FpPointSet& a, int degree_bound,
                                   int threads) {
    validate_points(p, a);
    if (degree_bound < 0) throw DomainError("degree bound must be >= 0");
    if (p.degree() > degree_bound)
        throw DomainError("polynomial degree " + std::to_string(p.degree()) +
                          " exceeds the declared bound " +
                          std::to_string(degree_bound));
    LemmaCertificate cert;
    cert.n = p.nvars();
    cert.p = p.field();
    cert.d = degree_bound;
    cert.points = a;
    mpz_class m_exact = lemma_m(cert.n, degree_bound);
    if (m_exact > static_cast<unsigned long>(kCertificateCap))
        throw CapacityError("certificate size m = " + m_exact.get_str() +
                            " over the cap");
    cert.kappa = monomials_up_to(cert.n, degree_bound / 2);
    cert.m = cert.kappa.size();

    DifferenceExpansion ex = difference_expansion(p);
    const int q = cert.p;
    const int d = degree_bound;
    // per K: the (I, C_{I,K}) list with |I| > d/2 feeding u's second block,
    // and the (J, C_{K,J}) list feeding v's first block
    std::unordered_map<Monomial, std::vector<std::pair<Monomial, int>>> for_u,
        for_v;
    for (const auto& [key, coef] : ex.c) {
        Monomial i = static_cast<Monomial>(key & 0xffffffffu);
        Monomial j = static_cast<Monomial>(key >> 32);
        if (monomial_degree(i) * 2 > d) for_u[j].emplace_back(i, coef);
        for_v[i].emplace_back(j, coef);
    }
    for (auto& [k, list] : for_u)
        std::sort(list.begin(), list.end(), [](const auto& x, const auto& y) {
            return monomial_less(x.first, y.first);
        });
    for (auto& [k, list] : for_v)
        std::sort(list.begin(), list.end(), [](const auto& x, const auto& y) {
            return monomial_less(x.first, y.first);
        });

    const std::size_t npts = a.pts.size();
    const std::size_t two_m = 2 * cert.m;
    cert.u.assign(npts, std::vector<std::uint8_t>(two_m, 0));
    cert.v.assign(npts, std::vector<std::uint8_t>(two_m, 0));
    auto fill_point = [&](std::size_t idx) {
        const auto& pt = a.pts[idx];
        for (std::size_t i = 0; i < cert.m; ++i) {
            Monomial k = cert.kappa[i];
            const int klen = monomial_degree(k);
            cert.u[idx][i] =
                static_cast<std::uint8_t>(eval_monomial(k, pt, q));
            cert.v[idx][cert.m + i] = cert.u[idx][i];
            int acc_u = 0, acc_v = 0;
            if (auto it = for_u.find(k); it != for_u.end())
                for (const auto& [mono, coef] : it->second) {
                    if (monomial_degree(mono) > d - klen) continue;
                    acc_u = (acc_u + coef * eval_monomial(mono, pt, q)) % q;
                }
            if (auto it = for_v.find(k); it != for_v.end())
                for (const auto& [mono, coef] : it->second) {
                    if (monomial_degree(mono) > d - klen) continue;
                    acc_v = (acc_v + coef * eval_monomial(mono, pt, q)) % q;
                }
            cert.u[idx][cert.m + i] = static_cast<std::uint8_t>(acc_u);
            cert.v[idx][i] = static_cast<std::uint8_t>(acc_v);
        }
    };
    parallel_for(npts, threads, fill_point);

    cert.gram.assign(npts, std::vector<std::uint8_t>(npts, 0));
    auto fill_row = [&](std::size_t r) {
        for (std::size_t c = 0; c < npts; ++c) {
            int acc = 0;
            for (std::size_t k = 0; k < two_m; ++k)
                acc = (acc + cert.u[r][k] * cert.v[c][k]) % q;
            cert.gram[r][c] = static_cast<std::uint8_t>(acc);
        }
    };
    parallel_for(npts, threads, fill_row);
    return cert;
}

LemmaReport check_lemma(const MultilinearPoly& p, const FpPointSet& a,
                        int degree_bound, int threads) {
    LemmaCertificate cert = build_certificate(p, a, degree_bound, threads);
    LemmaReport out;
    out.m = lemma_m(cert.n, cert.d);
    out.set_size = a.pts.size();
    out.size_ok = mpz_class(static_cast<unsigned long>(out.set_size)) >
                  2 * out.m;
    out.hypothesis_ok = true;
    for (std::size_t i = 0; i < cert.gram.size() && out.hypothesis_ok; ++i)
        for (std::size_t j = 0; j < cert.gram.size(); ++j)
            if (i != j && cert.gram[i][j] != 0) {
                out.hypothesis_ok = false;
                break;
            }
    out.p0_zero = p.coeff(0) == 0;
    FpMatrix um(cert.u.size(), 2 * cert.m, cert.p);
    for (std::size_t r = 0; r < cert.u.size(); ++r)
        for (std::size_t c = 0; c < 2 * cert.m; ++c)
            um.set(r, c, cert.u[r][c]);
    out.u_rank = um.rank();
    out.contract_ok = !(out.size_ok && out.hypothesis_ok) || out.p0_zero;
    return out;
}

IndependenceResult independence_witness(const LemmaCertificate& cert) {
    const std::size_t k = cert.gram.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            bool bad = i == j ? cert.gram[i][j] == 0 : cert.gram[i][j] != 0;
            if (bad)
                throw DomainError(
                    "gram[" + std::to_string(i) + "][" + std::to_string(j) +
                    "] = " + std::to_string(int(cert.gram[i][j])) +
                    " breaks the contradiction configuration");
        }
    IndependenceResult out;
    out.set_size = k;
    out.two_m = 2 * cert.m;
    FpMatrix um(k, 2 * cert.m, cert.p);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < 2 * cert.m; ++c) um.set(r, c, cert.u[r][c]);
    out.u_rank = um.rank();
    out.rank_equals_size = out.u_rank == k;
    return out;
}

}  // namespace z4ap
