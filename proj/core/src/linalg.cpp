#include "z4ap/linalg.hpp"

#include <algorithm>

namespace z4ap {

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * wpr_, 0) {}

bool Gf2Matrix::get(std::size_t r, std::size_t c) const {
    return (data_[r * wpr_ + c / 64] >> (c % 64)) & 1u;
}

void Gf2Matrix::set(std::size_t r, std::size_t c, bool v) {
    std::uint64_t& w = data_[r * wpr_ + c / 64];
    std::uint64_t bit = std::uint64_t(1) << (c % 64);
    w = v ? (w | bit) : (w & ~bit);
}

std::span<const std::uint64_t> Gf2Matrix::row(std::size_t r) const {
    return {data_.data() + r * wpr_, wpr_};
}

std::span<std::uint64_t> Gf2Matrix::row(std::size_t r) {
    return {data_.data() + r * wpr_, wpr_};
}

Gf2Matrix Gf2Matrix::rref(std::vector<std::size_t>* pivot_cols) const {
    Gf2Matrix m = *this;
    if (pivot_cols) pivot_cols->clear();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols_ && r < m.rows_; ++c) {
        std::size_t pr = r;
        while (pr < m.rows_ && !m.get(pr, c)) ++pr;
        if (pr == m.rows_) continue;
        if (pr != r)
            std::swap_ranges(m.row(r).begin(), m.row(r).end(),
                             m.row(pr).begin());
        for (std::size_t i = 0; i < m.rows_; ++i) {
            if (i == r || !m.get(i, c)) continue;
            auto dst = m.row(i);
            auto src = m.row(r);
            for (std::size_t w = 0; w < m.wpr_; ++w) dst[w] ^= src[w];
        }
        if (pivot_cols) pivot_cols->push_back(c);
        ++r;
    }
    return m;
}

std::size_t Gf2Matrix::rank() const {
    std::vector<std::size_t> pivots;
    rref(&pivots);
    return pivots.size();
}

std::vector<std::vector<std::uint64_t>> Gf2Matrix::kernel_basis() const {
    std::vector<std::size_t> pivots;
    Gf2Matrix m = rref(&pivots);
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    const std::size_t vwords = (cols_ + 63) / 64;
    std::vector<std::vector<std::uint64_t>> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        std::vector<std::uint64_t> v(vwords, 0);
        v[f / 64] |= std::uint64_t(1) << (f % 64);
        for (std::size_t k = 0; k < pivots.size(); ++k)
            if (m.get(k, f))
                v[pivots[k] / 64] |= std::uint64_t(1) << (pivots[k] % 64);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool is_supported_prime(int p) {
    return p == 2 || p == 3 || p == 5 || p == 7 || p == 11 || p == 13 ||
           p == 17;
}

int fp_inverse(int a, int p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) throw DomainError("no inverse of 0");
    for (int b = 1; b < p; ++b)
        if (a * b % p == 1) return b;
    throw DomainError("no inverse: " + std::to_string(p) + " is not prime");
}

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, int p)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
    if (!is_supported_prime(p))
        throw DomainError("unsupported field size " + std::to_string(p));
}

int FpMatrix::get(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
}

void FpMatrix::set(std::size_t r, std::size_t c, int v) {
    v %= p_;
    if (v < 0) v += p_;
    data_[r * cols_ + c] = static_cast<std::uint8_t>(v);
}

FpMatrix FpMatrix::rref(std::vector<std::size_t>* pivot_cols) const {
    FpMatrix m = *this;
    if (pivot_cols) pivot_cols->clear();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols_ && r < m.rows_; ++c) {
        std::size_t pr = r;
        while (pr < m.rows_ && m.get(pr, c) == 0) ++pr;
        if (pr == m.rows_) continue;
        if (pr != r)
            for (std::size_t j = 0; j < m.cols_; ++j) {
                std::uint8_t t = m.data_[r * m.cols_ + j];
                m.data_[r * m.cols_ + j] = m.data_[pr * m.cols_ + j];
                m.data_[pr * m.cols_ + j] = t;
            }
        int inv = fp_inverse(m.get(r, c), p_);
        for (std::size_t j = 0; j < m.cols_; ++j)
            m.data_[r * m.cols_ + j] =
                static_cast<std::uint8_t>(m.get(r, j) * inv % p_);
        for (std::size_t i = 0; i < m.rows_; ++i) {
            if (i == r) continue;
            int f = m.get(i, c);
            if (f == 0) continue;
            for (std::size_t j = 0; j < m.cols_; ++j) {
                int v = m.get(i, j) - f * m.get(r, j) % p_;
                if (v < 0) v += p_;
                m.data_[i * m.cols_ + j] = static_cast<std::uint8_t>(v);
            }
        }
        if (pivot_cols) pivot_cols->push_back(c);
        ++r;
    }
    return m;
}

std::size_t FpMatrix::rank() const {
    std::vector<std::size_t> pivots;
    rref(&pivots);
    return pivots.size();
}

std::vector<std::vector<std::uint8_t>> FpMatrix::kernel_basis() const {
    std::vector<std::size_t> pivots;
    FpMatrix m = rref(&pivots);
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<std::uint8_t>> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        std::vector<std::uint8_t> v(cols_, 0);
        v[f] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k)
            v[pivots[k]] =
                static_cast<std::uint8_t>((p_ - m.get(k, f)) % p_);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace z4ap
