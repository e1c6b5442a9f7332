#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "z4ap/error.hpp"

namespace z4ap {

/// Dense matrix over GF(2), rows packed 64 columns per word. Elimination is
/// serial and fully deterministic: reduced row echelon form with leftmost
/// pivots, rows swapped into pivot position in column order.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, bool v);

    std::span<const std::uint64_t> row(std::size_t r) const;
    std::span<std::uint64_t> row(std::size_t r);

    std::size_t rank() const;
    Gf2Matrix rref(std::vector<std::size_t>* pivot_cols = nullptr) const;
    /// One basis vector per free column, in ascending free-column order:
    /// 1 at the free column, RREF entries at the pivot columns. Vectors are
    /// packed 64 coordinates per word.
    std::vector<std::vector<std::uint64_t>> kernel_basis() const;

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> data_;
};

bool is_supported_prime(int p);  // {2, 3, 5, 7, 11, 13, 17}
int fp_inverse(int a, int p);

/// Dense matrix over F_p for a supported prime. Reference path, one byte
/// per entry; same elimination contract as Gf2Matrix.
class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(std::size_t rows, std::size_t cols, int p);

    int p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    int get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, int v);

    std::size_t rank() const;
    FpMatrix rref(std::vector<std::size_t>* pivot_cols = nullptr) const;
    std::vector<std::vector<std::uint8_t>> kernel_basis() const;

private:
    int p_ = 2;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::uint8_t> data_;
};

}  // namespace z4ap
