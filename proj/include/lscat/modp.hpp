#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lscat/error.hpp"
#include "lscat/matrix.hpp"

namespace lscat {

/// Dense matrix over the prime field F_p.
class FpMatrix {
  public:
    FpMatrix(std::int64_t p, std::size_t rows, std::size_t cols)
        : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static FpMatrix reduce(const IntMatrix& a, std::int64_t p) {
        FpMatrix m(p, a.rows(), a.cols());
        const Integer pp(static_cast<long>(p));
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                m(i, j) = to_int64(mod_floor(a(i, j), pp));
        return m;
    }

    static FpMatrix identity(std::int64_t p, std::size_t n) {
        FpMatrix m(p, n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::int64_t prime() const noexcept { return p_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::int64_t mul(std::int64_t a, std::int64_t b) const {
        return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p_);
    }
    std::int64_t add(std::int64_t a, std::int64_t b) const { return (a + b) % p_; }
    std::int64_t sub(std::int64_t a, std::int64_t b) const { return ((a - b) % p_ + p_) % p_; }
    std::int64_t inverse(std::int64_t a) const {
        // Fermat: a^{p-2}
        std::int64_t result = 1, base = a % p_;
        for (std::int64_t e = p_ - 2; e > 0; e >>= 1) {
            if (e & 1)
                result = mul(result, base);
            base = mul(base, base);
        }
        return result;
    }

    std::vector<std::int64_t> column(std::size_t j) const {
        std::vector<std::int64_t> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            v[i] = (*this)(i, j);
        return v;
    }

    std::vector<std::int64_t> apply(const std::vector<std::int64_t>& x) const {
        std::vector<std::int64_t> y(rows_, 0);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (x[j] != 0 && (*this)(i, j) != 0)
                    y[i] = add(y[i], mul((*this)(i, j), x[j]));
        return y;
    }

    FpMatrix transpose() const {
        FpMatrix t(p_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    IntMatrix lift() const {
        IntMatrix m(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m(i, j) = static_cast<long>((*this)(i, j));
        return m;
    }

    /// Reduced row echelon form in place; returns the pivot columns. When
    /// `track` is given (rows() x rows()), the same row operations are
    /// applied to it.
    std::vector<std::size_t> row_reduce(FpMatrix* track = nullptr) {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t piv = r;
            while (piv < rows_ && (*this)(piv, c) == 0)
                ++piv;
            if (piv == rows_)
                continue;
            swap_rows(r, piv);
            if (track)
                track->swap_rows(r, piv);
            const std::int64_t inv = inverse((*this)(r, c));
            scale_row(r, inv);
            if (track)
                track->scale_row(r, inv);
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || (*this)(i, c) == 0)
                    continue;
                const std::int64_t f = (*this)(i, c);
                subtract_row(i, r, f);
                if (track)
                    track->subtract_row(i, r, f);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        FpMatrix copy = *this;
        return copy.row_reduce().size();
    }

    /// Columns form a basis of {x : A x = 0}.
    FpMatrix nullspace() const {
        FpMatrix r = *this;
        const auto pivots = r.row_reduce();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots)
            is_pivot[c] = true;
        std::vector<std::size_t> free_cols;
        for (std::size_t c = 0; c < cols_; ++c)
            if (!is_pivot[c])
                free_cols.push_back(c);
        FpMatrix basis(p_, cols_, free_cols.size());
        for (std::size_t k = 0; k < free_cols.size(); ++k) {
            const std::size_t fc = free_cols[k];
            basis(fc, k) = 1;
            for (std::size_t i = 0; i < pivots.size(); ++i)
                basis(pivots[i], k) = sub(0, r(i, fc));
        }
        return basis;
    }

    FpMatrix select_cols(const std::vector<std::size_t>& idx) const {
        FpMatrix m(p_, rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j)
                m(i, j) = (*this)(i, idx[j]);
        return m;
    }

    friend FpMatrix hstack(const FpMatrix& a, const FpMatrix& b) {
        FpMatrix c(a.p_, a.rows_, a.cols_ + b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t j = 0; j < a.cols_; ++j)
                c(i, j) = a(i, j);
            for (std::size_t j = 0; j < b.cols_; ++j)
                c(i, a.cols_ + j) = b(i, j);
        }
        return c;
    }

  private:
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }
    void scale_row(std::size_t r, std::int64_t f) {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(r, j) = mul((*this)(r, j), f);
    }
    // row[dst] -= f * row[src]
    void subtract_row(std::size_t dst, std::size_t src, std::int64_t f) {
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(src, j) != 0)
                (*this)(dst, j) = sub((*this)(dst, j), mul(f, (*this)(src, j)));
    }

    std::int64_t p_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::int64_t> data_;
};

inline bool is_prime(std::int64_t p) {
    if (p < 2)
        return false;
    for (std::int64_t d = 2; d <= p / d; ++d)
        if (p % d == 0)
            return false;
    return true;
}

} // namespace lscat
