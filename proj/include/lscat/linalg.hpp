#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lscat/error.hpp"
#include "lscat/matrix.hpp"

namespace lscat {

/// Smith normal form of an m x n integer matrix A: unimodular P, Q with
/// P*A*Q = D. The inverses of P and Q are tracked alongside so callers can
/// change bases in both directions without a second elimination.
struct SnfResult {
    IntMatrix P;
    IntMatrix Q;
    IntMatrix D;
    IntMatrix P_inverse;
    IntMatrix Q_inverse;
    /// Positive diagonal entries of D in order; each divides the next.
    IntVector factors;

    std::size_t rank() const noexcept { return factors.size(); }
};

namespace detail {

// Row operations on D are mirrored on P (left) and, inverted, on P^{-1}
// (right); column operations on D are mirrored on Q and Q^{-1}.
struct SnfWorkspace {
    IntMatrix D, P, Q, Pinv, Qinv;

    void swap_rows(std::size_t a, std::size_t b) {
        D.swap_rows(a, b);
        P.swap_rows(a, b);
        Pinv.swap_cols(a, b);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        D.swap_cols(a, b);
        Q.swap_cols(a, b);
        Qinv.swap_rows(a, b);
    }
    void add_row(std::size_t dst, std::size_t src, const Integer& f) {
        D.add_row_multiple(dst, src, f);
        P.add_row_multiple(dst, src, f);
        Pinv.add_col_multiple(src, dst, -f);
    }
    void add_col(std::size_t dst, std::size_t src, const Integer& f) {
        D.add_col_multiple(dst, src, f);
        Q.add_col_multiple(dst, src, f);
        Qinv.add_row_multiple(src, dst, -f);
    }
    void negate_row(std::size_t i) {
        D.negate_row(i);
        P.negate_row(i);
        Pinv.negate_col(i);
    }
};

} // namespace detail

inline SnfResult snf(const IntMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    detail::SnfWorkspace w{a, IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(m),
                           IntMatrix::identity(n)};
    IntMatrix& D = w.D;

    const std::size_t steps = std::min(m, n);
    for (std::size_t t = 0; t < steps; ++t) {
        // minimal nonzero |entry| in the trailing block
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (D(i, j) != 0 && (!best || abs(D(i, j)) < abs(D(best->first, best->second))))
                    best = {i, j};
        if (!best)
            break;
        w.swap_rows(t, best->first);
        w.swap_cols(t, best->second);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0)
                    continue;
                w.add_row(i, t, -div_trunc(D(i, t), D(t, t)));
                if (D(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0)
                    continue;
                w.add_col(j, t, -div_trunc(D(t, j), D(t, t)));
                if (D(t, j) != 0)
                    clean = false;
            }
            if (!clean) {
                // a remainder smaller than the pivot survived; promote it
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < m; ++i)
                    if (D(i, t) != 0 && abs(D(i, t)) < abs(D(bi, bj)))
                        bi = i, bj = t;
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D(t, j) != 0 && abs(D(t, j)) < abs(D(bi, bj)))
                        bi = t, bj = j;
                w.swap_rows(t, bi);
                w.swap_cols(t, bj);
                continue;
            }
            // Row and column t are clear. Restore the divisibility chain by
            // folding an offending row into row t and reducing again.
            std::optional<std::size_t> offender;
            for (std::size_t i = t + 1; i < m && !offender; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!divides(D(t, t), D(i, j))) {
                        offender = i;
                        break;
                    }
            if (!offender)
                break;
            w.add_row(t, *offender, 1);
        }
        if (D(t, t) < 0)
            w.negate_row(t);
    }

    SnfResult r{std::move(w.P), std::move(w.Q), std::move(w.D), std::move(w.Pinv), std::move(w.Qinv), {}};
    for (std::size_t t = 0; t < steps && r.D(t, t) != 0; ++t)
        r.factors.push_back(r.D(t, t));
    return r;
}

inline std::size_t rank(const IntMatrix& a) { return snf(a).rank(); }

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer det(const IntMatrix& a) {
    if (!a.is_square())
        throw Error(ErrorCode::NotSquare, "determinant of " + a.shape_string() + " matrix");
    const std::size_t n = a.rows();
    if (n == 0)
        return 1;
    IntMatrix m = a;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = std::move(v);
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

inline bool is_unimodular(const IntMatrix& a) { return abs(det(a)) == 1; }

inline IntMatrix inverse_unimodular(const IntMatrix& u) {
    if (!is_unimodular(u))
        throw Error(ErrorCode::NotUnimodular, "matrix " + u.shape_string() + " has |det| != 1");
    SnfResult s = snf(u);
    // P U Q = I  =>  U^{-1} = Q P
    return s.Q * s.P;
}

/// Default cap on the number of minors the oracle may enumerate.
inline constexpr std::size_t kDefaultMinorCap = 5000;

namespace detail {

inline Integer binomial(std::size_t n, std::size_t k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Advance a sorted k-subset of [0, n); false when exhausted.
inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j)
                c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace detail

/// Invariant factors from gcds of minors: n_i = d_i / d_{i-1}, where d_i is
/// the gcd of all i x i minors and d_0 = 1. Stops at the first order whose
/// minors all vanish. Intended for small matrices only.
inline IntVector minors_gcd_factors(const IntMatrix& a, std::size_t minor_cap = kDefaultMinorCap) {
    const std::size_t m = a.rows(), n = a.cols();
    Integer total = 0;
    for (std::size_t i = 1; i <= std::min(m, n); ++i)
        total += detail::binomial(m, i) * detail::binomial(n, i);
    if (total > Integer(static_cast<unsigned long>(minor_cap)))
        throw Error(ErrorCode::DimensionTooLarge, a.shape_string() + " matrix has " + total.get_str() +
                                                      " minors (cap " + std::to_string(minor_cap) +
                                                      "); use snf instead");
    IntVector factors;
    Integer prev = 1;
    for (std::size_t order = 1; order <= std::min(m, n); ++order) {
        Integer g = 0;
        std::vector<std::size_t> rows(order), cols(order);
        for (std::size_t i = 0; i < order; ++i)
            rows[i] = i;
        do {
            for (std::size_t i = 0; i < order; ++i)
                cols[i] = i;
            const IntMatrix row_block = a.select_rows(rows);
            do {
                g = gcd(g, det(row_block.select_cols(cols)));
            } while (g != 1 && detail::next_combination(cols, n));
        } while (g != 1 && detail::next_combination(rows, m));
        if (g == 0)
            break;
        factors.push_back(div_trunc(g, prev));
        prev = g;
    }
    return factors;
}

/// Columns form a basis of the integer lattice {x : a x = 0}.
inline IntMatrix kernel_basis(const IntMatrix& a) {
    SnfResult s = snf(a);
    return s.Q.block(0, a.cols(), s.rank(), a.cols());
}

/// Basis of the lattice spanned by the columns of g (dependent columns allowed).
inline IntMatrix column_lattice_basis(const IntMatrix& g) {
    SnfResult s = snf(g);
    // g = P^{-1} D Q^{-1}, so the span is generated by d_i * P^{-1} e_i.
    IntMatrix basis(g.rows(), s.rank());
    for (std::size_t i = 0; i < s.rank(); ++i)
        for (std::size_t r = 0; r < g.rows(); ++r)
            basis(r, i) = s.P_inverse(r, i) * s.factors[i];
    return basis;
}

/// Solves a x = b for many right-hand sides against one elimination of a.
class LatticeSolver {
  public:
    explicit LatticeSolver(const IntMatrix& a) : rows_(a.rows()), cols_(a.cols()), snf_(snf(a)) {}

    /// Some integer solution of a x = b, or nullopt when none exists.
    std::optional<IntVector> solve(std::span<const Integer> b) const {
        if (b.size() != rows_)
            throw Error(ErrorCode::LengthMismatch, "right-hand side of length " + std::to_string(b.size()) +
                                                       " for a " + std::to_string(rows_) + "-row system");
        // a x = b  <=>  D y = P b  with x = Q y
        IntVector pb = snf_.P.apply(b);
        IntVector y(cols_);
        for (std::size_t i = 0; i < pb.size(); ++i) {
            if (i < snf_.rank()) {
                if (!divides(snf_.factors[i], pb[i]))
                    return std::nullopt;
                y[i] = div_trunc(pb[i], snf_.factors[i]);
            } else if (pb[i] != 0) {
                return std::nullopt;
            }
        }
        return snf_.Q.apply(y);
    }

  private:
    std::size_t rows_;
    std::size_t cols_;
    SnfResult snf_;
};

inline std::optional<IntVector> solve(const IntMatrix& a, std::span<const Integer> b) {
    return LatticeSolver(a).solve(b);
}

/// Checks every structural property of an SNF of `a`.
inline bool verify_snf(const IntMatrix& a, const SnfResult& s) {
    const std::size_t m = a.rows(), n = a.cols();
    if (s.P.rows() != m || !s.P.is_square() || s.Q.rows() != n || !s.Q.is_square())
        return false;
    if (s.P * a * s.Q != s.D)
        return false;
    if (!is_unimodular(s.P) || !is_unimodular(s.Q))
        return false;
    if (s.P * s.P_inverse != IntMatrix::identity(m) || s.Q * s.Q_inverse != IntMatrix::identity(n))
        return false;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Integer& d = s.D(i, j);
            if (i != j && d != 0)
                return false;
            if (i == j && (d < 0 || (i < s.rank() ? d != s.factors[i] : d != 0)))
                return false;
        }
    for (std::size_t i = 0; i < s.rank(); ++i)
        if (s.factors[i] <= 0 || (i > 0 && !divides(s.factors[i - 1], s.factors[i])))
            return false;
    return true;
}

} // namespace lscat
