#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lscat/abelian_group.hpp"
#include "lscat/error.hpp"
#include "lscat/matrix.hpp"

namespace lscat {

/// Largest cyclic order the oracle will expand into group-ring norms.
inline constexpr std::int64_t kMaxCyclicOrder = 1 << 16;

/// An ordered product of cyclic groups; order 0 stands for Z. Unlike
/// FgAbelianGroup the factor list need not be in invariant-factor form, which
/// is what coordinatewise maps such as Z x Z -> Z_2 x Z_3 require.
struct CyclicDecomposition {
    std::vector<std::int64_t> orders;

    CyclicDecomposition() = default;
    explicit CyclicDecomposition(std::vector<std::int64_t> o) : orders(std::move(o)) {
        for (auto m : orders)
            if (m < 0 || m == 1)
                throw Error(ErrorCode::InvalidGroup, "cyclic factor order " + std::to_string(m));
            else if (m > kMaxCyclicOrder)
                throw Error(ErrorCode::ResourceCap, "cyclic factor of order " + std::to_string(m) +
                                                        " exceeds " + std::to_string(kMaxCyclicOrder));
    }

    /// Free factors first, then the invariant factors.
    static CyclicDecomposition from_group(const FgAbelianGroup& g) {
        std::vector<std::int64_t> o(g.free_rank(), 0);
        for (const auto& n : g.torsion()) {
            if (n > Integer(static_cast<long>(kMaxCyclicOrder)))
                throw Error(ErrorCode::ResourceCap,
                            "cyclic factor of order " + n.get_str() + " exceeds " + std::to_string(kMaxCyclicOrder));
            o.push_back(to_int64(n));
        }
        return CyclicDecomposition(std::move(o));
    }

    std::size_t size() const noexcept { return orders.size(); }
    bool is_free(std::size_t f) const noexcept { return orders[f] == 0; }

    std::string to_string() const {
        std::string s;
        for (auto m : orders)
            s += (s.empty() ? "" : " x ") + (m == 0 ? std::string("Z") : "Z_" + std::to_string(m));
        return s.empty() ? "0" : s;
    }

    friend bool operator==(const CyclicDecomposition&, const CyclicDecomposition&) = default;
};

/// Element of the integral group ring of a CyclicDecomposition: a finite
/// sum of coefficients times group elements, keyed by exponent vectors.
/// Exponents of finite factors are kept reduced; zero coefficients are never
/// stored.
class GroupRingElement {
  public:
    using Exponents = std::vector<std::int64_t>;

    GroupRingElement() = default;
    explicit GroupRingElement(std::vector<std::int64_t> orders) : orders_(std::move(orders)) {}

    static GroupRingElement scalar(const std::vector<std::int64_t>& orders, const Integer& c) {
        GroupRingElement e(orders);
        e.add_term(Exponents(orders.size(), 0), c);
        return e;
    }
    static GroupRingElement one(const std::vector<std::int64_t>& orders) { return scalar(orders, 1); }

    /// g_f - 1 for the generator g_f of factor f.
    static GroupRingElement generator_minus_one(const std::vector<std::int64_t>& orders, std::size_t f) {
        GroupRingElement e = scalar(orders, -1);
        Exponents x(orders.size(), 0);
        x[f] = 1;
        e.add_term(std::move(x), 1);
        return e;
    }

    /// 1 + g_f + ... + g_f^{m-1} for a finite factor f of order m.
    static GroupRingElement norm(const std::vector<std::int64_t>& orders, std::size_t f) {
        GroupRingElement e(orders);
        Exponents x(orders.size(), 0);
        for (std::int64_t i = 0; i < orders[f]; ++i) {
            x[f] = i;
            e.add_term(x, 1);
        }
        return e;
    }

    const std::vector<std::int64_t>& orders() const noexcept { return orders_; }
    const std::map<Exponents, Integer>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(Exponents x, const Integer& c) {
        if (c == 0)
            return;
        reduce(x);
        auto [it, inserted] = terms_.try_emplace(std::move(x), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    /// Augmentation: sum of coefficients.
    Integer augmentation() const {
        Integer s = 0;
        for (const auto& [x, c] : terms_)
            s += c;
        return s;
    }

    /// Image under the coordinatewise ring map sending generator f to
    /// generator f of a ring with the given orders.
    GroupRingElement map_to(const std::vector<std::int64_t>& target_orders) const {
        if (target_orders.size() != orders_.size())
            throw Error(ErrorCode::NotCanonicalForm, "ring map between products with different factor counts");
        GroupRingElement out(target_orders);
        for (const auto& [x, c] : terms_)
            out.add_term(x, c);
        return out;
    }

    GroupRingElement& operator+=(const GroupRingElement& o) {
        check_same_ring(o);
        for (const auto& [x, c] : o.terms_)
            add_term(x, c);
        return *this;
    }
    GroupRingElement& operator-=(const GroupRingElement& o) {
        check_same_ring(o);
        for (const auto& [x, c] : o.terms_)
            add_term(x, -c);
        return *this;
    }
    GroupRingElement& operator*=(const Integer& k) {
        if (k == 0)
            terms_.clear();
        else
            for (auto& [x, c] : terms_)
                c *= k;
        return *this;
    }

    friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
    friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
    friend GroupRingElement operator*(GroupRingElement a, const Integer& k) { return a *= k; }

    friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
        a.check_same_ring(b);
        GroupRingElement out(a.orders_);
        for (const auto& [x, c] : a.terms_)
            for (const auto& [y, d] : b.terms_) {
                Exponents z(x.size());
                for (std::size_t i = 0; i < z.size(); ++i)
                    z[i] = x[i] + y[i];
                out.add_term(std::move(z), c * d);
            }
        return out;
    }

    friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

  private:
    void reduce(Exponents& x) const {
        if (x.size() != orders_.size())
            throw Error(ErrorCode::LengthMismatch, "exponent vector length mismatch");
        for (std::size_t i = 0; i < x.size(); ++i)
            if (orders_[i] > 0)
                x[i] = ((x[i] % orders_[i]) + orders_[i]) % orders_[i];
    }
    void check_same_ring(const GroupRingElement& o) const {
        if (orders_ != o.orders_)
            throw Error(ErrorCode::ShapeMismatch, "group ring elements from different rings");
    }

    std::vector<std::int64_t> orders_;
    std::map<Exponents, Integer> terms_;
};

/// Sparse matrix over a group ring, stored by columns.
class RingMatrix {
  public:
    RingMatrix() = default;
    RingMatrix(std::vector<std::int64_t> orders, std::size_t rows, std::size_t cols)
        : orders_(std::move(orders)), rows_(rows), columns_(cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return columns_.size(); }
    const std::vector<std::int64_t>& orders() const noexcept { return orders_; }

    const std::map<std::size_t, GroupRingElement>& column(std::size_t j) const { return columns_[j]; }

    void add(std::size_t i, std::size_t j, const GroupRingElement& e) {
        if (e.is_zero())
            return;
        auto [it, inserted] = columns_[j].try_emplace(i, e);
        if (!inserted) {
            it->second += e;
            if (it->second.is_zero())
                columns_[j].erase(it);
        }
    }

    bool is_zero() const {
        for (const auto& c : columns_)
            if (!c.empty())
                return false;
        return true;
    }

    RingMatrix map_to(const std::vector<std::int64_t>& target_orders) const {
        RingMatrix out(target_orders, rows_, cols());
        for (std::size_t j = 0; j < cols(); ++j)
            for (const auto& [i, e] : columns_[j])
                out.add(i, j, e.map_to(target_orders));
        return out;
    }

    /// Entrywise augmentation, as a dense integer matrix.
    IntMatrix augmentation() const {
        IntMatrix m(rows_, cols());
        for (std::size_t j = 0; j < cols(); ++j)
            for (const auto& [i, e] : columns_[j])
                m(i, j) = e.augmentation();
        return m;
    }

    friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
        if (a.cols() != b.rows() || a.orders_ != b.orders_)
            throw Error(ErrorCode::ShapeMismatch, "incompatible group ring matrices");
        RingMatrix c(a.orders_, a.rows(), b.cols());
        for (std::size_t j = 0; j < b.cols(); ++j)
            for (const auto& [k, bkj] : b.columns_[j])
                for (const auto& [i, aik] : a.columns_[k])
                    c.add(i, j, aik * bkj);
        return c;
    }

    friend bool operator==(const RingMatrix& a, const RingMatrix& b) {
        return a.orders_ == b.orders_ && a.rows_ == b.rows_ && a.columns_ == b.columns_;
    }

  private:
    std::vector<std::int64_t> orders_;
    std::size_t rows_ = 0;
    std::vector<std::map<std::size_t, GroupRingElement>> columns_;
};

} // namespace lscat
