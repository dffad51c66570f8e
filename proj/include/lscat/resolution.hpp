#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lscat/abelian_group.hpp"
#include "lscat/error.hpp"
#include "lscat/group_ring.hpp"
#include "lscat/homomorphism.hpp"

namespace lscat {

/// Default maximum rank of a resolution module in any single degree.
inline constexpr std::size_t kDefaultRankCap = 2000;

/// Free resolution of the trivial module Z over the group ring of a product
/// of cyclic groups: the tensor product of a two-term Koszul resolution per
/// Z factor and the periodic (g - 1, N) resolution per Z_m factor.
///
/// A basis element of C_j is a multi-index e with e_f in {0, 1} on free
/// factors, e_f >= 0 on finite ones, and sum e_f = j. The differential is
/// d(e) = sum_f (-1)^{e_1 + ... + e_{f-1}} d_f(e_f) (e - u_f), where d_f is
/// g_f - 1 in odd degree and N_f in even degree (always g_f - 1 for Z).
class Resolution {
  public:
    using MultiIndex = std::vector<std::int64_t>;

    Resolution(CyclicDecomposition factors, std::size_t max_dim, std::size_t rank_cap = kDefaultRankCap)
        : factors_(std::move(factors)), max_dim_(max_dim) {
        for (std::size_t j = 0; j <= max_dim_; ++j) {
            const Integer r = rank_formula(factors_, j);
            if (r > Integer(static_cast<unsigned long>(rank_cap)))
                throw Error(ErrorCode::ResourceCap, "resolution of " + factors_.to_string() + " has rank " +
                                                        r.get_str() + " in degree " + std::to_string(j) +
                                                        " (cap " + std::to_string(rank_cap) + ")");
        }
        bases_.resize(max_dim_ + 1);
        index_.resize(max_dim_ + 1);
        for (std::size_t j = 0; j <= max_dim_; ++j) {
            MultiIndex e(factors_.size(), 0);
            enumerate(0, static_cast<std::int64_t>(j), e, bases_[j]);
            for (std::size_t i = 0; i < bases_[j].size(); ++i)
                index_[j].emplace(bases_[j][i], i);
        }
        differentials_.resize(max_dim_ + 1);
        for (std::size_t j = 1; j <= max_dim_; ++j)
            differentials_[j] = build_differential(j);
        if (!verify())
            throw Error(ErrorCode::VerificationFailed, "resolution of " + factors_.to_string() + " fails d o d = 0");
    }

    Resolution(const FgAbelianGroup& g, std::size_t max_dim, std::size_t rank_cap = kDefaultRankCap)
        : Resolution(CyclicDecomposition::from_group(g), max_dim, rank_cap) {}

    /// sum over a-subsets of free factors of C(j - t + s - 1, s - 1), with s
    /// the number of finite factors.
    static Integer rank_formula(const CyclicDecomposition& factors, std::size_t j) {
        std::size_t a = 0, s = 0;
        for (auto m : factors.orders)
            (m == 0 ? a : s) += 1;
        Integer total = 0;
        for (std::size_t t = 0; t <= std::min(a, j); ++t) {
            Integer free_part, finite_part;
            mpz_bin_uiui(free_part.get_mpz_t(), a, t);
            if (s == 0)
                finite_part = (j == t) ? 1 : 0;
            else
                mpz_bin_uiui(finite_part.get_mpz_t(), j - t + s - 1, s - 1);
            total += free_part * finite_part;
        }
        return total;
    }

    const CyclicDecomposition& factors() const noexcept { return factors_; }
    std::size_t max_dim() const noexcept { return max_dim_; }
    std::size_t rank(std::size_t j) const { return j <= max_dim_ ? bases_[j].size() : 0; }
    std::vector<std::size_t> ranks() const {
        std::vector<std::size_t> r;
        for (std::size_t j = 0; j <= max_dim_; ++j)
            r.push_back(rank(j));
        return r;
    }
    const std::vector<MultiIndex>& basis(std::size_t j) const { return bases_.at(j); }

    std::optional<std::size_t> index_of(std::size_t j, const MultiIndex& e) const {
        if (j > max_dim_)
            return std::nullopt;
        auto it = index_[j].find(e);
        if (it == index_[j].end())
            return std::nullopt;
        return it->second;
    }

    /// d_j : C_j -> C_{j-1}, for 1 <= j <= max_dim.
    const RingMatrix& differential(std::size_t j) const {
        if (j == 0 || j > max_dim_)
            throw Error(ErrorCode::ShapeMismatch, "no differential in degree " + std::to_string(j));
        return differentials_[j];
    }

    /// d_{j-1} d_j = 0 for every j, and the augmentation kills d_1.
    bool verify() const {
        if (max_dim_ >= 1)
            for (std::size_t j = 0; j < differentials_[1].cols(); ++j)
                for (const auto& [i, e] : differentials_[1].column(j))
                    if (e.augmentation() != 0)
                        return false;
        for (std::size_t j = 2; j <= max_dim_; ++j)
            if (!(differentials_[j - 1] * differentials_[j]).is_zero())
                return false;
        return true;
    }

  private:
    void enumerate(std::size_t f, std::int64_t remaining, MultiIndex& e, std::vector<MultiIndex>& out) const {
        if (f == factors_.size()) {
            if (remaining == 0)
                out.push_back(e);
            return;
        }
        const std::int64_t top = factors_.is_free(f) ? std::min<std::int64_t>(1, remaining) : remaining;
        for (std::int64_t v = 0; v <= top; ++v) {
            e[f] = v;
            enumerate(f + 1, remaining - v, e, out);
        }
        e[f] = 0;
    }

    RingMatrix build_differential(std::size_t j) const {
        const auto& orders = factors_.orders;
        RingMatrix d(orders, rank(j - 1), rank(j));
        for (std::size_t col = 0; col < bases_[j].size(); ++col) {
            const MultiIndex& e = bases_[j][col];
            std::int64_t preceding = 0;
            for (std::size_t f = 0; f < e.size(); ++f) {
                if (e[f] > 0) {
                    MultiIndex face = e;
                    --face[f];
                    GroupRingElement entry = (factors_.is_free(f) || e[f] % 2 == 1)
                                                 ? GroupRingElement::generator_minus_one(orders, f)
                                                 : GroupRingElement::norm(orders, f);
                    if (preceding % 2 == 1)
                        entry *= Integer(-1);
                    d.add(index_[j - 1].at(face), col, entry);
                }
                preceding += e[f];
            }
        }
        return d;
    }

    CyclicDecomposition factors_;
    std::size_t max_dim_;
    std::vector<std::vector<MultiIndex>> bases_;
    std::vector<std::map<MultiIndex, std::size_t>> index_;
    std::vector<RingMatrix> differentials_;
};

/// A product of coordinate maps between cyclic decompositions with the same
/// number of factors. Factor f is one of: Z -> Z (identity), Z -> Z_m
/// (reduction), Z_m -> Z_{m'} with m' | m (reduction).
class CoordinateMap {
  public:
    CoordinateMap(CyclicDecomposition source, CyclicDecomposition target)
        : source_(std::move(source)), target_(std::move(target)) {
        if (source_.size() != target_.size())
            throw Error(ErrorCode::NotCanonicalForm, "coordinate map " + source_.to_string() + " -> " +
                                                         target_.to_string() + " has mismatched factor counts");
        for (std::size_t f = 0; f < source_.size(); ++f) {
            const auto m = source_.orders[f], mt = target_.orders[f];
            if (m != 0 && (mt == 0 || m % mt != 0))
                throw Error(ErrorCode::NotCanonicalForm,
                            "factor " + std::to_string(f) + ": no coordinate map " +
                                (m == 0 ? std::string("Z") : "Z_" + std::to_string(m)) + " -> " +
                                (mt == 0 ? std::string("Z") : "Z_" + std::to_string(mt)));
        }
    }

    /// Accepts h only when its matrix is the identity pattern (after
    /// reduction) between the canonical generator lists.
    static CoordinateMap from_homomorphism(const Homomorphism& h) {
        const IntMatrix& a = h.matrix();
        if (!a.is_square())
            throw Error(ErrorCode::NotCanonicalForm,
                        "coordinate maps need equal generator counts; factor through a lattice first");
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) {
                const Integer& v = a(i, j);
                if (i == j ? v != 1 : v != 0)
                    throw Error(ErrorCode::NotCanonicalForm,
                                "matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") breaks the coordinate pattern; split and factor the map first");
            }
        return CoordinateMap(CyclicDecomposition::from_group(h.domain()), CyclicDecomposition::from_group(h.codomain()));
    }

    const CyclicDecomposition& source() const noexcept { return source_; }
    const CyclicDecomposition& target() const noexcept { return target_; }

    /// Scalar of the factor-f chain map in degree e: 1 except for
    /// Z_m -> Z_{m'}, which is (m/m')^{floor(e/2)}.
    Integer factor_scalar(std::size_t f, std::int64_t degree) const {
        if (source_.is_free(f))
            return 1;
        Integer c = source_.orders[f] / target_.orders[f];
        Integer out;
        mpz_pow_ui(out.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(degree / 2));
        return out;
    }

  private:
    CyclicDecomposition source_;
    CyclicDecomposition target_;
};

/// Chain map between resolutions lying over a CoordinateMap; component f_j
/// (target rank x source rank) is diagonal on multi-indices.
class ChainMap {
  public:
    ChainMap(CoordinateMap map, std::shared_ptr<const Resolution> source, std::shared_ptr<const Resolution> target)
        : map_(std::move(map)), source_(std::move(source)), target_(std::move(target)) {
        if (!(source_->factors() == map_.source()) || !(target_->factors() == map_.target()))
            throw Error(ErrorCode::NotCanonicalForm, "resolutions do not match the coordinate map");
        const std::size_t top = std::min(source_->max_dim(), target_->max_dim());
        const auto& orders = map_.target().orders;
        for (std::size_t j = 0; j <= top; ++j) {
            RingMatrix f(orders, target_->rank(j), source_->rank(j));
            for (std::size_t col = 0; col < source_->rank(j); ++col) {
                const auto& e = source_->basis(j)[col];
                Integer scalar = 1;
                for (std::size_t k = 0; k < e.size(); ++k)
                    scalar *= map_.factor_scalar(k, e[k]);
                f.add(target_->index_of(j, e).value(), col, GroupRingElement::scalar(orders, scalar));
            }
            components_.push_back(std::move(f));
        }
        if (!verify())
            throw Error(ErrorCode::VerificationFailed, "chain map squares do not commute");
    }

    /// Builds both resolutions to `max_dim`.
    static std::shared_ptr<const ChainMap> build(const CoordinateMap& map, std::size_t max_dim,
                                                 std::size_t rank_cap = kDefaultRankCap) {
        auto src = std::make_shared<const Resolution>(map.source(), max_dim, rank_cap);
        auto tgt = std::make_shared<const Resolution>(map.target(), max_dim, rank_cap);
        return std::make_shared<const ChainMap>(map, std::move(src), std::move(tgt));
    }

    const CoordinateMap& map() const noexcept { return map_; }
    const Resolution& source() const noexcept { return *source_; }
    const Resolution& target() const noexcept { return *target_; }
    std::size_t max_dim() const noexcept { return components_.size() - 1; }
    const RingMatrix& component(std::size_t j) const { return components_.at(j); }

    /// Augmentation compatibility in degree 0 and d'_j f_j = f_{j-1} rho(d_j)
    /// for all j, checked in the target group ring.
    bool verify() const {
        const auto& orders = map_.target().orders;
        if (components_.empty() || components_[0].rows() != 1 || components_[0].cols() != 1)
            return false;
        const auto& c0 = components_[0].column(0);
        if (c0.size() != 1 || c0.begin()->second.augmentation() != 1)
            return false;
        for (std::size_t j = 1; j < components_.size(); ++j) {
            const RingMatrix lhs = target_->differential(j) * components_[j];
            const RingMatrix rhs = components_[j - 1] * source_->differential(j).map_to(orders);
            if (!(lhs == rhs))
                return false;
        }
        return source_->verify() && target_->verify();
    }

  private:
    CoordinateMap map_;
    std::shared_ptr<const Resolution> source_;
    std::shared_ptr<const Resolution> target_;
    std::vector<RingMatrix> components_;
};

inline std::shared_ptr<const ChainMap> chain_map(const CoordinateMap& map, std::shared_ptr<const Resolution> source,
                                                 std::shared_ptr<const Resolution> target) {
    return std::make_shared<const ChainMap>(map, std::move(source), std::move(target));
}

} // namespace lscat
