#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lscat/error.hpp"
#include "lscat/linalg.hpp"
#include "lscat/matrix.hpp"

namespace lscat {

/// Z^r x Z_{n_1} x ... x Z_{n_k} with n_1 | n_2 | ... | n_k and every n_i >= 2.
/// The representation is canonical: two groups are isomorphic exactly when
/// they compare equal. Generators are ordered free-then-torsion.
class FgAbelianGroup {
  public:
    FgAbelianGroup() = default;

    FgAbelianGroup(std::size_t free_rank, IntVector torsion)
        : free_rank_(free_rank), torsion_(std::move(torsion)) {
        for (std::size_t i = 0; i < torsion_.size(); ++i) {
            if (torsion_[i] < 2)
                throw Error(ErrorCode::InvalidGroup,
                            "torsion factor " + torsion_[i].get_str() + " is not >= 2");
            if (i > 0 && !divides(torsion_[i - 1], torsion_[i]))
                throw Error(ErrorCode::InvalidGroup, "torsion factors " + torsion_[i - 1].get_str() + ", " +
                                                         torsion_[i].get_str() + " break the divisibility chain");
        }
    }

    static FgAbelianGroup free(std::size_t rank) { return FgAbelianGroup(rank, {}); }
    static FgAbelianGroup trivial() { return {}; }

    std::size_t free_rank() const noexcept { return free_rank_; }
    const IntVector& torsion() const noexcept { return torsion_; }
    std::size_t generator_count() const noexcept { return free_rank_ + torsion_.size(); }

    bool is_trivial() const noexcept { return generator_count() == 0; }
    bool is_finite() const noexcept { return free_rank_ == 0; }
    bool is_torsion_free() const noexcept { return torsion_.empty(); }
    bool is_torsion_generator(std::size_t i) const noexcept { return i >= free_rank_; }

    /// Order of generator i: 0 for a free generator, n_j for torsion generator j.
    Integer generator_order(std::size_t i) const {
        return i < free_rank_ ? Integer(0) : torsion_[i - free_rank_];
    }

    Integer order() const {
        if (!is_finite())
            throw Error(ErrorCode::CodomainInfinite, "order of infinite group " + to_string());
        Integer o = 1;
        for (const auto& n : torsion_)
            o *= n;
        return o;
    }

    FgAbelianGroup torsion_subgroup() const { return FgAbelianGroup(0, torsion_); }
    FgAbelianGroup free_part() const { return free(free_rank_); }

    /// Display form, e.g. "Z^2 x Z_2 x Z_4"; the trivial group is "0".
    std::string to_string() const {
        std::string s;
        if (free_rank_ == 1)
            s = "Z";
        else if (free_rank_ > 1)
            s = "Z^" + std::to_string(free_rank_);
        for (const auto& n : torsion_)
            s += (s.empty() ? "Z_" : " x Z_") + n.get_str();
        return s.empty() ? "0" : s;
    }

    friend bool operator==(const FgAbelianGroup& a, const FgAbelianGroup& b) {
        return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
    }

  private:
    std::size_t free_rank_ = 0;
    IntVector torsion_;
};

/// Smith normal number: how many invariant factors the torsion part has.
inline std::size_t smith_normal_number(const FgAbelianGroup& g) { return g.torsion().size(); }

/// The group Z^generators / (column span of relations).
struct GroupPresentation {
    std::size_t generators = 0;
    IntMatrix relations;

    GroupPresentation() = default;
    GroupPresentation(std::size_t g, IntMatrix rel) : generators(g), relations(std::move(rel)) {
        if (relations.rows() != generators)
            throw Error(ErrorCode::ShapeMismatch, "relation matrix has " + std::to_string(relations.rows()) +
                                                      " rows for " + std::to_string(generators) + " generators");
    }
};

/// The canonical form of a presented group together with the coordinate
/// change between the two. `quotient` (canonical gens x presentation gens)
/// sends presentation generators to canonical coordinates (torsion rows
/// reduced); `lift` (presentation gens x canonical gens) sends each canonical
/// generator to a representative, so quotient * lift is the identity on the
/// canonical group.
struct Normalization {
    FgAbelianGroup group;
    IntMatrix quotient;
    IntMatrix lift;
};

inline Normalization normalize(const GroupPresentation& p) {
    const std::size_t g = p.generators;
    SnfResult s = snf(p.relations);
    IntVector torsion;
    std::vector<std::size_t> torsion_rows;
    for (std::size_t i = 0; i < s.rank(); ++i)
        if (s.factors[i] > 1) {
            torsion.push_back(s.factors[i]);
            torsion_rows.push_back(i);
        }
    std::vector<std::size_t> order;
    for (std::size_t i = s.rank(); i < g; ++i)
        order.push_back(i);
    order.insert(order.end(), torsion_rows.begin(), torsion_rows.end());

    Normalization n{FgAbelianGroup(g - s.rank(), torsion), s.P.select_rows(order), s.P_inverse.select_cols(order)};
    const std::size_t free_rank = n.group.free_rank();
    for (std::size_t i = 0; i < torsion.size(); ++i)
        for (std::size_t j = 0; j < g; ++j)
            n.quotient(free_rank + i, j) = mod_floor(n.quotient(free_rank + i, j), torsion[i]);
    return n;
}

inline FgAbelianGroup from_presentation(const GroupPresentation& p) { return normalize(p).group; }

/// The relations of g itself: one column n_i * e_{r+i} per torsion factor.
inline GroupPresentation defining_presentation(const FgAbelianGroup& g) {
    const std::size_t r = g.free_rank();
    IntMatrix rel(g.generator_count(), g.torsion().size());
    for (std::size_t i = 0; i < g.torsion().size(); ++i)
        rel(r + i, i) = g.torsion()[i];
    return GroupPresentation(g.generator_count(), std::move(rel));
}

/// Coordinates in the canonical generators; torsion coordinates lie in [0, n_i).
struct GroupElement {
    IntVector coordinates;
    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

inline GroupElement reduce_element(const FgAbelianGroup& g, IntVector raw) {
    if (raw.size() != g.generator_count())
        throw Error(ErrorCode::LengthMismatch, "element of length " + std::to_string(raw.size()) + " in " +
                                                   g.to_string() + " (" + std::to_string(g.generator_count()) +
                                                   " generators)");
    for (std::size_t i = 0; i < g.torsion().size(); ++i) {
        Integer& c = raw[g.free_rank() + i];
        c = mod_floor(c, g.torsion()[i]);
    }
    return GroupElement{std::move(raw)};
}

inline GroupElement identity_element(const FgAbelianGroup& g) {
    return GroupElement{IntVector(g.generator_count())};
}

inline GroupElement element_add(const FgAbelianGroup& g, const GroupElement& a, const GroupElement& b) {
    if (a.coordinates.size() != b.coordinates.size())
        throw Error(ErrorCode::LengthMismatch, "adding elements of different lengths");
    IntVector sum(a.coordinates.size());
    for (std::size_t i = 0; i < sum.size(); ++i)
        sum[i] = a.coordinates[i] + b.coordinates[i];
    return reduce_element(g, std::move(sum));
}

inline GroupElement element_negate(const FgAbelianGroup& g, const GroupElement& a) {
    IntVector neg(a.coordinates.size());
    for (std::size_t i = 0; i < neg.size(); ++i)
        neg[i] = -a.coordinates[i];
    return reduce_element(g, std::move(neg));
}

/// Every element of a finite group, in lexicographic coordinate order.
inline std::vector<GroupElement> enumerate_elements(const FgAbelianGroup& g,
                                                    std::size_t limit = 1u << 20) {
    if (g.order() > Integer(static_cast<unsigned long>(limit)))
        throw Error(ErrorCode::ResourceCap, "enumerating " + g.order().get_str() + " elements of " + g.to_string());
    std::vector<GroupElement> out;
    IntVector c(g.generator_count());
    for (;;) {
        out.push_back(GroupElement{c});
        std::size_t i = c.size();
        while (i-- > 0) {
            if (++c[i] < g.torsion()[i])
                break;
            c[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1))
            return out;
    }
}

} // namespace lscat
