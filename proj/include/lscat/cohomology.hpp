#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lscat/abelian_group.hpp"
#include "lscat/error.hpp"
#include "lscat/homomorphism.hpp"
#include "lscat/linalg.hpp"
#include "lscat/modp.hpp"
#include "lscat/resolution.hpp"

namespace lscat {

/// Trivial coefficient module: Z or F_p.
class Coefficients {
  public:
    static Coefficients integers() { return Coefficients(0); }
    static Coefficients modulo(std::int64_t p) {
        if (!is_prime(p))
            throw Error(ErrorCode::Malformed, "coefficient modulus " + std::to_string(p) + " is not prime");
        return Coefficients(p);
    }

    bool is_integral() const noexcept { return p_ == 0; }
    std::int64_t prime() const noexcept { return p_; }
    std::string to_string() const { return p_ == 0 ? "Z" : "Z_" + std::to_string(p_); }

    friend bool operator==(const Coefficients&, const Coefficients&) = default;

  private:
    explicit Coefficients(std::int64_t p) : p_(p) {}
    std::int64_t p_;
};

/// H^degree with the given coefficients. Over F_p the group is (Z_p)^dim.
struct CohomologyGroup {
    std::size_t degree = 0;
    Coefficients coefficients = Coefficients::integers();
    FgAbelianGroup group;

    std::size_t dimension() const noexcept { return group.generator_count(); }
};

namespace detail {

// delta^j = eps(d_{j+1})^T : Hom(C_j, M) -> Hom(C_{j+1}, M); zero for j < 0.
inline IntMatrix coboundary(const Resolution& res, std::ptrdiff_t j) {
    if (j < 0)
        return IntMatrix(res.rank(0), 0);
    const auto jj = static_cast<std::size_t>(j);
    if (jj + 1 > res.max_dim())
        throw Error(ErrorCode::ShapeMismatch, "cohomology in degree " + std::to_string(jj) +
                                                  " needs the resolution through degree " + std::to_string(jj + 1));
    return res.differential(jj + 1).augmentation().transpose();
}

/// Cocycles modulo coboundaries in one degree, with representatives for the
/// canonical generators and a coordinate map back from cocycles.
class DegreeCohomology {
  public:
    DegreeCohomology(const Resolution& res, std::size_t degree, Coefficients coeff)
        : degree_(degree), coeff_(coeff) {
        const IntMatrix out = coboundary(res, static_cast<std::ptrdiff_t>(degree));
        const IntMatrix in = coboundary(res, static_cast<std::ptrdiff_t>(degree) - 1);
        if (coeff.is_integral())
            build_integral(out, in);
        else
            build_field(out, in, coeff.prime());
    }

    CohomologyGroup group() const { return CohomologyGroup{degree_, coeff_, group_}; }

    /// Cochain (length rank of C_degree) representing canonical generator i.
    IntVector representative(std::size_t i) const { return representatives_.column(i); }

    /// Canonical coordinates of the class of a cocycle.
    IntVector coordinates(const IntVector& cocycle) const {
        if (coeff_.is_integral()) {
            auto z = kernel_solver_->solve(cocycle);
            if (!z)
                throw Error(ErrorCode::VerificationFailed, "cochain is not a cocycle");
            return reduce_element(group_, quotient_.apply(*z)).coordinates;
        }
        const std::int64_t p = coeff_.prime();
        std::vector<std::int64_t> v(cocycle.size());
        const Integer pp(static_cast<long>(p));
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = to_int64(mod_floor(cocycle[i], pp));
        const auto x = field_coords_->apply(v);
        // the cocycle must lie in span[B | H]: rows past b + h vanish
        for (std::size_t i = boundary_dim_ + group_.generator_count(); i < x.size(); ++i)
            if (x[i] != 0)
                throw Error(ErrorCode::VerificationFailed, "cochain is not a cocycle");
        IntVector out(group_.generator_count());
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = static_cast<long>(x[boundary_dim_ + i]);
        return out;
    }

  private:
    void build_integral(const IntMatrix& out, const IntMatrix& in) {
        const IntMatrix kernel = kernel_basis(out);
        kernel_solver_ = std::make_shared<const LatticeSolver>(kernel);
        IntMatrix boundaries(kernel.cols(), in.cols());
        for (std::size_t c = 0; c < in.cols(); ++c) {
            auto y = kernel_solver_->solve(in.column(c));
            if (!y)
                throw Error(ErrorCode::VerificationFailed, "coboundary outside the cocycle lattice");
            boundaries.set_column(c, *y);
        }
        const Normalization n = normalize(GroupPresentation(kernel.cols(), boundaries));
        group_ = n.group;
        quotient_ = n.quotient;
        representatives_ = kernel * n.lift;
    }

    void build_field(const IntMatrix& out, const IntMatrix& in, std::int64_t p) {
        const FpMatrix cocycles = FpMatrix::reduce(out, p).nullspace();
        FpMatrix bound = FpMatrix::reduce(in, p);
        FpMatrix echelon = bound;
        const auto bound_pivots = echelon.row_reduce();
        const FpMatrix boundary_basis = bound.select_cols(bound_pivots);
        boundary_dim_ = bound_pivots.size();

        // extend the coboundary basis to a cocycle basis
        FpMatrix both = hstack(boundary_basis, cocycles);
        FpMatrix reduced = both;
        std::vector<std::size_t> keep;
        for (auto c : reduced.row_reduce())
            if (c >= boundary_dim_)
                keep.push_back(c);
        const FpMatrix classes = both.select_cols(keep);
        group_ = FgAbelianGroup(0, IntVector(keep.size(), Integer(static_cast<long>(p))));
        representatives_ = classes.lift();

        FpMatrix span = hstack(boundary_basis, classes);
        auto track = std::make_shared<FpMatrix>(FpMatrix::identity(p, span.rows()));
        span.row_reduce(track.get());
        field_coords_ = std::move(track);
    }

    std::size_t degree_;
    Coefficients coeff_;
    FgAbelianGroup group_;
    IntMatrix representatives_;
    // integral
    std::shared_ptr<const LatticeSolver> kernel_solver_;
    IntMatrix quotient_;
    // field
    std::shared_ptr<const FpMatrix> field_coords_;
    std::size_t boundary_dim_ = 0;
};

} // namespace detail

inline std::vector<CohomologyGroup> cohomology(const CyclicDecomposition& g, Coefficients coeff, std::size_t max_dim,
                                               std::size_t rank_cap = kDefaultRankCap) {
    const Resolution res(g, max_dim + 1, rank_cap);
    std::vector<CohomologyGroup> out;
    for (std::size_t j = 0; j <= max_dim; ++j)
        out.push_back(detail::DegreeCohomology(res, j, coeff).group());
    return out;
}

inline std::vector<CohomologyGroup> cohomology(const FgAbelianGroup& g, Coefficients coeff, std::size_t max_dim,
                                               std::size_t rank_cap = kDefaultRankCap) {
    return cohomology(CyclicDecomposition::from_group(g), coeff, max_dim, rank_cap);
}

struct NonzeroEntry {
    std::size_t row = 0;
    std::size_t col = 0;
    Integer value;
};

/// A nonzero induced map phi^* : H^d(target) -> H^d(source) along a chain
/// map over phi : source -> target. `source_cohomology` is the domain of
/// phi^*, i.e. the cohomology of phi's target group.
struct CohomologyWitness {
    std::size_t dimension = 0;
    Coefficients coefficients = Coefficients::integers();
    CohomologyGroup source_cohomology;
    CohomologyGroup target_cohomology;
    IntMatrix induced_matrix;
    NonzeroEntry nonzero_entry;
    std::vector<std::string> transfer_steps;
    std::shared_ptr<const ChainMap> chain_map;
};

struct ZeroMapReport {
    std::size_t dimension = 0;
    Coefficients coefficients = Coefficients::integers();
    CohomologyGroup source_cohomology;
    CohomologyGroup target_cohomology;
};

using InducedMapResult = std::variant<CohomologyWitness, ZeroMapReport>;

inline InducedMapResult induced_map(const std::shared_ptr<const ChainMap>& cm, std::size_t dimension,
                                    Coefficients coeff) {
    if (dimension + 1 > cm->max_dim())
        throw Error(ErrorCode::ShapeMismatch, "induced map in degree " + std::to_string(dimension) +
                                                  " needs resolutions through degree " + std::to_string(dimension + 1));
    const detail::DegreeCohomology upstairs(cm->target(), dimension, coeff);
    const detail::DegreeCohomology downstairs(cm->source(), dimension, coeff);
    const CohomologyGroup from = upstairs.group();
    const CohomologyGroup to = downstairs.group();

    const IntMatrix pullback = cm->component(dimension).augmentation().transpose();
    IntMatrix matrix(to.group.generator_count(), from.group.generator_count());
    for (std::size_t c = 0; c < matrix.cols(); ++c)
        matrix.set_column(c, downstairs.coordinates(pullback.apply(upstairs.representative(c))));
    // well-definedness on the cohomology presentations
    const Homomorphism induced(from.group, to.group, matrix);

    for (std::size_t i = 0; i < matrix.rows(); ++i)
        for (std::size_t j = 0; j < matrix.cols(); ++j)
            if (induced.matrix()(i, j) != 0)
                return CohomologyWitness{dimension,         coeff, from, to, induced.matrix(),
                                         {i, j, induced.matrix()(i, j)}, {},    cm};
    return ZeroMapReport{dimension, coeff, from, to};
}

/// The witness certifying cd >= dimension for the coordinate map, or
/// NoWitness when the induced map vanishes there (absence of this
/// certificate, not a refutation).
inline CohomologyWitness certify_cd_lower_bound(const CoordinateMap& map, std::size_t dimension, Coefficients coeff,
                                                std::vector<std::string> transfer_steps = {},
                                                std::size_t rank_cap = kDefaultRankCap) {
    auto result = induced_map(ChainMap::build(map, dimension + 1, rank_cap), dimension, coeff);
    if (auto* w = std::get_if<CohomologyWitness>(&result)) {
        w->transfer_steps = std::move(transfer_steps);
        return std::move(*w);
    }
    throw Error(ErrorCode::NoWitness, "induced map " + map.target().to_string() + " -> " + map.source().to_string() +
                                          " vanishes in degree " + std::to_string(dimension) + " with " +
                                          coeff.to_string() + " coefficients");
}

/// Highest degree <= max_dim carrying a nonzero induced map, found by
/// scanning downward.
inline std::optional<CohomologyWitness> top_witness(const CoordinateMap& map, Coefficients coeff, std::size_t max_dim,
                                                    std::size_t rank_cap = kDefaultRankCap) {
    const auto cm = ChainMap::build(map, max_dim + 1, rank_cap);
    for (std::size_t d = max_dim + 1; d-- > 0;) {
        auto result = induced_map(cm, d, coeff);
        if (auto* w = std::get_if<CohomologyWitness>(&result))
            return std::move(*w);
    }
    return std::nullopt;
}

} // namespace lscat
