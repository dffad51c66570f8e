#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lscat/abelian_group.hpp"
#include "lscat/error.hpp"
#include "lscat/linalg.hpp"
#include "lscat/matrix.hpp"

namespace lscat {

/// A homomorphism between canonical groups, given by the images of the
/// domain generators (column j = image of generator j). Construction checks
/// well-definedness and reduces torsion rows into [0, n'_i), so equality of
/// homomorphisms is entrywise equality of matrices.
class Homomorphism {
  public:
    Homomorphism(FgAbelianGroup domain, FgAbelianGroup codomain, IntMatrix matrix)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
        const std::size_t rows = codomain_.generator_count();
        const std::size_t cols = domain_.generator_count();
        if (matrix_.rows() != rows || matrix_.cols() != cols)
            throw Error(ErrorCode::ShapeMismatch, "matrix is " + matrix_.shape_string() + " but " +
                                                      domain_.to_string() + " -> " + codomain_.to_string() +
                                                      " needs " + std::to_string(rows) + "x" + std::to_string(cols));
        const std::size_t r_out = codomain_.free_rank();
        for (std::size_t j = domain_.free_rank(); j < cols; ++j) {
            const Integer order = domain_.generator_order(j);
            for (std::size_t i = 0; i < rows; ++i) {
                const Integer& v = matrix_(i, j);
                if (i < r_out ? v != 0 : !divides(codomain_.generator_order(i), order * v))
                    throw Error(ErrorCode::IllDefined,
                                "column " + std::to_string(j) + " (order " + order.get_str() + ") row " +
                                    std::to_string(i) + ": " + order.get_str() + " * " + v.get_str() +
                                    " is nonzero in " +
                                    (i < r_out ? std::string("Z") : "Z_" + codomain_.generator_order(i).get_str()));
            }
        }
        for (std::size_t i = r_out; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                matrix_(i, j) = mod_floor(matrix_(i, j), codomain_.generator_order(i));
    }

    static Homomorphism identity(const FgAbelianGroup& g) {
        return Homomorphism(g, g, IntMatrix::identity(g.generator_count()));
    }
    static Homomorphism zero(const FgAbelianGroup& domain, const FgAbelianGroup& codomain) {
        return Homomorphism(domain, codomain, IntMatrix(codomain.generator_count(), domain.generator_count()));
    }

    const FgAbelianGroup& domain() const noexcept { return domain_; }
    const FgAbelianGroup& codomain() const noexcept { return codomain_; }
    const IntMatrix& matrix() const noexcept { return matrix_; }

    GroupElement apply(const GroupElement& x) const {
        return reduce_element(codomain_, matrix_.apply(x.coordinates));
    }

    friend bool operator==(const Homomorphism&, const Homomorphism&) = default;

  private:
    FgAbelianGroup domain_;
    FgAbelianGroup codomain_;
    IntMatrix matrix_;
};

inline Homomorphism validate(const FgAbelianGroup& domain, const FgAbelianGroup& codomain, const IntMatrix& matrix) {
    return Homomorphism(domain, codomain, matrix);
}

/// Relation lattice of g in its own generators.
inline IntMatrix relation_matrix(const FgAbelianGroup& g) { return defining_presentation(g).relations; }

inline bool is_epimorphism(const Homomorphism& h) {
    const SnfResult s = snf(hstack(h.matrix(), relation_matrix(h.codomain())));
    if (s.rank() != h.codomain().generator_count())
        return false;
    for (const auto& f : s.factors)
        if (f != 1)
            return false;
    return true;
}

inline bool kills_torsion(const Homomorphism& h) {
    const std::size_t r = h.domain().free_rank();
    for (std::size_t j = r; j < h.domain().generator_count(); ++j)
        for (std::size_t i = 0; i < h.codomain().generator_count(); ++i)
            if (h.matrix()(i, j) != 0)
                return false;
    return true;
}

namespace detail {

// {x in Z^c : h(x) = 0 in the codomain}, as generating columns
// (the projection of ker [matrix | relations] onto its first c coordinates).
inline IntMatrix preimage_of_zero(const Homomorphism& h) {
    const std::size_t c = h.domain().generator_count();
    const IntMatrix k = kernel_basis(hstack(h.matrix(), relation_matrix(h.codomain())));
    return k.block(0, c, 0, k.cols());
}

inline void require_free_domain(const Homomorphism& h, const char* op) {
    if (!h.domain().is_torsion_free())
        throw Error(ErrorCode::DomainHasTorsion,
                    std::string(op) + " needs a free domain, got " + h.domain().to_string());
}

inline void require_epimorphism(const Homomorphism& h, const char* op) {
    if (!is_epimorphism(h))
        throw Error(ErrorCode::NotEpimorphism, std::string(op) + ": map " + h.domain().to_string() + " -> " +
                                                   h.codomain().to_string() + " is not surjective");
}

} // namespace detail

/// Basis (columns) of ker h for h with free domain Z^n. For an epimorphism
/// onto a finite group the basis is square with |det| = |codomain|.
inline IntMatrix kernel_lattice(const Homomorphism& h) {
    detail::require_free_domain(h, "kernel_lattice");
    return column_lattice_basis(detail::preimage_of_zero(h));
}

inline Homomorphism compose(const Homomorphism& g, const Homomorphism& h) {
    if (!(h.codomain() == g.domain()))
        throw Error(ErrorCode::ShapeMismatch, "cannot compose: codomain " + h.codomain().to_string() +
                                                  " differs from domain " + g.domain().to_string());
    return Homomorphism(h.domain(), g.codomain(), g.matrix() * h.matrix());
}

/// The map induced on Z^r = domain / torsion; requires h to kill torsion.
inline Homomorphism restrict_to_free(const Homomorphism& h) {
    if (!kills_torsion(h))
        throw Error(ErrorCode::TorsionNotKilled, "map " + h.domain().to_string() + " -> " +
                                                     h.codomain().to_string() + " is nonzero on torsion");
    const std::size_t r = h.domain().free_rank();
    return Homomorphism(FgAbelianGroup::free(r), h.codomain(), h.matrix().block(0, h.matrix().rows(), 0, r));
}

/// h = inclusion o corestriction, with corestriction onto im(h) surjective.
struct ImageFactorization {
    Homomorphism corestriction;
    Homomorphism inclusion;
};

inline ImageFactorization image_factorization(const Homomorphism& h) {
    const std::size_t c = h.domain().generator_count();
    const Normalization n = normalize(GroupPresentation(c, detail::preimage_of_zero(h)));
    return ImageFactorization{Homomorphism(h.domain(), n.group, n.quotient),
                              Homomorphism(n.group, h.codomain(), h.matrix() * n.lift)};
}

inline FgAbelianGroup image(const Homomorphism& h) {
    const std::size_t c = h.domain().generator_count();
    return from_presentation(GroupPresentation(c, detail::preimage_of_zero(h)));
}

/// h = iota o psi o pi for an epimorphism h : Z^n -> finite Lambda, with
/// pi : Z^n -> Z^k surjective, psi the coordinatewise reduction onto
/// Z_{n_1} x ... x Z_{n_k}, and iota an isomorphism onto Lambda.
struct Factorization {
    std::size_t k = 0;
    Homomorphism pi;
    IntVector psi_factors;
    Homomorphism psi;
    Homomorphism iota;

    Homomorphism composite() const { return compose(iota, compose(psi, pi)); }
};

/// The kernel basis is whichever kernel_lattice returns; other bases give
/// different (pi, iota) with the same factors.
inline Factorization factor_through_lattice(const Homomorphism& h) {
    detail::require_free_domain(h, "factor_through_lattice");
    if (!h.codomain().is_finite())
        throw Error(ErrorCode::CodomainInfinite, "factor_through_lattice needs a finite codomain, got " +
                                                     h.codomain().to_string());
    detail::require_epimorphism(h, "factor_through_lattice");

    const std::size_t n = h.domain().free_rank();
    const SnfResult s = snf(kernel_lattice(h));
    IntVector factors;
    for (const auto& f : s.factors)
        if (f > 1)
            factors.push_back(f);
    const std::size_t k = factors.size();
    const FgAbelianGroup lattice = FgAbelianGroup::free(k);
    const FgAbelianGroup cyclic_product(0, factors);

    IntMatrix iota_matrix(h.codomain().generator_count(), k);
    for (std::size_t i = 0; i < k; ++i)
        iota_matrix.set_column(i, h.matrix().apply(s.P_inverse.column(n - k + i)));

    Factorization f{k,
                    Homomorphism(h.domain(), lattice, s.P.block(n - k, n, 0, n)),
                    factors,
                    Homomorphism(lattice, cyclic_product, IntMatrix::identity(k)),
                    Homomorphism(cyclic_product, h.codomain(), std::move(iota_matrix))};
    if (!(f.composite() == h) || !(cyclic_product == h.codomain()))
        throw Error(ErrorCode::VerificationFailed, "lattice factorization does not reassemble the input map");
    return f;
}

/// After the unimodular change of basis `basis_change` of Z^n, an epimorphism
/// h : Z^n -> Z^m x T decomposes as psi1 (+) psi2 with psi1 : Z^m -> Z^m an
/// isomorphism and psi2 : Z^{n-m} -> T an epimorphism.
struct Splitting {
    std::size_t m = 0;
    IntMatrix basis_change;
    Homomorphism psi1;
    Homomorphism psi2;

    /// Block-diagonal matrix of psi1 (+) psi2 in the changed basis.
    IntMatrix block_matrix() const { return block_diagonal(psi1.matrix(), psi2.matrix()); }
};

inline Splitting split(const Homomorphism& h) {
    detail::require_free_domain(h, "split");
    detail::require_epimorphism(h, "split");

    const FgAbelianGroup& target = h.codomain();
    const std::size_t n = h.domain().free_rank();
    const std::size_t m = target.free_rank();
    const IntMatrix augmented = hstack(h.matrix(), relation_matrix(target));

    // Section of the free part chosen with h(s(e_i)) = (e_i, 0), so the
    // torsion coordinates vanish on s(Z^m) as well.
    IntMatrix section(n, m);
    for (std::size_t i = 0; i < m; ++i) {
        IntVector rhs(target.generator_count());
        rhs[i] = 1;
        const auto z = solve(augmented, rhs);
        if (!z)
            throw Error(ErrorCode::NotEpimorphism, "no preimage of free generator " + std::to_string(i));
        section.set_column(i, std::span<const Integer>(z->data(), n));
    }
    const IntMatrix free_rows = h.matrix().block(0, m, 0, n);
    const IntMatrix complement = kernel_basis(free_rows);
    IntMatrix basis_change = hstack(section, complement);

    const IntMatrix conjugated = h.matrix() * basis_change;
    Splitting sp{m, basis_change,
                 Homomorphism(FgAbelianGroup::free(m), FgAbelianGroup::free(m), conjugated.block(0, m, 0, m)),
                 Homomorphism(FgAbelianGroup::free(n - m), target.torsion_subgroup(),
                              conjugated.block(m, target.generator_count(), m, n))};

    const Homomorphism reduced(h.domain(), target, conjugated);
    if (!is_unimodular(basis_change) || !(reduced.matrix() == sp.block_matrix()))
        throw Error(ErrorCode::VerificationFailed, "splitting is not block diagonal");
    return sp;
}

/// (psi1 (+) psi2) o basis_change^{-1} as a map on the original Z^n.
inline Homomorphism reassemble(const Splitting& sp, const FgAbelianGroup& codomain) {
    const std::size_t n = sp.basis_change.rows();
    return Homomorphism(FgAbelianGroup::free(n), codomain,
                        sp.block_matrix() * inverse_unimodular(sp.basis_change));
}

} // namespace lscat
