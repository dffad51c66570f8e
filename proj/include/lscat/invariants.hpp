#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lscat/abelian_group.hpp"
#include "lscat/cohomology.hpp"
#include "lscat/error.hpp"
#include "lscat/homomorphism.hpp"
#include "lscat/linalg.hpp"
#include "lscat/resolution.hpp"

namespace lscat {

/// One inequality in the derivation of the upper bound, with the maps it
/// is about.
struct ChainStep {
    std::string tag;
    std::string claim;
    std::optional<std::size_t> bound;
    std::vector<std::pair<std::string, Homomorphism>> maps;
    std::vector<std::pair<std::string, IntMatrix>> matrices;
};

struct UpperBound {
    std::size_t bound = 0;
    std::size_t m = 0;
    std::size_t k = 0;
    bool epi = false;
    bool via_image = false;
    /// The epimorphism Z^n -> Z^m x T the bound is derived for.
    Homomorphism analyzed;
    Splitting splitting;
    Factorization factorization;
    std::vector<ChainStep> steps;
};

inline constexpr const char* kTorsionCaveat =
    "the map is nonzero on the torsion subgroup of its domain; cat and cd can then differ "
    "(for the surjection Z_4 -> Z_2, cd = 2 while cat is infinite)";

inline std::size_t formula_value(const FgAbelianGroup& target) {
    return target.free_rank() + smith_normal_number(target);
}

inline UpperBound structural_upper_bound(const Homomorphism& h) {
    if (!kills_torsion(h))
        throw Error(ErrorCode::TorsionNotKilled, kTorsionCaveat);
    std::vector<ChainStep> steps;

    const Homomorphism restricted = restrict_to_free(h);
    steps.push_back({"restrict_to_free",
                     "the map factors through Z^r = domain / torsion, and the quotient map has a section, so its "
                     "classifying map is a retraction: cat and cd are unchanged",
                     std::nullopt,
                     {{"restricted", restricted}},
                     {}});

    const bool epi = is_epimorphism(restricted);
    Homomorphism analyzed = restricted;
    if (!epi) {
        analyzed = image_factorization(restricted).corestriction;
        steps.push_back({"corestrict_to_image",
                         "the map is not surjective; every value below refers to the epimorphism onto its image " +
                             analyzed.codomain().to_string(),
                         std::nullopt,
                         {{"corestriction", analyzed}},
                         {}});
    }

    Splitting sp = split(analyzed);
    const std::size_t m = sp.m;
    steps.push_back({"split",
                     "after a unimodular change of basis of the domain the map is psi1 (+) psi2, with psi1 : Z^m -> "
                     "Z^m an isomorphism and psi2 : Z^(n-m) -> T onto the torsion",
                     std::nullopt,
                     {{"psi1", sp.psi1}, {"psi2", sp.psi2}},
                     {{"basis_change", sp.basis_change}}});
    steps.push_back({"free_part", "cat(psi1) <= cat(T^m) = m", m, {}, {}});

    Factorization f = factor_through_lattice(sp.psi2);
    const std::size_t k = f.k;
    steps.push_back({"factor_through_torus",
                     "psi2 = iota o psi o pi with pi : Z^(n-m) -> Z^k onto and k the Smith normal number of T, so "
                     "cat(psi2) <= cat(psi) <= cat(T^k) = k",
                     k,
                     {{"pi", f.pi}, {"psi", f.psi}, {"iota", f.iota}},
                     {}});
    steps.push_back({"product_bound", "cat(psi1 (+) psi2) <= cat(psi1) + cat(psi2) = m + k", m + k, {}, {}});

    return UpperBound{m + k, m, k, epi, !epi, std::move(analyzed), std::move(sp), std::move(f), std::move(steps)};
}

struct InvariantCertificate {
    std::vector<ChainStep> upper_chain;
    CohomologyWitness lower_witness;
    std::optional<std::int64_t> prime;
};

struct InvariantResult {
    std::size_t value = 0;
    std::size_t m = 0;
    std::size_t k = 0;
    bool epi = false;
    bool via_image = false;
    /// rank + Smith normal number read directly off the analyzed target.
    std::size_t formula = 0;
    UpperBound upper;
    /// Z^(m+k) -> Z^m x Z_{n_1} x ... x Z_{n_k}, the map the oracle runs on.
    CoordinateMap canonical;
    /// (id_m (+) pi) o basis_change^{-1} : Z^n -> Z^(m+k).
    Homomorphism retraction;
    InvariantCertificate certificate;
};

inline Integer smallest_prime_factor(const Integer& n) {
    for (Integer d = 2; d * d <= n; ++d)
        if (divides(d, n))
            return d;
    return n;
}

namespace detail {

inline Homomorphism outer_isomorphism(const UpperBound& ub) {
    const FgAbelianGroup middle(ub.m, ub.factorization.psi_factors);
    return Homomorphism(middle, ub.analyzed.codomain(),
                        block_diagonal(ub.splitting.psi1.matrix(), ub.factorization.iota.matrix()));
}

inline Homomorphism canonical_homomorphism(const UpperBound& ub) {
    return Homomorphism(FgAbelianGroup::free(ub.m + ub.k), FgAbelianGroup(ub.m, ub.factorization.psi_factors),
                        IntMatrix::identity(ub.m + ub.k));
}

} // namespace detail

/// cat(h) = cd(h) = rank + k for h vanishing on torsion. The value is
/// computed three ways: by the structural pipeline (split, then factor the
/// torsion part through a torus), by reading rank and Smith normal number
/// off the target, and by the highest degree in which the oracle finds a
/// nonzero induced map on the canonical coordinate map.
inline InvariantResult cat_cd(const Homomorphism& h, std::size_t rank_cap = kDefaultRankCap) {
    UpperBound ub = structural_upper_bound(h);
    const std::size_t m = ub.m, k = ub.k;
    const std::size_t n = ub.analyzed.domain().free_rank();

    const Homomorphism canonical = detail::canonical_homomorphism(ub);
    const Homomorphism retraction(
        FgAbelianGroup::free(n), FgAbelianGroup::free(m + k),
        block_diagonal(IntMatrix::identity(m), ub.factorization.pi.matrix()) *
            inverse_unimodular(ub.splitting.basis_change));
    if (!(compose(detail::outer_isomorphism(ub), compose(canonical, retraction)) == ub.analyzed))
        throw Error(ErrorCode::VerificationFailed, "canonical factorization does not reassemble the map");

    std::optional<std::int64_t> prime;
    Coefficients coeff = Coefficients::integers();
    if (k > 0) {
        prime = to_int64(smallest_prime_factor(ub.factorization.psi_factors.front()));
        coeff = Coefficients::modulo(*prime);
    }

    CoordinateMap coords = CoordinateMap::from_homomorphism(canonical);
    auto witness = top_witness(coords, coeff, m + k + 1, rank_cap);
    if (!witness)
        throw Error(ErrorCode::VerificationFailed, "oracle found no nonzero induced map");

    std::vector<std::string> transfer;
    transfer.push_back("the oracle map Z^(m+k) -> Z^m x Z_{n_1} x ... x Z_{n_k} is the coordinatewise reduction");
    transfer.push_back("the analyzed map equals outer o oracle map o retraction, checked exactly");
    transfer.push_back("the retraction Z^n -> Z^(m+k) consists of rows of a unimodular matrix, so it has a section "
                       "and its pullback is injective on cohomology");
    transfer.push_back("the outer map Z^m x T -> target is an isomorphism, so its pullback is bijective");
    if (h.domain() != ub.analyzed.domain() || !ub.epi)
        transfer.push_back("the passage from the input map (restricted to the free quotient" +
                           std::string(ub.via_image ? ", corestricted to the image" : "") +
                           ") is recorded in the upper chain");
    witness->transfer_steps = std::move(transfer);

    const std::size_t formula = formula_value(ub.analyzed.codomain());
    InvariantResult r{m + k,   m,           k, ub.epi, ub.via_image, formula, std::move(ub), std::move(coords),
                      retraction, {}};
    r.certificate = InvariantCertificate{r.upper.steps, std::move(*witness), prime};
    return r;
}

/// Re-checks every claim in a result: splitting block form and
/// unimodularity, the lattice factorization, the reassembly through the
/// oracle map, chain-map squares, and the witness itself (recomputed).
inline bool verify_certificate(const InvariantResult& r) {
    const UpperBound& ub = r.upper;
    const Homomorphism& a = ub.analyzed;
    if (!is_unimodular(ub.splitting.basis_change))
        return false;
    if (!(Homomorphism(a.domain(), a.codomain(), a.matrix() * ub.splitting.basis_change).matrix() ==
          ub.splitting.block_matrix()))
        return false;
    if (!(reassemble(ub.splitting, a.codomain()) == a))
        return false;
    if (!(ub.factorization.composite() == ub.splitting.psi2))
        return false;
    if (!(compose(detail::outer_isomorphism(ub), compose(detail::canonical_homomorphism(ub), r.retraction)) == a))
        return false;
    if (r.value != ub.bound || r.value != r.formula || r.value != r.m + r.k)
        return false;
    const CohomologyWitness& w = r.certificate.lower_witness;
    if (w.dimension != r.value || !w.chain_map || !w.chain_map->verify())
        return false;
    if (r.k > 0 && (!r.certificate.prime || !divides(Integer(static_cast<long>(*r.certificate.prime)),
                                                      ub.factorization.psi_factors.front())))
        return false;
    const auto again = induced_map(w.chain_map, w.dimension, w.coefficients);
    const auto* w2 = std::get_if<CohomologyWitness>(&again);
    return w2 && w2->induced_matrix == w.induced_matrix && w.induced_matrix(w.nonzero_entry.row, w.nonzero_entry.col) ==
                                                               w.nonzero_entry.value &&
           w.nonzero_entry.value != 0;
}

} // namespace lscat
