#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "liftspec/finite_group.hpp"

namespace liftspec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// A unitary representation given densely: one d x d matrix per group element.
/// Homomorphism is with respect to the left-to-right product, so
/// matrices[a*b] == matrices[a] * matrices[b].
struct Irrep {
    std::vector<CMatrix> matrices;
    std::vector<Complex> character;

    Irrep() = default;
    explicit Irrep(std::vector<CMatrix> mats);

    std::size_t dim() const { return matrices.empty() ? 0 : static_cast<std::size_t>(matrices.front().rows()); }

    /// rho(x) for a formal sum x = sum c_g g.
    template <typename Coefficients>
    CMatrix image_of_sum(const Coefficients& coeffs) const {
        CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(dim()));
        for (const auto& [g, c] : coeffs) out += c * matrices[g];
        return out;
    }
};

/// Complete set of pairwise inequivalent irreps, ordered by ascending
/// dimension, ties broken by the character on class representatives
/// (descending real part, then descending imaginary part). The trivial
/// representation is therefore always first.
struct IrrepSet {
    GroupPtr group;
    std::vector<Irrep> irreps;

    std::size_t size() const { return irreps.size(); }
    const Irrep& operator[](std::size_t i) const { return irreps[i]; }
};

/// Sorts `set.irreps` into the canonical order described on IrrepSet.
void canonicalize(IrrepSet& set);

// ---------------------------------------------------------------------------
// Catalog

enum class GroupFamily { Cyclic, Dihedral, Sym3 };

/// "cyclic", "dihedral" or "sym3"; throws ParseError otherwise.
GroupFamily parse_family(std::string_view name);

struct CatalogGroup {
    GroupPtr group;
    IrrepSet irreps;
};

/// Closed-form irreps.
///  - Cyclic, param m: C_m = <(1 2 ... m)>, characters omega^(jk).
///  - Dihedral, param 2m (the group order, even): rotation (1 ... m) and the
///    reflection fixing 1; 1-dim characters plus 2-dim rotation blocks.
///  - Sym3: generated by g = (2 3), h = (1 2) with
///    sigma(g) = 1/2 [[-1,-sqrt3],[-sqrt3,1]], sigma(h) = 1/2 [[-1,sqrt3],[sqrt3,1]].
/// Throws ConsistencyError for param < 1 or an odd dihedral order.
CatalogGroup builtin_irreps(GroupFamily family, long param);

// ---------------------------------------------------------------------------
// Numerical decomposition

struct IrrepOptions {
    double tol = 1e-8;                  // verification tolerance
    double cluster_tol_per_order = 1e-7;  // eigenvalue clustering, times |G|
    int max_retries = 8;
};

/// Decomposes the right regular representation by diagonalizing random
/// Hermitian elements of its commutant. Deterministic in (group, seed).
/// Throws NumericalError (carrying the seeds tried) if a subspace cannot be
/// split, or if the result fails its own invariants.
IrrepSet compute_irreps(GroupPtr group, std::uint64_t seed, const IrrepOptions& options = {});

// ---------------------------------------------------------------------------
// Subgroup sums and checks

struct SubgroupSumImage {
    CMatrix matrix;                       // rho(H) = sum_{h in H} rho(h)
    std::vector<double> singular_values;  // descending
    std::size_t rank = 0;
};

inline constexpr double kDefaultRankTol = 1e-9;

/// rank counts singular values above rank_tol * max(1, largest).
SubgroupSumImage subgroup_sum(const Irrep& irrep, const SubgroupContext& ctx, double rank_tol = kDefaultRankTol);

/// sum over irreps of dim * rank(rho(H)).
std::size_t rank_identity_sum(const IrrepSet& irreps, const SubgroupContext& ctx, double rank_tol = kDefaultRankTol);

/// rank_identity_sum(...) == ctx.index().
bool verify_rank_identity(const IrrepSet& irreps, const SubgroupContext& ctx, double rank_tol = kDefaultRankTol);

/// Homomorphism, unitarity and <chi,chi> = 1, each within tol.
bool verify_irrep(const FiniteGroup& group, const Irrep& irrep, double tol);

/// sum_g rho(g)_ij conj(rho'(g)_i'j') == |G|/d delta delta delta within tol.
bool verify_great_orthogonality(const IrrepSet& irreps, double tol);

/// Row and column orthogonality of the character table within tol.
bool verify_character_orthogonality(const IrrepSet& irreps, const std::vector<ConjugacyClass>& classes, double tol);

/// (1/|G|) sum_g chi(g) conj(psi(g)).
Complex character_inner_product(const std::vector<Complex>& chi, const std::vector<Complex>& psi);

}  // namespace liftspec
