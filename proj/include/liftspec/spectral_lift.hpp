#pragma once

#include <cstddef>
#include <vector>

#include "liftspec/eig.hpp"
#include "liftspec/irreps.hpp"
#include "liftspec/voltage_graph.hpp"

namespace liftspec {

struct LiftOptions {
    double rank_tol = 1e-9;
    double residual_tol = 1e-8;
    double match_tol = 1e-7;
};

/// The (d k) x (d k) matrix rho(B): a k x k grid of d x d blocks rho(B(u,v)).
CMatrix rho_image(const BaseMatrix& b, const Irrep& irrep);

/// Max |M - M^H| entry.
double hermitian_defect(const CMatrix& m);

struct IrrepEigenData {
    std::size_t irrep = 0;
    std::size_t dim = 0;
    CVector eigenvalues;   // mu_(w,i) at column w * dim + i
    CMatrix eigenvectors;  // U with rho(B) U = U D
};

/// Eigendecomposition of rho(B) for every irrep, in irrep order.
std::vector<IrrepEigenData> irrep_eigendata(const BaseMatrix& b, const IrrepSet& irreps, const LiftOptions& options = {});

struct SpectrumProvenance {
    std::size_t irrep = 0;
    std::size_t dim = 0;
    std::size_t rank = 0;  // rank(rho(H)), the repetition factor
};

struct SpectrumEntry {
    Complex value;
    std::size_t count = 0;
    std::vector<SpectrumProvenance> provenance;
};

struct SpectrumReport {
    std::size_t kn = 0;
    std::vector<SpectrumEntry> entries;  // ascending by (real, imaginary)

    /// The full multiset, each value repeated `count` times, ascending.
    std::vector<Complex> values() const;
};

/// Spectrum of the relative lift: every eigenvalue of rho(B) repeated
/// rank(rho(H)) times, over all irreps. Values within match_tol are merged
/// into one entry. Throws NumericalError if sum dim * rank != n.
SpectrumReport lift_spectrum(const BaseMatrix& b, const IrrepSet& irreps, const SubgroupContext& ctx,
                             const LiftOptions& options = {});

/// kn x k|G| matrix. Column blocks run over irreps, then j in [d], then
/// (w, i) vertex-major; entry ((u, J), (w, i)) is [u == w] * rho(J)_{j,i}
/// with rho(J) the sum of rho over the coset J.
CMatrix build_SH(const IrrepSet& irreps, const SubgroupContext& ctx, std::size_t k);

/// Block diagonal: for each irrep, d copies of its U. Throws NumericalError
/// if any U is numerically singular.
CMatrix build_T(const std::vector<IrrepEigenData>& eigendata, std::size_t k);

struct EigenvectorColumn {
    Complex eigenvalue;
    std::size_t irrep = 0;
    std::size_t j = 0;
    std::size_t w = 0;
    std::size_t i = 0;
    CVector vector;  // coordinates (u, J), base-vertex-major
    bool zero = false;
    bool selected = false;
    double residual = 0.0;  // ||A y - mu y||_2, filled for selected columns
};

struct EigenvectorBundle {
    std::size_t kn = 0;
    std::vector<EigenvectorColumn> columns;   // the k|G| columns of S^H T, in order
    std::vector<std::size_t> selected_basis;  // exactly kn column indices, ascending
    double max_residual = 0.0;                // relative: residual / max(1, ||y||)
};

/// y -> A y for the relative lift, applied straight from the base matrix.
CVector apply_lift_operator(const BaseMatrix& b, const SubgroupContext& ctx, const CVector& y);

/// Columns of S^H T with their eigenvalue tags, plus kn independent ones
/// chosen by column-pivoted QR among the non-zero columns. Requires every
/// rho(B) to be Hermitian (undirected base). Throws NumericalError if fewer
/// than kn independent columns are found or a selected column fails the
/// residual bound.
EigenvectorBundle lift_eigenvectors(const BaseMatrix& b, const IrrepSet& irreps, const SubgroupContext& ctx,
                                    const LiftOptions& options = {});

// ---------------------------------------------------------------------------
// Multisets

/// Sorted pairing distance: max |a_i - b_i| after sorting both, or +inf if
/// the sizes differ.
double multiset_distance(std::vector<Complex> a, std::vector<Complex> b);

/// Every element of `sub` can be matched to a distinct element of `super`
/// within tol.
bool multiset_contains(std::vector<Complex> super, std::vector<Complex> sub, double tol);

/// Eigenvalues of an integer adjacency matrix, ascending.
std::vector<Complex> adjacency_spectrum(const Eigen::MatrixXi& adjacency, bool symmetric);

struct VerificationReport {
    std::size_t kn = 0;
    double spectral_distance = 0.0;
    double max_residual = 0.0;  // against the explicitly built lift
    std::size_t selected = 0;
    bool rank_identity = false;
    bool passed = false;
    std::vector<Complex> method;
    std::vector<Complex> oracle;
};

/// Builds the lift explicitly, diagonalizes it, and compares with
/// lift_spectrum and lift_eigenvectors. Passes iff the spectra agree within
/// match_tol, every selected eigenvector satisfies the residual bound, kn
/// columns are selected and the rank identity holds.
VerificationReport verify_against_oracle(const VoltageGraph& graph, const IrrepSet& irreps, const SubgroupContext& ctx,
                                         const LiftOptions& options = {});

}  // namespace liftspec
