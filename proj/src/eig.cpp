#include "liftspec/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "liftspec/errors.hpp"

namespace liftspec {

namespace {

// Rounded real part used as the primary sort key; avoids a comparator that
// is not a strict weak ordering.
double bucket(double x, double resolution) { return std::round(x / resolution); }

std::vector<Eigen::Index> ascending_order(const CVector& values, double resolution) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        const double ra = bucket(values(a).real(), resolution), rb = bucket(values(b).real(), resolution);
        if (ra != rb) return ra < rb;
        return values(a).imag() < values(b).imag();
    });
    return order;
}

}  // namespace

void sort_complex(std::vector<Complex>& values, double resolution) {
    std::stable_sort(values.begin(), values.end(), [&](const Complex& a, const Complex& b) {
        const double ra = bucket(a.real(), resolution), rb = bucket(b.real(), resolution);
        if (ra != rb) return ra < rb;
        return a.imag() < b.imag();
    });
}

EigenDecomposition eig_dense(const CMatrix& m, bool hermitian, double tol) {
    if (m.rows() != m.cols()) throw NumericalError("eig_dense: matrix is not square");
    if (!m.allFinite()) throw NumericalError("eig_dense: matrix has non-finite entries");
    const Eigen::Index n = m.rows();
    EigenDecomposition out;
    if (n == 0) return out;

    CVector values;
    CMatrix vectors;
    if (hermitian) {
        const CMatrix sym = (m + m.adjoint()) * 0.5;
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
        if (solver.info() != Eigen::Success) throw NumericalError("eig_dense: Hermitian solver did not converge");
        values = solver.eigenvalues().cast<Complex>();
        vectors = solver.eigenvectors();
    } else {
        Eigen::ComplexEigenSolver<CMatrix> solver(m);
        if (solver.info() != Eigen::Success) throw NumericalError("eig_dense: complex solver did not converge");
        values = solver.eigenvalues();
        vectors = solver.eigenvectors();
    }

    const double scale = m.cwiseAbs().rowwise().sum().maxCoeff();
    const auto order = ascending_order(values, 1e-9 * std::max(1.0, scale));
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        out.values(c) = values(order[static_cast<std::size_t>(c)]);
        out.vectors.col(c) = vectors.col(order[static_cast<std::size_t>(c)]);
    }

    const double residual = n == 0 ? 0.0 : (m * out.vectors - out.vectors * out.values.asDiagonal()).cwiseAbs().maxCoeff();
    if (!(residual <= tol * std::max(1.0, scale)))
        throw NumericalError("eig_dense: residual " + std::to_string(residual) + " exceeds tolerance");
    return out;
}

}  // namespace liftspec
