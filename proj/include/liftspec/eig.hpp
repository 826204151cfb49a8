#pragma once

#include "liftspec/irreps.hpp"

namespace liftspec {

struct EigenDecomposition {
    CVector values;   // ascending by (real, imaginary)
    CMatrix vectors;  // column c pairs with values(c)
};

/// Full eigendecomposition of a square complex matrix.
///
/// With `hermitian` set the input is symmetrized, eigenvalues come back with
/// zero imaginary part and the eigenvectors are orthonormal. Otherwise a
/// complex Schur-based solver is used. Throws NumericalError if the solver
/// does not converge or if max|MU - UD| exceeds tol * max(1, ||M||_inf).
EigenDecomposition eig_dense(const CMatrix& m, bool hermitian, double tol = 1e-8);

/// Sorts complex values ascending by (real, imaginary), treating real parts
/// closer than `resolution` as equal.
void sort_complex(std::vector<Complex>& values, double resolution = 1e-9);

}  // namespace liftspec
