#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "liftspec/irreps.hpp"
#include "liftspec/voltage_graph.hpp"

namespace liftspec {

/// sum_g coeff(g) chi(g).
Complex apply_character(std::span<const Complex> character, const GroupAlgebraElement& element);

inline constexpr std::size_t kMaxPowerSumDegree = 32;

/// Recovers the m roots whose l-th power sums are sums[l-1], l = 1..m.
///
/// Newton's identities give the elementary symmetric polynomials (extended
/// precision), the roots are the eigenvalues of the companion matrix of the
/// monic polynomial after rescaling. Roots that are as close together as
/// the rounding in the input allows for a multiple root are replaced by
/// their cluster mean. Roots are returned ascending. Throws
/// ConsistencyError for m == 0 or m > kMaxPowerSumDegree and NumericalError
/// if the recovered roots do not reproduce the input power sums to
/// tol * max(1, |p_l|, sum |root|^l).
std::vector<Complex> power_sums_to_roots(std::span<const Complex> sums, double tol = 1e-8);

struct IrrepPowerSums {
    std::size_t irrep = 0;
    std::size_t dim = 0;
    std::vector<Complex> power_sums;  // chi(tr(B^l)), l = 1..dim*k
    std::vector<Complex> roots;       // dim*k values, ascending
};

struct CharacterSpectrum {
    std::vector<IrrepPowerSums> per_irrep;
    std::vector<GroupAlgebraElement> traces;  // tr(B^l), l = 1..max dim * k
    std::vector<Complex> spectrum;            // k|G| values, each root repeated dim times, ascending
};

/// Spectrum of the regular lift from character values of traces of powers
/// of B. Works for directed bases.
CharacterSpectrum regular_spectrum_via_characters(const BaseMatrix& b, const IrrepSet& irreps, double tol = 1e-8);

/// (1/|G|) sum_rho d_rho chi_rho((B^l)_{u,u}): the identity coefficient of
/// (B^l)_{u,u}, i.e. the number of closed walks of length l at (u, e) in
/// the regular lift.
Complex coefficient_of_identity(const BaseMatrix& b, const IrrepSet& irreps, std::size_t u, int length);

}  // namespace liftspec
