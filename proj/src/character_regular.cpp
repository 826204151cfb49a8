#include "liftspec/character_regular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "liftspec/eig.hpp"
#include "liftspec/errors.hpp"

namespace liftspec {

Complex apply_character(std::span<const Complex> character, const GroupAlgebraElement& element) {
    Complex sum = 0.0;
    for (const auto& [g, c] : element.coefficients()) sum += c * character[g];
    return sum;
}

namespace {

using LComplex = std::complex<long double>;
using LMatrix = Eigen::Matrix<LComplex, Eigen::Dynamic, Eigen::Dynamic>;

// Taylor coefficients of p at mu up to order c-1 (repeated synthetic
// division), each compared with the same expansion of the noise polynomial
// at |mu|.
bool looks_multiple(const std::vector<LComplex>& coeffs, const std::vector<long double>& noise, LComplex mu, std::size_t c) {
    std::vector<LComplex> p = coeffs;
    std::vector<long double> q = noise;
    const long double x = std::abs(mu);
    for (std::size_t j = 0; j < c && !p.empty(); ++j) {
        for (std::size_t i = 1; i < p.size(); ++i) {
            p[i] += p[i - 1] * mu;
            q[i] += q[i - 1] * x;
        }
        if (!(std::abs(p.back()) <= 64.0L * q.back())) return false;
        p.pop_back();
        q.pop_back();
    }
    return true;
}

// Roots consistent with one multiple root are replaced by their mean. A
// c-fold root at mu, perturbed by dp, splits into c roots at distance about
// (|dp(mu)| / |q(mu)|)^(1/c), q being the product over the remaining roots.
// Candidates are the nodes of the single-linkage tree, largest first; a node
// is accepted if it is within that radius, no other root is nearby, and the
// first c Taylor coefficients at mu vanish to within the noise.
void merge_multiple_roots(std::vector<LComplex>& roots, const std::vector<LComplex>& coeffs,
                          const std::vector<long double>& noise) {
    const std::size_t m = roots.size();
    struct Pair {
        long double dist;
        std::size_t a, b;
    };
    std::vector<Pair> pairs;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) pairs.push_back({std::abs(roots[a] - roots[b]), a, b});
    std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.dist < y.dist; });

    // Tree nodes: 0..m-1 are the roots, later nodes join two earlier ones.
    std::vector<std::vector<std::size_t>> members(m);
    std::vector<std::pair<std::size_t, std::size_t>> children(m, {m, m});
    std::vector<std::size_t> top(m);
    for (std::size_t i = 0; i < m; ++i) {
        members[i] = {i};
        top[i] = i;
    }
    std::vector<std::size_t> parent(m);
    for (std::size_t i = 0; i < m; ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& pr : pairs) {
        const std::size_t ra = find(pr.a), rb = find(pr.b);
        if (ra == rb) continue;
        std::vector<std::size_t> joined = members[top[ra]];
        joined.insert(joined.end(), members[top[rb]].begin(), members[top[rb]].end());
        members.push_back(std::move(joined));
        children.emplace_back(top[ra], top[rb]);
        parent[rb] = ra;
        top[ra] = members.size() - 1;
    }

    auto accept = [&](const std::vector<std::size_t>& node) {
        LComplex mu = 0.0L;
        for (std::size_t i : node) mu += roots[i];
        mu /= static_cast<long double>(node.size());
        long double radius = 0.0L;
        for (std::size_t i : node) radius = std::max(radius, std::abs(roots[i] - mu));

        long double dp = 0.0L, power = 1.0L;
        for (std::size_t k = m + 1; k-- > 0;) {
            dp += noise[k] * power;
            power *= std::abs(mu);
        }
        std::vector<bool> inside(m, false);
        for (std::size_t i : node) inside[i] = true;
        LComplex rest = 1.0L;
        for (std::size_t j = 0; j < m; ++j)
            if (!inside[j]) {
                if (!(std::abs(mu - roots[j]) > 2.0L * radius)) return false;
                rest *= mu - roots[j];
            }
        const long double allowed = std::pow(16.0L * dp / std::max(std::abs(rest), std::numeric_limits<long double>::min()),
                                             1.0L / static_cast<long double>(node.size()));
        if (!(radius <= allowed) || !looks_multiple(coeffs, noise, mu, node.size())) return false;
        for (std::size_t i : node) roots[i] = mu;
        return true;
    };

    std::vector<std::size_t> stack{members.size() - 1};
    while (!stack.empty()) {
        const std::size_t node = stack.back();
        stack.pop_back();
        if (node < m || accept(members[node])) continue;
        stack.push_back(children[node].first);
        stack.push_back(children[node].second);
    }
}

// Gauss-Newton on sum_i c_i z_i^l = q_l (l = 1..m) over the distinct values
// z_i with their multiplicities c_i held fixed. Each equation is weighted by
// 1 / max(1, |q_l|, sum_i c_i |z_i|^l), as in the roundtrip check; steps are
// kept only while they reduce the weighted residual.
void refine_on_power_sums(std::vector<LComplex>& roots, const std::vector<LComplex>& q) {
    const std::size_t m = roots.size();
    std::vector<LComplex> z;
    std::vector<long double> mult;
    for (const auto& r : roots) {
        auto it = std::find(z.begin(), z.end(), r);
        if (it == z.end()) {
            z.push_back(r);
            mult.push_back(1.0L);
        } else {
            mult[static_cast<std::size_t>(it - z.begin())] += 1.0L;
        }
    }
    const auto rows = static_cast<Eigen::Index>(m), cols = static_cast<Eigen::Index>(z.size());
    using LVector = Eigen::Matrix<LComplex, Eigen::Dynamic, 1>;

    auto residual = [&](const std::vector<LComplex>& at, LVector* r, LMatrix* jac) {
        long double norm = 0.0L;
        for (std::size_t l = 1; l <= m; ++l) {
            LComplex sum = 0.0L;
            long double magnitude = 0.0L;
            for (std::size_t i = 0; i < at.size(); ++i) {
                const LComplex p = std::pow(at[i], static_cast<int>(l));
                sum += mult[i] * p;
                magnitude += mult[i] * std::abs(p);
            }
            const long double w = 1.0L / std::max({1.0L, std::abs(q[l]), magnitude});
            const LComplex ri = w * (sum - q[l]);
            norm += std::norm(ri);
            if (r) (*r)(static_cast<Eigen::Index>(l - 1)) = ri;
            if (jac)
                for (std::size_t i = 0; i < at.size(); ++i)
                    (*jac)(static_cast<Eigen::Index>(l - 1), static_cast<Eigen::Index>(i)) =
                        w * mult[i] * static_cast<long double>(l) * std::pow(at[i], static_cast<int>(l - 1));
        }
        return norm;
    };

    LVector r(rows);
    LMatrix jac(rows, cols);
    long double current = residual(z, &r, &jac);
    for (int it = 0; it < 20 && current > 0.0L; ++it) {
        const LVector step = jac.colPivHouseholderQr().solve(-r);
        if (!step.allFinite()) break;
        bool improved = false;
        for (long double t = 1.0L; t >= 1.0L / 64.0L; t /= 2.0L) {
            std::vector<LComplex> trial = z;
            for (std::size_t i = 0; i < z.size(); ++i) trial[i] += t * step(static_cast<Eigen::Index>(i));
            const long double next = residual(trial, nullptr, nullptr);
            if (next < current) {
                z = std::move(trial);
                current = residual(z, &r, &jac);
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }

    std::size_t pos = 0;
    for (std::size_t i = 0; i < z.size(); ++i)
        for (long double c = 0.0L; c < mult[i]; c += 1.0L) roots[pos++] = z[i];
}

}  // namespace

std::vector<Complex> power_sums_to_roots(std::span<const Complex> sums, double tol) {
    const std::size_t m = sums.size();
    if (m == 0) throw ConsistencyError("power_sums_to_roots: need at least one power sum");
    if (m > kMaxPowerSumDegree)
        throw ConsistencyError("power_sums_to_roots: degree " + std::to_string(m) + " exceeds " +
                               std::to_string(kMaxPowerSumDegree) + "; use the eigenvector method instead");

    // Root scale estimate: max |p_l / m|^(1/l) bounds the largest root from below.
    long double scale = 0.0L;
    for (std::size_t l = 1; l <= m; ++l)
        scale = std::max(scale, std::pow(std::abs(LComplex(sums[l - 1])) / static_cast<long double>(m),
                                         1.0L / static_cast<long double>(l)));
    if (!(scale > 0.0L)) return std::vector<Complex>(m, Complex(0.0));

    std::vector<LComplex> q(m + 1);
    long double power = 1.0L;
    for (std::size_t l = 1; l <= m; ++l) {
        power *= scale;
        q[l] = LComplex(sums[l - 1]) / power;
    }

    // Newton's identities: k e_k = sum_{i=1..k} (-1)^(i-1) e_(k-i) q_i.
    std::vector<LComplex> e(m + 1);
    e[0] = 1.0L;
    for (std::size_t kk = 1; kk <= m; ++kk) {
        LComplex acc = 0.0L;
        for (std::size_t i = 1; i <= kk; ++i) {
            const LComplex term = e[kk - i] * q[i];
            acc += (i % 2 == 1) ? term : -term;
        }
        e[kk] = acc / static_cast<long double>(kk);
    }

    // How far rounding in the input moves each e_k: push a few random
    // first-order perturbations through the same recurrence. The rounding in
    // p_l is taken as eps * max(1, m scale^l), the same yardstick as the
    // roundtrip check below.
    std::vector<long double> err(m + 1, 0.0L);
    {
        const long double eps = 4.0L * std::numeric_limits<double>::epsilon();
        std::vector<long double> size(m + 1);
        long double power = 1.0L;
        for (std::size_t l = 1; l <= m; ++l) {
            power *= scale;
            size[l] = eps * std::max(1.0L / power, static_cast<long double>(m));
        }
        std::mt19937_64 rng(m);
        std::uniform_real_distribution<long double> phase(0.0L, 6.283185307179586L);
        for (int sample = 0; sample < 8; ++sample) {
            std::vector<LComplex> dq(m + 1), de(m + 1, 0.0L);
            for (std::size_t i = 1; i <= m; ++i) dq[i] = std::polar(size[i], phase(rng));
            for (std::size_t kk = 1; kk <= m; ++kk) {
                LComplex acc = 0.0L;
                for (std::size_t i = 1; i <= kk; ++i) {
                    const LComplex term = de[kk - i] * q[i] + e[kk - i] * dq[i];
                    acc += (i % 2 == 1) ? term : -term;
                }
                de[kk] = acc / static_cast<long double>(kk);
                err[kk] = std::max(err[kk], 10.0L * std::abs(de[kk]));
            }
        }
    }
    const long double work_eps = 8.0L * static_cast<long double>(m) * std::numeric_limits<long double>::epsilon();

    // Monic polynomial x^m - e1 x^(m-1) + e2 x^(m-2) - ...
    std::vector<LComplex> coeffs(m + 1);
    long double companion_norm = 1.0L;
    for (std::size_t kk = 0; kk <= m; ++kk) {
        coeffs[kk] = (kk % 2 == 0) ? e[kk] : -e[kk];
        companion_norm = std::max(companion_norm, std::abs(e[kk]));
    }
    std::vector<long double> noise(m + 1);
    for (std::size_t kk = 0; kk <= m; ++kk) noise[kk] = err[kk] + work_eps * companion_norm;

    const auto n = static_cast<Eigen::Index>(m);
    LMatrix companion = LMatrix::Zero(n, n);
    for (Eigen::Index c = 0; c < n; ++c) companion(0, c) = -coeffs[static_cast<std::size_t>(c) + 1];
    for (Eigen::Index r = 1; r < n; ++r) companion(r, r - 1) = 1.0L;
    Eigen::ComplexEigenSolver<LMatrix> solver(companion, false);
    if (solver.info() != Eigen::Success) throw NumericalError("power_sums_to_roots: companion eigensolver failed");

    std::vector<LComplex> roots(m);
    for (std::size_t i = 0; i < m; ++i) roots[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    merge_multiple_roots(roots, coeffs, noise);
    refine_on_power_sums(roots, q);

    std::vector<Complex> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = Complex(static_cast<double>(roots[i].real() * scale),
                                                         static_cast<double>(roots[i].imag() * scale));

    // Roundtrip check against the input.
    std::ostringstream bad;
    for (std::size_t l = 1; l <= m; ++l) {
        LComplex sum = 0.0L;
        long double magnitude = 0.0L;
        for (const auto& r : out) {
            const LComplex p = std::pow(LComplex(r), static_cast<int>(l));
            sum += p;
            magnitude += std::abs(p);
        }
        const long double target = std::abs(LComplex(sums[l - 1]));
        const long double bound = tol * std::max({1.0L, target, magnitude});
        const long double err = std::abs(sum - LComplex(sums[l - 1]));
        if (!(err <= bound)) bad << " p_" << l << " off by " << static_cast<double>(err);
    }
    if (!bad.str().empty()) throw NumericalError("power_sums_to_roots: roundtrip failed:" + bad.str());

    sort_complex(out, 1e-9 * std::max(1.0, static_cast<double>(scale)));
    return out;
}

CharacterSpectrum regular_spectrum_via_characters(const BaseMatrix& b, const IrrepSet& irreps, double tol) {
    CharacterSpectrum out;
    std::size_t max_dim = 0;
    for (const auto& rho : irreps.irreps) max_dim = std::max(max_dim, rho.dim());
    const int max_power = static_cast<int>(max_dim * b.k);

    const auto powers = base_matrix_powers(b, max_power);
    for (const auto& p : powers) out.traces.push_back(p.trace());

    for (std::size_t r = 0; r < irreps.size(); ++r) {
        const std::size_t m = irreps[r].dim() * b.k;
        IrrepPowerSums entry;
        entry.irrep = r;
        entry.dim = irreps[r].dim();
        for (std::size_t l = 1; l <= m; ++l) entry.power_sums.push_back(apply_character(irreps[r].character, out.traces[l - 1]));
        entry.roots = power_sums_to_roots(entry.power_sums, tol);
        for (const auto& root : entry.roots) out.spectrum.insert(out.spectrum.end(), entry.dim, root);
        out.per_irrep.push_back(std::move(entry));
    }
    sort_complex(out.spectrum);
    return out;
}

Complex coefficient_of_identity(const BaseMatrix& b, const IrrepSet& irreps, std::size_t u, int length) {
    const BaseMatrix power = base_matrix_power(b, length);
    Complex sum = 0.0;
    for (const auto& rho : irreps.irreps)
        sum += static_cast<double>(rho.dim()) * apply_character(rho.character, power(u, u));
    return sum / static_cast<double>(irreps.group->order());
}

}  // namespace liftspec
