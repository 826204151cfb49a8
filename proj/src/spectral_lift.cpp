#include "liftspec/spectral_lift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "liftspec/errors.hpp"

namespace liftspec {

CMatrix rho_image(const BaseMatrix& b, const Irrep& irrep) {
    const auto d = static_cast<Eigen::Index>(irrep.dim());
    const auto k = static_cast<Eigen::Index>(b.k);
    CMatrix out = CMatrix::Zero(d * k, d * k);
    for (std::size_t u = 0; u < b.k; ++u)
        for (std::size_t v = 0; v < b.k; ++v) {
            const auto& entry = b(u, v);
            if (entry.is_zero()) continue;
            out.block(static_cast<Eigen::Index>(u) * d, static_cast<Eigen::Index>(v) * d, d, d) =
                irrep.image_of_sum(entry.coefficients());
        }
    return out;
}

double hermitian_defect(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

bool is_hermitian(const CMatrix& m) {
    const double scale = m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
    return hermitian_defect(m) <= 1e-12 * std::max(1.0, scale);
}

}  // namespace

std::vector<IrrepEigenData> irrep_eigendata(const BaseMatrix& b, const IrrepSet& irreps, const LiftOptions& options) {
    std::vector<IrrepEigenData> out;
    out.reserve(irreps.size());
    for (std::size_t r = 0; r < irreps.size(); ++r) {
        const CMatrix image = rho_image(b, irreps[r]);
        auto eig = eig_dense(image, is_hermitian(image), options.residual_tol);
        out.push_back({r, irreps[r].dim(), std::move(eig.values), std::move(eig.vectors)});
    }
    return out;
}

std::vector<Complex> SpectrumReport::values() const {
    std::vector<Complex> out;
    out.reserve(kn);
    for (const auto& e : entries) out.insert(out.end(), e.count, e.value);
    return out;
}

SpectrumReport lift_spectrum(const BaseMatrix& b, const IrrepSet& irreps, const SubgroupContext& ctx,
                             const LiftOptions& options) {
    struct Contribution {
        Complex value;
        std::size_t irrep, dim, rank;
    };
    std::vector<Contribution> parts;
    std::size_t rank_sum = 0;
    for (std::size_t r = 0; r < irreps.size(); ++r) {
        const std::size_t rank = subgroup_sum(irreps[r], ctx, options.rank_tol).rank;
        rank_sum += irreps[r].dim() * rank;
        if (rank == 0) continue;
        const CMatrix image = rho_image(b, irreps[r]);
        const auto eig = eig_dense(image, is_hermitian(image), options.residual_tol);
        for (Eigen::Index c = 0; c < eig.values.size(); ++c)
            parts.push_back({eig.values(c), r, irreps[r].dim(), rank});
    }
    if (rank_sum != ctx.index())
        throw NumericalError("rank identity violated: sum dim * rank = " + std::to_string(rank_sum) +
                             ", index = " + std::to_string(ctx.index()));

    std::stable_sort(parts.begin(), parts.end(), [](const Contribution& x, const Contribution& y) {
        if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
        return x.value.imag() < y.value.imag();
    });

    SpectrumReport report;
    report.kn = b.k * ctx.index();
    Complex weighted = 0.0;
    for (std::size_t p = 0; p < parts.size(); ++p) {
        const bool starts = report.entries.empty() ||
                            std::abs(parts[p].value - parts[p - 1].value) > options.match_tol;
        if (starts) {
            if (!report.entries.empty()) report.entries.back().value = weighted / double(report.entries.back().count);
            report.entries.push_back({parts[p].value, 0, {}});
            weighted = 0.0;
        }
        auto& entry = report.entries.back();
        entry.count += parts[p].rank;
        weighted += parts[p].value * double(parts[p].rank);
        const bool listed = std::any_of(entry.provenance.begin(), entry.provenance.end(),
                                        [&](const SpectrumProvenance& s) { return s.irrep == parts[p].irrep; });
        if (!listed) entry.provenance.push_back({parts[p].irrep, parts[p].dim, parts[p].rank});
    }
    if (!report.entries.empty()) report.entries.back().value = weighted / double(report.entries.back().count);
    for (auto& e : report.entries)
        if (std::abs(e.value.imag()) <= options.match_tol) e.value = Complex(e.value.real(), 0.0);
    return report;
}

// ---------------------------------------------------------------------------
// Eigenvectors

CMatrix build_SH(const IrrepSet& irreps, const SubgroupContext& ctx, std::size_t k) {
    const std::size_t n = ctx.index();
    const auto rows = static_cast<Eigen::Index>(k * n);
    const auto cols = static_cast<Eigen::Index>(k * irreps.group->order());
    CMatrix sh = CMatrix::Zero(rows, cols);

    Eigen::Index col0 = 0;
    for (const auto& rho : irreps.irreps) {
        const auto d = static_cast<Eigen::Index>(rho.dim());
        // rho(J) for every coset J.
        std::vector<CMatrix> coset_sums(n, CMatrix::Zero(d, d));
        for (std::size_t J = 0; J < n; ++J)
            for (std::size_t g : ctx.cosets[J]) coset_sums[J] += rho.matrices[g];

        for (Eigen::Index j = 0; j < d; ++j) {
            for (std::size_t w = 0; w < k; ++w)
                for (Eigen::Index i = 0; i < d; ++i) {
                    const Eigen::Index col = col0 + static_cast<Eigen::Index>(w) * d + i;
                    for (std::size_t J = 0; J < n; ++J)
                        sh(static_cast<Eigen::Index>(w * n + J), col) = coset_sums[J](j, i);
                }
            col0 += static_cast<Eigen::Index>(k) * d;
        }
    }
    return sh;
}

CMatrix build_T(const std::vector<IrrepEigenData>& eigendata, std::size_t k) {
    Eigen::Index size = 0;
    for (const auto& e : eigendata) size += static_cast<Eigen::Index>(e.dim) * e.eigenvectors.cols();
    CMatrix t = CMatrix::Zero(size, size);
    Eigen::Index at = 0;
    for (const auto& e : eigendata) {
        const Eigen::Index block = e.eigenvectors.rows();
        if (block != static_cast<Eigen::Index>(e.dim * k)) throw ConsistencyError("build_T: U has the wrong size");
        Eigen::FullPivLU<CMatrix> lu(e.eigenvectors);
        lu.setThreshold(1e-10);
        if (lu.rank() != block)
            throw NumericalError("build_T: eigenvector matrix of irrep " + std::to_string(e.irrep) + " is singular");
        for (std::size_t copy = 0; copy < e.dim; ++copy, at += block) t.block(at, at, block, block) = e.eigenvectors;
    }
    return t;
}

CVector apply_lift_operator(const BaseMatrix& b, const SubgroupContext& ctx, const CVector& y) {
    const std::size_t n = ctx.index();
    CVector out = CVector::Zero(y.size());
    for (std::size_t u = 0; u < b.k; ++u)
        for (std::size_t v = 0; v < b.k; ++v)
            for (const auto& [g, c] : b(u, v).coefficients())
                for (std::size_t J = 0; J < n; ++J)
                    out(static_cast<Eigen::Index>(u * n + J)) += c * y(static_cast<Eigen::Index>(v * n + ctx.act(J, g)));
    return out;
}

EigenvectorBundle lift_eigenvectors(const BaseMatrix& b, const IrrepSet& irreps, const SubgroupContext& ctx,
                                    const LiftOptions& options) {
    const std::size_t k = b.k;
    const auto eigendata = irrep_eigendata(b, irreps, options);
    for (std::size_t r = 0; r < irreps.size(); ++r)
        if (!is_hermitian(rho_image(b, irreps[r])))
            throw ConsistencyError("lift_eigenvectors needs an undirected base graph (rho(B) must be Hermitian)");

    const CMatrix product = build_SH(irreps, ctx, k) * build_T(eigendata, k);

    EigenvectorBundle bundle;
    bundle.kn = k * ctx.index();
    const double scale = product.size() == 0 ? 0.0 : product.cwiseAbs().maxCoeff();
    Eigen::Index col = 0;
    for (const auto& e : eigendata)
        for (std::size_t j = 0; j < e.dim; ++j)
            for (Eigen::Index c = 0; c < e.eigenvalues.size(); ++c, ++col) {
                EigenvectorColumn column;
                column.eigenvalue = e.eigenvalues(c);
                column.irrep = e.irrep;
                column.j = j;
                column.w = static_cast<std::size_t>(c) / e.dim;
                column.i = static_cast<std::size_t>(c) % e.dim;
                column.vector = product.col(col);
                column.zero = column.vector.cwiseAbs().maxCoeff() <= 1e-10 * scale;
                bundle.columns.push_back(std::move(column));
            }

    std::vector<Eigen::Index> nonzero;
    for (std::size_t c = 0; c < bundle.columns.size(); ++c)
        if (!bundle.columns[c].zero) nonzero.push_back(static_cast<Eigen::Index>(c));
    CMatrix candidates(product.rows(), static_cast<Eigen::Index>(nonzero.size()));
    for (std::size_t c = 0; c < nonzero.size(); ++c)
        candidates.col(static_cast<Eigen::Index>(c)) = product.col(nonzero[c]);

    Eigen::ColPivHouseholderQR<CMatrix> qr(candidates);
    qr.setThreshold(1e-10);
    if (static_cast<std::size_t>(qr.rank()) < bundle.kn || nonzero.size() < bundle.kn)
        throw NumericalError("lift_eigenvectors: only " + std::to_string(qr.rank()) + " independent columns, expected " +
                             std::to_string(bundle.kn));
    const auto& perm = qr.colsPermutation().indices();
    for (std::size_t s = 0; s < bundle.kn; ++s)
        bundle.selected_basis.push_back(static_cast<std::size_t>(nonzero[static_cast<std::size_t>(perm(static_cast<Eigen::Index>(s)))]));
    std::sort(bundle.selected_basis.begin(), bundle.selected_basis.end());

    for (std::size_t c : bundle.selected_basis) {
        auto& column = bundle.columns[c];
        column.selected = true;
        column.residual = (apply_lift_operator(b, ctx, column.vector) - column.eigenvalue * column.vector).norm();
        const double relative = column.residual / std::max(1.0, column.vector.norm());
        bundle.max_residual = std::max(bundle.max_residual, relative);
        if (relative > options.residual_tol)
            throw NumericalError("lift_eigenvectors: column " + std::to_string(c) + " has residual " +
                                 std::to_string(relative));
    }
    return bundle;
}

// ---------------------------------------------------------------------------
// Multisets and the oracle

double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    sort_complex(a);
    sort_complex(b);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

bool multiset_contains(std::vector<Complex> super, std::vector<Complex> sub, double tol) {
    if (sub.size() > super.size()) return false;
    sort_complex(super);
    sort_complex(sub);
    std::vector<bool> used(super.size(), false);
    for (const Complex& x : sub) {
        std::size_t best = super.size();
        double best_dist = tol;
        for (std::size_t i = 0; i < super.size(); ++i) {
            if (used[i]) continue;
            const double dist = std::abs(super[i] - x);
            if (dist <= best_dist) {
                best = i;
                best_dist = dist;
                if (dist == 0.0) break;
            }
        }
        if (best == super.size()) return false;
        used[best] = true;
    }
    return true;
}

std::vector<Complex> adjacency_spectrum(const Eigen::MatrixXi& adjacency, bool symmetric) {
    const Eigen::MatrixXd a = adjacency.cast<double>();
    std::vector<Complex> out;
    if (a.rows() == 0) return out;
    if (symmetric) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
        for (Eigen::Index i = 0; i < a.rows(); ++i) out.emplace_back(solver.eigenvalues()(i), 0.0);
    } else {
        Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
        for (Eigen::Index i = 0; i < a.rows(); ++i) out.push_back(solver.eigenvalues()(i));
    }
    sort_complex(out);
    return out;
}

VerificationReport verify_against_oracle(const VoltageGraph& graph, const IrrepSet& irreps, const SubgroupContext& ctx,
                                         const LiftOptions& options) {
    VerificationReport report;
    const LiftGraph lift = build_lift(graph, ctx);
    report.kn = lift.size();
    report.oracle = adjacency_spectrum(lift.adjacency, !graph.is_directed());
    report.rank_identity = verify_rank_identity(irreps, ctx, options.rank_tol);

    const BaseMatrix b = build_base_matrix(graph);
    try {
        report.method = lift_spectrum(b, irreps, ctx, options).values();
        report.spectral_distance = multiset_distance(report.method, report.oracle);

        const auto bundle = lift_eigenvectors(b, irreps, ctx, options);
        report.selected = bundle.selected_basis.size();
        const Eigen::MatrixXcd a = lift.adjacency.cast<double>().cast<Complex>();
        for (std::size_t c : bundle.selected_basis) {
            const auto& column = bundle.columns[c];
            const double r = (a * column.vector - column.eigenvalue * column.vector).norm() /
                             std::max(1.0, column.vector.norm());
            report.max_residual = std::max(report.max_residual, r);
        }
    } catch (const NumericalError&) {
        report.passed = false;
        if (report.method.empty()) report.spectral_distance = std::numeric_limits<double>::infinity();
        report.max_residual = std::numeric_limits<double>::infinity();
        return report;
    }
    report.passed = report.rank_identity && report.spectral_distance <= options.match_tol &&
                    report.max_residual <= options.residual_tol && report.selected == report.kn;
    return report;
}

}  // namespace liftspec
