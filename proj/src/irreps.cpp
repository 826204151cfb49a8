#include "liftspec/irreps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "liftspec/errors.hpp"

namespace liftspec {

Irrep::Irrep(std::vector<CMatrix> mats) : matrices(std::move(mats)) {
    character.reserve(matrices.size());
    for (const auto& m : matrices) character.push_back(m.trace());
}

Complex character_inner_product(const std::vector<Complex>& chi, const std::vector<Complex>& psi) {
    Complex sum = 0.0;
    for (std::size_t g = 0; g < chi.size(); ++g) sum += chi[g] * std::conj(psi[g]);
    return sum / static_cast<double>(chi.size());
}

void canonicalize(IrrepSet& set) {
    const auto classes = conjugacy_classes(*set.group);
    constexpr double kTie = 1e-9;
    auto before = [&](const Irrep& a, const Irrep& b) {
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        for (const auto& cls : classes) {
            const Complex x = a.character[cls.representative];
            const Complex y = b.character[cls.representative];
            if (std::abs(x.real() - y.real()) > kTie) return x.real() > y.real();
            if (std::abs(x.imag() - y.imag()) > kTie) return x.imag() > y.imag();
        }
        return false;
    };
    std::stable_sort(set.irreps.begin(), set.irreps.end(), before);
}

// ---------------------------------------------------------------------------
// Catalog

GroupFamily parse_family(std::string_view name) {
    if (name == "cyclic") return GroupFamily::Cyclic;
    if (name == "dihedral") return GroupFamily::Dihedral;
    if (name == "sym3") return GroupFamily::Sym3;
    throw ParseError("unknown group family \"" + std::string(name) + "\"");
}

namespace {

Permutation cycle_on(std::size_t degree, std::size_t length) {
    std::vector<int> images(degree);
    for (std::size_t p = 0; p < degree; ++p)
        images[p] = static_cast<int>(p < length ? (p + 1) % length : p);
    return Permutation::from_images(std::move(images));
}

CMatrix scalar(Complex z) {
    CMatrix m(1, 1);
    m(0, 0) = z;
    return m;
}

CMatrix matrix_power(const CMatrix& m, std::size_t k) {
    CMatrix out = CMatrix::Identity(m.rows(), m.cols());
    for (std::size_t i = 0; i < k; ++i) out = out * m;
    return out;
}

CatalogGroup cyclic_catalog(std::size_t m) {
    std::vector<Permutation> gens;
    if (m > 1) gens.push_back(cycle_on(m, m));
    auto group = std::make_shared<const FiniteGroup>(FiniteGroup::generate(gens, m));

    // Exponent of each element with respect to the generator.
    std::vector<std::size_t> exponent(m);
    Permutation power(m);
    for (std::size_t k = 0; k < m; ++k) {
        exponent[*group->index_of(power)] = k;
        if (m > 1) power = power * gens.front();
    }

    IrrepSet set{group, {}};
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<CMatrix> mats(m);
        for (std::size_t x = 0; x < m; ++x) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * exponent[x]) % m) / static_cast<double>(m);
            mats[x] = scalar(std::polar(1.0, angle));
        }
        set.irreps.emplace_back(std::move(mats));
    }
    canonicalize(set);
    return {group, std::move(set)};
}

CatalogGroup dihedral_catalog(std::size_t order) {
    const std::size_t m = order / 2;
    // Rotation r and reflection s with s r s = r^-1, as permutations.
    Permutation r(2), s(2);
    if (m == 1) {
        r = Permutation(2);
        s = parse_permutation("(1 2)", 2);
    } else if (m == 2) {
        r = parse_permutation("(1 2)(3 4)", 4);
        s = parse_permutation("(1 3)(2 4)", 4);
    } else {
        r = cycle_on(m, m);
        std::vector<int> images(m);
        for (std::size_t p = 0; p < m; ++p) images[p] = static_cast<int>((m - p) % m);
        s = Permutation::from_images(std::move(images));
    }
    std::vector<Permutation> gens;
    if (!r.is_identity()) gens.push_back(r);
    gens.push_back(s);
    auto group = std::make_shared<const FiniteGroup>(FiniteGroup::generate(gens, r.degree()));
    if (group->order() != order) throw ConsistencyError("dihedral construction produced wrong order");

    // Element index -> (k, e) with element = r^k s^e.
    std::vector<std::pair<std::size_t, std::size_t>> word(order);
    Permutation rk(r.degree());
    for (std::size_t k = 0; k < m; ++k) {
        word[*group->index_of(rk)] = {k, 0};
        word[*group->index_of(rk * s)] = {k, 1};
        rk = rk * r;
    }

    auto build = [&](const CMatrix& rho_r, const CMatrix& rho_s) {
        std::vector<CMatrix> mats(order);
        for (std::size_t x = 0; x < order; ++x) {
            const auto [k, e] = word[x];
            mats[x] = matrix_power(rho_r, k) * matrix_power(rho_s, e);
        }
        return Irrep(std::move(mats));
    };

    IrrepSet set{group, {}};
    std::vector<double> rotation_signs{1.0};
    if (m % 2 == 0) rotation_signs.push_back(-1.0);
    for (double a : rotation_signs)
        for (double b : {1.0, -1.0}) set.irreps.push_back(build(scalar(a), scalar(b)));
    for (std::size_t j = 1; 2 * j < m; ++j) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
        CMatrix rot(2, 2), ref(2, 2);
        rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
        ref << 1.0, 0.0, 0.0, -1.0;
        set.irreps.push_back(build(rot, ref));
    }
    canonicalize(set);
    return {group, std::move(set)};
}

CatalogGroup sym3_catalog() {
    const std::vector<Permutation> gens{parse_permutation("(2 3)", 3), parse_permutation("(1 2)", 3)};
    auto group = std::make_shared<const FiniteGroup>(FiniteGroup::generate(gens, 3));
    const double h = std::sqrt(3.0) / 2.0;
    CMatrix sigma_g(2, 2), sigma_h(2, 2);
    sigma_g << -0.5, -h, -h, 0.5;
    sigma_h << -0.5, h, h, 0.5;

    // Express every element as a word in g, h (breadth first) and multiply out.
    const std::size_t n = group->order();
    std::vector<CMatrix> sigma(n), parity(n), trivial(n, scalar(1.0));
    std::vector<bool> done(n, false);
    std::vector<std::size_t> queue{FiniteGroup::identity()};
    sigma[0] = CMatrix::Identity(2, 2);
    parity[0] = scalar(1.0);
    done[0] = true;
    const std::size_t gi = *group->index_of(gens[0]);
    const std::size_t hi = *group->index_of(gens[1]);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t x = queue[head];
        for (auto [gen, mat] : {std::pair{gi, &sigma_g}, std::pair{hi, &sigma_h}}) {
            const std::size_t y = group->multiply(x, gen);
            if (done[y]) continue;
            done[y] = true;
            sigma[y] = sigma[x] * *mat;
            parity[y] = -parity[x];
            queue.push_back(y);
        }
    }
    IrrepSet set{group, {Irrep(std::move(trivial)), Irrep(std::move(parity)), Irrep(std::move(sigma))}};
    canonicalize(set);
    return {group, std::move(set)};
}

}  // namespace

CatalogGroup builtin_irreps(GroupFamily family, long param) {
    switch (family) {
        case GroupFamily::Cyclic:
            if (param < 1) throw ConsistencyError("cyclic order must be at least 1");
            return cyclic_catalog(static_cast<std::size_t>(param));
        case GroupFamily::Dihedral:
            if (param < 2 || param % 2 != 0)
                throw ConsistencyError("dihedral order must be even and at least 2");
            return dihedral_catalog(static_cast<std::size_t>(param));
        case GroupFamily::Sym3:
            return sym3_catalog();
    }
    throw ConsistencyError("unknown group family");
}

// ---------------------------------------------------------------------------
// Numerical decomposition of the regular representation

namespace {

class RegularDecomposer {
public:
    RegularDecomposer(const FiniteGroup& group, std::uint64_t seed, const IrrepOptions& options)
        : group_(group), options_(options), seed_(seed), rng_(seed) {
        cluster_tol_ = options.cluster_tol_per_order * static_cast<double>(group.order());
    }

    std::vector<CMatrix> run() {
        const auto n = static_cast<Eigen::Index>(group_.order());
        std::vector<CMatrix> out;
        split(CMatrix::Identity(n, n), out);
        return out;
    }

    /// rho_V(g) = V^H R(g) V, where R(g) maps basis vector x to x*g.
    CMatrix restrict_to(const CMatrix& basis, std::size_t g) const {
        CMatrix moved(basis.rows(), basis.cols());
        // (R(g) V)_{x,:} = V_{x*g,:}
        for (std::size_t x = 0; x < group_.order(); ++x)
            moved.row(static_cast<Eigen::Index>(x)) = basis.row(static_cast<Eigen::Index>(group_.multiply(x, g)));
        return basis.adjoint() * moved;
    }

private:
    double character_norm(const CMatrix& basis) const {
        double sum = 0.0;
        for (std::size_t g = 0; g < group_.order(); ++g) sum += std::norm(restrict_to(basis, g).trace());
        return sum / static_cast<double>(group_.order());
    }

    static CMatrix random_hermitian(Eigen::Index m, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        CMatrix a(m, m);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j) a(i, j) = Complex(normal(rng), normal(rng));
        return (a + a.adjoint()) * 0.5;
    }

    void split(const CMatrix& basis, std::vector<CMatrix>& out) {
        if (std::abs(character_norm(basis) - 1.0) < 0.5) {
            out.push_back(basis);
            return;
        }
        const Eigen::Index m = basis.cols();
        std::vector<CMatrix> images(group_.order());
        for (std::size_t g = 0; g < group_.order(); ++g) images[g] = restrict_to(basis, g);

        std::vector<std::uint64_t> history;
        for (int attempt = 0; attempt < options_.max_retries; ++attempt) {
            const std::uint64_t draw_seed = rng_();
            history.push_back(draw_seed);
            const CMatrix seed_matrix = random_hermitian(m, draw_seed);

            CMatrix averaged = CMatrix::Zero(m, m);
            for (const auto& rho : images) averaged += rho * seed_matrix * rho.adjoint();
            averaged /= static_cast<double>(group_.order());
            averaged = (averaged + averaged.adjoint()).eval() * 0.5;

            Eigen::SelfAdjointEigenSolver<CMatrix> eig(averaged);
            if (eig.info() != Eigen::Success) continue;
            const auto& values = eig.eigenvalues();

            std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;  // [begin, end)
            Eigen::Index begin = 0;
            for (Eigen::Index i = 1; i <= m; ++i) {
                if (i == m || values(i) - values(i - 1) > cluster_tol_) {
                    clusters.emplace_back(begin, i);
                    begin = i;
                }
            }
            if (clusters.size() < 2) continue;
            for (const auto& [b, e] : clusters) {
                const CMatrix sub = basis * eig.eigenvectors().middleCols(b, e - b);
                split(sub, out);
            }
            return;
        }
        std::ostringstream msg;
        msg << "compute_irreps: could not split a " << m << "-dimensional invariant subspace (base seed " << seed_
            << ", draws";
        for (auto s : history) msg << ' ' << s;
        msg << ")";
        throw NumericalError(msg.str());
    }

    const FiniteGroup& group_;
    IrrepOptions options_;
    std::uint64_t seed_;
    std::mt19937_64 rng_;
    double cluster_tol_ = 0.0;
};

bool same_character(const Irrep& a, const Irrep& b, double tol) {
    for (std::size_t g = 0; g < a.character.size(); ++g)
        if (std::abs(a.character[g] - b.character[g]) > tol) return false;
    return true;
}

}  // namespace

IrrepSet compute_irreps(GroupPtr group, std::uint64_t seed, const IrrepOptions& options) {
    RegularDecomposer decomposer(*group, seed, options);
    const auto bases = decomposer.run();

    IrrepSet set{group, {}};
    for (const auto& basis : bases) {
        std::vector<CMatrix> mats(group->order());
        for (std::size_t g = 0; g < group->order(); ++g) mats[g] = decomposer.restrict_to(basis, g);
        Irrep candidate(std::move(mats));
        const bool duplicate = std::any_of(set.irreps.begin(), set.irreps.end(), [&](const Irrep& kept) {
            return kept.dim() == candidate.dim() && same_character(kept, candidate, 1e-6);
        });
        if (!duplicate) set.irreps.push_back(std::move(candidate));
    }

    std::size_t sum_sq = 0;
    for (const auto& rho : set.irreps) sum_sq += rho.dim() * rho.dim();
    if (sum_sq != group->order())
        throw NumericalError("compute_irreps: sum of squared dimensions " + std::to_string(sum_sq) +
                             " != |G| = " + std::to_string(group->order()) + " (seed " + std::to_string(seed) + ")");
    for (const auto& rho : set.irreps)
        if (!verify_irrep(*group, rho, options.tol))
            throw NumericalError("compute_irreps: a computed irrep failed verification (seed " +
                                 std::to_string(seed) + ")");
    canonicalize(set);
    return set;
}

// ---------------------------------------------------------------------------
// Subgroup sums and checks

SubgroupSumImage subgroup_sum(const Irrep& irrep, const SubgroupContext& ctx, double rank_tol) {
    SubgroupSumImage out;
    const auto d = static_cast<Eigen::Index>(irrep.dim());
    out.matrix = CMatrix::Zero(d, d);
    for (std::size_t h : ctx.subgroup) out.matrix += irrep.matrices[h];
    Eigen::JacobiSVD<CMatrix> svd(out.matrix);
    const auto& sv = svd.singularValues();  // already descending
    out.singular_values.assign(sv.data(), sv.data() + sv.size());
    const double largest = out.singular_values.empty() ? 0.0 : out.singular_values.front();
    const double cutoff = rank_tol * std::max(1.0, largest);
    out.rank = static_cast<std::size_t>(
        std::count_if(out.singular_values.begin(), out.singular_values.end(), [&](double s) { return s > cutoff; }));
    return out;
}

std::size_t rank_identity_sum(const IrrepSet& irreps, const SubgroupContext& ctx, double rank_tol) {
    std::size_t sum = 0;
    for (const auto& rho : irreps.irreps) sum += rho.dim() * subgroup_sum(rho, ctx, rank_tol).rank;
    return sum;
}

bool verify_rank_identity(const IrrepSet& irreps, const SubgroupContext& ctx, double rank_tol) {
    return rank_identity_sum(irreps, ctx, rank_tol) == ctx.index();
}

bool verify_irrep(const FiniteGroup& group, const Irrep& irrep, double tol) {
    const std::size_t n = group.order();
    if (irrep.matrices.size() != n) return false;
    const auto d = static_cast<Eigen::Index>(irrep.dim());
    const CMatrix eye = CMatrix::Identity(d, d);
    for (std::size_t a = 0; a < n; ++a) {
        if ((irrep.matrices[a] * irrep.matrices[a].adjoint() - eye).cwiseAbs().maxCoeff() > tol) return false;
        for (std::size_t b = 0; b < n; ++b) {
            const CMatrix diff = irrep.matrices[group.multiply(a, b)] - irrep.matrices[a] * irrep.matrices[b];
            if (diff.cwiseAbs().maxCoeff() > tol) return false;
        }
    }
    return std::abs(character_inner_product(irrep.character, irrep.character) - 1.0) <= tol;
}

bool verify_great_orthogonality(const IrrepSet& irreps, double tol) {
    const std::size_t n = irreps.group->order();
    Eigen::Index columns = 0;
    for (const auto& rho : irreps.irreps) columns += static_cast<Eigen::Index>(rho.dim() * rho.dim());

    // Column (rho, i, j) holds rho(g)_{ij} down the group elements; the
    // Gram matrix must then be diag(|G| / d_rho).
    CMatrix table(static_cast<Eigen::Index>(n), columns);
    CVector expected(columns);
    Eigen::Index col = 0;
    for (const auto& rho : irreps.irreps) {
        const auto d = static_cast<Eigen::Index>(rho.dim());
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j, ++col) {
                for (std::size_t g = 0; g < n; ++g) table(static_cast<Eigen::Index>(g), col) = rho.matrices[g](i, j);
                expected(col) = static_cast<double>(n) / static_cast<double>(d);
            }
    }
    const CMatrix gram = table.transpose() * table.conjugate();
    const CMatrix target = expected.asDiagonal();
    return (gram - target).cwiseAbs().maxCoeff() <= tol;
}

bool verify_character_orthogonality(const IrrepSet& irreps, const std::vector<ConjugacyClass>& classes, double tol) {
    const std::size_t n = irreps.group->order();
    const auto order = static_cast<double>(n);
    for (std::size_t a = 0; a < irreps.size(); ++a)
        for (std::size_t b = 0; b < irreps.size(); ++b) {
            const Complex sum = character_inner_product(irreps[a].character, irreps[b].character) * order;
            if (std::abs(sum - (a == b ? order : 0.0)) > tol) return false;
        }

    std::vector<std::size_t> class_of(n), class_size(n);
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (std::size_t x : classes[c].members) {
            class_of[x] = c;
            class_size[x] = classes[c].size();
        }
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            Complex sum = 0.0;
            for (const auto& rho : irreps.irreps) sum += rho.character[g] * std::conj(rho.character[h]);
            const double expected = class_of[g] == class_of[h] ? order / static_cast<double>(class_size[g]) : 0.0;
            if (std::abs(sum - expected) > tol) return false;
        }
    return true;
}

}  // namespace liftspec
