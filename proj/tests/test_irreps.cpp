#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>

#include "liftspec/errors.hpp"
#include "liftspec/irreps.hpp"
#include "oracles.hpp"

using namespace liftspec;

namespace {

const double kSqrt3 = std::sqrt(3.0);

GroupPtr make_group(std::vector<std::string> gens, std::size_t degree) {
    std::vector<Permutation> perms;
    for (const auto& g : gens) perms.push_back(parse_permutation(g, degree));
    return std::make_shared<const FiniteGroup>(FiniteGroup::generate(perms, degree));
}

std::size_t idx(const FiniteGroup& g, const std::string& cycles) {
    return *g.index_of(parse_permutation(cycles, g.degree()));
}

CMatrix real2(double a, double b, double c, double d) {
    CMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Homomorphism, unitarity and <chi,chi> = 1 checked by hand, with products
// taken on raw image vectors.
bool is_unitary_irrep(const FiniteGroup& g, const Irrep& rho, double tol) {
    const auto d = static_cast<Eigen::Index>(rho.dim());
    double chi2 = 0.0;
    for (std::size_t a = 0; a < g.order(); ++a) {
        const CMatrix& ma = rho.matrices[a];
        if (max_abs(ma * ma.adjoint() - CMatrix::Identity(d, d)) > tol) return false;
        if (std::abs(ma.trace() - rho.character[a]) > tol) return false;
        chi2 += std::norm(rho.character[a]);
        for (std::size_t b = 0; b < g.order(); ++b) {
            const auto ab = oracle::compose(g.element(a).images(), g.element(b).images());
            const std::size_t c = *g.index_of(Permutation::from_images(ab));
            if (max_abs(rho.matrices[c] - ma * rho.matrices[b]) > tol) return false;
        }
    }
    return std::abs(chi2 / static_cast<double>(g.order()) - 1.0) <= tol;
}

std::vector<std::size_t> dims(const IrrepSet& set) {
    std::vector<std::size_t> out;
    for (const auto& r : set.irreps) out.push_back(r.dim());
    return out;
}

// sum_g chi(g) conj(psi(g)) / |G| for every pair, compared with the identity.
double character_gram_defect(const IrrepSet& set) {
    double worst = 0.0;
    const std::size_t n = set.group->order();
    for (std::size_t a = 0; a < set.size(); ++a)
        for (std::size_t b = 0; b < set.size(); ++b) {
            Complex s = 0.0;
            for (std::size_t g = 0; g < n; ++g) s += set[a].character[g] * std::conj(set[b].character[g]);
            worst = std::max(worst, std::abs(s / static_cast<double>(n) - (a == b ? 1.0 : 0.0)));
        }
    return worst;
}

}  // namespace

TEST_CASE("sym3 catalog matches the reference matrices") {
    const auto cat = builtin_irreps(GroupFamily::Sym3, 6);
    const FiniteGroup& g = *cat.group;
    REQUIRE(g.order() == 6);
    REQUIRE(cat.irreps.size() == 3);
    const Irrep& iota = cat.irreps[0];
    const Irrep& pi = cat.irreps[1];
    const Irrep& sigma = cat.irreps[2];
    CHECK(sigma.dim() == 2);

    const std::size_t e = 0, gg = idx(g, "(2 3)"), h = idx(g, "(1 2)"), r = idx(g, "(1 3)"), s = idx(g, "(1 2 3)"),
                      t = idx(g, "(1 3 2)");
    // s = gh and t = hg in the left-to-right convention
    CHECK(g.multiply(gg, h) == s);
    CHECK(g.multiply(h, gg) == t);
    CHECK(g.multiply(g.multiply(gg, h), gg) == r);

    CHECK(max_abs(sigma.matrices[gg] - 0.5 * real2(-1, -kSqrt3, -kSqrt3, 1)) <= 1e-12);
    CHECK(max_abs(sigma.matrices[h] - 0.5 * real2(-1, kSqrt3, kSqrt3, 1)) <= 1e-12);
    CHECK(max_abs(sigma.matrices[r] - real2(1, 0, 0, -1)) <= 1e-12);
    CHECK(max_abs(sigma.matrices[s] - 0.5 * real2(-1, -kSqrt3, kSqrt3, -1)) <= 1e-12);
    CHECK(max_abs(sigma.matrices[t] - 0.5 * real2(-1, kSqrt3, -kSqrt3, -1)) <= 1e-12);
    CHECK(max_abs(sigma.matrices[e] - CMatrix::Identity(2, 2)) <= 1e-12);

    // Table 1: iota = 1,1,1; pi = 1,-1,1; sigma = 2,0,-1 on e, {g,h,ghg}, {gh,hg}
    for (std::size_t x : {e, gg, h, r, s, t}) CHECK(std::abs(iota.character[x] - 1.0) <= 1e-12);
    CHECK(std::abs(pi.character[gg] + 1.0) <= 1e-12);
    CHECK(std::abs(pi.character[s] - 1.0) <= 1e-12);
    CHECK(std::abs(sigma.character[e] - 2.0) <= 1e-12);
    CHECK(std::abs(sigma.character[h]) <= 1e-12);
    CHECK(std::abs(sigma.character[t] + 1.0) <= 1e-12);

    for (const auto& rho : cat.irreps.irreps) CHECK(is_unitary_irrep(g, rho, 1e-12));
}

TEST_CASE("cyclic catalog") {
    const auto c1 = builtin_irreps(GroupFamily::Cyclic, 1);
    CHECK(c1.group->order() == 1);
    REQUIRE(c1.irreps.size() == 1);
    CHECK(std::abs(c1.irreps[0].matrices[0](0, 0) - 1.0) <= 1e-15);

    const auto c4 = builtin_irreps(GroupFamily::Cyclic, 4);
    REQUIRE(c4.irreps.size() == 4);
    const std::size_t gen = idx(*c4.group, "(1 2 3 4)");
    // characters i^(jk): the generator's images are exactly {1, i, -1, -i}
    std::vector<Complex> images;
    for (const auto& rho : c4.irreps.irreps) {
        CHECK(rho.dim() == 1);
        CHECK(is_unitary_irrep(*c4.group, rho, 1e-12));
        images.push_back(rho.character[gen]);
    }
    for (Complex want : {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)})
        CHECK(std::any_of(images.begin(), images.end(), [&](Complex z) { return std::abs(z - want) <= 1e-12; }));
    CHECK(std::abs(c4.irreps[0].character[gen] - 1.0) <= 1e-12);
    CHECK(character_gram_defect(c4.irreps) <= 1e-12);
}

TEST_CASE("dihedral catalog") {
    for (long order : {2L, 4L, 6L, 8L, 10L, 12L}) {
        CAPTURE(order);
        const auto d = builtin_irreps(GroupFamily::Dihedral, order);
        REQUIRE(d.group->order() == static_cast<std::size_t>(order));
        std::size_t sum = 0;
        for (const auto& rho : d.irreps.irreps) {
            sum += rho.dim() * rho.dim();
            CHECK(is_unitary_irrep(*d.group, rho, 1e-12));
        }
        CHECK(sum == static_cast<std::size_t>(order));
        CHECK(character_gram_defect(d.irreps) <= 1e-12);
    }
    CHECK(dims(builtin_irreps(GroupFamily::Dihedral, 8).irreps) == std::vector<std::size_t>{1, 1, 1, 1, 2});
    CHECK(dims(builtin_irreps(GroupFamily::Dihedral, 12).irreps) == std::vector<std::size_t>{1, 1, 1, 1, 2, 2});
    CHECK(dims(builtin_irreps(GroupFamily::Dihedral, 10).irreps) == std::vector<std::size_t>{1, 1, 2, 2});
}

TEST_CASE("catalog errors") {
    CHECK_THROWS_AS(parse_family("quaternion"), ParseError);
    CHECK(parse_family("dihedral") == GroupFamily::Dihedral);
    CHECK_THROWS_AS(builtin_irreps(GroupFamily::Cyclic, 0), ConsistencyError);
    CHECK_THROWS_AS(builtin_irreps(GroupFamily::Dihedral, 7), ConsistencyError);
    CHECK_THROWS_AS(builtin_irreps(GroupFamily::Dihedral, 0), ConsistencyError);
}

TEST_CASE("compute_irreps: Sym(3), trivial group, Sym(4)") {
    const auto s3 = make_group({"(1 2)", "(2 3)"}, 3);
    for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
        const auto set = compute_irreps(s3, seed);
        CHECK(dims(set) == std::vector<std::size_t>{1, 1, 2});
        for (const auto& rho : set.irreps) CHECK(is_unitary_irrep(*s3, rho, 1e-8));
        CHECK(character_gram_defect(set) <= 1e-8);
    }

    const auto trivial = compute_irreps(make_group({}, 3), 5);
    REQUIRE(trivial.size() == 1);
    CHECK(std::abs(trivial[0].matrices[0](0, 0) - 1.0) <= 1e-12);

    const auto s4 = make_group({"(1 2)", "(1 2 3 4)"}, 4);
    const auto set = compute_irreps(s4, 1);
    CHECK(dims(set) == std::vector<std::size_t>{1, 1, 2, 3, 3});
    for (const auto& rho : set.irreps) CHECK(is_unitary_irrep(*s4, rho, 1e-8));
    CHECK(character_gram_defect(set) <= 1e-8);
    CHECK(verify_great_orthogonality(set, 1e-8));
    CHECK(verify_character_orthogonality(set, conjugacy_classes(*s4), 1e-8));
}

TEST_CASE("compute_irreps: larger and abelian groups") {
    const auto c6 = make_group({"(1 2 3 4 5 6)"}, 6);
    const auto set = compute_irreps(c6, 3);
    CHECK(dims(set) == std::vector<std::size_t>(6, 1));
    CHECK(character_gram_defect(set) <= 1e-8);

    const auto a4 = make_group({"(1 2 3)", "(2 3 4)"}, 4);
    CHECK(dims(compute_irreps(a4, 11)) == std::vector<std::size_t>{1, 1, 1, 3});

    const auto d10 = make_group({"(1 2 3 4 5)", "(2 5)(3 4)"}, 5);
    const auto dd = compute_irreps(d10, 4);
    CHECK(dims(dd) == std::vector<std::size_t>{1, 1, 2, 2});
    for (const auto& rho : dd.irreps) CHECK(is_unitary_irrep(*d10, rho, 1e-8));
}

TEST_CASE("compute_irreps is deterministic under a fixed seed") {
    const auto s4 = make_group({"(1 2)", "(1 2 3 4)"}, 4);
    const auto a = compute_irreps(s4, 42), b = compute_irreps(s4, 42);
    REQUIRE(a.size() == b.size());
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t g = 0; g < s4->order(); ++g) CHECK((a[r].matrices[g] - b[r].matrices[g]).norm() == 0.0);
    // Different seeds give equivalent sets: same characters in the same order.
    const auto c = compute_irreps(s4, 7);
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t g = 0; g < s4->order(); ++g) CHECK(std::abs(a[r].character[g] - c[r].character[g]) <= 1e-8);
}

TEST_CASE("canonical ordering puts the trivial irrep first") {
    const auto s4 = make_group({"(1 2)", "(1 2 3 4)"}, 4);
    const auto set = compute_irreps(s4, 9);
    for (std::size_t g = 0; g < s4->order(); ++g) CHECK(std::abs(set[0].character[g] - 1.0) <= 1e-8);
    // sign character comes second: -1 on transpositions
    CHECK(std::abs(set[1].character[idx(*s4, "(1 2)")] + 1.0) <= 1e-8);
    // the two 3-dim irreps: character +1 on (1 2) sorts before -1
    CHECK(std::abs(set[3].character[idx(*s4, "(1 2)")] - 1.0) <= 1e-8);
    CHECK(std::abs(set[4].character[idx(*s4, "(1 2)")] + 1.0) <= 1e-8);
}

TEST_CASE("subgroup sums and the rank identity") {
    const auto cat = builtin_irreps(GroupFamily::Sym3, 6);
    const auto ctx = right_cosets(cat.group, stabilizer(*cat.group, 1));
    const auto iota = subgroup_sum(cat.irreps[0], ctx);
    const auto pi = subgroup_sum(cat.irreps[1], ctx);
    const auto sigma = subgroup_sum(cat.irreps[2], ctx);
    CHECK(iota.rank == 1);
    CHECK(std::abs(iota.matrix(0, 0) - 2.0) <= 1e-12);
    CHECK(pi.rank == 0);
    CHECK(max_abs(pi.matrix) <= 1e-12);
    CHECK(sigma.rank == 1);
    CHECK(max_abs(sigma.matrix - 0.5 * real2(1, -kSqrt3, -kSqrt3, 3)) <= 1e-12);
    CHECK(std::abs(sigma.singular_values[0] - 2.0) <= 1e-12);
    CHECK(sigma.singular_values[1] <= 1e-12);
    CHECK(rank_identity_sum(cat.irreps, ctx) == 3);
    CHECK(verify_rank_identity(cat.irreps, ctx));

    const auto trivial = right_cosets(cat.group, {0});
    for (const auto& rho : cat.irreps.irreps) {
        const auto img = subgroup_sum(rho, trivial);
        CHECK(img.rank == rho.dim());
        CHECK(max_abs(img.matrix - CMatrix::Identity(img.matrix.rows(), img.matrix.cols())) <= 1e-12);
    }
    CHECK(rank_identity_sum(cat.irreps, trivial) == 6);

    const auto c6 = builtin_irreps(GroupFamily::Cyclic, 6);
    const auto order2 = c6.group->subgroup_generated_by(std::vector<std::size_t>{idx(*c6.group, "(1 4)(2 5)(3 6)")});
    REQUIRE(order2.size() == 2);
    CHECK(rank_identity_sum(c6.irreps, right_cosets(c6.group, order2)) == 3);
}

TEST_CASE("subgroup sum singular values are 0 or |H|") {
    const auto s4 = make_group({"(1 2)", "(1 2 3 4)"}, 4);
    const auto set = compute_irreps(s4, 1);
    for (const auto& gens : std::vector<std::vector<std::string>>{{"(1 2)"}, {"(1 2 3)"}, {"(1 2)(3 4)", "(1 3)(2 4)"}, {"(1 2 3 4)", "(1 3)"}}) {
        std::vector<std::size_t> ids;
        for (const auto& s : gens) ids.push_back(idx(*s4, s));
        const auto ctx = right_cosets(s4, s4->subgroup_generated_by(ids));
        const double h = static_cast<double>(ctx.subgroup.size());
        for (const auto& rho : set.irreps)
            for (double sv : subgroup_sum(rho, ctx).singular_values) CHECK((sv <= 1e-8 || std::abs(sv - h) <= 1e-8));
        CHECK(verify_rank_identity(set, ctx));
    }
}

TEST_CASE("orthogonality verifiers, with a negative control") {
    const auto cat = builtin_irreps(GroupFamily::Sym3, 6);
    CHECK(verify_great_orthogonality(cat.irreps, 1e-10));
    CHECK(verify_character_orthogonality(cat.irreps, conjugacy_classes(*cat.group), 1e-10));

    const auto one = builtin_irreps(GroupFamily::Cyclic, 1);
    CHECK(verify_great_orthogonality(one.irreps, 1e-12));
    CHECK(verify_character_orthogonality(one.irreps, conjugacy_classes(*one.group), 1e-12));

    const auto c5 = builtin_irreps(GroupFamily::Cyclic, 5);
    CHECK(verify_character_orthogonality(c5.irreps, conjugacy_classes(*c5.group), 1e-10));

    IrrepSet corrupted = cat.irreps;
    corrupted.irreps[2].matrices[1](0, 1) += 0.1;
    CHECK_FALSE(verify_great_orthogonality(corrupted, 1e-8));
    CHECK_FALSE(verify_irrep(*cat.group, corrupted.irreps[2], 1e-8));
    for (const auto& rho : cat.irreps.irreps) CHECK(verify_irrep(*cat.group, rho, 1e-12));
    CHECK(std::abs(character_inner_product(cat.irreps[2].character, cat.irreps[2].character) - 1.0) <= 1e-12);
    CHECK(std::abs(character_inner_product(cat.irreps[1].character, cat.irreps[2].character)) <= 1e-12);
}
