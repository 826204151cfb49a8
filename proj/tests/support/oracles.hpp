#pragma once

// Brute-force reference computations used by the tests. Nothing here calls
// the library's algorithms; permutations are plain image vectors, products
// are composed by hand and spectra come straight from Eigen.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "liftspec/irreps.hpp"
#include "liftspec/voltage_graph.hpp"

namespace oracle {

using Perm = std::vector<int>;  // 0-based images
using Cx = std::complex<double>;

/// p^(a*b) = (p^a)^b.
inline Perm compose(const Perm& a, const Perm& b) {
    Perm out(a.size());
    for (std::size_t p = 0; p < a.size(); ++p) out[p] = b[static_cast<std::size_t>(a[p])];
    return out;
}

inline Perm invert(const Perm& a) {
    Perm out(a.size());
    for (std::size_t p = 0; p < a.size(); ++p) out[static_cast<std::size_t>(a[p])] = static_cast<int>(p);
    return out;
}

inline Perm identity_perm(std::size_t n) {
    Perm out(n);
    for (std::size_t p = 0; p < n; ++p) out[p] = static_cast<int>(p);
    return out;
}

/// Multiply every pair until nothing new appears.
inline std::set<Perm> closure(const std::vector<Perm>& gens, std::size_t degree) {
    std::set<Perm> all{identity_perm(degree)};
    all.insert(gens.begin(), gens.end());
    for (bool grew = true; grew;) {
        grew = false;
        const std::vector<Perm> snapshot(all.begin(), all.end());
        for (const auto& a : snapshot)
            for (const auto& b : snapshot)
                if (all.insert(compose(a, b)).second) grew = true;
    }
    return all;
}

/// Orbit of a 0-based point under repeated application of the generators.
inline std::set<int> orbit(const std::vector<Perm>& gens, int point) {
    std::set<int> seen{point};
    std::vector<int> stack{point};
    while (!stack.empty()) {
        const int p = stack.back();
        stack.pop_back();
        for (const auto& g : gens)
            if (seen.insert(g[static_cast<std::size_t>(p)]).second) stack.push_back(g[static_cast<std::size_t>(p)]);
    }
    return seen;
}

inline Eigen::MatrixXd int_power(const Eigen::MatrixXi& a, int l) {
    Eigen::MatrixXd base = a.cast<double>();
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    for (int i = 0; i < l; ++i) out = out * base;
    return out;
}

/// Lift adjacency with vertices (u, coset), cosets keyed by their smallest
/// member and numbered in order of first appearance over the sorted group.
struct NaiveLift {
    std::vector<Perm> keys;  // key of coset j
    Eigen::MatrixXi adjacency;
};

inline Perm coset_key(const std::set<Perm>& h, const Perm& g) {
    Perm best;
    bool first = true;
    for (const auto& x : h) {
        Perm y = compose(x, g);
        if (first || y < best) best = std::move(y);
        first = false;
    }
    return best;
}

struct NaiveArc {
    std::size_t tail, head;
    Perm voltage;
};

inline NaiveLift naive_lift(std::size_t k, const std::vector<NaiveArc>& arcs, const std::set<Perm>& group,
                            const std::set<Perm>& h) {
    std::map<Perm, std::size_t> index;
    NaiveLift out;
    for (const auto& g : group) {
        Perm key = coset_key(h, g);
        if (index.emplace(key, out.keys.size()).second) out.keys.push_back(key);
    }
    const std::size_t n = out.keys.size();
    out.adjacency = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(k * n), static_cast<Eigen::Index>(k * n));
    for (const auto& a : arcs)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t target = index.at(coset_key(h, compose(out.keys[j], a.voltage)));
            out.adjacency(static_cast<Eigen::Index>(a.tail * n + j), static_cast<Eigen::Index>(a.head * n + target)) += 1;
        }
    return out;
}

/// Arcs of a library graph in oracle form (each undirected edge as a pair).
inline std::vector<NaiveArc> arcs_of(const liftspec::VoltageGraph& graph) {
    std::vector<NaiveArc> out;
    const auto& group = *graph.group();
    for (const auto& e : graph.edges()) {
        const Perm v = group.element(e.voltage).images();
        out.push_back({e.tail, e.head, v});
        if (!graph.is_directed()) out.push_back({e.head, e.tail, invert(v)});
    }
    return out;
}

inline std::set<Perm> as_perm_set(const liftspec::FiniteGroup& group, const liftspec::ElementSet& members) {
    std::set<Perm> out;
    for (std::size_t g : members) out.insert(group.element(g).images());
    return out;
}

/// naive_lift with its cosets renumbered to the library's coset order, for
/// entrywise comparison with build_lift.
inline Eigen::MatrixXi renumbered_lift(const liftspec::VoltageGraph& graph, const liftspec::SubgroupContext& ctx) {
    const auto& group = *graph.group();
    std::set<Perm> all;
    for (const auto& p : group.elements()) all.insert(p.images());
    const auto naive = naive_lift(graph.vertex_count(), arcs_of(graph), all, as_perm_set(group, ctx.subgroup));
    const std::size_t n = naive.keys.size(), k = graph.vertex_count();
    std::vector<std::size_t> to_lib(n);
    for (std::size_t j = 0; j < n; ++j)
        to_lib[j] = ctx.coset_of[*group.index_of(liftspec::Permutation::from_images(naive.keys[j]))];
    Eigen::MatrixXi out = Eigen::MatrixXi::Zero(naive.adjacency.rows(), naive.adjacency.cols());
    for (std::size_t u = 0; u < k; ++u)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t v = 0; v < k; ++v)
                for (std::size_t jj = 0; jj < n; ++jj)
                    out(static_cast<Eigen::Index>(u * n + to_lib[j]), static_cast<Eigen::Index>(v * n + to_lib[jj])) =
                        naive.adjacency(static_cast<Eigen::Index>(u * n + j), static_cast<Eigen::Index>(v * n + jj));
    return out;
}

inline std::vector<Cx> sorted(std::vector<Cx> v) {
    std::sort(v.begin(), v.end(), [](const Cx& a, const Cx& b) {
        if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return v;
}

inline std::vector<Cx> symmetric_spectrum(const Eigen::MatrixXi& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.cast<double>());
    std::vector<Cx> out;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.emplace_back(es.eigenvalues()(i), 0.0);
    return sorted(out);
}

inline std::vector<Cx> general_spectrum(const Eigen::MatrixXi& a) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(a.cast<double>(), false);
    std::vector<Cx> out;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
    return sorted(out);
}

inline double max_pair_distance(std::vector<Cx> a, std::vector<Cx> b) {
    if (a.size() != b.size()) return 1e300;
    a = sorted(std::move(a));
    b = sorted(std::move(b));
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

/// Every element of `sub` matched to a distinct element of `super` within tol
/// (greedy over sorted input is enough for real spectra).
inline bool contains(std::vector<Cx> super, const std::vector<Cx>& sub, double tol) {
    std::vector<bool> used(super.size(), false);
    for (const auto& x : sub) {
        std::size_t best = super.size();
        double dist = tol;
        for (std::size_t i = 0; i < super.size(); ++i)
            if (!used[i] && std::abs(super[i] - x) <= dist) {
                dist = std::abs(super[i] - x);
                best = i;
            }
        if (best == super.size()) return false;
        used[best] = true;
    }
    return true;
}

/// The dumbbell: loop g = (2 3) at u, edge u-v with identity, loop
/// h = (1 2) at v, over Sym(3) on 3 points.
inline liftspec::VoltageGraph dumbbell(const liftspec::GroupPtr& group) {
    const auto idx = [&](std::vector<int> one_based) {
        return *group->index_of(liftspec::Permutation::from_one_based(one_based));
    };
    const std::size_t g = idx({1, 3, 2}), h = idx({2, 1, 3}), e = 0;
    const std::vector<liftspec::EdgeSpec> edges{{0, 0, g}, {0, 1, e}, {1, 1, h}};
    return liftspec::VoltageGraph::undirected(group, {"u", "v"}, edges);
}

// ---------------------------------------------------------------------------
// Random sweep

struct SweepGroup {
    std::string name;
    liftspec::GroupPtr group;
    liftspec::IrrepSet irreps;
};

inline std::vector<SweepGroup> sweep_groups() {
    using namespace liftspec;
    std::vector<SweepGroup> out;
    for (long m = 2; m <= 6; ++m) {
        auto c = builtin_irreps(GroupFamily::Cyclic, m);
        out.push_back({"C" + std::to_string(m), c.group, c.irreps});
    }
    for (long order : {8L, 12L}) {
        auto c = builtin_irreps(GroupFamily::Dihedral, order);
        out.push_back({"D" + std::to_string(order), c.group, c.irreps});
    }
    auto s3 = builtin_irreps(GroupFamily::Sym3, 6);
    out.push_back({"Sym3", s3.group, s3.irreps});
    const std::vector<Permutation> gens{Permutation::from_one_based({2, 3, 4, 1}), Permutation::from_one_based({2, 1, 3, 4})};
    auto s4 = std::make_shared<const FiniteGroup>(FiniteGroup::generate(gens, 4));
    out.push_back({"Sym4", s4, compute_irreps(s4, 1)});
    return out;
}

struct SweepInstance {
    const SweepGroup* group;
    liftspec::SubgroupContext ctx;
    liftspec::VoltageGraph graph;
    std::size_t k;
};

/// k in 1..5, 0..3 parallel edges per vertex pair, 0..2 loops per vertex,
/// uniform voltages. H is trivial, full, or generated by 1-2 random elements.
inline SweepInstance random_instance(const std::vector<SweepGroup>& groups, std::mt19937_64& rng, std::size_t serial) {
    using namespace liftspec;
    const SweepGroup& sg = groups[std::uniform_int_distribution<std::size_t>(0, groups.size() - 1)(rng)];
    const FiniteGroup& g = *sg.group;
    std::uniform_int_distribution<std::size_t> element(0, g.order() - 1);

    ElementSet h;
    switch (serial % 4) {
        case 0: h = {0}; break;
        case 1:
            for (std::size_t i = 0; i < g.order(); ++i) h.push_back(i);
            break;
        default: {
            std::vector<std::size_t> gens{element(rng)};
            if (serial % 4 == 3) gens.push_back(element(rng));
            h = g.subgroup_generated_by(gens);
        }
    }

    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    std::vector<EdgeSpec> edges;
    std::uniform_int_distribution<int> parallel(0, 3), loops(0, 2);
    for (std::size_t u = 0; u < k; ++u) {
        for (int l = loops(rng); l > 0; --l) edges.push_back({u, u, element(rng)});
        for (std::size_t v = u + 1; v < k; ++v)
            for (int c = parallel(rng); c > 0; --c) edges.push_back({u, v, element(rng)});
    }
    std::vector<std::string> labels;
    for (std::size_t u = 0; u < k; ++u) labels.push_back("v" + std::to_string(u));
    return {&sg, right_cosets(sg.group, h), VoltageGraph::undirected(sg.group, labels, edges), k};
}

}  // namespace oracle
