#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "liftspec/finite_group.hpp"
#include "liftspec/irreps.hpp"

namespace liftspec {

/// One arc as supplied by the user: tail -> head carrying `voltage`.
struct EdgeSpec {
    std::size_t tail = 0;
    std::size_t head = 0;
    std::size_t voltage = 0;  // element index in the voltage group
};

struct Arc {
    std::size_t tail = 0;
    std::size_t head = 0;
    std::size_t voltage = 0;
    std::optional<std::size_t> paired;  // index of the reverse arc a^-
};

/// A base (di)graph whose arcs carry voltages in a permutation group. Loops
/// and parallel arcs are allowed.
///
/// In the undirected case each supplied edge becomes an arc pair {a, a^-}
/// with alpha(a^-) = alpha(a)^-1; a loop at u is such a pair with both ends
/// at u, so it contributes alpha(a) + alpha(a)^-1 to B(u,u) and degree 2 to
/// every lifted vertex.
class VoltageGraph {
public:
    static VoltageGraph undirected(GroupPtr group, std::vector<std::string> labels, std::span<const EdgeSpec> edges);
    static VoltageGraph directed(GroupPtr group, std::vector<std::string> labels, std::span<const EdgeSpec> edges);

    const GroupPtr& group() const { return group_; }
    std::size_t vertex_count() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    bool is_directed() const { return directed_; }

    /// The edges as supplied (one per undirected edge).
    const std::vector<EdgeSpec>& edges() const { return edges_; }

    /// Same base graph and group, voltages replaced.
    VoltageGraph with_voltages(std::span<const std::size_t> voltages) const;

    /// Every supplied edge gets a uniformly random group element.
    VoltageGraph with_random_voltages(std::mt19937_64& rng) const;

    /// Connected when arc directions are ignored.
    bool is_connected() const;

private:
    VoltageGraph() = default;

    GroupPtr group_;
    std::vector<std::string> labels_;
    std::vector<EdgeSpec> edges_;
    std::vector<Arc> arcs_;
    bool directed_ = false;
};

/// Sparse element sum_g c_g g of the complex group algebra.
class GroupAlgebraElement {
public:
    using Map = std::map<std::size_t, Complex>;

    GroupAlgebraElement() = default;
    explicit GroupAlgebraElement(Map coefficients);

    void add(std::size_t g, Complex c);
    Complex coefficient(std::size_t g) const;
    const Map& coefficients() const { return coefficients_; }
    bool is_zero() const { return coefficients_.empty(); }

    GroupAlgebraElement& operator+=(const GroupAlgebraElement& rhs);

    /// True if every coefficient is within tol of an integer.
    bool is_integral(double tol = 1e-9) const;

    /// e.g. "66e + 8(1 2 3) + 8(1 3 2)", identity written as "e".
    std::string to_string(const FiniteGroup& group) const;

    friend bool operator==(const GroupAlgebraElement&, const GroupAlgebraElement&) = default;

private:
    Map coefficients_;  // zero coefficients are never stored
};

/// Convolution product: (x*y)_{ab} accumulates x_a y_b.
GroupAlgebraElement multiply(const FiniteGroup& group, const GroupAlgebraElement& x, const GroupAlgebraElement& y);

/// k x k matrix over the group algebra.
struct BaseMatrix {
    GroupPtr group;
    std::size_t k = 0;
    std::vector<GroupAlgebraElement> entries;  // row-major

    const GroupAlgebraElement& operator()(std::size_t u, std::size_t v) const { return entries[u * k + v]; }
    GroupAlgebraElement& operator()(std::size_t u, std::size_t v) { return entries[u * k + v]; }

    GroupAlgebraElement trace() const;
};

/// B(u,v) = sum of the voltages of all arcs u -> v.
BaseMatrix build_base_matrix(const VoltageGraph& graph);

/// B * C with group-algebra entries.
BaseMatrix multiply(const BaseMatrix& b, const BaseMatrix& c);

/// B^power for power >= 1. Throws NumericalError if any coefficient of the
/// result is not integral, since arc multiplicities are counts.
BaseMatrix base_matrix_power(const BaseMatrix& b, int power);

/// B, B^2, ..., B^max_power.
std::vector<BaseMatrix> base_matrix_powers(const BaseMatrix& b, int max_power);

/// A lift with vertices (u, J), base-vertex-major: index u * n + J.
struct LiftGraph {
    std::size_t base_vertices = 0;
    std::size_t fibre = 0;  // n, the number of cosets
    Eigen::MatrixXi adjacency;

    std::size_t size() const { return base_vertices * fibre; }
    std::size_t index(std::size_t u, std::size_t coset) const { return u * fibre + coset; }
    std::pair<std::size_t, std::size_t> label(std::size_t i) const { return {i / fibre, i % fibre}; }
};

/// Relative lift: arc (a, J) from (u, J) to (v, J alpha(a)).
LiftGraph build_lift(const VoltageGraph& graph, const SubgroupContext& ctx);

/// Ordinary lift over V x G (the trivial subgroup).
LiftGraph build_regular_lift(const VoltageGraph& graph);

/// Local group at vertex 0 from a spanning tree: each arc contributes
/// w(tail) alpha(a) w(head)^-1 with w the tree-path voltage. Returns whether
/// that subgroup is transitive on 1..degree. Throws ConsistencyError for a
/// disconnected base graph.
bool local_group_is_transitive(const VoltageGraph& graph);

/// Element indices of the local group at vertex 0.
ElementSet local_group(const VoltageGraph& graph);

}  // namespace liftspec
