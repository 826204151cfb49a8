#include "liftspec/voltage_graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "liftspec/errors.hpp"

namespace liftspec {

namespace {

void check_edges(const FiniteGroup& group, std::size_t k, std::span<const EdgeSpec> edges) {
    if (k == 0) throw ConsistencyError("base graph needs at least one vertex");
    for (const auto& e : edges) {
        if (e.tail >= k || e.head >= k) throw ConsistencyError("edge endpoint out of range");
        if (e.voltage >= group.order()) throw ConsistencyError("voltage is not a group element");
    }
}

}  // namespace

VoltageGraph VoltageGraph::undirected(GroupPtr group, std::vector<std::string> labels,
                                      std::span<const EdgeSpec> edges) {
    check_edges(*group, labels.size(), edges);
    VoltageGraph g;
    g.group_ = std::move(group);
    g.labels_ = std::move(labels);
    g.edges_.assign(edges.begin(), edges.end());
    for (const auto& e : edges) {
        const std::size_t a = g.arcs_.size();
        g.arcs_.push_back({e.tail, e.head, e.voltage, a + 1});
        g.arcs_.push_back({e.head, e.tail, g.group_->inverse(e.voltage), a});
    }
    return g;
}

VoltageGraph VoltageGraph::directed(GroupPtr group, std::vector<std::string> labels,
                                    std::span<const EdgeSpec> edges) {
    check_edges(*group, labels.size(), edges);
    VoltageGraph g;
    g.group_ = std::move(group);
    g.labels_ = std::move(labels);
    g.edges_.assign(edges.begin(), edges.end());
    g.directed_ = true;
    for (const auto& e : edges) g.arcs_.push_back({e.tail, e.head, e.voltage, std::nullopt});
    return g;
}

VoltageGraph VoltageGraph::with_voltages(std::span<const std::size_t> voltages) const {
    if (voltages.size() != edges_.size()) throw ConsistencyError("one voltage per edge required");
    std::vector<EdgeSpec> edges = edges_;
    for (std::size_t i = 0; i < edges.size(); ++i) edges[i].voltage = voltages[i];
    return directed_ ? directed(group_, labels_, edges) : undirected(group_, labels_, edges);
}

VoltageGraph VoltageGraph::with_random_voltages(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::size_t> pick(0, group_->order() - 1);
    std::vector<std::size_t> voltages(edges_.size());
    for (auto& v : voltages) v = pick(rng);
    return with_voltages(voltages);
}

bool VoltageGraph::is_connected() const {
    std::vector<std::vector<std::size_t>> nbrs(vertex_count());
    for (const auto& a : arcs_) {
        nbrs[a.tail].push_back(a.head);
        nbrs[a.head].push_back(a.tail);
    }
    std::vector<bool> seen(vertex_count(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v : nbrs[u])
            if (!seen[v]) {
                seen[v] = true;
                ++count;
                stack.push_back(v);
            }
    }
    return count == vertex_count();
}

// ---------------------------------------------------------------------------

GroupAlgebraElement::GroupAlgebraElement(Map coefficients) {
    for (const auto& [g, c] : coefficients) add(g, c);
}

void GroupAlgebraElement::add(std::size_t g, Complex c) {
    if (c == Complex(0.0)) return;
    auto [it, inserted] = coefficients_.emplace(g, c);
    if (!inserted) {
        it->second += c;
        if (it->second == Complex(0.0)) coefficients_.erase(it);
    }
}

Complex GroupAlgebraElement::coefficient(std::size_t g) const {
    auto it = coefficients_.find(g);
    return it == coefficients_.end() ? Complex(0.0) : it->second;
}

GroupAlgebraElement& GroupAlgebraElement::operator+=(const GroupAlgebraElement& rhs) {
    for (const auto& [g, c] : rhs.coefficients_) add(g, c);
    return *this;
}

bool GroupAlgebraElement::is_integral(double tol) const {
    for (const auto& [g, c] : coefficients_)
        if (std::abs(c.imag()) > tol || std::abs(c.real() - std::round(c.real())) > tol) return false;
    return true;
}

std::string GroupAlgebraElement::to_string(const FiniteGroup& group) const {
    if (coefficients_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [g, c] : coefficients_) {
        if (!first) out << " + ";
        first = false;
        if (c.imag() == 0.0) {
            if (c.real() != 1.0) out << c.real();
        } else {
            out << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
        }
        out << (g == FiniteGroup::identity() ? std::string("e") : group.element(g).to_cycle_string());
    }
    return out.str();
}

GroupAlgebraElement multiply(const FiniteGroup& group, const GroupAlgebraElement& x, const GroupAlgebraElement& y) {
    GroupAlgebraElement out;
    for (const auto& [a, ca] : x.coefficients())
        for (const auto& [b, cb] : y.coefficients()) out.add(group.multiply(a, b), ca * cb);
    return out;
}

GroupAlgebraElement BaseMatrix::trace() const {
    GroupAlgebraElement out;
    for (std::size_t u = 0; u < k; ++u) out += (*this)(u, u);
    return out;
}

BaseMatrix build_base_matrix(const VoltageGraph& graph) {
    BaseMatrix b;
    b.group = graph.group();
    b.k = graph.vertex_count();
    b.entries.resize(b.k * b.k);
    for (const auto& a : graph.arcs()) b(a.tail, a.head).add(a.voltage, 1.0);
    return b;
}

BaseMatrix multiply(const BaseMatrix& b, const BaseMatrix& c) {
    if (b.k != c.k) throw ConsistencyError("base matrix size mismatch");
    BaseMatrix out;
    out.group = b.group;
    out.k = b.k;
    out.entries.resize(b.k * b.k);
    for (std::size_t u = 0; u < b.k; ++u)
        for (std::size_t w = 0; w < b.k; ++w) {
            if (b(u, w).is_zero()) continue;
            for (std::size_t v = 0; v < b.k; ++v)
                if (!c(w, v).is_zero()) out(u, v) += multiply(*b.group, b(u, w), c(w, v));
        }
    return out;
}

std::vector<BaseMatrix> base_matrix_powers(const BaseMatrix& b, int max_power) {
    if (max_power < 1) throw ConsistencyError("matrix power must be at least 1");
    std::vector<BaseMatrix> powers{b};
    for (int p = 2; p <= max_power; ++p) {
        powers.push_back(multiply(powers.back(), b));
        for (const auto& entry : powers.back().entries)
            if (!entry.is_integral())
                throw NumericalError("base matrix power " + std::to_string(p) + " has non-integral coefficients");
    }
    return powers;
}

BaseMatrix base_matrix_power(const BaseMatrix& b, int power) { return base_matrix_powers(b, power).back(); }

// ---------------------------------------------------------------------------

LiftGraph build_lift(const VoltageGraph& graph, const SubgroupContext& ctx) {
    if (ctx.group->order() != graph.group()->order() || ctx.group->degree() != graph.group()->degree())
        throw ConsistencyError("subgroup context and voltage graph use different groups");
    LiftGraph lift;
    lift.base_vertices = graph.vertex_count();
    lift.fibre = ctx.index();
    const auto size = static_cast<Eigen::Index>(lift.size());
    lift.adjacency = Eigen::MatrixXi::Zero(size, size);
    for (const auto& a : graph.arcs())
        for (std::size_t j = 0; j < lift.fibre; ++j) {
            const auto from = static_cast<Eigen::Index>(lift.index(a.tail, j));
            const auto to = static_cast<Eigen::Index>(lift.index(a.head, ctx.act(j, a.voltage)));
            lift.adjacency(from, to) += 1;
        }
    return lift;
}

LiftGraph build_regular_lift(const VoltageGraph& graph) {
    return build_lift(graph, right_cosets(graph.group(), {FiniteGroup::identity()}));
}

ElementSet local_group(const VoltageGraph& graph) {
    if (!graph.is_connected()) throw ConsistencyError("local group needs a connected base graph");
    const FiniteGroup& group = *graph.group();
    const std::size_t k = graph.vertex_count();

    // Tree-path voltages w(x) from vertex 0; arcs may be walked backwards.
    std::vector<std::optional<std::size_t>> w(k);
    w[0] = FiniteGroup::identity();
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
        const std::size_t x = stack.back();
        stack.pop_back();
        for (const auto& a : graph.arcs()) {
            if (a.tail == x && !w[a.head]) {
                w[a.head] = group.multiply(*w[x], a.voltage);
                stack.push_back(a.head);
            } else if (a.head == x && !w[a.tail]) {
                w[a.tail] = group.multiply(*w[x], group.inverse(a.voltage));
                stack.push_back(a.tail);
            }
        }
    }

    std::vector<std::size_t> gens;
    for (const auto& a : graph.arcs()) {
        const std::size_t c = group.multiply(group.multiply(*w[a.tail], a.voltage), group.inverse(*w[a.head]));
        if (c != FiniteGroup::identity()) gens.push_back(c);
    }
    return group.subgroup_generated_by(gens);
}

bool local_group_is_transitive(const VoltageGraph& graph) {
    const ElementSet members = local_group(graph);
    const FiniteGroup& group = *graph.group();
    std::vector<bool> reached(group.degree(), false);
    for (std::size_t x : members) reached[static_cast<std::size_t>(group.element(x)(0))] = true;
    return std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
}

}  // namespace liftspec
