#include "liftspec/finite_group.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

#include "liftspec/errors.hpp"

namespace liftspec {

FiniteGroup FiniteGroup::generate(std::span<const Permutation> generators, std::size_t degree,
                                  std::size_t order_cap) {
    if (degree == 0) throw ConsistencyError("group degree must be at least 1");
    for (const auto& g : generators)
        if (g.degree() != degree)
            throw ConsistencyError("generator " + g.to_cycle_string() + " has degree " +
                                   std::to_string(g.degree()) + ", expected " + std::to_string(degree));

    // Breadth-first closure under right multiplication by generators.
    std::set<Permutation> seen{Permutation(degree)};
    std::deque<Permutation> queue{Permutation(degree)};
    while (!queue.empty()) {
        const Permutation x = queue.front();
        queue.pop_front();
        for (const auto& g : generators) {
            Permutation y = x * g;
            if (seen.insert(y).second) {
                if (seen.size() > order_cap)
                    throw ConsistencyError("group closure exceeds order cap " + std::to_string(order_cap));
                queue.push_back(std::move(y));
            }
        }
    }

    FiniteGroup group;
    group.degree_ = degree;
    group.elements_.assign(seen.begin(), seen.end());
    for (std::size_t i = 0; i < group.elements_.size(); ++i)
        group.lookup_.emplace(group.elements_[i].images(), i);

    const std::size_t n = group.elements_.size();
    group.inverse_.resize(n);
    for (std::size_t i = 0; i < n; ++i) group.inverse_[i] = *group.index_of(group.elements_[i].inverse());

    if (n <= kDenseTableLimit) {
        group.table_.resize(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                group.table_[a * n + b] =
                    static_cast<std::uint32_t>(*group.index_of(group.elements_[a] * group.elements_[b]));
    }

    for (const auto& g : generators) {
        const std::size_t idx = *group.index_of(g);
        if (idx == identity()) continue;
        if (std::find(group.generators_.begin(), group.generators_.end(), idx) == group.generators_.end())
            group.generators_.push_back(idx);
    }
    return group;
}

std::optional<std::size_t> FiniteGroup::index_of(const Permutation& p) const {
    if (p.degree() != degree_) return std::nullopt;
    auto it = lookup_.find(p.images());
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

std::size_t FiniteGroup::multiply(std::size_t a, std::size_t b) const {
    if (!table_.empty()) return table_[a * elements_.size() + b];
    return lookup_.at((elements_[a] * elements_[b]).images());
}

ElementSet FiniteGroup::subgroup_generated_by(std::span<const std::size_t> gens) const {
    std::vector<bool> in(order(), false);
    in[identity()] = true;
    std::vector<std::size_t> members{identity()};
    for (std::size_t head = 0; head < members.size(); ++head) {
        for (std::size_t g : gens) {
            const std::size_t y = multiply(members[head], g);
            if (!in[y]) {
                in[y] = true;
                members.push_back(y);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

bool FiniteGroup::is_subgroup(std::span<const std::size_t> subset) const {
    if (subset.empty()) return false;
    std::vector<bool> in(order(), false);
    for (std::size_t x : subset) {
        if (x >= order()) return false;
        in[x] = true;
    }
    for (std::size_t a : subset)
        for (std::size_t b : subset)
            if (!in[multiply(a, b)]) return false;
    return true;
}

bool FiniteGroup::is_transitive() const {
    std::vector<bool> reached(degree_, false);
    reached[0] = true;
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        const int p = frontier.back();
        frontier.pop_back();
        for (std::size_t g : generators_) {
            const int q = elements_[g](p);
            if (!reached[static_cast<std::size_t>(q)]) {
                reached[static_cast<std::size_t>(q)] = true;
                frontier.push_back(q);
            }
        }
    }
    return std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
}

bool FiniteGroup::is_regular_action() const { return is_transitive() && order() == degree_; }

std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& group) {
    const std::size_t n = group.order();
    std::vector<bool> assigned(n, false);
    std::vector<ConjugacyClass> classes;
    for (std::size_t x = 0; x < n; ++x) {
        if (assigned[x]) continue;
        ConjugacyClass cls;
        cls.representative = x;
        std::size_t centralizer = 0;
        std::vector<bool> in(n, false);
        for (std::size_t g = 0; g < n; ++g) {
            const std::size_t y = group.multiply(group.multiply(group.inverse(g), x), g);
            if (y == x) ++centralizer;
            if (!in[y]) {
                in[y] = true;
                cls.members.push_back(y);
                assigned[y] = true;
            }
        }
        std::sort(cls.members.begin(), cls.members.end());
        if (cls.size() * centralizer != n)
            throw NumericalError("class of " + group.element(x).to_cycle_string() +
                                 " violates |class|*|centralizer| = |G|");
        classes.push_back(std::move(cls));
    }
    return classes;
}

ElementSet stabilizer(const FiniteGroup& group, std::size_t point) {
    if (point < 1 || point > group.degree())
        throw ConsistencyError("stabilizer point " + std::to_string(point) + " outside 1.." +
                               std::to_string(group.degree()));
    const int p = static_cast<int>(point - 1);
    ElementSet out;
    for (std::size_t i = 0; i < group.order(); ++i)
        if (group.element(i)(p) == p) out.push_back(i);
    return out;
}

SubgroupContext right_cosets(GroupPtr group, ElementSet subgroup) {
    std::sort(subgroup.begin(), subgroup.end());
    subgroup.erase(std::unique(subgroup.begin(), subgroup.end()), subgroup.end());
    if (!group->is_subgroup(subgroup)) throw ConsistencyError("element set is not a subgroup");

    const std::size_t n = group->order();
    constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

    SubgroupContext ctx;
    ctx.group = group;
    ctx.subgroup = subgroup;
    ctx.coset_of.assign(n, kUnassigned);

    auto add_coset = [&](std::size_t rep) {
        ElementSet coset;
        coset.reserve(subgroup.size());
        for (std::size_t h : subgroup) coset.push_back(group->multiply(h, rep));
        std::sort(coset.begin(), coset.end());
        for (std::size_t x : coset) ctx.coset_of[x] = ctx.cosets.size();
        ctx.cosets.push_back(std::move(coset));
        ctx.representatives.push_back(rep);
    };

    add_coset(FiniteGroup::identity());
    for (std::size_t head = 0; head < ctx.cosets.size(); ++head) {
        for (std::size_t g : group->generators()) {
            const std::size_t y = group->multiply(ctx.representatives[head], g);
            if (ctx.coset_of[y] == kUnassigned) add_coset(y);
        }
    }
    // Only reachable if the generator list does not generate the group.
    for (std::size_t x = 0; x < n; ++x)
        if (ctx.coset_of[x] == kUnassigned) add_coset(x);
    return ctx;
}

bool is_normal(const SubgroupContext& ctx) {
    const FiniteGroup& G = *ctx.group;
    std::vector<bool> in(G.order(), false);
    for (std::size_t h : ctx.subgroup) in[h] = true;
    for (std::size_t g = 0; g < G.order(); ++g)
        for (std::size_t h : ctx.subgroup)
            if (!in[G.multiply(G.multiply(g, h), G.inverse(g))]) return false;
    return true;
}

}  // namespace liftspec
