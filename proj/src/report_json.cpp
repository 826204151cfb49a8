#include "liftspec/report_json.hpp"

#include <sstream>

namespace liftspec {

namespace {

double clean(double x) { return x == 0.0 ? 0.0 : x; }

Json matrix_json(const CMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string vertex_name(const LiftGraph& lift, const VoltageGraph& graph, std::size_t i) {
    const auto [u, coset] = lift.label(i);
    return graph.labels()[u] + "@" + std::to_string(coset);
}

template <typename F>
void for_each_listed_entry(const LiftGraph& lift, const VoltageGraph& graph, F&& f) {
    const auto n = static_cast<Eigen::Index>(lift.size());
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = graph.is_directed() ? 0 : r; c < n; ++c)
            if (lift.adjacency(r, c) != 0) f(r, c, lift.adjacency(r, c));
}

}  // namespace

Json complex_json(Complex z) { return Json::array({clean(z.real()), clean(z.imag())}); }

Json complex_list_json(const std::vector<Complex>& values) {
    Json out = Json::array();
    for (const auto& v : values) out.push_back(complex_json(v));
    return out;
}

Json spectrum_json(const SpectrumReport& report) {
    Json entries = Json::array();
    for (const auto& e : report.entries) {
        Json prov = Json::array();
        for (const auto& p : e.provenance) prov.push_back({{"irrep", p.irrep}, {"dim", p.dim}, {"rank", p.rank}});
        entries.push_back({{"value", complex_json(e.value)}, {"count", e.count}, {"provenance", std::move(prov)}});
    }
    return {{"kn", report.kn}, {"eigenvalues", std::move(entries)}};
}

Json eigenvectors_json(const EigenvectorBundle& bundle) {
    Json columns = Json::array();
    for (const auto& col : bundle.columns) {
        Json vec = Json::array();
        for (Eigen::Index r = 0; r < col.vector.size(); ++r) vec.push_back(complex_json(col.vector(r)));
        Json entry = {{"eigenvalue", complex_json(col.eigenvalue)},
                      {"irrep", col.irrep},
                      {"j", col.j},
                      {"w", col.w},
                      {"i", col.i},
                      {"vector", std::move(vec)},
                      {"zero", col.zero},
                      {"selected", col.selected}};
        if (col.selected) entry["residual"] = col.residual;
        columns.push_back(std::move(entry));
    }
    return {{"kn", bundle.kn},
            {"selected_basis", bundle.selected_basis},
            {"max_residual", bundle.max_residual},
            {"columns", std::move(columns)}};
}

Json lift_json(const LiftGraph& lift, const VoltageGraph& graph, bool emit_adjacency) {
    Json vertices = Json::array();
    for (std::size_t i = 0; i < lift.size(); ++i) vertices.push_back(vertex_name(lift, graph, i));
    Json edges = Json::array();
    for_each_listed_entry(lift, graph, [&](Eigen::Index r, Eigen::Index c, int m) {
        edges.push_back(Json::array({r, c, m}));
    });
    Json out = {{"directed", graph.is_directed()}, {"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
    if (emit_adjacency) {
        Json rows = Json::array();
        for (Eigen::Index r = 0; r < lift.adjacency.rows(); ++r) {
            Json row = Json::array();
            for (Eigen::Index c = 0; c < lift.adjacency.cols(); ++c) row.push_back(lift.adjacency(r, c));
            rows.push_back(std::move(row));
        }
        out["adjacency"] = std::move(rows);
    }
    return out;
}

std::string lift_edge_list(const LiftGraph& lift, const VoltageGraph& graph) {
    std::ostringstream out;
    for_each_listed_entry(lift, graph, [&](Eigen::Index r, Eigen::Index c, int m) {
        out << vertex_name(lift, graph, static_cast<std::size_t>(r)) << ' '
            << vertex_name(lift, graph, static_cast<std::size_t>(c)) << ' ' << m << '\n';
    });
    return out.str();
}

Json characters_json(const CharacterSpectrum& spectrum, const FiniteGroup& group) {
    Json traces = Json::array();
    for (const auto& t : spectrum.traces) traces.push_back(t.to_string(group));
    Json per = Json::array();
    for (const auto& p : spectrum.per_irrep)
        per.push_back({{"irrep", p.irrep},
                       {"dim", p.dim},
                       {"power_sums", complex_list_json(p.power_sums)},
                       {"roots", complex_list_json(p.roots)}});
    return {{"traces", std::move(traces)},
            {"per_irrep", std::move(per)},
            {"spectrum", complex_list_json(spectrum.spectrum)}};
}

Json irreps_json(const IrrepSet& irreps, const SubgroupContext& ctx, bool dump, double rank_tol) {
    const FiniteGroup& group = *irreps.group;
    Json out = {{"group_order", group.order()}};
    if (dump) {
        Json list = Json::array();
        for (const auto& rho : irreps.irreps) {
            Json mats = Json::object();
            for (std::size_t g = 0; g < group.order(); ++g)
                mats[group.element(g).to_cycle_string()] = matrix_json(rho.matrices[g]);
            list.push_back({{"dim", rho.dim()}, {"matrices", std::move(mats)}});
        }
        out["irreps"] = std::move(list);
        return out;
    }
    const auto classes = conjugacy_classes(group);
    Json cls = Json::array();
    for (const auto& c : classes)
        cls.push_back({{"representative", group.element(c.representative).to_cycle_string()}, {"size", c.size()}});
    out["classes"] = std::move(cls);
    out["subgroup_order"] = ctx.subgroup.size();
    out["index"] = ctx.index();
    Json list = Json::array();
    for (const auto& rho : irreps.irreps) {
        std::vector<Complex> chi;
        for (const auto& c : classes) chi.push_back(rho.character[c.representative]);
        list.push_back({{"dim", rho.dim()},
                        {"character", complex_list_json(chi)},
                        {"subgroup_rank", subgroup_sum(rho, ctx, rank_tol).rank}});
    }
    out["irreps"] = std::move(list);
    out["rank_identity_sum"] = rank_identity_sum(irreps, ctx, rank_tol);
    return out;
}

Json verification_json(const std::vector<VerificationReport>& trials, std::uint64_t seed) {
    Json list = Json::array();
    bool all = true;
    for (std::size_t t = 0; t < trials.size(); ++t) {
        const auto& r = trials[t];
        all = all && r.passed;
        list.push_back({{"trial", t},
                        {"kn", r.kn},
                        {"spectral_distance", r.spectral_distance},
                        {"max_residual", r.max_residual},
                        {"selected", r.selected},
                        {"rank_identity", r.rank_identity},
                        {"passed", r.passed}});
    }
    return {{"seed", seed}, {"trials", trials.size()}, {"passed", all}, {"reports", std::move(list)}};
}

}  // namespace liftspec
