#include "liftspec/instance.hpp"

#include <fstream>
#include <map>
#include <set>

#include "liftspec/errors.hpp"

namespace liftspec {

namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const char* where) {
    if (!obj.is_object() || !obj.contains(key))
        throw ParseError(std::string(where) + ": missing \"" + key + "\"");
    return obj.at(key);
}

std::string require_string(const json& obj, const char* key, const char* where) {
    const json& v = require(obj, key, where);
    if (!v.is_string()) throw ParseError(std::string(where) + ": \"" + key + "\" must be a string");
    return v.get<std::string>();
}

long require_integer(const json& obj, const char* key, const char* where) {
    const json& v = require(obj, key, where);
    if (!v.is_number_integer()) throw ParseError(std::string(where) + ": \"" + key + "\" must be an integer");
    return v.get<long>();
}

std::vector<std::string> string_list(const json& v, const char* where) {
    if (!v.is_array()) throw ParseError(std::string(where) + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& item : v) {
        if (!item.is_string()) throw ParseError(std::string(where) + " must be an array of strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

std::size_t element_of(const FiniteGroup& group, const std::string& cycles) {
    const auto idx = group.index_of(parse_permutation(cycles, group.degree()));
    if (!idx) throw ConsistencyError("permutation " + cycles + " is not in the voltage group");
    return *idx;
}

void load_group(const json& spec, std::uint64_t seed, Instance& inst) {
    const std::string kind = require_string(spec, "kind", "group");
    if (kind == "generators") {
        const long degree = require_integer(spec, "degree", "group");
        if (degree < 1) throw ParseError("group: degree must be at least 1");
        std::vector<Permutation> gens;
        for (const auto& text : string_list(require(spec, "generators", "group"), "group.generators"))
            gens.push_back(parse_permutation(text, static_cast<std::size_t>(degree)));
        std::size_t cap = kDefaultOrderCap;
        if (spec.contains("order_cap")) {
            const long c = require_integer(spec, "order_cap", "group");
            if (c < 1) throw ParseError("group: order_cap must be positive");
            cap = static_cast<std::size_t>(c);
        }
        inst.group = std::make_shared<const FiniteGroup>(FiniteGroup::generate(gens, static_cast<std::size_t>(degree), cap));
        inst.irreps = compute_irreps(inst.group, seed);
        return;
    }
    GroupFamily family;
    try {
        family = parse_family(kind);
    } catch (const ParseError&) {
        throw ParseError("group: unknown kind \"" + kind + "\"");
    }
    const long param = family == GroupFamily::Sym3 ? 6 : require_integer(spec, "param", "group");
    auto catalog = builtin_irreps(family, param);
    inst.group = catalog.group;
    inst.irreps = std::move(catalog.irreps);
}

void load_subgroup(const json* spec, Instance& inst) {
    const FiniteGroup& group = *inst.group;
    ElementSet members;
    const std::string kind = spec ? require_string(*spec, "kind", "subgroup") : "trivial";
    if (kind == "trivial") {
        inst.subgroup_kind = SubgroupKind::Trivial;
        members = {FiniteGroup::identity()};
    } else if (kind == "full") {
        inst.subgroup_kind = SubgroupKind::Full;
        members.resize(group.order());
        for (std::size_t i = 0; i < group.order(); ++i) members[i] = i;
    } else if (kind == "stabilizer") {
        inst.subgroup_kind = SubgroupKind::Stabilizer;
        const long point = require_integer(*spec, "point", "subgroup");
        if (point < 1 || static_cast<std::size_t>(point) > group.degree())
            throw ConsistencyError("subgroup: stabilizer point outside 1.." + std::to_string(group.degree()));
        members = stabilizer(group, static_cast<std::size_t>(point));
    } else if (kind == "generators") {
        inst.subgroup_kind = SubgroupKind::Generators;
        std::vector<std::size_t> gens;
        for (const auto& text : string_list(require(*spec, "generators", "subgroup"), "subgroup.generators"))
            gens.push_back(element_of(group, text));
        members = group.subgroup_generated_by(gens);
    } else {
        throw ParseError("subgroup: unknown kind \"" + kind + "\"");
    }
    inst.ctx = right_cosets(inst.group, std::move(members));
}

void load_graph(const json& spec, Instance& inst) {
    bool directed = false;
    if (spec.contains("directed")) {
        if (!spec.at("directed").is_boolean()) throw ParseError("graph: \"directed\" must be a boolean");
        directed = spec.at("directed").get<bool>();
    }
    auto labels = string_list(require(spec, "vertices", "graph"), "graph.vertices");
    if (labels.empty()) throw ConsistencyError("graph: at least one vertex is required");
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (!index.emplace(labels[i], i).second) throw ConsistencyError("graph: duplicate vertex \"" + labels[i] + "\"");

    const json& edges_json = spec.contains("edges") ? spec.at("edges") : json::array();
    if (!edges_json.is_array()) throw ParseError("graph: \"edges\" must be an array");
    std::vector<EdgeSpec> edges;
    for (const auto& e : edges_json) {
        const std::string from = require_string(e, "from", "edge");
        const std::string to = require_string(e, "to", "edge");
        const std::string voltage = e.contains("voltage") ? require_string(e, "voltage", "edge") : "()";
        const auto f = index.find(from), t = index.find(to);
        if (f == index.end() || t == index.end())
            throw ConsistencyError("edge " + from + " -> " + to + " names an unknown vertex");
        edges.push_back({f->second, t->second, element_of(*inst.group, voltage)});
    }
    inst.graph = directed ? VoltageGraph::directed(inst.group, std::move(labels), edges)
                          : VoltageGraph::undirected(inst.group, std::move(labels), edges);
}

double positive(const json& opts, const char* key, double fallback) {
    if (!opts.contains(key)) return fallback;
    const json& v = opts.at(key);
    if (!v.is_number() || !(v.get<double>() > 0.0)) throw ParseError(std::string("options: \"") + key + "\" must be a positive number");
    return v.get<double>();
}

}  // namespace

Instance load_instance(const json& doc) {
    if (!doc.is_object()) throw ParseError("instance must be a JSON object");
    Instance inst;
    if (doc.contains("options")) {
        const json& opts = doc.at("options");
        if (!opts.is_object()) throw ParseError("options must be an object");
        if (opts.contains("seed")) {
            if (!opts.at("seed").is_number_unsigned() && !opts.at("seed").is_number_integer())
                throw ParseError("options: \"seed\" must be an integer");
            inst.seed = opts.at("seed").get<std::uint64_t>();
        }
        inst.tolerances.rank_tol = positive(opts, "tol_rank", inst.tolerances.rank_tol);
        inst.tolerances.residual_tol = positive(opts, "tol_residual", inst.tolerances.residual_tol);
        inst.tolerances.match_tol = positive(opts, "tol_match", inst.tolerances.match_tol);
    }
    load_group(require(doc, "group", "instance"), inst.seed, inst);
    load_subgroup(doc.contains("subgroup") ? &doc.at("subgroup") : nullptr, inst);
    load_graph(require(doc, "graph", "instance"), inst);
    return inst;
}

Instance load_instance_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    try {
        return load_instance(doc);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace liftspec
