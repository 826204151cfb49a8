#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "liftspec/irreps.hpp"
#include "liftspec/spectral_lift.hpp"
#include "liftspec/voltage_graph.hpp"

namespace liftspec {

enum class SubgroupKind { Stabilizer, Generators, Trivial, Full };

/// A fully resolved instance document:
///
///   {"group":    {"kind":"generators","degree":3,"generators":["(2 3)","(1 2)"]}
///              | {"kind":"cyclic","param":m} | {"kind":"dihedral","param":2m} | {"kind":"sym3"},
///    "subgroup": {"kind":"stabilizer","point":1} | {"kind":"generators","generators":[...]}
///              | {"kind":"trivial"} | {"kind":"full"},
///    "graph":    {"directed":false,"vertices":["u","v"],
///                 "edges":[{"from":"u","to":"v","voltage":"(1 2)"}, ...]},
///    "options":  {"seed":1,"tol_rank":1e-9,"tol_residual":1e-8,"tol_match":1e-7}}
///
/// "subgroup" defaults to trivial, "options" to the defaults shown.
struct Instance {
    GroupPtr group;
    IrrepSet irreps;
    SubgroupKind subgroup_kind = SubgroupKind::Trivial;
    SubgroupContext ctx;
    std::optional<VoltageGraph> graph;
    std::uint64_t seed = 1;
    LiftOptions tolerances;
};

/// Throws ParseError for malformed documents and ConsistencyError when the
/// document parses but does not describe a valid group/subgroup/graph.
Instance load_instance(const nlohmann::json& doc);
Instance load_instance_file(const std::filesystem::path& path);

}  // namespace liftspec
