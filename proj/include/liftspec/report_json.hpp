#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "liftspec/character_regular.hpp"
#include "liftspec/spectral_lift.hpp"

namespace liftspec {

using Json = nlohmann::ordered_json;

/// [re, im], with negative zero written as 0.
Json complex_json(Complex z);
Json complex_list_json(const std::vector<Complex>& values);

Json spectrum_json(const SpectrumReport& report);
Json eigenvectors_json(const EigenvectorBundle& bundle);

/// {"vertices": ["u@0", ...], "edges": [[tail, head, multiplicity], ...]}
/// plus "adjacency" when requested. Undirected lifts list the upper
/// triangle only; a lifted loop counts 2, as in the adjacency matrix.
Json lift_json(const LiftGraph& lift, const VoltageGraph& graph, bool emit_adjacency);

/// One "tail head multiplicity" line per entry listed by lift_json.
std::string lift_edge_list(const LiftGraph& lift, const VoltageGraph& graph);

Json characters_json(const CharacterSpectrum& spectrum, const FiniteGroup& group);

/// Summary: dims, characters on class representatives and rank(rho(H)).
/// With `dump`: every matrix keyed by the element's cycle string.
Json irreps_json(const IrrepSet& irreps, const SubgroupContext& ctx, bool dump, double rank_tol);

Json verification_json(const std::vector<VerificationReport>& trials, std::uint64_t seed);

}  // namespace liftspec
