#include "liftspec/commands.hpp"

#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "liftspec/errors.hpp"
#include "liftspec/instance.hpp"
#include "liftspec/report_json.hpp"

namespace liftspec {

namespace {

struct Flags {
    std::optional<double> tol_rank, tol_residual, tol_match;
    std::string file;
    bool emit_adjacency = false;
    bool edge_list = false;
    std::size_t trials = 1;
    std::optional<std::uint64_t> seed;
    bool dump = false;
};

Instance load(const Flags& flags) {
    Instance inst = load_instance_file(flags.file);
    if (flags.tol_rank) inst.tolerances.rank_tol = *flags.tol_rank;
    if (flags.tol_residual) inst.tolerances.residual_tol = *flags.tol_residual;
    if (flags.tol_match) inst.tolerances.match_tol = *flags.tol_match;
    return inst;
}

void require_undirected(const Instance& inst, const char* command) {
    if (inst.graph->is_directed())
        throw ConsistencyError(std::string(command) + " needs an undirected base graph; use `characters` for digraphs");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string cmd_spectrum(const Flags& flags) {
    const Instance inst = load(flags);
    require_undirected(inst, "spectrum");
    if (!verify_rank_identity(inst.irreps, inst.ctx, inst.tolerances.rank_tol))
        throw NumericalError("rank identity violated for the given subgroup");
    return dump(spectrum_json(lift_spectrum(build_base_matrix(*inst.graph), inst.irreps, inst.ctx, inst.tolerances)));
}

std::string cmd_eigvecs(const Flags& flags) {
    const Instance inst = load(flags);
    require_undirected(inst, "eigvecs");
    if (!verify_rank_identity(inst.irreps, inst.ctx, inst.tolerances.rank_tol))
        throw NumericalError("rank identity violated for the given subgroup");
    return dump(eigenvectors_json(lift_eigenvectors(build_base_matrix(*inst.graph), inst.irreps, inst.ctx, inst.tolerances)));
}

std::string cmd_lift(const Flags& flags) {
    const Instance inst = load(flags);
    const LiftGraph lift = build_lift(*inst.graph, inst.ctx);
    if (flags.edge_list) return lift_edge_list(lift, *inst.graph);
    return dump(lift_json(lift, *inst.graph, flags.emit_adjacency));
}

std::string cmd_verify(const Flags& flags, bool& all_passed) {
    const Instance inst = load(flags);
    require_undirected(inst, "verify");
    const std::uint64_t seed = flags.seed.value_or(inst.seed);
    std::mt19937_64 rng(seed);
    std::vector<VerificationReport> reports;
    for (std::size_t t = 0; t < flags.trials; ++t)
        reports.push_back(verify_against_oracle(inst.graph->with_random_voltages(rng), inst.irreps, inst.ctx, inst.tolerances));
    all_passed = true;
    for (const auto& r : reports) all_passed = all_passed && r.passed;
    return dump(verification_json(reports, seed));
}

std::string cmd_characters(const Flags& flags) {
    const Instance inst = load(flags);
    if (inst.ctx.subgroup.size() != 1)
        throw ConsistencyError("characters computes regular lifts only; the subgroup must be trivial");
    const auto spectrum = regular_spectrum_via_characters(build_base_matrix(*inst.graph), inst.irreps, inst.tolerances.residual_tol);
    return dump(characters_json(spectrum, *inst.group));
}

std::string cmd_irreps(const Flags& flags) {
    const Instance inst = load(flags);
    return dump(irreps_json(inst.irreps, inst.ctx, flags.dump, inst.tolerances.rank_tol));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectra and eigenvectors of relative voltage-graph lifts", "liftspec"};
    app.require_subcommand(1);
    Flags flags;
    app.add_option("--tol-rank", flags.tol_rank, "Rank threshold for rho(H)")->check(CLI::PositiveNumber);
    app.add_option("--tol-residual", flags.tol_residual, "Eigenvector residual bound")->check(CLI::PositiveNumber);
    app.add_option("--tol-match", flags.tol_match, "Eigenvalue multiset match tolerance")->check(CLI::PositiveNumber);

    auto add = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("FILE", flags.file, "Instance file (JSON)")->required();
        return sub;
    };
    auto* spectrum = add("spectrum", "Lift spectrum with irrep provenance");
    auto* eigvecs = add("eigvecs", "Eigenvector columns of the lift");
    auto* lift = add("lift", "Explicit lift graph");
    lift->add_flag("--emit-adjacency", flags.emit_adjacency, "Include the dense adjacency matrix");
    lift->add_flag("--edge-list", flags.edge_list, "Print `tail head multiplicity` lines instead of JSON");
    auto* verify = add("verify", "Check random voltage assignments against the explicit lift");
    verify->add_option("--trials", flags.trials, "Number of random assignments")->check(CLI::PositiveNumber);
    verify->add_option("--seed", flags.seed, "Seed for the random assignments");
    auto* characters = add("characters", "Regular-lift spectrum from characters (digraphs allowed)");
    auto* irreps = add("irreps", "Irreducible representations of the voltage group");
    irreps->add_flag("--dump", flags.dump, "Print every representing matrix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        std::string text;
        int status = 0;
        if (spectrum->parsed()) text = cmd_spectrum(flags);
        else if (eigvecs->parsed()) text = cmd_eigvecs(flags);
        else if (lift->parsed()) text = cmd_lift(flags);
        else if (verify->parsed()) {
            bool ok = false;
            text = cmd_verify(flags, ok);
            status = ok ? 0 : 1;
        } else if (characters->parsed()) text = cmd_characters(flags);
        else if (irreps->parsed()) text = cmd_irreps(flags);
        out << text << std::flush;
        return status;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const ConsistencyError& e) {
        err << "inconsistent instance: " << e.what() << '\n';
        return kExitConsistency;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace liftspec
