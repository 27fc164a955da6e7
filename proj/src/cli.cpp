#include "mrphase/cli.hpp"

#include <chrono>
#include <ostream>

#include "CLI11.hpp"
#include "mrphase/bipartizer.hpp"
#include "mrphase/dot_export.hpp"
#include "mrphase/errors.hpp"
#include "mrphase/instance_io.hpp"
#include "mrphase/mr_graph.hpp"
#include "mrphase/oracle.hpp"
#include "mrphase/report.hpp"
#include "mrphase/simulator.hpp"

namespace mrphase {

namespace {

struct SolveFlags {
    std::string input;
    std::size_t max_k = 8;
    bool json = false;
    bool no_prune = false;
    std::string out;
};

struct OracleFlags {
    std::string input;
    std::size_t het_budget = kDefaultHetBudget;
};

struct SimulateFlags {
    std::size_t individuals = 0;
    std::size_t sites = 0;
    std::size_t recombinations = 0;
    std::uint64_t seed = 0;
    std::size_t generations = 0;
    std::string out;
    std::string truth;
};

struct GraphFlags {
    std::string input;
    std::string dot;
};

Instance load(const std::string& path) { return parse_instance(read_file(path)); }

int run_solve(const SolveFlags& flags, std::ostream& out, std::ostream& err) {
    auto start = std::chrono::steady_clock::now();
    auto instance = load(flags.input);
    auto graph = build_mr_graph(instance.pedigree, instance.genotypes);
    SearchOptions options{flags.max_k, !flags.no_prune};
    auto solution = solve(graph, options);
    auto report = make_report(graph, solution, options);
    auto text = flags.json ? report_json(report) : report_text(report);
    if (flags.out.empty())
        out << text;
    else
        write_file(flags.out, text);
    std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;
    err << "wall_seconds " << wall.count() << '\n';
    return kExitOk;
}

int run_oracle(const OracleFlags& flags, std::ostream& out) {
    auto instance = load(flags.input);
    auto result = oracle_min_recombinations(instance.pedigree, instance.genotypes, flags.het_budget);
    out << oracle_text(instance.pedigree, result);
    return kExitOk;
}

int run_simulate(const SimulateFlags& flags, std::ostream& out) {
    SimulationSpec spec{flags.individuals, flags.sites, flags.recombinations, flags.generations, flags.seed};
    auto instance = simulate(spec);
    write_file(flags.out, serialize_instance(instance.pedigree, instance.genotypes));
    std::string truth = flags.truth.empty() ? flags.out + ".truth" : flags.truth;
    write_file(truth, serialize_truth(instance));
    out << "wrote " << flags.out << " and " << truth << '\n';
    return kExitOk;
}

int run_graph(const GraphFlags& flags, std::ostream& out) {
    auto instance = load(flags.input);
    auto graph = build_mr_graph(instance.pedigree, instance.genotypes);
    write_file(flags.dot, to_dot(graph));
    out << "wrote " << flags.dot << " (" << graph.vertex_count() << " vertices, " << graph.edges().size()
        << " edges)\n";
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minimum-recombination haplotype phasing on pedigrees"};
    app.require_subcommand(1);

    SolveFlags solve_flags;
    auto* solve_cmd = app.add_subcommand("solve", "Phase an instance with the fewest recombinations");
    solve_cmd->add_option("--input", solve_flags.input, "Instance file")->required();
    solve_cmd->add_option("--max-k", solve_flags.max_k, "Largest recombination count to search")->capture_default_str();
    solve_cmd->add_flag("--json", solve_flags.json, "Emit the structured report");
    solve_cmd->add_flag("--no-prune", solve_flags.no_prune, "Enumerate every subset without pruning");
    solve_cmd->add_option("--out", solve_flags.out, "Write the report here instead of standard output");

    OracleFlags oracle_flags;
    auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive reference minimum");
    oracle_cmd->add_option("--input", oracle_flags.input, "Instance file")->required();
    oracle_cmd->add_option("--het-budget", oracle_flags.het_budget, "Largest heterozygous entry count")
        ->capture_default_str();

    SimulateFlags sim_flags;
    auto* sim_cmd = app.add_subcommand("simulate", "Generate an instance with planted recombinations");
    sim_cmd->add_option("--individuals", sim_flags.individuals, "Number of individuals")->required();
    sim_cmd->add_option("--sites", sim_flags.sites, "Number of sites")->required();
    sim_cmd->add_option("--recombinations", sim_flags.recombinations, "Planted breakpoints")->required();
    sim_cmd->add_option("--seed", sim_flags.seed, "Random seed")->required();
    sim_cmd->add_option("--out", sim_flags.out, "Instance file to write")->required();
    sim_cmd->add_option("--generations", sim_flags.generations, "Generation count (default: 2 below 5 individuals, else 3)");
    sim_cmd->add_option("--truth", sim_flags.truth, "Truth sidecar path (default: OUT.truth)");

    GraphFlags graph_flags;
    auto* graph_cmd = app.add_subcommand("graph", "Export the graph in DOT format");
    graph_cmd->add_option("--input", graph_flags.input, "Instance file")->required();
    graph_cmd->add_option("--dot", graph_flags.dot, "DOT file to write")->required();

    std::vector<std::string> argv_storage{"mrphase"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitParse;
    }

    try {
        if (*solve_cmd) return run_solve(solve_flags, out, err);
        if (*oracle_cmd) return run_oracle(oracle_flags, out);
        if (*sim_cmd) return run_simulate(sim_flags, out);
        if (*graph_cmd) return run_graph(graph_flags, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const StructuralError& e) {
        err << "structural error: " << e.what() << '\n';
        return kExitParse;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const BoundExceeded& e) {
        err << "bound exceeded: " << e.what() << '\n';
        return kExitBound;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return kExitBound;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitParse;
    }
    return kExitParse;
}

}  // namespace mrphase
