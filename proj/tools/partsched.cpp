// partsched: generate instances, run solvers, validate schedules, benchmark.
//
// Exit codes: 0 success, 1 infeasible schedule / failed check / solver error,
// 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "partsched/bench.hpp"
#include "partsched/errors.hpp"
#include "partsched/flow.hpp"
#include "partsched/heuristics.hpp"
#include "partsched/io.hpp"
#include "partsched/oracle.hpp"
#include "partsched/reductions.hpp"
#include "partsched/structure.hpp"

namespace fs = std::filesystem;
using namespace partsched;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<int> parse_int_list(const std::string& text)
{
    std::vector<int> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("not an integer list: '" + text + "'");
        }
    }
    return out;
}

Rational parse_rational_arg(const std::string& text)
{
    try {
        return parse_rational(text);
    } catch (const std::exception&) {
        throw UsageError("not a rational number: '" + text + "'");
    }
}

Graph parse_graph(int vertices, const std::string& edges)
{
    Graph g;
    g.vertex_count = vertices;
    std::stringstream in(edges);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto dash = item.find('-');
        if (dash == std::string::npos) throw UsageError("edges are written u-v, got '" + item + "'");
        const auto ends = parse_int_list(item.substr(0, dash) + "," + item.substr(dash + 1));
        g.edges.emplace_back(ends[0], ends[1]);
    }
    return g;
}

fs::path sibling(const fs::path& path, const std::string& suffix)
{
    auto stem = path.filename().string();
    if (stem.size() > 5 && stem.ends_with(".json")) stem.resize(stem.size() - 5);
    return path.parent_path() / (stem + suffix);
}

// ---- generate ----

struct GenerateArgs {
    std::string family;
    std::string eps = "1/100";
    int c = 2;
    int m = 2;
    int b = 4;
    std::string values;
    std::string edges;
    int vertices = 0;
    int n = 6;
    int resources = 3;
    int p_max = 4;
    int q = 1;
    std::uint64_t seed = 0;
    std::string unrelated;
    bool witness = false;
    std::string output;
};

GadgetInstance make_gadget(const GenerateArgs& a)
{
    if (a.family == "example41") return gen_example41(parse_rational_arg(a.eps));
    if (a.family == "lb") return gen_lb_family(a.c, parse_rational_arg(a.eps));
    if (a.family == "mr" || a.family == "unmovable") {
        ThreePartitionInput tp{a.m, a.b, parse_int_list(a.values)};
        if (a.family == "unmovable") return gen_unmovable_gadget(tp);
        std::optional<std::vector<std::vector<int>>> cert;
        if (a.witness) {
            cert = solve_three_partition(tp);
            if (!cert) throw PreconditionError("no 3-partition exists, so there is no yes-side witness");
        }
        auto g = gen_mr_gadget(tp, cert);
        if (!a.unrelated.empty()) {
            const Rational t = a.unrelated == "threshold" ? *g.threshold : parse_rational_arg(a.unrelated);
            g = map_to_unrelated(g, t);
        }
        return g;
    }
    if (a.family == "partition2") {
        int vertices = a.vertices;
        const Graph probe = parse_graph(1 << 20, a.edges);
        if (vertices == 0)
            for (const auto& [u, v] : probe.edges) vertices = std::max({vertices, u + 1, v + 1});
        return gen_partition2_gadget(parse_graph(vertices, a.edges));
    }
    if (a.family == "random") {
        RandomSpec spec;
        spec.machines = a.m;
        spec.jobs = a.n;
        spec.resources = a.resources;
        spec.p_max = a.p_max;
        spec.q = a.q;
        spec.seed = a.seed;
        return gen_random(spec);
    }
    throw UsageError("unknown family '" + a.family + "'");
}

int cmd_generate(const GenerateArgs& a)
{
    const auto g = make_gadget(a);
    const Json doc = instance_to_json(g.instance);
    if (a.output.empty()) {
        std::cout << doc.dump(2) << '\n';
        return 0;
    }
    const fs::path out = a.output;
    write_json(out, doc);
    write_json(sibling(out, ".meta.json"), gadget_metadata_to_json(g));
    if (g.witness) write_json(sibling(out, ".witness.json"), schedule_to_json(*g.witness));
    std::cout << "wrote " << out.string() << " (" << g.instance.jobs.size() << " jobs, "
              << g.instance.resource_count << " resources, " << g.instance.machine_count << " machines";
    if (g.threshold) std::cout << ", threshold " << to_string(*g.threshold);
    std::cout << ")\n";
    return 0;
}

// ---- solve ----

struct SolveArgs {
    std::string algorithm;
    std::string instance;
    std::string output;
    int c = 0;
    std::uint64_t budget = 10'000'000;
    int workers = 1;
    std::string dump_network;
    bool weighted = false;
    bool compact = false;
};

int cmd_solve(const SolveArgs& a)
{
    const Instance inst = read_instance(a.instance);
    const auto check = validate_instance(inst);
    if (!check.ok()) throw PreconditionError("instance is not well-formed: " + check.to_string());

    Schedule sched;
    if (a.algorithm == "spt-available") {
        sched = spt_available(inst);
    } else if (a.algorithm == "flow") {
        const auto net = build_network(inst, a.weighted);
        if (!a.dump_network.empty()) {
            std::ofstream out(a.dump_network, std::ios::binary | std::ios::trunc);
            if (!out) throw Error("cannot write " + a.dump_network);
            dump_network(out, net);
        }
        sched = decode(net, min_cost_flow(net));
        if (a.compact) sched = normalize_tight(inst, sched);
    } else if (a.algorithm == "shrink") {
        if (a.c < 1) throw UsageError("shrink requires --c");
        sched = shrink_solve(inst, a.c, ShrinkOptions{a.compact});
    } else if (a.algorithm == "oracle") {
        OracleLimits limits;
        limits.node_budget = a.budget;
        limits.workers = a.workers;
        sched = brute_force_opt(inst, limits).witness;
    } else {
        throw UsageError("unknown algorithm '" + a.algorithm + "'");
    }

    if (!a.output.empty()) write_json(a.output, schedule_to_json(sched));
    std::cout << "objective " << to_string(objective(inst, sched)) << '\n';
    return 0;
}

// ---- validate ----

int cmd_validate(const std::string& instance_path, const std::string& schedule_path, const std::string& normalize_out)
{
    const Instance inst = read_instance(instance_path);
    const auto inst_report = validate_instance(inst);
    if (!inst_report.ok()) throw PreconditionError("instance is not well-formed: " + inst_report.to_string());
    const Schedule sched = read_schedule(schedule_path);
    const auto report = validate_schedule(inst, sched);
    if (!report.ok()) {
        std::cout << "infeasible\n" << report.to_string();
        return 1;
    }

    std::cout << "feasible\nobjective " << to_string(objective(inst, sched)) << "\n\nslack\n";
    for (const auto& s : slack_table(inst, sched))
        std::cout << "  job " << s.job << "  d+ " << to_string(s.d_plus) << "  d- " << to_string(s.d_minus)
                  << "  slack " << to_string(s.slack) << '\n';
    std::cout << "blocking pairs\n";
    for (const auto& bp : blocking_pairs(inst, sched))
        std::cout << "  " << bp.first << " -> " << bp.second << (bp.tight ? "  tight" : "") << '\n';
    std::cout << "trains\n";
    for (const auto& tr : train_sequences(inst, sched)) {
        std::cout << "  machine " << tr.machine << "  resource " << tr.resource << "  [" << to_string(tr.start) << ", "
                  << to_string(tr.end) << ")  jobs";
        for (JobId j : tr.jobs) std::cout << ' ' << j;
        std::cout << '\n';
    }
    std::cout << "idle time " << (has_idle_time(inst, sched) ? "yes" : "no") << '\n';
    std::cout << "tight " << (is_tight(inst, sched) ? "yes" : "no") << '\n';
    std::cout << "spt order " << (check_spt_order(inst, sched) ? "yes" : "no") << '\n';

    if (!normalize_out.empty()) {
        const Schedule norm = normalize_tight(inst, sched);
        write_json(normalize_out, schedule_to_json(norm));
        std::cout << "normalized objective " << to_string(objective(inst, norm)) << '\n';
    }
    return 0;
}

// ---- bench ----

struct BenchArgs {
    std::string dir;
    std::string family;
    int seeds = 100;
    std::uint64_t seed = 0;
    int n = 6;
    int m = 2;
    int resources = 3;
    int p_max = 4;
    int q = 1;
    std::string c = "2,4";
    std::string eps = "1/100";
    std::string algorithms = "spt-available,flow,shrink";
    std::uint64_t budget = 10'000'000;
    int shrink_c = 0;
    int workers = 1;
    std::string output;
};

std::string padded(std::uint64_t value)
{
    std::string s = std::to_string(value);
    return std::string(s.size() < 6 ? 6 - s.size() : 0, '0') + s;
}

std::vector<BenchCase> bench_cases(const BenchArgs& a)
{
    std::vector<BenchCase> cases;
    if (!a.dir.empty()) {
        if (!fs::is_directory(a.dir)) throw UsageError("not a directory: " + a.dir);
        for (const auto& entry : fs::directory_iterator(a.dir)) {
            const auto name = entry.path().filename().string();
            if (!name.ends_with(".json") || name.ends_with(".meta.json") || name.ends_with(".witness.json")) continue;
            BenchCase bc;
            bc.id = name.substr(0, name.size() - 5);
            bc.gadget.instance = read_instance(entry.path());
            const auto meta = sibling(entry.path(), ".meta.json");
            bc.gadget.kind = GadgetKind::random;
            if (fs::exists(meta)) {
                const auto doc = read_json(meta);
                const auto kind = doc.value("kind", std::string("random"));
                for (auto k : {GadgetKind::example41, GadgetKind::lb_family, GadgetKind::mr_3partition,
                               GadgetKind::unmovable_3partition, GadgetKind::partition2_edgecoloring,
                               GadgetKind::unrelated_mapped, GadgetKind::random})
                    if (to_string(k) == kind) bc.gadget.kind = k;
            }
            cases.push_back(std::move(bc));
        }
        return cases;
    }
    if (a.family == "random" || a.family == "unit") {
        for (int k = 0; k < a.seeds; ++k) {
            RandomSpec spec;
            spec.machines = a.m;
            spec.jobs = a.n;
            spec.resources = a.resources;
            spec.p_max = a.family == "unit" ? 1 : a.p_max;
            spec.q = a.q;
            spec.seed = a.seed + static_cast<std::uint64_t>(k);
            cases.push_back({a.family + "-" + padded(spec.seed), gen_random(spec)});
        }
    } else if (a.family == "lb") {
        for (int c : parse_int_list(a.c))
            cases.push_back({"lb-c" + padded(static_cast<std::uint64_t>(c)), gen_lb_family(c, parse_rational_arg(a.eps))});
    } else if (a.family == "example41") {
        cases.push_back({"example41", gen_example41(parse_rational_arg(a.eps))});
    } else {
        throw UsageError("bench needs --dir or --family {random,unit,lb,example41}");
    }
    return cases;
}

int cmd_bench(const BenchArgs& a)
{
    BenchOptions options;
    options.algorithms.clear();
    std::stringstream in(a.algorithms);
    for (std::string item; std::getline(in, item, ',');) {
        if (item != "spt-available" && item != "flow" && item != "shrink")
            throw UsageError("unknown bench algorithm '" + item + "'");
        options.algorithms.push_back(item);
    }
    options.oracle_budget = a.budget;
    options.shrink_c = a.shrink_c;
    options.workers = a.workers;

    const auto rows = run_bench(bench_cases(a), options);
    if (a.output.empty()) {
        write_csv(std::cout, rows);
    } else {
        std::ofstream out(a.output, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + a.output);
        write_csv(out, rows);
    }
    const bool ok = all_checks_pass(rows);
    if (!ok) std::cerr << "bench: at least one bound check failed\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Scheduling with exclusive resources: solvers, gadgets and bound checks"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "Write an instance of a family");
    g->add_option("--family", gen.family, "example41, lb, mr, unmovable, partition2 or random")->required();
    g->add_option("--eps", gen.eps, "epsilon for example41 and lb (rational)");
    g->add_option("--c", gen.c, "even c for lb");
    g->add_option("--m", gen.m, "machines (random) or triple count (mr, unmovable)");
    g->add_option("--b", gen.b, "target sum for mr and unmovable");
    g->add_option("--values", gen.values, "comma-separated 3-PARTITION values");
    g->add_option("--edges", gen.edges, "comma-separated u-v pairs for partition2");
    g->add_option("--vertices", gen.vertices, "vertex count for partition2 (default: from edges)");
    g->add_option("--n", gen.n, "jobs (random)");
    g->add_option("--resources", gen.resources, "resources (random)");
    g->add_option("--p-max", gen.p_max, "largest processing time (random)");
    g->add_option("--q", gen.q, "resources per job, 1 or 2 (random)");
    g->add_option("--seed", gen.seed, "seed (random)");
    g->add_option("--unrelated", gen.unrelated, "mr only: map to unrelated times with this forbidden time, or 'threshold'");
    g->add_flag("--witness", gen.witness, "mr only: solve the 3-PARTITION input and write the yes-side schedule");
    g->add_option("-o,--output", gen.output, "instance file; sidecars <stem>.meta.json and <stem>.witness.json");

    SolveArgs sol;
    auto* s = app.add_subcommand("solve", "Solve an instance and print the objective");
    s->add_option("-a,--algorithm", sol.algorithm, "spt-available, flow, shrink or oracle")
        ->required()
        ->check(CLI::IsMember({"spt-available", "flow", "shrink", "oracle"}));
    s->add_option("instance", sol.instance, "instance file")->required();
    s->add_option("-o,--output", sol.output, "schedule file");
    s->add_option("--c", sol.c, "shrink: processing-time bound c");
    s->add_option("--budget", sol.budget, "oracle: node budget");
    s->add_option("--workers", sol.workers, "oracle: threads");
    s->add_option("--dump-network", sol.dump_network, "flow: write the network arc list here");
    s->add_flag("--weighted", sol.weighted, "flow: minimise the weighted sum");
    s->add_flag("--compact", sol.compact, "flow, shrink: remove idle time afterwards");

    std::string v_instance;
    std::string v_schedule;
    std::string v_normalize;
    auto* v = app.add_subcommand("validate", "Check a schedule and print its structure");
    v->add_option("instance", v_instance, "instance file")->required();
    v->add_option("schedule", v_schedule, "schedule file")->required();
    v->add_option("--normalize", v_normalize, "write the normalized tight schedule here");

    BenchArgs ben;
    auto* bn = app.add_subcommand("bench", "Run algorithms against the oracle and write CSV");
    bn->add_option("--dir", ben.dir, "directory of instance files");
    bn->add_option("--family", ben.family, "random, unit, lb or example41");
    bn->add_option("--seeds", ben.seeds, "number of seeds (random, unit)");
    bn->add_option("--seed", ben.seed, "first seed");
    bn->add_option("--n", ben.n, "jobs");
    bn->add_option("--m", ben.m, "machines");
    bn->add_option("--resources", ben.resources, "resources");
    bn->add_option("--p-max", ben.p_max, "largest processing time");
    bn->add_option("--q", ben.q, "resources per job");
    bn->add_option("--c", ben.c, "comma-separated c values (lb)");
    bn->add_option("--eps", ben.eps, "epsilon (lb, example41)");
    bn->add_option("--algorithms", ben.algorithms, "comma-separated subset of spt-available,flow,shrink");
    bn->add_option("--budget", ben.budget, "oracle node budget per instance");
    bn->add_option("--shrink-c", ben.shrink_c, "c for shrink (default: ceil of the largest p)");
    bn->add_option("--workers", ben.workers, "instances solved in parallel");
    bn->add_option("-o,--output", ben.output, "CSV file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*g) return cmd_generate(gen);
        if (*s) return cmd_solve(sol);
        if (*v) return cmd_validate(v_instance, v_schedule, v_normalize);
        if (*bn) return cmd_bench(ben);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
