#include "partsched/bench.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "partsched/errors.hpp"
#include "partsched/flow.hpp"
#include "partsched/heuristics.hpp"
#include "partsched/oracle.hpp"

namespace partsched {

const std::vector<std::string>& bench_check_names()
{
    static const std::vector<std::string> names{"feasible", "spt_ratio",  "per_job",     "sum_k",
                                                "opt1_over_m", "flow_exact", "shrink_ratio"};
    return names;
}

namespace {

Check verdict(bool ok) { return ok ? Check::pass : Check::fail; }

int default_shrink_c(const Instance& inst)
{
    Rational longest{0};
    for (const Job& job : inst.jobs) longest = std::max(longest, job.p);
    const auto q = longest.numerator() / longest.denominator();
    return static_cast<int>(longest.denominator() == 1 ? q : q + 1);
}

Schedule run_algorithm(const std::string& name, const Instance& inst, int c)
{
    if (name == "spt-available") return spt_available(inst);
    if (name == "flow") return solve_unit(inst, false);
    if (name == "shrink") return shrink_solve(inst, c);
    throw PreconditionError("unknown algorithm '" + name + "'");
}

std::vector<BenchRow> bench_case(const BenchCase& bc, const BenchOptions& options)
{
    const Instance& inst = bc.gadget.instance;
    const int n = static_cast<int>(inst.jobs.size());
    const int m = inst.machine_count;

    std::optional<Rational> opt;
    std::string oracle_note;
    try {
        OracleLimits limits;
        limits.node_budget = options.oracle_budget;
        opt = brute_force_opt(inst, limits).optimum;
    } catch (const BudgetExceeded&) {
        oracle_note = "oracle budget exceeded";
    } catch (const Error& e) {
        oracle_note = std::string("oracle: ") + e.what();
    }

    std::optional<BoundReport> lb;
    bool partition = std::all_of(inst.jobs.begin(), inst.jobs.end(), [](const Job& j) { return j.resources.size() <= 1; });
    for (int r = 0; r < inst.resource_count; ++r) partition = partition && inst.capacity(r) == 1;
    if (partition) lb = bounds(inst);

    std::vector<BenchRow> rows;
    for (const auto& name : options.algorithms) {
        BenchRow row;
        row.instance_id = bc.id;
        row.kind = to_string(bc.gadget.kind);
        row.n = n;
        row.m = m;
        row.algorithm = name;
        row.oracle_optimum = opt;
        for (const auto& check : bench_check_names()) row.checks[check] = Check::na;
        row.note = oracle_note;

        if (lb && opt) {
            row.checks["sum_k"] = verdict(lb->sum_k <= *opt);
            row.checks["opt1_over_m"] = verdict(lb->opt1_over_m <= *opt);
        }

        const int c = options.shrink_c > 0 ? options.shrink_c : default_shrink_c(inst);
        std::optional<Schedule> sched;
        try {
            sched = run_algorithm(name, inst, c);
        } catch (const Error& e) {
            row.note += (row.note.empty() ? "" : "; ") + std::string(e.what());
        }
        if (sched) {
            const auto report = validate_schedule(inst, *sched);
            row.checks["feasible"] = verdict(report.ok());
            if (report.ok()) {
                row.objective = objective(inst, *sched);
                if (opt && *opt > 0) row.ratio = *row.objective / *opt;
                if (name == "spt-available") {
                    if (opt) row.checks["spt_ratio"] = verdict(*row.objective <= (2 - Rational(1, m)) * *opt);
                    if (lb) row.checks["per_job"] = verdict(per_job_bound_violations(inst, *sched, *lb).empty());
                } else if (name == "flow" && opt) {
                    row.checks["flow_exact"] = verdict(*row.objective == *opt);
                } else if (name == "shrink" && opt) {
                    row.checks["shrink_ratio"] = verdict(*row.objective <= c * *opt);
                }
            } else {
                row.note += (row.note.empty() ? "" : "; ") + report.to_string();
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string csv_field(const std::string& text)
{
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char ch : text) {
        if (ch == '"') out += '"';
        out += ch == '\n' ? ' ' : ch;
    }
    return out + "\"";
}

std::string cell(const std::optional<Rational>& value) { return value ? to_string(*value) : "NA"; }

} // namespace

std::vector<BenchRow> run_bench(std::vector<BenchCase> cases, const BenchOptions& options)
{
    std::stable_sort(cases.begin(), cases.end(), [](const BenchCase& a, const BenchCase& b) { return a.id < b.id; });
    std::vector<std::vector<BenchRow>> results(cases.size());

    const int workers = std::max(1, std::min<int>(options.workers, static_cast<int>(cases.size())));
    if (workers == 1) {
        for (std::size_t k = 0; k < cases.size(); ++k) results[k] = bench_case(cases[k], options);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w)
            threads.emplace_back([&] {
                for (std::size_t k = next++; k < cases.size(); k = next++) results[k] = bench_case(cases[k], options);
            });
        for (auto& t : threads) t.join();
    }

    std::vector<BenchRow> rows;
    for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
    return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows)
{
    out << "instance_id,kind,n,m,algorithm,objective,oracle_optimum,ratio";
    for (const auto& name : bench_check_names()) out << ',' << name;
    out << ",note\n";
    for (const auto& row : rows) {
        out << csv_field(row.instance_id) << ',' << row.kind << ',' << row.n << ',' << row.m << ',' << row.algorithm
            << ',' << cell(row.objective) << ',' << cell(row.oracle_optimum) << ',' << cell(row.ratio);
        for (const auto& name : bench_check_names()) {
            const auto it = row.checks.find(name);
            const Check c = it == row.checks.end() ? Check::na : it->second;
            out << ',' << (c == Check::pass ? "pass" : c == Check::fail ? "fail" : "NA");
        }
        out << ',' << (row.note.empty() ? "" : csv_field(row.note)) << '\n';
    }
}

bool all_checks_pass(const std::vector<BenchRow>& rows)
{
    for (const auto& row : rows)
        for (const auto& [name, c] : row.checks)
            if (c == Check::fail) return false;
    return true;
}

} // namespace partsched
