#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "partsched/reductions.hpp"

namespace partsched {

struct BenchCase {
    std::string id;
    GadgetInstance gadget;
};

struct BenchOptions {
    /// Any of "spt-available", "flow", "shrink".
    std::vector<std::string> algorithms{"spt-available", "flow", "shrink"};
    std::uint64_t oracle_budget = 10'000'000;
    /// 0 = ceil(max p_j) of each instance.
    int shrink_c = 0;
    int workers = 1;
};

enum class Check { pass, fail, na };

struct BenchRow {
    std::string instance_id;
    std::string kind;
    int n = 0;
    int m = 0;
    std::string algorithm;
    std::optional<Rational> objective;
    std::optional<Rational> oracle_optimum;
    std::optional<Rational> ratio;
    std::map<std::string, Check> checks;
    std::string note;
};

/// Check columns, in CSV order.
const std::vector<std::string>& bench_check_names();

/// One row per (case, algorithm), sorted by instance id then algorithm order.
std::vector<BenchRow> run_bench(std::vector<BenchCase> cases, const BenchOptions& options);

/// Header: instance_id,kind,n,m,algorithm,objective,oracle_optimum,ratio,
/// then the check columns, then note. Missing values are written as NA.
void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

bool all_checks_pass(const std::vector<BenchRow>& rows);

} // namespace partsched
