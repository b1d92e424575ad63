#pragma once

#include <cstdint>
#include <vector>

#include "partsched/graph.hpp"
#include "partsched/instance.hpp"

namespace partsched {

enum class OracleStrategy {
    /// no_idle on identical machines without machine subsets, semi_active otherwise.
    automatic,
    /// Every machine runs its jobs back to back from time 0.
    no_idle,
    /// Every job starts as early as its machine and resources allow, given a
    /// placement order. Complete for unrelated times and machine subsets, where
    /// the no-idle class can miss the optimum. Needs unit capacities.
    semi_active,
};

struct OracleLimits {
    /// Maximum number of search nodes before BudgetExceeded is thrown.
    std::uint64_t node_budget = 10'000'000;
    /// Only keep one labelling of interchangeable machines.
    bool machine_symmetry = true;
    /// Only keep one ordering of interchangeable jobs (same durations, weight,
    /// allowed machines, and resources up to ones used by no other job). With
    /// unmovable resources this also fixes the order of equal-ratio jobs on a
    /// machine.
    bool job_symmetry = true;
    /// Threads sharing the search tree. Results do not depend on this.
    int workers = 1;
    OracleStrategy strategy = OracleStrategy::automatic;
};

struct OracleResult {
    Rational optimum{0};
    /// First optimal schedule in search order.
    Schedule witness;
    /// Number of optimal schedules (enumerate_optima only).
    std::uint64_t optima_count = 0;
    std::uint64_t nodes = 0;
};

/// Exact optimum by depth-first search with lower-bound pruning.
/// Throws BudgetExceeded (carrying the unpruned search-space size) and
/// ExhaustedError when the searched class contains no feasible schedule.
OracleResult brute_force_opt(const Instance& inst, const OracleLimits& limits = {});

/// All optimal schedules of the searched class, modulo the symmetries enabled
/// in `limits`.
std::vector<Schedule> enumerate_optima(const Instance& inst, const OracleLimits& limits = {});

/// Number of (machine assignment, per-machine order) pairs: n! * C(n+m-1, m-1).
double search_space_size(const Instance& inst);

/// Proper edge coloring with at most k colors, by backtracking.
bool edge_colorable(const Graph& g, int k);

/// Independent check for unit-time instances on identical machines (any
/// number of resources per job, any capacities): searches start slots
/// 0..n-1 per job directly, with no restriction to no-idle schedules.
Rational time_indexed_unit_opt(const Instance& inst, std::uint64_t node_budget = 10'000'000);

} // namespace partsched
