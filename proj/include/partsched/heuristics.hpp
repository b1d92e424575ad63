#pragma once

#include <vector>

#include "partsched/instance.hpp"

namespace partsched {

/// SPT-available list rule. Jobs are listed by (p, id). Whenever machines are
/// free at time t, the first eligible jobs of the list (resource idle at t,
/// at most one per resource) are started, one per free machine. A job whose
/// resource was released exactly at t goes to the machine that released it;
/// the remaining jobs take the free machines in ascending index order.
/// Idle machines re-scan the list at every completion event.
///
/// Requires a plain partition instance (one resource per job, capacity 1, no
/// machine subsets, unmovable flag or unrelated times); throws
/// PreconditionError otherwise.
Schedule spt_available(const Instance& inst);

struct ShrinkOptions {
    /// Apply normalize_tight to the stretched schedule.
    bool compact = false;
};

/// Shrinking algorithm for 1 <= p_j <= c: solve the unit-time shadow instance
/// exactly with the flow model and start each job at c times its shadow start.
Schedule shrink_solve(const Instance& inst, int c, ShrinkOptions options = {});

/// Lower-bound quantities for one-resource-per-job instances.
struct BoundReport {
    /// p_j plus the processing times of same-resource jobs before j in (p, id) order.
    std::vector<Rational> per_job_k;
    Rational sum_k{0};
    /// Completion times of the single-machine SPT schedule (order (p, id)).
    std::vector<Rational> c1;
    Rational opt1{0};
    Rational opt1_over_m{0};
};

BoundReport bounds(const Instance& inst);

/// Per job: C_j <= (1 - 1/m) k_j + (1/m) C1_j. Returns the jobs violating it.
std::vector<JobId> per_job_bound_violations(const Instance& inst, const Schedule& sched, const BoundReport& b);

} // namespace partsched
