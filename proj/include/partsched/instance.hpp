#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "partsched/rational.hpp"

namespace partsched {

using JobId = int;
using MachineId = int;
using ResourceId = int;

struct Job {
    JobId id = 0;
    Rational p{1};
    std::vector<ResourceId> resources;
    Rational weight{1};

    friend bool operator==(const Job&, const Job&) = default;
};

/// A scheduling problem on identical parallel machines where each job holds
/// its resources exclusively (up to the resource capacity) while it runs.
///
/// Job ids are their positions in `jobs`. Optional features:
///  - machine_subsets: resource -> machines that resource may be used on;
///  - unmovable: all jobs of one resource must share a single machine;
///  - capacities: per-resource capacity, empty means every capacity is 1;
///  - unrelated_times[i][j]: duration of job j on machine i, overriding p.
struct Instance {
    int machine_count = 1;
    int resource_count = 1;
    std::vector<Job> jobs;
    std::map<ResourceId, std::vector<MachineId>> machine_subsets;
    bool unmovable = false;
    std::vector<int> capacities;
    std::optional<std::vector<std::vector<Rational>>> unrelated_times;

    std::size_t job_count() const { return jobs.size(); }

    int capacity(ResourceId r) const;

    Rational duration(JobId job, MachineId machine) const;

    /// True if `machine` is allowed for every resource of `job`.
    bool machine_allowed(JobId job, MachineId machine) const;

    bool shares_resource(JobId a, JobId b) const;

    /// Exactly one resource per job, capacity 1 everywhere, no optional features.
    bool is_plain_partition() const;

    bool has_unit_times() const;

    friend bool operator==(const Instance&, const Instance&) = default;
};

struct ScheduleEntry {
    JobId job = 0;
    MachineId machine = 0;
    Rational start{0};

    friend bool operator==(const ScheduleEntry&, const ScheduleEntry&) = default;
};

/// Non-preemptive schedule. Builders emit entries sorted by job id; parsed
/// files may contain anything, which validate_schedule reports.
struct Schedule {
    std::vector<ScheduleEntry> entries;

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct Violation {
    enum class Kind {
        bad_machine_count,
        bad_resource_count,
        job_id_mismatch,
        non_positive_time,
        non_positive_weight,
        resource_out_of_range,
        duplicate_resource,
        empty_machine_subset,
        subset_key_out_of_range,
        subset_machine_out_of_range,
        bad_capacities,
        bad_unrelated_times,
        missing_job,
        duplicate_job,
        unknown_job,
        machine_out_of_range,
        negative_start,
        machine_overlap,
        resource_overlap,
        machine_subset_violation,
        unmovable_violation,
    };

    Kind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool has(Violation::Kind kind) const;
    std::string to_string() const;
};

ValidationReport validate_instance(const Instance& inst);

/// Checks completeness, machine double-booking, resource use above capacity,
/// machine subsets and unmovable resources. Assumes a well-formed instance.
ValidationReport validate_schedule(const Instance& inst, const Schedule& sched);

/// Weighted sum of completion times. Throws InfeasibleError("infeasible").
Rational objective(const Instance& inst, const Schedule& sched);

/// Per-job (machine, start, completion) view of a schedule whose entries cover
/// every job exactly once. Throws InfeasibleError otherwise.
struct JobTiming {
    MachineId machine = 0;
    Rational start{0};
    Rational completion{0};
};
std::vector<JobTiming> job_timings(const Instance& inst, const Schedule& sched);

/// Builds a schedule (sorted by job) from per-job timings.
Schedule make_schedule(const std::vector<JobTiming>& timings);

} // namespace partsched
