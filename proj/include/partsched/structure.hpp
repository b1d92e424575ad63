#pragma once

#include <vector>

#include "partsched/instance.hpp"

namespace partsched {

// Structural primitives on feasible schedules. Two jobs are "same-resource"
// when their resource sets intersect.

struct SlackReport {
    JobId job = 0;
    ExtendedTime d_plus;  // gap until the next same-resource job starts
    ExtendedTime d_minus; // gap since the previous same-resource job ended
    ExtendedTime slack;   // min(d_plus, d_minus)
};

SlackReport slack(const Instance& inst, const Schedule& sched, JobId job);

std::vector<SlackReport> slack_table(const Instance& inst, const Schedule& sched);

struct BlockingPair {
    JobId first = 0;
    JobId second = 0;
    bool tight = false;

    friend bool operator==(const BlockingPair&, const BlockingPair&) = default;
};

/// One pair per job that has a same-resource job completing after it; the
/// partner is the earliest-starting such job (ties: smallest id).
std::vector<BlockingPair> blocking_pairs(const Instance& inst, const Schedule& sched);

/// Jobs on `job`'s machine completing no earlier than it, excluding itself.
std::vector<JobId> suffix(const Instance& inst, const Schedule& sched, JobId job);

/// Swaps machine suffixes at a tight cross-machine pair: `second` and its
/// suffix move to `first`'s machine, `first`'s suffix moves the other way.
/// Times are untouched. Throws PreconditionError("not untangleable").
Schedule untangle(const Instance& inst, const Schedule& sched, const BlockingPair& pair);

/// Untangles every tight cross-machine pair and left-shifts jobs into idle
/// gaps until nothing changes. The result never has a larger objective; on
/// plain partition instances it is idle-free and tight.
Schedule normalize_tight(const Instance& inst, const Schedule& sched);

/// True if some machine is idle before one of its jobs.
bool has_idle_time(const Instance& inst, const Schedule& sched);

/// Idle-free and every tight blocking pair shares a machine.
bool is_tight(const Instance& inst, const Schedule& sched);

struct TrainSequence {
    MachineId machine = 0;
    ResourceId resource = 0;
    std::vector<JobId> jobs;
    Rational start{0};
    Rational end{0};

    friend bool operator==(const TrainSequence&, const TrainSequence&) = default;
};

/// Maximal back-to-back runs of jobs on one machine with a common resource.
/// Jobs without resources are not part of any train.
std::vector<TrainSequence> train_sequences(const Instance& inst, const Schedule& sched);

/// Same-resource jobs with strictly smaller processing time complete strictly earlier.
bool check_spt_order(const Instance& inst, const Schedule& sched);

} // namespace partsched
