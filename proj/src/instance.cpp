#include "partsched/instance.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "partsched/errors.hpp"

namespace partsched {

int Instance::capacity(ResourceId r) const
{
    if (capacities.empty()) return 1;
    return capacities.at(static_cast<std::size_t>(r));
}

Rational Instance::duration(JobId job, MachineId machine) const
{
    if (unrelated_times)
        return (*unrelated_times).at(static_cast<std::size_t>(machine)).at(static_cast<std::size_t>(job));
    return jobs.at(static_cast<std::size_t>(job)).p;
}

bool Instance::machine_allowed(JobId job, MachineId machine) const
{
    if (machine < 0 || machine >= machine_count) return false;
    for (ResourceId r : jobs[static_cast<std::size_t>(job)].resources) {
        auto it = machine_subsets.find(r);
        if (it == machine_subsets.end()) continue;
        if (std::find(it->second.begin(), it->second.end(), machine) == it->second.end()) return false;
    }
    return true;
}

bool Instance::shares_resource(JobId a, JobId b) const
{
    const auto& ra = jobs[static_cast<std::size_t>(a)].resources;
    const auto& rb = jobs[static_cast<std::size_t>(b)].resources;
    for (ResourceId r : ra)
        if (std::find(rb.begin(), rb.end(), r) != rb.end()) return true;
    return false;
}

bool Instance::is_plain_partition() const
{
    if (!machine_subsets.empty() || unmovable || unrelated_times) return false;
    if (std::any_of(capacities.begin(), capacities.end(), [](int c) { return c != 1; })) return false;
    return std::all_of(jobs.begin(), jobs.end(), [](const Job& j) { return j.resources.size() == 1; });
}

bool Instance::has_unit_times() const
{
    if (unrelated_times) return false;
    return std::all_of(jobs.begin(), jobs.end(), [](const Job& j) { return j.p == 1; });
}

bool ValidationReport::has(Violation::Kind kind) const
{
    return std::any_of(violations.begin(), violations.end(),
                       [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::to_string() const
{
    if (violations.empty()) return "ok\n";
    std::string out;
    for (const auto& v : violations) out += v.message + "\n";
    return out;
}

ValidationReport validate_instance(const Instance& inst)
{
    ValidationReport report;
    auto add = [&](Violation::Kind kind, std::string msg) { report.violations.push_back({kind, std::move(msg)}); };
    using K = Violation::Kind;

    if (inst.machine_count < 1) add(K::bad_machine_count, "machine count must be positive");
    if (inst.resource_count < 1) add(K::bad_resource_count, "resource count must be positive");

    for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
        const Job& job = inst.jobs[j];
        const std::string tag = "job " + std::to_string(j);
        if (job.id != static_cast<JobId>(j))
            add(K::job_id_mismatch, tag + ": id " + std::to_string(job.id) + " does not match its position");
        if (job.p <= 0) add(K::non_positive_time, tag + ": processing time must be positive");
        if (job.weight <= 0) add(K::non_positive_weight, tag + ": weight must be positive");
        std::set<ResourceId> seen;
        for (ResourceId r : job.resources) {
            if (r < 0 || r >= inst.resource_count)
                add(K::resource_out_of_range, tag + ": resource id out of range (" + std::to_string(r) + ")");
            if (!seen.insert(r).second)
                add(K::duplicate_resource, tag + ": resource " + std::to_string(r) + " listed twice");
        }
    }

    for (const auto& [r, machines] : inst.machine_subsets) {
        if (r < 0 || r >= inst.resource_count)
            add(K::subset_key_out_of_range, "machine subset for unknown resource " + std::to_string(r));
        if (machines.empty()) add(K::empty_machine_subset, "empty machine subset for resource " + std::to_string(r));
        for (MachineId i : machines)
            if (i < 0 || i >= inst.machine_count)
                add(K::subset_machine_out_of_range,
                    "machine subset of resource " + std::to_string(r) + " names machine " + std::to_string(i));
    }

    if (!inst.capacities.empty()) {
        if (inst.capacities.size() != static_cast<std::size_t>(std::max(inst.resource_count, 0)))
            add(K::bad_capacities, "capacities must list one value per resource");
        if (std::any_of(inst.capacities.begin(), inst.capacities.end(), [](int c) { return c < 1; }))
            add(K::bad_capacities, "capacities must be positive");
    }

    if (inst.unrelated_times) {
        const auto& times = *inst.unrelated_times;
        bool shape_ok = times.size() == static_cast<std::size_t>(std::max(inst.machine_count, 0));
        for (const auto& row : times) shape_ok = shape_ok && row.size() == inst.jobs.size();
        if (!shape_ok) add(K::bad_unrelated_times, "unrelated times must be a machines x jobs matrix");
        for (const auto& row : times)
            if (std::any_of(row.begin(), row.end(), [](const Rational& x) { return x <= 0; })) {
                add(K::bad_unrelated_times, "unrelated times must be positive");
                break;
            }
    }
    return report;
}

namespace {

std::string interval_text(const Rational& a, const Rational& b)
{
    return "t∈[" + to_string(a) + "," + to_string(b) + ")";
}

struct Usage {
    Rational start;
    Rational end;
};

// Returns the maximal intervals during which more than `capacity` of `uses`
// are active. Half-open intervals: an end and a start at the same instant do
// not overlap.
std::vector<Usage> over_capacity(std::vector<Usage> uses, int capacity)
{
    std::vector<std::pair<Rational, int>> events;
    events.reserve(uses.size() * 2);
    for (const auto& u : uses) {
        events.emplace_back(u.start, +1);
        events.emplace_back(u.end, -1);
    }
    std::sort(events.begin(), events.end());

    std::vector<Usage> out;
    int active = 0;
    for (std::size_t k = 0; k < events.size();) {
        const Rational t = events[k].first;
        while (k < events.size() && events[k].first == t) active += events[k++].second;
        if (active > capacity && k < events.size()) {
            const Rational next = events[k].first;
            if (!out.empty() && out.back().end == t)
                out.back().end = next;
            else
                out.push_back({t, next});
        }
    }
    return out;
}

} // namespace

ValidationReport validate_schedule(const Instance& inst, const Schedule& sched)
{
    ValidationReport report;
    auto add = [&](Violation::Kind kind, std::string msg) { report.violations.push_back({kind, std::move(msg)}); };
    using K = Violation::Kind;

    const std::size_t n = inst.jobs.size();
    std::vector<const ScheduleEntry*> first(n, nullptr);
    for (const auto& e : sched.entries) {
        if (e.job < 0 || static_cast<std::size_t>(e.job) >= n) {
            add(K::unknown_job, "unknown job " + std::to_string(e.job));
            continue;
        }
        if (first[static_cast<std::size_t>(e.job)]) {
            add(K::duplicate_job, "job " + std::to_string(e.job) + " scheduled more than once");
            continue;
        }
        if (e.machine < 0 || e.machine >= inst.machine_count) {
            add(K::machine_out_of_range, "job " + std::to_string(e.job) + " on unknown machine " +
                                             std::to_string(e.machine));
            continue;
        }
        if (e.start < 0) add(K::negative_start, "job " + std::to_string(e.job) + " starts before 0");
        first[static_cast<std::size_t>(e.job)] = &e;
    }
    for (std::size_t j = 0; j < n; ++j) {
        bool listed = first[j] != nullptr;
        if (!listed) {
            listed = std::any_of(sched.entries.begin(), sched.entries.end(),
                                 [&](const ScheduleEntry& e) { return e.job == static_cast<JobId>(j); });
        }
        if (!listed) add(K::missing_job, "job " + std::to_string(j) + " is not scheduled");
    }

    std::vector<std::vector<Usage>> per_machine(static_cast<std::size_t>(inst.machine_count));
    std::vector<std::vector<Usage>> per_resource(static_cast<std::size_t>(inst.resource_count));
    std::vector<std::set<MachineId>> resource_machines(static_cast<std::size_t>(inst.resource_count));
    for (std::size_t j = 0; j < n; ++j) {
        const ScheduleEntry* e = first[j];
        if (!e) continue;
        const JobId job = static_cast<JobId>(j);
        const Usage use{e->start, e->start + inst.duration(job, e->machine)};
        per_machine[static_cast<std::size_t>(e->machine)].push_back(use);
        for (ResourceId r : inst.jobs[j].resources) {
            per_resource[static_cast<std::size_t>(r)].push_back(use);
            resource_machines[static_cast<std::size_t>(r)].insert(e->machine);
        }
        if (!inst.machine_allowed(job, e->machine))
            add(K::machine_subset_violation,
                "job " + std::to_string(j) + " runs on machine " + std::to_string(e->machine) +
                    " outside its resource's machine subset");
    }

    for (std::size_t i = 0; i < per_machine.size(); ++i)
        for (const auto& u : over_capacity(per_machine[i], 1))
            add(K::machine_overlap, "machine overlap at " + interval_text(u.start, u.end) + " on machine " +
                                        std::to_string(i));

    for (std::size_t r = 0; r < per_resource.size(); ++r)
        for (const auto& u : over_capacity(per_resource[r], inst.capacity(static_cast<ResourceId>(r))))
            add(K::resource_overlap, "resource overlap at " + interval_text(u.start, u.end) + " on resource " +
                                         std::to_string(r));

    if (inst.unmovable)
        for (std::size_t r = 0; r < resource_machines.size(); ++r)
            if (resource_machines[r].size() > 1)
                add(K::unmovable_violation, "unmovable resource " + std::to_string(r) + " used on " +
                                                std::to_string(resource_machines[r].size()) + " machines");
    return report;
}

std::vector<JobTiming> job_timings(const Instance& inst, const Schedule& sched)
{
    const std::size_t n = inst.jobs.size();
    std::vector<JobTiming> out(n);
    std::vector<bool> seen(n, false);
    for (const auto& e : sched.entries) {
        if (e.job < 0 || static_cast<std::size_t>(e.job) >= n || seen[static_cast<std::size_t>(e.job)] ||
            e.machine < 0 || e.machine >= inst.machine_count)
            throw InfeasibleError("infeasible: malformed schedule entry for job " + std::to_string(e.job));
        seen[static_cast<std::size_t>(e.job)] = true;
        out[static_cast<std::size_t>(e.job)] = {e.machine, e.start, e.start + inst.duration(e.job, e.machine)};
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw InfeasibleError("infeasible: schedule does not cover every job");
    return out;
}

Schedule make_schedule(const std::vector<JobTiming>& timings)
{
    Schedule s;
    s.entries.reserve(timings.size());
    for (std::size_t j = 0; j < timings.size(); ++j)
        s.entries.push_back({static_cast<JobId>(j), timings[j].machine, timings[j].start});
    return s;
}

Rational objective(const Instance& inst, const Schedule& sched)
{
    const auto report = validate_schedule(inst, sched);
    if (!report.ok()) throw InfeasibleError("infeasible: " + report.violations.front().message);
    Rational total{0};
    for (const auto& e : sched.entries)
        total += inst.jobs[static_cast<std::size_t>(e.job)].weight * (e.start + inst.duration(e.job, e.machine));
    return total;
}

} // namespace partsched
