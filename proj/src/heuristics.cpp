#include "partsched/heuristics.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "partsched/errors.hpp"
#include "partsched/flow.hpp"
#include "partsched/structure.hpp"

namespace partsched {

namespace {

std::vector<JobId> spt_list(const Instance& inst)
{
    std::vector<JobId> order(inst.jobs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](JobId a, JobId b) {
        return inst.jobs[static_cast<std::size_t>(a)].p < inst.jobs[static_cast<std::size_t>(b)].p;
    });
    return order;
}

} // namespace

Schedule spt_available(const Instance& inst)
{
    if (!validate_instance(inst).ok()) throw PreconditionError("instance is not well-formed");
    if (!inst.is_plain_partition()) throw PreconditionError("spt-available requires plain partition instances");

    const auto m = static_cast<std::size_t>(inst.machine_count);
    const auto res_count = static_cast<std::size_t>(inst.resource_count);
    std::vector<Rational> free_at(m, Rational{0});
    std::vector<Rational> busy_until(res_count, Rational{0});
    std::vector<int> last_machine(res_count, -1);
    std::vector<JobTiming> timing(inst.jobs.size());

    auto list = spt_list(inst);
    Rational t{0};
    while (!list.empty()) {
        std::vector<MachineId> available;
        for (std::size_t i = 0; i < m; ++i)
            if (free_at[i] <= t) available.push_back(static_cast<MachineId>(i));

        std::vector<JobId> picked;
        std::vector<bool> taken_resource(res_count, false);
        for (JobId j : list) {
            if (picked.size() == available.size()) break;
            const auto r = static_cast<std::size_t>(inst.jobs[static_cast<std::size_t>(j)].resources.front());
            if (busy_until[r] > t || taken_resource[r]) continue;
            taken_resource[r] = true;
            picked.push_back(j);
        }

        std::vector<std::optional<MachineId>> target(picked.size());
        std::vector<bool> machine_used(m, false);
        for (std::size_t k = 0; k < picked.size(); ++k) {
            const auto r = static_cast<std::size_t>(inst.jobs[static_cast<std::size_t>(picked[k])].resources.front());
            const int prev = last_machine[r];
            if (prev >= 0 && busy_until[r] == t && free_at[static_cast<std::size_t>(prev)] <= t) {
                target[k] = prev;
                machine_used[static_cast<std::size_t>(prev)] = true;
            }
        }
        auto next_free = available.begin();
        for (std::size_t k = 0; k < picked.size(); ++k) {
            if (target[k]) continue;
            while (machine_used[static_cast<std::size_t>(*next_free)]) ++next_free;
            target[k] = *next_free;
            machine_used[static_cast<std::size_t>(*next_free)] = true;
        }

        for (std::size_t k = 0; k < picked.size(); ++k) {
            const auto j = static_cast<std::size_t>(picked[k]);
            const auto i = static_cast<std::size_t>(*target[k]);
            const auto r = static_cast<std::size_t>(inst.jobs[j].resources.front());
            const Rational end = t + inst.jobs[j].p;
            timing[j] = {*target[k], t, end};
            free_at[i] = end;
            busy_until[r] = end;
            last_machine[r] = *target[k];
            list.erase(std::find(list.begin(), list.end(), picked[k]));
        }

        std::optional<Rational> next;
        for (const auto& f : free_at)
            if (f > t && (!next || f < *next)) next = f;
        if (!next) break; // only reachable with an empty list
        t = *next;
    }
    return make_schedule(timing);
}

Schedule shrink_solve(const Instance& inst, int c, ShrinkOptions options)
{
    if (c < 1) throw PreconditionError("shrink requires c >= 1");
    if (!validate_instance(inst).ok()) throw PreconditionError("instance is not well-formed");
    if (!inst.is_plain_partition())
        throw PreconditionError("shrink requires one resource per job, unit capacities and no optional features");
    for (const Job& job : inst.jobs)
        if (job.p < 1 || job.p > c)
            throw PreconditionError("shrink requires 1 <= p_j <= c; job " + std::to_string(job.id) + " has p = " +
                                    to_string(job.p));

    Instance shadow = inst;
    for (Job& job : shadow.jobs) {
        job.p = 1;
        job.weight = 1;
    }
    const Schedule unit = solve_unit(shadow, false);

    Schedule out = unit;
    for (auto& e : out.entries) e.start *= c;
    if (options.compact) out = normalize_tight(inst, out);
    return out;
}

BoundReport bounds(const Instance& inst)
{
    for (const Job& job : inst.jobs)
        if (job.resources.size() > 1) throw PreconditionError("bounds require at most one resource per job");

    const std::size_t n = inst.jobs.size();
    BoundReport rep;
    rep.per_job_k.assign(n, Rational{0});
    rep.c1.assign(n, Rational{0});

    const auto order = spt_list(inst);
    Rational elapsed{0};
    for (JobId j : order) {
        const auto& job = inst.jobs[static_cast<std::size_t>(j)];
        elapsed += job.p;
        rep.c1[static_cast<std::size_t>(j)] = elapsed;
    }
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const auto j = static_cast<std::size_t>(order[pos]);
        Rational k = inst.jobs[j].p;
        if (!inst.jobs[j].resources.empty())
            for (std::size_t before = 0; before < pos; ++before)
                if (inst.shares_resource(order[before], static_cast<JobId>(j)))
                    k += inst.jobs[static_cast<std::size_t>(order[before])].p;
        rep.per_job_k[j] = k;
    }
    rep.sum_k = std::accumulate(rep.per_job_k.begin(), rep.per_job_k.end(), Rational{0});
    rep.opt1 = std::accumulate(rep.c1.begin(), rep.c1.end(), Rational{0});
    rep.opt1_over_m = rep.opt1 / inst.machine_count;
    return rep;
}

std::vector<JobId> per_job_bound_violations(const Instance& inst, const Schedule& sched, const BoundReport& b)
{
    const auto t = job_timings(inst, sched);
    const Rational m{inst.machine_count};
    std::vector<JobId> bad;
    for (std::size_t j = 0; j < t.size(); ++j) {
        const Rational rhs = (1 - 1 / m) * b.per_job_k[j] + b.c1[j] / m;
        if (t[j].completion > rhs) bad.push_back(static_cast<JobId>(j));
    }
    return bad;
}

} // namespace partsched
