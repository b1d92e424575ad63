#include "partsched/structure.hpp"

#include <algorithm>
#include <numeric>

#include "partsched/errors.hpp"

namespace partsched {

namespace {

std::vector<JobTiming> feasible_timings(const Instance& inst, const Schedule& sched)
{
    const auto report = validate_schedule(inst, sched);
    if (!report.ok()) throw InfeasibleError("infeasible: " + report.violations.front().message);
    return job_timings(inst, sched);
}

// Jobs of each machine in start order.
std::vector<std::vector<JobId>> machine_sequences(const Instance& inst, const std::vector<JobTiming>& t)
{
    std::vector<std::vector<JobId>> seq(static_cast<std::size_t>(inst.machine_count));
    for (std::size_t j = 0; j < t.size(); ++j) seq[static_cast<std::size_t>(t[j].machine)].push_back(static_cast<JobId>(j));
    for (auto& s : seq)
        std::sort(s.begin(), s.end(), [&](JobId a, JobId b) { return t[static_cast<std::size_t>(a)].start < t[static_cast<std::size_t>(b)].start; });
    return seq;
}

SlackReport slack_of(const Instance& inst, const std::vector<JobTiming>& t, JobId job)
{
    SlackReport rep;
    rep.job = job;
    const auto& tj = t[static_cast<std::size_t>(job)];
    for (std::size_t k = 0; k < t.size(); ++k) {
        const JobId other = static_cast<JobId>(k);
        if (other == job || !inst.shares_resource(job, other)) continue;
        if (t[k].completion > tj.completion) rep.d_plus = min(rep.d_plus, ExtendedTime(t[k].start - tj.completion));
        if (t[k].completion < tj.completion) rep.d_minus = min(rep.d_minus, ExtendedTime(tj.start - t[k].completion));
    }
    rep.slack = min(rep.d_plus, rep.d_minus);
    return rep;
}

std::vector<BlockingPair> pairs_of(const Instance& inst, const std::vector<JobTiming>& t)
{
    std::vector<BlockingPair> out;
    for (std::size_t j = 0; j < t.size(); ++j) {
        std::optional<std::size_t> best;
        for (std::size_t k = 0; k < t.size(); ++k) {
            if (k == j || !inst.shares_resource(static_cast<JobId>(j), static_cast<JobId>(k))) continue;
            if (!(t[k].completion > t[j].completion)) continue;
            if (!best || t[k].start < t[*best].start) best = k; // k ascends, so ties keep the smallest id
        }
        if (best)
            out.push_back({static_cast<JobId>(j), static_cast<JobId>(*best), t[*best].start == t[j].completion});
    }
    return out;
}

std::vector<JobId> suffix_of(const std::vector<JobTiming>& t, JobId job)
{
    std::vector<JobId> out;
    const auto& tj = t[static_cast<std::size_t>(job)];
    for (std::size_t k = 0; k < t.size(); ++k)
        if (static_cast<JobId>(k) != job && t[k].machine == tj.machine && t[k].completion >= tj.completion)
            out.push_back(static_cast<JobId>(k));
    std::sort(out.begin(), out.end(), [&](JobId a, JobId b) { return t[static_cast<std::size_t>(a)].start < t[static_cast<std::size_t>(b)].start; });
    return out;
}

// Swaps the suffixes in place; returns false (leaving `t` untouched) when the
// preconditions fail.
bool try_untangle(const Instance& inst, std::vector<JobTiming>& t, const BlockingPair& pair, std::string& why)
{
    const auto n = static_cast<JobId>(t.size());
    if (pair.first < 0 || pair.first >= n || pair.second < 0 || pair.second >= n) {
        why = "unknown job";
        return false;
    }
    const auto actual = pairs_of(inst, t);
    const bool is_pair = std::any_of(actual.begin(), actual.end(), [&](const BlockingPair& p) {
        return p.first == pair.first && p.second == pair.second && p.tight;
    });
    if (!is_pair) {
        why = "pair is not a tight blocking pair";
        return false;
    }
    const MachineId mi = t[static_cast<std::size_t>(pair.first)].machine;
    const MachineId mj = t[static_cast<std::size_t>(pair.second)].machine;
    if (mi == mj) {
        why = "pair already shares a machine";
        return false;
    }
    if (inst.unrelated_times) {
        why = "machines are unrelated";
        return false;
    }

    std::vector<JobTiming> next = t;
    for (JobId k : suffix_of(t, pair.first)) next[static_cast<std::size_t>(k)].machine = mj;
    next[static_cast<std::size_t>(pair.second)].machine = mi;
    for (JobId k : suffix_of(t, pair.second)) next[static_cast<std::size_t>(k)].machine = mi;

    const auto report = validate_schedule(inst, make_schedule(next));
    if (!report.ok()) {
        why = report.violations.front().message;
        return false;
    }
    t = std::move(next);
    return true;
}

// Largest number of `jobs` simultaneously active at some instant of [a, b).
int peak_usage(const std::vector<JobTiming>& t, const std::vector<std::size_t>& jobs, const Rational& a,
               const Rational& b)
{
    std::vector<std::pair<Rational, int>> events;
    for (std::size_t k : jobs) {
        const Rational s = std::max(t[k].start, a);
        const Rational e = std::min(t[k].completion, b);
        if (s < e) {
            events.emplace_back(s, +1);
            events.emplace_back(e, -1);
        }
    }
    std::sort(events.begin(), events.end());
    int active = 0, peak = 0;
    for (std::size_t k = 0; k < events.size();) {
        const Rational at = events[k].first;
        while (k < events.size() && events[k].first == at) active += events[k++].second;
        peak = std::max(peak, active);
    }
    return peak;
}

bool start_fits(const Instance& inst, const std::vector<JobTiming>& t, std::size_t job, const Rational& s)
{
    const Rational e = s + (t[job].completion - t[job].start);
    for (ResourceId r : inst.jobs[job].resources) {
        std::vector<std::size_t> users;
        for (std::size_t k = 0; k < t.size(); ++k) {
            if (k == job) continue;
            const auto& rk = inst.jobs[k].resources;
            if (std::find(rk.begin(), rk.end(), r) != rk.end()) users.push_back(k);
        }
        if (peak_usage(t, users, s, e) >= inst.capacity(r)) return false;
    }
    return true;
}

// One pass over all jobs in start order; each job after an idle gap moves to
// the earliest feasible start within the gap.
bool left_shift_pass(const Instance& inst, std::vector<JobTiming>& t)
{
    std::vector<std::size_t> order(t.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (t[a].start != t[b].start) return t[a].start < t[b].start;
        return t[a].machine < t[b].machine;
    });

    bool changed = false;
    for (std::size_t j : order) {
        Rational prev_end{0};
        for (std::size_t k = 0; k < t.size(); ++k)
            if (k != j && t[k].machine == t[j].machine && t[k].completion <= t[j].start)
                prev_end = std::max(prev_end, t[k].completion);
        if (prev_end >= t[j].start) continue;

        std::vector<Rational> candidates{prev_end};
        for (std::size_t k = 0; k < t.size(); ++k)
            if (k != j && inst.shares_resource(static_cast<JobId>(j), static_cast<JobId>(k)) &&
                t[k].completion > prev_end && t[k].completion < t[j].start)
                candidates.push_back(t[k].completion);
        std::sort(candidates.begin(), candidates.end());

        for (const Rational& s : candidates) {
            if (!start_fits(inst, t, j, s)) continue;
            const Rational len = t[j].completion - t[j].start;
            t[j].start = s;
            t[j].completion = s + len;
            changed = true;
            break;
        }
    }
    return changed;
}

} // namespace

SlackReport slack(const Instance& inst, const Schedule& sched, JobId job)
{
    const auto t = feasible_timings(inst, sched);
    if (job < 0 || static_cast<std::size_t>(job) >= t.size()) throw PreconditionError("unknown job " + std::to_string(job));
    return slack_of(inst, t, job);
}

std::vector<SlackReport> slack_table(const Instance& inst, const Schedule& sched)
{
    const auto t = feasible_timings(inst, sched);
    std::vector<SlackReport> out;
    for (std::size_t j = 0; j < t.size(); ++j) out.push_back(slack_of(inst, t, static_cast<JobId>(j)));
    return out;
}

std::vector<BlockingPair> blocking_pairs(const Instance& inst, const Schedule& sched)
{
    return pairs_of(inst, feasible_timings(inst, sched));
}

std::vector<JobId> suffix(const Instance& inst, const Schedule& sched, JobId job)
{
    const auto t = feasible_timings(inst, sched);
    if (job < 0 || static_cast<std::size_t>(job) >= t.size()) throw PreconditionError("unknown job " + std::to_string(job));
    return suffix_of(t, job);
}

Schedule untangle(const Instance& inst, const Schedule& sched, const BlockingPair& pair)
{
    auto t = feasible_timings(inst, sched);
    std::string why;
    if (!try_untangle(inst, t, pair, why)) throw PreconditionError("not untangleable: " + why);
    return make_schedule(t);
}

Schedule normalize_tight(const Instance& inst, const Schedule& sched)
{
    auto t = feasible_timings(inst, sched);
    const std::size_t n = t.size();
    const std::size_t cap = std::max<std::size_t>(n * n, 1);

    for (std::size_t round = 0;; ++round) {
        bool changed = false;
        for (bool again = true; again;) {
            again = false;
            for (const auto& pair : pairs_of(inst, t)) {
                if (!pair.tight || t[static_cast<std::size_t>(pair.first)].machine == t[static_cast<std::size_t>(pair.second)].machine)
                    continue;
                std::string why;
                if (try_untangle(inst, t, pair, why)) {
                    changed = again = true;
                    break;
                }
            }
        }
        if (left_shift_pass(inst, t)) changed = true;
        if (!changed) return make_schedule(t);
        if (round + 1 >= cap) throw Error("normalize_tight: no fixpoint after " + std::to_string(cap) + " rounds");
    }
}

bool has_idle_time(const Instance& inst, const Schedule& sched)
{
    const auto t = job_timings(inst, sched);
    for (const auto& seq : machine_sequences(inst, t)) {
        Rational end{0};
        for (JobId j : seq) {
            if (t[static_cast<std::size_t>(j)].start != end) return true;
            end = t[static_cast<std::size_t>(j)].completion;
        }
    }
    return false;
}

bool is_tight(const Instance& inst, const Schedule& sched)
{
    if (has_idle_time(inst, sched)) return false;
    const auto t = feasible_timings(inst, sched);
    for (const auto& p : pairs_of(inst, t))
        if (p.tight && t[static_cast<std::size_t>(p.first)].machine != t[static_cast<std::size_t>(p.second)].machine)
            return false;
    return true;
}

std::vector<TrainSequence> train_sequences(const Instance& inst, const Schedule& sched)
{
    const auto t = feasible_timings(inst, sched);
    std::vector<TrainSequence> out;
    const auto seqs = machine_sequences(inst, t);
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        std::vector<ResourceId> common;
        TrainSequence cur;
        auto flush = [&] {
            if (!cur.jobs.empty()) {
                cur.resource = *std::min_element(common.begin(), common.end());
                out.push_back(cur);
            }
            cur = TrainSequence{};
            common.clear();
        };
        for (JobId j : seqs[i]) {
            const auto& tj = t[static_cast<std::size_t>(j)];
            auto res = inst.jobs[static_cast<std::size_t>(j)].resources;
            std::sort(res.begin(), res.end());
            if (res.empty()) {
                flush();
                continue;
            }
            if (!cur.jobs.empty() && tj.start == cur.end) {
                std::vector<ResourceId> both;
                std::set_intersection(common.begin(), common.end(), res.begin(), res.end(), std::back_inserter(both));
                if (!both.empty()) {
                    common = std::move(both);
                    cur.jobs.push_back(j);
                    cur.end = tj.completion;
                    continue;
                }
            }
            flush();
            cur.machine = static_cast<MachineId>(i);
            cur.jobs = {j};
            cur.start = tj.start;
            cur.end = tj.completion;
            common = res;
        }
        flush();
    }
    return out;
}

bool check_spt_order(const Instance& inst, const Schedule& sched)
{
    const auto t = feasible_timings(inst, sched);
    for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = 0; b < t.size(); ++b) {
            if (a == b || !inst.shares_resource(static_cast<JobId>(a), static_cast<JobId>(b))) continue;
            if (inst.jobs[a].p < inst.jobs[b].p && !(t[a].completion < t[b].completion)) return false;
        }
    return true;
}

} // namespace partsched
