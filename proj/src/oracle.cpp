#include "partsched/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>

#include "partsched/errors.hpp"

namespace partsched {

namespace {

using i64 = std::int64_t;
using wide = boost::multiprecision::int128_t;
constexpr i64 kNone = std::numeric_limits<i64>::max();

// Scaled integer copy of the instance: times are multiplied by the common
// denominator of all durations, weights by the common denominator of all weights.
struct Model {
    int n = 0;
    int m = 0;
    i64 time_scale = 1;
    i64 weight_scale = 1;
    std::vector<i64> dur; // dur[i * n + j]
    std::vector<i64> weight;
    std::vector<std::vector<int>> res;
    std::vector<int> cap;
    std::vector<char> allowed; // allowed[i * n + j]
    bool identical_machines = true;
    bool unmovable = false;
    bool job_symmetry = true;
    bool uniform_weight = true;
    std::vector<int> cls;        // representative (lowest id) of the job's class
    std::vector<int> prev_same;  // previous job of the same class, or -1
    std::vector<std::vector<int>> order; // per machine: jobs by (duration, id)
    std::vector<i64> dmin;       // shortest allowed duration
    std::vector<int> chain_res;  // first unit-capacity resource, or -1
    std::vector<int> by_dmin;    // jobs by (dmin, id)
    std::vector<int> by_ratio;   // jobs by dmin / weight, then id

    i64 d(int i, int j) const { return dur[static_cast<std::size_t>(i * n + j)]; }
    bool ok(int i, int j) const { return allowed[static_cast<std::size_t>(i * n + j)] != 0; }
};

i64 scaled(const Rational& value, i64 scale)
{
    const i64 factor = scale / value.denominator();
    if (value.numerator() != 0 && std::abs(factor) > std::numeric_limits<i64>::max() / std::abs(value.numerator()))
        throw std::overflow_error("scaled time overflows 64 bits");
    return value.numerator() * factor;
}

Model build_model(const Instance& inst, bool job_symmetry)
{
    Model md;
    md.n = static_cast<int>(inst.jobs.size());
    md.m = inst.machine_count;
    const auto n = static_cast<std::size_t>(md.n);
    const auto m = static_cast<std::size_t>(md.m);

    for (int i = 0; i < md.m; ++i)
        for (int j = 0; j < md.n; ++j) md.time_scale = checked_lcm(md.time_scale, inst.duration(j, i).denominator());
    for (const Job& job : inst.jobs) md.weight_scale = checked_lcm(md.weight_scale, job.weight.denominator());

    md.dur.resize(m * n);
    md.allowed.resize(m * n);
    for (int i = 0; i < md.m; ++i)
        for (int j = 0; j < md.n; ++j) {
            md.dur[static_cast<std::size_t>(i * md.n + j)] = scaled(inst.duration(j, i), md.time_scale);
            md.allowed[static_cast<std::size_t>(i * md.n + j)] = inst.machine_allowed(j, i) ? 1 : 0;
        }
    for (const Job& job : inst.jobs) {
        md.weight.push_back(scaled(job.weight, md.weight_scale));
        md.res.push_back(job.resources);
    }
    md.uniform_weight = std::all_of(md.weight.begin(), md.weight.end(), [&](i64 w) { return w == md.weight.front(); });
    for (int r = 0; r < inst.resource_count; ++r) md.cap.push_back(inst.capacity(r));
    md.identical_machines = !inst.unrelated_times && inst.machine_subsets.empty();
    md.unmovable = inst.unmovable;
    md.job_symmetry = job_symmetry;

    std::vector<int> uses(static_cast<std::size_t>(inst.resource_count), 0);
    for (const auto& rs : md.res)
        for (int r : rs) ++uses[static_cast<std::size_t>(r)];
    auto shared_resources = [&](int j) {
        std::vector<int> out;
        for (int r : md.res[static_cast<std::size_t>(j)])
            if (uses[static_cast<std::size_t>(r)] > 1) out.push_back(r);
        std::sort(out.begin(), out.end());
        return out;
    };
    auto same_class = [&](int a, int b) {
        if (md.weight[static_cast<std::size_t>(a)] != md.weight[static_cast<std::size_t>(b)]) return false;
        for (int i = 0; i < md.m; ++i)
            if (md.d(i, a) != md.d(i, b) || md.ok(i, a) != md.ok(i, b)) return false;
        return shared_resources(a) == shared_resources(b);
    };
    md.cls.assign(n, 0);
    md.prev_same.assign(n, -1);
    for (int j = 0; j < md.n; ++j) {
        md.cls[static_cast<std::size_t>(j)] = j;
        if (!job_symmetry) continue;
        for (int k = j - 1; k >= 0; --k)
            if (same_class(k, j)) {
                md.cls[static_cast<std::size_t>(j)] = md.cls[static_cast<std::size_t>(k)];
                md.prev_same[static_cast<std::size_t>(j)] = k;
                break;
            }
    }

    md.order.resize(m);
    for (int i = 0; i < md.m; ++i) {
        auto& ord = md.order[static_cast<std::size_t>(i)];
        ord.resize(n);
        std::iota(ord.begin(), ord.end(), 0);
        std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) { return md.d(i, a) < md.d(i, b); });
    }
    md.dmin.assign(n, kNone);
    md.chain_res.assign(n, -1);
    for (int j = 0; j < md.n; ++j) {
        for (int i = 0; i < md.m; ++i)
            if (md.ok(i, j)) md.dmin[static_cast<std::size_t>(j)] = std::min(md.dmin[static_cast<std::size_t>(j)], md.d(i, j));
        for (int r : md.res[static_cast<std::size_t>(j)])
            if (md.cap[static_cast<std::size_t>(r)] == 1) {
                md.chain_res[static_cast<std::size_t>(j)] = r;
                break;
            }
    }
    md.by_dmin.resize(n);
    std::iota(md.by_dmin.begin(), md.by_dmin.end(), 0);
    std::stable_sort(md.by_dmin.begin(), md.by_dmin.end(),
                     [&](int a, int b) { return md.dmin[static_cast<std::size_t>(a)] < md.dmin[static_cast<std::size_t>(b)]; });
    md.by_ratio = md.by_dmin;
    std::stable_sort(md.by_ratio.begin(), md.by_ratio.end(), [&](int a, int b) {
        const auto ua = static_cast<std::size_t>(a);
        const auto ub = static_cast<std::size_t>(b);
        return wide(md.dmin[ua]) * md.weight[ub] < wide(md.dmin[ub]) * md.weight[ua];
    });
    return md;
}

struct Shared {
    std::uint64_t budget = 0;
    double space = 0;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<i64> best{kNone};
};

struct Placement {
    std::vector<i64> start;
    std::vector<int> machine;
};

class Search {
public:
    Search(const Model& md, Shared& shared, bool semi_active, bool machine_symmetry, bool enumerate)
        : md_(&md), shared_(&shared), semi_(semi_active), msym_(machine_symmetry && md.identical_machines),
          enumerate_(enumerate)
    {
        const auto n = static_cast<std::size_t>(md.n);
        const auto m = static_cast<std::size_t>(md.m);
        end_.assign(m, 0);
        open_.assign(m, 1);
        count_.assign(m, 0);
        first_key_.assign(m, -1);
        placed_.assign(n, 0);
        start_.assign(n, 0);
        fin_.assign(n, 0);
        mach_.assign(n, -1);
        bound_.assign(md.cap.size(), -1);
        refs_.assign(md.cap.size(), 0);
        res_jobs_.resize(md.cap.size());
    }

    void run() { node(); }

    void collect(int depth, std::vector<Search>& out)
    {
        frontier_ = &out;
        frontier_depth_ = depth;
        node();
        frontier_ = nullptr;
    }

    i64 root_bound() const { return lower_bound(); }
    void set_root_bound(i64 lb) { root_lb_ = lb; }

    i64 best() const { return best_; }
    const Placement& witness() const { return witness_; }
    const std::vector<Placement>& optima() const { return optima_; }

private:
    void tick()
    {
        const auto count = shared_->nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if (count > shared_->budget)
            throw BudgetExceeded("oracle node budget of " + std::to_string(shared_->budget) +
                                     " exceeded (unpruned search space " + std::to_string(shared_->space) + ")",
                                 shared_->space);
    }

    bool pruned(i64 lb) const
    {
        const i64 global = shared_->best.load(std::memory_order_relaxed);
        if (enumerate_) return lb > std::min(best_, global);
        return lb >= best_ || lb > global;
    }

    bool frontier_stop()
    {
        if (frontier_ == nullptr || depth_ < frontier_depth_) return false;
        Search copy = *this;
        copy.frontier_ = nullptr;
        frontier_->push_back(std::move(copy));
        return true;
    }

    void leaf()
    {
        if (frontier_stop()) return;
        if (enumerate_) {
            if (cost_ < best_) {
                best_ = cost_;
                optima_.clear();
            }
            if (cost_ == best_) optima_.push_back({start_, mach_});
        } else if (cost_ < best_) {
            best_ = cost_;
            witness_ = {start_, mach_};
            if (best_ == root_lb_) stop_ = true;
        } else {
            return;
        }
        i64 global = shared_->best.load(std::memory_order_relaxed);
        while (best_ < global && !shared_->best.compare_exchange_weak(global, best_, std::memory_order_relaxed)) {
        }
    }

    bool class_ready(int j) const
    {
        const int prev = md_->prev_same[static_cast<std::size_t>(j)];
        return prev < 0 || placed_[static_cast<std::size_t>(prev)];
    }

    bool machine_ok(int j, int i) const
    {
        if (!md_->ok(i, j)) return false;
        if (md_->unmovable)
            for (int r : md_->res[static_cast<std::size_t>(j)]) {
                const int b = bound_[static_cast<std::size_t>(r)];
                if (b >= 0 && b != i) return false;
            }
        return true;
    }

    // With unmovable resources no two machines share a resource, so any order
    // on one machine is feasible and only Smith's order (d/w non-decreasing)
    // can be optimal. Equal ratios are ordered by class under job symmetry.
    bool sequence_ok(int j, int i) const
    {
        if (!md_->unmovable) return true;
        const auto& md = *md_;
        const auto ui = static_cast<std::size_t>(i);
        int k = -1;
        for (int q = 0; q < md.n && k < 0; ++q) {
            const auto uq = static_cast<std::size_t>(q);
            if (placed_[uq] && mach_[uq] == i && fin_[uq] == end_[ui]) k = q;
        }
        if (k < 0) return true;
        const auto uj = static_cast<std::size_t>(j);
        const auto uk = static_cast<std::size_t>(k);
        const wide lhs = wide(md.d(i, k)) * md.weight[uj];
        const wide rhs = wide(md.d(i, j)) * md.weight[uk];
        if (lhs != rhs) return lhs < rhs;
        return !md.job_symmetry || md.cls[uk] <= md.cls[uj];
    }

    void place(int j, int i, i64 s)
    {
        const auto uj = static_cast<std::size_t>(j);
        const auto ui = static_cast<std::size_t>(i);
        placed_[uj] = 1;
        start_[uj] = s;
        fin_[uj] = s + md_->d(i, j);
        mach_[uj] = i;
        end_[ui] = fin_[uj];
        if (count_[ui]++ == 0) first_key_[ui] = md_->cls[uj];
        for (int r : md_->res[uj]) {
            const auto ur = static_cast<std::size_t>(r);
            if (refs_[ur]++ == 0) bound_[ur] = i;
            res_jobs_[ur].push_back(j);
        }
        cost_ += md_->weight[uj] * fin_[uj];
        ++placed_count_;
    }

    void unplace(int j, int i, i64 old_end)
    {
        const auto uj = static_cast<std::size_t>(j);
        const auto ui = static_cast<std::size_t>(i);
        --placed_count_;
        cost_ -= md_->weight[uj] * fin_[uj];
        for (int r : md_->res[uj]) {
            const auto ur = static_cast<std::size_t>(r);
            res_jobs_[ur].pop_back();
            if (--refs_[ur] == 0) bound_[ur] = -1;
        }
        if (--count_[ui] == 0) first_key_[ui] = -1;
        end_[ui] = old_end;
        placed_[uj] = 0;
        mach_[uj] = -1;
    }

    i64 busy(int r) const
    {
        i64 b = 0;
        for (int k : res_jobs_[static_cast<std::size_t>(r)]) b = std::max(b, fin_[static_cast<std::size_t>(k)]);
        return b;
    }

    // Lower bound on the final cost. `floor_time` is a time no remaining job can
    // start before; `ready` are the earliest free times of the usable machines.
    i64 bound_from(i64 floor_time, const std::vector<i64>& ready) const
    {
        if (placed_count_ == md_->n) return cost_;
        const auto& md = *md_;

        i64 per_job = 0;
        std::vector<i64> release(md.cap.size(), -1);
        std::vector<i64> prefix(md.cap.size(), 0);
        i64 chain = 0;
        for (int j : md.by_ratio) {
            const auto uj = static_cast<std::size_t>(j);
            if (placed_[uj]) continue;
            i64 earliest = floor_time;
            for (int r : md.res[uj])
                if (md.cap[static_cast<std::size_t>(r)] == 1) earliest = std::max(earliest, busy(r));
            per_job += md.weight[uj] * (earliest + md.dmin[uj]);
            const int r = md.chain_res[uj];
            if (r < 0) {
                chain += md.weight[uj] * (earliest + md.dmin[uj]);
                continue;
            }
            const auto ur = static_cast<std::size_t>(r);
            if (release[ur] < 0) release[ur] = std::max(floor_time, busy(r));
            prefix[ur] += md.dmin[uj];
            chain += md.weight[uj] * (release[ur] + prefix[ur]);
        }
        i64 best = std::max(per_job, chain);

        if (md.uniform_weight && !ready.empty()) {
            std::vector<i64> r = ready;
            i64 total = 0;
            for (int j : md.by_dmin) {
                const auto uj = static_cast<std::size_t>(j);
                if (placed_[uj]) continue;
                auto it = std::min_element(r.begin(), r.end());
                *it += md.dmin[uj];
                total += *it;
            }
            best = std::max(best, total * md.weight.front());
        }
        return cost_ + best;
    }

    i64 lower_bound() const
    {
        std::vector<i64> ready;
        if (semi_) {
            for (int i = 0; i < md_->m; ++i) ready.push_back(std::max(last_s_, end_[static_cast<std::size_t>(i)]));
            return bound_from(std::max<i64>(last_s_, 0), ready);
        }
        i64 t = kNone;
        for (int i = 0; i < md_->m; ++i)
            if (open_[static_cast<std::size_t>(i)]) {
                ready.push_back(end_[static_cast<std::size_t>(i)]);
                t = std::min(t, end_[static_cast<std::size_t>(i)]);
            }
        if (ready.empty()) return placed_count_ == md_->n ? cost_ : kNone;
        return bound_from(t, ready);
    }

    void node()
    {
        tick();
        if (stop_) return;
        if (placed_count_ == md_->n) {
            leaf();
            return;
        }
        if (frontier_stop()) return;
        if (frontier_ == nullptr && pruned(lower_bound())) return;
        if (semi_)
            semi_active_children();
        else
            no_idle_children();
    }

    void descend()
    {
        ++depth_;
        node();
        --depth_;
    }

    void no_idle_children()
    {
        const auto& md = *md_;
        int i = -1;
        for (int k = 0; k < md.m; ++k)
            if (open_[static_cast<std::size_t>(k)] && (i < 0 || end_[static_cast<std::size_t>(k)] < end_[static_cast<std::size_t>(i)]))
                i = k;
        if (i < 0) return;
        const auto ui = static_cast<std::size_t>(i);
        const i64 t = end_[ui];

        for (int j : md.order[ui]) {
            const auto uj = static_cast<std::size_t>(j);
            if (placed_[uj] || !class_ready(j) || !machine_ok(j, i) || !sequence_ok(j, i)) continue;
            if (msym_ && count_[ui] == 0 && i > 0 && md.cls[uj] < first_key_[ui - 1]) continue;
            bool fits = true;
            for (int r : md.res[uj]) {
                int active = 0;
                for (int k : res_jobs_[static_cast<std::size_t>(r)])
                    if (fin_[static_cast<std::size_t>(k)] > t) ++active;
                if (active >= md.cap[static_cast<std::size_t>(r)]) {
                    fits = false;
                    break;
                }
            }
            if (!fits) continue;
            place(j, i, t);
            descend();
            unplace(j, i, t);
            if (stop_) return;
        }

        // Close machine i. Under machine symmetry an empty machine closes
        // together with every later (necessarily empty) machine.
        std::vector<int> closed{i};
        if (msym_ && count_[ui] == 0)
            for (int k = i + 1; k < md.m; ++k)
                if (open_[static_cast<std::size_t>(k)]) closed.push_back(k);
        bool any_open = false;
        for (int k = 0; k < md.m; ++k)
            if (open_[static_cast<std::size_t>(k)] && std::find(closed.begin(), closed.end(), k) == closed.end())
                any_open = true;
        if (!any_open) return;
        for (int k : closed) open_[static_cast<std::size_t>(k)] = 0;
        descend();
        for (int k : closed) open_[static_cast<std::size_t>(k)] = 1;
    }

    void semi_active_children()
    {
        const auto& md = *md_;
        for (int j : md.by_dmin) {
            const auto uj = static_cast<std::size_t>(j);
            if (placed_[uj] || !class_ready(j)) continue;
            i64 ready = 0;
            for (int r : md.res[uj]) ready = std::max(ready, busy(r));
            bool empty_seen = false;
            for (int i = 0; i < md.m; ++i) {
                const auto ui = static_cast<std::size_t>(i);
                if (msym_ && count_[ui] == 0) {
                    if (empty_seen) continue;
                    empty_seen = true;
                }
                if (!machine_ok(j, i)) continue;
                const i64 s = std::max(end_[ui], ready);
                if (s < last_s_ || (s == last_s_ && i <= last_i_)) continue;
                const i64 old_end = end_[ui];
                const i64 saved_s = last_s_;
                const int saved_i = last_i_;
                place(j, i, s);
                last_s_ = s;
                last_i_ = i;
                descend();
                last_s_ = saved_s;
                last_i_ = saved_i;
                unplace(j, i, old_end);
                if (stop_) return;
            }
        }
    }

    const Model* md_;
    Shared* shared_;
    bool semi_;
    bool msym_;
    bool enumerate_;

    std::vector<i64> end_;
    std::vector<char> open_;
    std::vector<int> count_;
    std::vector<int> first_key_;
    std::vector<char> placed_;
    std::vector<i64> start_;
    std::vector<i64> fin_;
    std::vector<int> mach_;
    std::vector<int> bound_;
    std::vector<int> refs_;
    std::vector<std::vector<int>> res_jobs_;
    int placed_count_ = 0;
    i64 cost_ = 0;
    i64 last_s_ = -1;
    int last_i_ = -1;

    int depth_ = 0;
    std::vector<Search>* frontier_ = nullptr;
    int frontier_depth_ = 0;
    i64 root_lb_ = -1;
    bool stop_ = false;

    i64 best_ = kNone;
    Placement witness_;
    std::vector<Placement> optima_;
};

bool use_semi_active(const Instance& inst, OracleStrategy strategy)
{
    if (strategy == OracleStrategy::no_idle) return false;
    if (strategy == OracleStrategy::semi_active) return true;
    return inst.unrelated_times.has_value() || !inst.machine_subsets.empty();
}

Schedule to_schedule(const Model& md, const Placement& p)
{
    Schedule s;
    for (int j = 0; j < md.n; ++j)
        s.entries.push_back({j, p.machine[static_cast<std::size_t>(j)], Rational(p.start[static_cast<std::size_t>(j)], md.time_scale)});
    return s;
}

struct Outcome {
    i64 best = kNone;
    Placement witness;
    std::vector<Placement> optima;
    std::uint64_t nodes = 0;
};

Outcome search(const Instance& inst, const OracleLimits& limits, bool enumerate, const Model& md)
{
    const bool semi = use_semi_active(inst, limits.strategy);
    if (semi)
        for (int r = 0; r < inst.resource_count; ++r)
            if (inst.capacity(r) != 1)
                throw PreconditionError("semi-active search requires unit resource capacities");

    Shared shared;
    shared.budget = limits.node_budget;
    shared.space = search_space_size(inst);

    Search root(md, shared, semi, limits.machine_symmetry, enumerate);
    root.set_root_bound(root.root_bound());
    Outcome out;

    if (limits.workers <= 1) {
        root.run();
        out.best = root.best();
        out.witness = root.witness();
        out.optima = root.optima();
        out.nodes = shared.nodes.load();
        return out;
    }

    std::vector<Search> frontier;
    const auto wanted = static_cast<std::size_t>(4 * limits.workers);
    for (int depth = 1;; ++depth) {
        frontier.clear();
        root.collect(depth, frontier);
        if (frontier.size() >= wanted || depth > 2 * md.n + md.m) break;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(limits.workers));
    std::vector<std::thread> threads;
    for (int w = 0; w < limits.workers; ++w)
        threads.emplace_back([&, w] {
            try {
                for (std::size_t k = next++; k < frontier.size(); k = next++) frontier[k].run();
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
                next = frontier.size();
            }
        });
    for (auto& t : threads) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    for (const auto& sub : frontier) out.best = std::min(out.best, sub.best());
    for (const auto& sub : frontier) {
        if (sub.best() != out.best || out.best == kNone) continue;
        if (enumerate)
            out.optima.insert(out.optima.end(), sub.optima().begin(), sub.optima().end());
        else if (out.witness.start.empty()) {
            out.witness = sub.witness();
        }
    }
    out.nodes = shared.nodes.load();
    return out;
}

void check_input(const Instance& inst)
{
    const auto report = validate_instance(inst);
    if (!report.ok()) throw PreconditionError("instance is not well-formed: " + report.to_string());
}

} // namespace

double search_space_size(const Instance& inst)
{
    // n! * C(n+m-1, m-1) = (n+m-1)! / (m-1)! = m (m+1) ... (n+m-1).
    // Summed in log space; std::lgamma writes the global signgam.
    const int n = static_cast<int>(inst.jobs.size());
    const int m = inst.machine_count;
    double log_size = 0;
    for (int k = m; k < n + m; ++k) log_size += std::log(static_cast<double>(k));
    return std::exp(log_size);
}

OracleResult brute_force_opt(const Instance& inst, const OracleLimits& limits)
{
    check_input(inst);
    OracleResult result;
    if (inst.jobs.empty()) return result;
    const Model md = build_model(inst, limits.job_symmetry);
    const Outcome out = search(inst, limits, false, md);
    if (out.best == kNone) throw ExhaustedError("exhausted: no feasible schedule in the searched class");
    result.optimum = Rational(out.best, md.time_scale * md.weight_scale);
    result.witness = to_schedule(md, out.witness);
    result.nodes = out.nodes;
    return result;
}

std::vector<Schedule> enumerate_optima(const Instance& inst, const OracleLimits& limits)
{
    check_input(inst);
    if (inst.jobs.empty()) return {Schedule{}};
    const Model md = build_model(inst, limits.job_symmetry);
    const Outcome out = search(inst, limits, true, md);
    if (out.best == kNone) throw ExhaustedError("exhausted: no feasible schedule in the searched class");
    std::vector<Schedule> all;
    for (const auto& p : out.optima) all.push_back(to_schedule(md, p));
    return all;
}

bool edge_colorable(const Graph& g, int k)
{
    const auto issue = g.problem();
    if (!issue.empty()) throw PreconditionError("edge_colorable: " + issue);
    if (g.edges.empty()) return true;
    if (k <= 0) return false;

    const std::size_t e = g.edges.size();
    std::vector<int> color(e, -1);
    auto adjacent = [&](std::size_t a, std::size_t b) {
        const auto& [u1, v1] = g.edges[a];
        const auto& [u2, v2] = g.edges[b];
        return u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2;
    };
    // Colors are introduced in order, so edge `at` may use at most one new color.
    auto assign = [&](auto&& self, std::size_t at, int used) -> bool {
        if (at == e) return true;
        for (int c = 0; c < std::min(k, used + 1); ++c) {
            bool clash = false;
            for (std::size_t b = 0; b < at && !clash; ++b) clash = color[b] == c && adjacent(at, b);
            if (clash) continue;
            color[at] = c;
            if (self(self, at + 1, std::max(used, c + 1))) return true;
        }
        color[at] = -1;
        return false;
    };
    return assign(assign, 0, 0);
}

Rational time_indexed_unit_opt(const Instance& inst, std::uint64_t node_budget)
{
    check_input(inst);
    if (!inst.has_unit_times()) throw PreconditionError("time-indexed search requires p_j = 1");
    if (!inst.machine_subsets.empty() || inst.unmovable)
        throw PreconditionError("time-indexed search requires identical machines without placement restrictions");

    const int n = static_cast<int>(inst.jobs.size());
    const int m = inst.machine_count;
    i64 wscale = 1;
    for (const Job& job : inst.jobs) wscale = checked_lcm(wscale, job.weight.denominator());
    std::vector<i64> w;
    for (const Job& job : inst.jobs) w.push_back(scaled(job.weight, wscale));

    std::vector<int> held;          // jobs with resources, by id
    std::vector<i64> free_weights;  // resource-free jobs, heaviest first
    for (int j = 0; j < n; ++j) {
        if (inst.jobs[static_cast<std::size_t>(j)].resources.empty())
            free_weights.push_back(w[static_cast<std::size_t>(j)]);
        else
            held.push_back(j);
    }
    std::sort(free_weights.rbegin(), free_weights.rend());

    auto twin = [&](int a, int b) {
        auto ra = inst.jobs[static_cast<std::size_t>(a)].resources;
        auto rb = inst.jobs[static_cast<std::size_t>(b)].resources;
        std::sort(ra.begin(), ra.end());
        std::sort(rb.begin(), rb.end());
        return ra == rb && w[static_cast<std::size_t>(a)] == w[static_cast<std::size_t>(b)];
    };

    const auto slots = static_cast<std::size_t>(std::max(n, 1));
    std::vector<int> load(slots, 0);
    std::vector<std::vector<int>> res_load(static_cast<std::size_t>(inst.resource_count), std::vector<int>(slots, 0));
    std::vector<int> slot_of(held.size(), -1);
    i64 best = kNone;
    std::uint64_t nodes = 0;

    // Heaviest-first into the earliest free machine capacity: exact for
    // resource-free unit jobs, a relaxation for the others.
    auto fill = [&](const std::vector<i64>& weights) {
        std::vector<int> room(slots);
        for (std::size_t t = 0; t < slots; ++t) room[t] = m - load[t];
        i64 total = 0;
        std::size_t t = 0;
        for (i64 x : weights) {
            while (t < slots && room[t] == 0) ++t;
            if (t == slots) return kNone;
            --room[t];
            total += x * static_cast<i64>(t + 1);
        }
        return total;
    };

    auto dfs = [&](auto&& self, std::size_t k, i64 cost) -> void {
        if (++nodes > node_budget)
            throw BudgetExceeded("time-indexed search budget exceeded", search_space_size(inst));
        std::vector<i64> rest = free_weights;
        for (std::size_t q = k; q < held.size(); ++q) rest.push_back(w[static_cast<std::size_t>(held[q])]);
        std::sort(rest.rbegin(), rest.rend());
        const i64 relaxed = fill(rest);
        if (relaxed == kNone || cost + relaxed >= best) return;
        if (k == held.size()) {
            best = cost + relaxed;
            return;
        }
        const int j = held[k];
        std::size_t lo = 0;
        for (std::size_t q = k; q-- > 0;)
            if (twin(held[q], j)) {
                lo = static_cast<std::size_t>(slot_of[q]);
                break;
            }
        const auto& rs = inst.jobs[static_cast<std::size_t>(j)].resources;
        for (std::size_t t = lo; t < slots; ++t) {
            if (load[t] >= m) continue;
            bool fits = true;
            for (int r : rs)
                if (res_load[static_cast<std::size_t>(r)][t] >= inst.capacity(r)) fits = false;
            if (!fits) continue;
            ++load[t];
            for (int r : rs) ++res_load[static_cast<std::size_t>(r)][t];
            slot_of[k] = static_cast<int>(t);
            self(self, k + 1, cost + w[static_cast<std::size_t>(j)] * static_cast<i64>(t + 1));
            for (int r : rs) --res_load[static_cast<std::size_t>(r)][t];
            --load[t];
        }
        slot_of[k] = -1;
    };
    dfs(dfs, 0, 0);
    if (best == kNone) throw ExhaustedError("exhausted: no feasible slot assignment");
    return Rational(best, wscale);
}

} // namespace partsched
