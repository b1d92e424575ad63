#include "partsched/reductions.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "partsched/errors.hpp"

namespace partsched {

std::string to_string(GadgetKind kind)
{
    switch (kind) {
    case GadgetKind::example41: return "example41";
    case GadgetKind::lb_family: return "lb_family";
    case GadgetKind::mr_3partition: return "mr_3partition";
    case GadgetKind::unmovable_3partition: return "unmovable_3partition";
    case GadgetKind::partition2_edgecoloring: return "partition2_edgecoloring";
    case GadgetKind::unrelated_mapped: return "unrelated_mapped";
    case GadgetKind::random: return "random";
    }
    return "unknown";
}

namespace {

std::string join(const std::vector<int>& values)
{
    std::string out;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(values[k]);
    }
    return out;
}

void add_job(Instance& inst, const Rational& p, std::vector<ResourceId> resources)
{
    Job job;
    job.id = static_cast<JobId>(inst.jobs.size());
    job.p = p;
    job.resources = std::move(resources);
    inst.jobs.push_back(std::move(job));
}

void require_valid(const ThreePartitionInput& tp)
{
    const auto issue = tp.problem();
    if (!issue.empty()) throw PreconditionError("invalid 3-PARTITION input: " + issue);
}

std::map<std::string, std::string> three_partition_provenance(const ThreePartitionInput& tp)
{
    return {{"m", std::to_string(tp.m)}, {"b", std::to_string(tp.b)}, {"A", join(tp.values)}};
}

} // namespace

std::string ThreePartitionInput::problem() const
{
    if (m < 1) return "m must be positive";
    if (b < 1) return "b must be positive";
    if (values.size() != static_cast<std::size_t>(3 * m))
        return "expected " + std::to_string(3 * m) + " values, got " + std::to_string(values.size());
    const long long sum = std::accumulate(values.begin(), values.end(), 0LL);
    if (sum != static_cast<long long>(m) * b)
        return "values sum to " + std::to_string(sum) + ", expected m*b = " + std::to_string(m * b);
    for (int a : values)
        if (4 * a < b || 2 * a > b)
            return "value " + std::to_string(a) + " outside [b/4, b/2]";
    return {};
}

std::optional<std::vector<std::vector<int>>> solve_three_partition(const ThreePartitionInput& tp)
{
    require_valid(tp);
    const std::size_t k = tp.values.size();
    std::vector<char> used(k, 0);
    std::vector<std::vector<int>> triples;

    auto search = [&](auto&& self) -> bool {
        std::size_t first = 0;
        while (first < k && used[first]) ++first;
        if (first == k) return true;
        used[first] = 1;
        for (std::size_t s = first + 1; s < k; ++s) {
            if (used[s]) continue;
            used[s] = 1;
            for (std::size_t t = s + 1; t < k; ++t) {
                if (used[t] || tp.values[first] + tp.values[s] + tp.values[t] != tp.b) continue;
                used[t] = 1;
                triples.push_back({static_cast<int>(first), static_cast<int>(s), static_cast<int>(t)});
                if (self(self)) return true;
                triples.pop_back();
                used[t] = 0;
            }
            used[s] = 0;
        }
        used[first] = 0;
        return false;
    };
    if (!search(search)) return std::nullopt;
    return triples;
}

GadgetInstance gen_example41(const Rational& eps)
{
    if (eps <= 0) throw PreconditionError("eps must be positive");
    GadgetInstance g;
    g.kind = GadgetKind::example41;
    g.instance.machine_count = 2;
    g.instance.resource_count = 3;
    for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 4; ++k) add_job(g.instance, r < 2 ? Rational{1} : 1 + eps, {r});
    g.threshold = 42 + 10 * eps;
    g.provenance = {{"eps", to_string(eps)}};

    // Two jobs of the first resource, then the long jobs, on machine 0; the
    // second resource and the rest of the first on machine 1.
    std::vector<JobTiming> t(12);
    Rational at{0};
    for (int j : {0, 1, 8, 9, 10, 11}) {
        const Rational p = g.instance.jobs[static_cast<std::size_t>(j)].p;
        t[static_cast<std::size_t>(j)] = {0, at, at + p};
        at += p;
    }
    at = 0;
    for (int j : {4, 5, 6, 7, 2, 3}) {
        t[static_cast<std::size_t>(j)] = {1, at, at + 1};
        at += 1;
    }
    g.witness = make_schedule(t);
    return g;
}

GadgetInstance gen_lb_family(int c, const Rational& eps)
{
    if (c <= 0 || c % 2 != 0) throw PreconditionError("c must be a positive even integer");
    if (eps <= 0) throw PreconditionError("eps must be positive");
    GadgetInstance g;
    g.kind = GadgetKind::lb_family;
    g.instance.machine_count = 3;
    g.instance.resource_count = 3 * c + 1;
    for (int k = 0; k < 3 * c; ++k) add_job(g.instance, 1, {k});
    for (int k = 0; k < 3 * c; ++k) add_job(g.instance, 1 + eps, {3 * c});
    const Rational cc{c};
    g.threshold = Rational(27, 4) * cc * cc + 3 * cc + Rational(1, 2) * (9 * cc * cc + 3 * cc) * eps;
    g.provenance = {{"c", std::to_string(c)}, {"eps", to_string(eps)}};

    std::vector<JobTiming> t(static_cast<std::size_t>(6 * c));
    for (int k = 0; k < 3 * c; ++k) {
        const Rational s = k * (1 + eps);
        t[static_cast<std::size_t>(3 * c + k)] = {0, s, s + 1 + eps};
    }
    for (int k = 0; k < 3 * c; ++k) {
        const Rational s{k / 2};
        t[static_cast<std::size_t>(k)] = {1 + k % 2, s, s + 1};
    }
    g.witness = make_schedule(t);
    return g;
}

GadgetInstance gen_mr_gadget(const ThreePartitionInput& tp, const std::optional<std::vector<std::vector<int>>>& certificate)
{
    require_valid(tp);
    const int m = tp.m;
    const int b = tp.b;
    const std::int64_t nc = 2LL * m * b;
    const std::int64_t c = 8LL * m * b;
    const Rational d_len = Rational(nc * nc) * c;

    GadgetInstance g;
    g.kind = GadgetKind::mr_3partition;
    Instance& inst = g.instance;
    inst.machine_count = 2 * m;
    inst.resource_count = 5 * m;

    // Resources: 0..m-1 chain resources, m..4m-1 one per value, 4m..5m-1 one per D-job.
    std::vector<MachineId> first_half(static_cast<std::size_t>(m));
    std::iota(first_half.begin(), first_half.end(), 0);
    for (std::size_t k = 0; k < tp.values.size(); ++k) {
        const int r = m + static_cast<int>(k);
        add_job(inst, tp.values[k], {r});
        inst.machine_subsets[r] = first_half;
    }
    std::vector<JobId> release_job(static_cast<std::size_t>(m));
    std::vector<JobId> d_job(static_cast<std::size_t>(m));
    std::vector<std::vector<JobId>> c_jobs(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        inst.machine_subsets[i] = {i, m + i};
        for (std::int64_t k = 0; k < nc; ++k) {
            c_jobs[static_cast<std::size_t>(i)].push_back(static_cast<JobId>(inst.jobs.size()));
            add_job(inst, c, {i});
        }
        release_job[static_cast<std::size_t>(i)] = static_cast<JobId>(inst.jobs.size());
        add_job(inst, b, {i});
        d_job[static_cast<std::size_t>(i)] = static_cast<JobId>(inst.jobs.size());
        add_job(inst, d_len, {4 * m + i});
        inst.machine_subsets[4 * m + i] = {m + i};
    }

    const Rational mm{m};
    const Rational bb{b};
    const Rational ncr{nc};
    const Rational cr{c};
    g.threshold = mm * bb + mm * (ncr * bb + (cr + ncr * cr) * ncr / 2) + mm * (bb + ncr * ncr * cr) + 2 * mm * bb;
    g.provenance = three_partition_provenance(tp);
    g.provenance["N_C"] = std::to_string(nc);
    g.provenance["C"] = std::to_string(c);

    if (certificate) {
        const auto& triples = *certificate;
        if (triples.size() != static_cast<std::size_t>(m))
            throw PreconditionError("certificate must have one triple per machine");
        std::vector<int> seen(tp.values.size(), 0);
        for (const auto& triple : triples) {
            int sum = 0;
            if (triple.size() != 3) throw PreconditionError("certificate entries must be triples");
            for (int k : triple) {
                if (k < 0 || static_cast<std::size_t>(k) >= tp.values.size() || seen[static_cast<std::size_t>(k)]++)
                    throw PreconditionError("certificate must use every value exactly once");
                sum += tp.values[static_cast<std::size_t>(k)];
            }
            if (sum != b) throw PreconditionError("certificate triple does not sum to b");
        }

        std::vector<JobTiming> t(inst.jobs.size());
        for (int i = 0; i < m; ++i) {
            auto triple = triples[static_cast<std::size_t>(i)];
            std::sort(triple.begin(), triple.end(), [&](int x, int y) {
                const int vx = tp.values[static_cast<std::size_t>(x)];
                const int vy = tp.values[static_cast<std::size_t>(y)];
                return vx != vy ? vx < vy : x < y;
            });
            Rational at{0};
            for (int k : triple) {
                const Rational p{tp.values[static_cast<std::size_t>(k)]};
                t[static_cast<std::size_t>(k)] = {i, at, at + p};
                at += p;
            }
            for (JobId j : c_jobs[static_cast<std::size_t>(i)]) {
                t[static_cast<std::size_t>(j)] = {i, at, at + cr};
                at += cr;
            }
            t[static_cast<std::size_t>(release_job[static_cast<std::size_t>(i)])] = {m + i, 0, bb};
            t[static_cast<std::size_t>(d_job[static_cast<std::size_t>(i)])] = {m + i, bb, bb + d_len};
        }
        g.witness = make_schedule(t);
    }
    return g;
}

GadgetInstance gen_unmovable_gadget(const ThreePartitionInput& tp)
{
    require_valid(tp);
    GadgetInstance g;
    g.kind = GadgetKind::unmovable_3partition;
    g.instance.machine_count = tp.m;
    g.instance.resource_count = static_cast<int>(tp.values.size());
    g.instance.unmovable = true;
    for (std::size_t k = 0; k < tp.values.size(); ++k)
        for (int u = 0; u < tp.values[k]; ++u) add_job(g.instance, 1, {static_cast<int>(k)});
    g.threshold = Rational(tp.m, 2) * tp.b * (tp.b + 1);
    g.provenance = three_partition_provenance(tp);
    return g;
}

GadgetInstance gen_partition2_gadget(const Graph& graph)
{
    const auto issue = graph.problem();
    if (!issue.empty()) throw PreconditionError("graph is not simple: " + issue);
    if (graph.edges.empty()) throw PreconditionError("graph has no edges");

    const int e = static_cast<int>(graph.edges.size());
    const int delta = graph.max_degree();
    GadgetInstance g;
    g.kind = GadgetKind::partition2_edgecoloring;
    g.instance.machine_count = e;
    g.instance.resource_count = graph.vertex_count;
    for (const auto& [u, v] : graph.edges) add_job(g.instance, 1, {std::min(u, v), std::max(u, v)});
    for (int k = 0; k < (delta - 1) * e; ++k) add_job(g.instance, 1, {});
    g.threshold = Rational(delta * (delta + 1) * e, 2);

    std::string edges;
    for (const auto& [u, v] : graph.edges) {
        if (!edges.empty()) edges += ',';
        edges += std::to_string(u) + "-" + std::to_string(v);
    }
    g.provenance = {{"vertices", std::to_string(graph.vertex_count)}, {"edges", edges}, {"max_degree", std::to_string(delta)}};
    return g;
}

GadgetInstance map_to_unrelated(const GadgetInstance& gadget, const Rational& forbidden_time)
{
    const Instance& src = gadget.instance;
    if (src.machine_subsets.empty()) throw PreconditionError("map_to_unrelated needs machine subsets");
    if (src.unrelated_times) throw PreconditionError("instance already has unrelated times");
    if (gadget.threshold && forbidden_time < *gadget.threshold)
        throw PreconditionError("forbidden time must be at least the threshold");

    GadgetInstance out = gadget;
    out.kind = GadgetKind::unrelated_mapped;
    std::vector<std::vector<Rational>> times(static_cast<std::size_t>(src.machine_count));
    for (int i = 0; i < src.machine_count; ++i)
        for (const Job& job : src.jobs)
            times[static_cast<std::size_t>(i)].push_back(src.machine_allowed(job.id, i) ? job.p : forbidden_time);
    out.instance.unrelated_times = std::move(times);
    out.instance.machine_subsets.clear();
    out.provenance["source"] = to_string(gadget.kind);
    out.provenance["T"] = to_string(forbidden_time);
    return out;
}

GadgetInstance gen_random(const RandomSpec& spec)
{
    if (spec.machines < 1 || spec.jobs < 1 || spec.resources < 1 || spec.p_max < 1)
        throw PreconditionError("random instance parameters must be positive");
    if (spec.q != 1 && spec.q != 2) throw PreconditionError("q must be 1 or 2");
    if (spec.q > spec.resources) throw PreconditionError("q = 2 requires at least 2 resources");

    boost::random::mt19937_64 rng(spec.seed);
    boost::random::uniform_int_distribution<int> p_dist(1, spec.p_max);
    GadgetInstance g;
    g.kind = GadgetKind::random;
    g.instance.machine_count = spec.machines;
    g.instance.resource_count = spec.resources;
    for (int j = 0; j < spec.jobs; ++j) {
        const int p = p_dist(rng);
        boost::random::uniform_int_distribution<int> r_dist(0, spec.resources - 1);
        std::vector<ResourceId> rs{r_dist(rng)};
        if (spec.q == 2) {
            boost::random::uniform_int_distribution<int> other(0, spec.resources - 2);
            int r = other(rng);
            if (r >= rs.front()) ++r;
            rs.push_back(r);
            std::sort(rs.begin(), rs.end());
        }
        add_job(g.instance, p, rs);
    }
    g.provenance = {{"machines", std::to_string(spec.machines)}, {"jobs", std::to_string(spec.jobs)},
                    {"resources", std::to_string(spec.resources)}, {"p_max", std::to_string(spec.p_max)},
                    {"q", std::to_string(spec.q)}, {"seed", std::to_string(spec.seed)}};
    return g;
}

std::vector<Graph> all_graphs(int vertices)
{
    if (vertices < 0 || vertices > 6) throw PreconditionError("all_graphs supports up to 6 vertices");
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < vertices; ++u)
        for (int v = u + 1; v < vertices; ++v) pairs.emplace_back(u, v);
    std::vector<Graph> out;
    for (unsigned mask = 1; mask < (1u << pairs.size()); ++mask) {
        Graph g;
        g.vertex_count = vertices;
        for (std::size_t k = 0; k < pairs.size(); ++k)
            if (mask & (1u << k)) g.edges.push_back(pairs[k]);
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<ThreePartitionInput> all_three_partition_inputs(int m, int b)
{
    if (m < 1 || b < 1) throw PreconditionError("m and b must be positive");
    const int lo = (b + 3) / 4;
    const int hi = b / 2;
    std::vector<ThreePartitionInput> out;
    std::vector<int> values;
    auto extend = [&](auto&& self, int from, int remaining) -> void {
        if (values.size() == static_cast<std::size_t>(3 * m)) {
            if (remaining == 0) out.push_back({m, b, values});
            return;
        }
        for (int a = from; a <= hi && a <= remaining; ++a) {
            values.push_back(a);
            self(self, a, remaining - a);
            values.pop_back();
        }
    };
    extend(extend, lo, m * b);
    return out;
}

} // namespace partsched
