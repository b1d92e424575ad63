#include "partsched/flow.hpp"

#include <algorithm>
#include <optional>
#include <queue>
#include <set>

#include "partsched/errors.hpp"

namespace partsched {

FlowNetwork build_network(const Instance& inst, bool weighted)
{
    if (!validate_instance(inst).ok()) throw PreconditionError("instance is not well-formed");
    if (inst.unrelated_times) throw PreconditionError("flow solver does not support unrelated machines");
    if (inst.unmovable) throw PreconditionError("flow solver does not support unmovable resources");
    for (const Job& job : inst.jobs) {
        if (job.p != 1) throw PreconditionError("flow solver requires p_j = 1");
        if (job.resources.size() > 1) throw PreconditionError("flow solver requires at most one resource per job");
    }

    const int n = static_cast<int>(inst.jobs.size());
    const int m = inst.machine_count;
    const bool free_lane = std::any_of(inst.jobs.begin(), inst.jobs.end(), [](const Job& j) { return j.resources.empty(); });

    FlowNetwork net;
    net.job_count = n;
    net.machine_count = m;
    net.lane_count = inst.resource_count + (free_lane ? 1 : 0);
    net.weighted = weighted;
    net.required_flow = n;
    net.node_count = 2 + n + 2 * net.lane_count * n + m * n;

    const int lanes = net.lane_count;
    const std::size_t arc_estimate = static_cast<std::size_t>(n) * static_cast<std::size_t>(1 + n + lanes + lanes * m + m);
    net.arcs.reserve(arc_estimate);

    for (int j = 0; j < n; ++j) net.arcs.push_back({FlowNetwork::source, net.job_node(j), 1, Rational{0}});
    for (int j = 0; j < n; ++j) {
        const auto& job = inst.jobs[static_cast<std::size_t>(j)];
        const int lane = job.resources.empty() ? inst.resource_count : job.resources.front();
        for (int pos = 1; pos <= n; ++pos)
            net.arcs.push_back({net.job_node(j), net.resource_node(lane, pos), 1,
                                weighted ? job.weight * pos : Rational{0}});
    }
    for (int lane = 0; lane < lanes; ++lane) {
        const int cap = lane < inst.resource_count ? inst.capacity(lane) : n;
        for (int pos = 1; pos <= n; ++pos)
            net.arcs.push_back({net.resource_node(lane, pos), net.resource_dup_node(lane, pos), cap, Rational{0}});
    }
    for (int lane = 0; lane < lanes; ++lane) {
        const auto subset = inst.machine_subsets.find(lane);
        for (int pos = 1; pos <= n; ++pos)
            for (int i = 0; i < m; ++i) {
                if (lane < inst.resource_count && subset != inst.machine_subsets.end() &&
                    std::find(subset->second.begin(), subset->second.end(), i) == subset->second.end())
                    continue;
                net.arcs.push_back({net.resource_dup_node(lane, pos), net.machine_node(i, pos), 1, Rational{0}});
            }
    }
    for (int i = 0; i < m; ++i)
        for (int pos = 1; pos <= n; ++pos)
            net.arcs.push_back({net.machine_node(i, pos), FlowNetwork::sink, 1, weighted ? Rational{0} : Rational{pos}});
    return net;
}

namespace {

struct Residual {
    int to;
    int cap;
    Rational cost;
    std::size_t rev;   // index of the reverse edge in adj[to]
    int arc;           // original arc index, -1 for reverse edges
};

} // namespace

Flow min_cost_flow(const FlowNetwork& net)
{
    const auto nodes = static_cast<std::size_t>(net.node_count);
    std::vector<std::vector<Residual>> adj(nodes);
    for (std::size_t a = 0; a < net.arcs.size(); ++a) {
        const auto& arc = net.arcs[a];
        const auto u = static_cast<std::size_t>(arc.tail);
        const auto v = static_cast<std::size_t>(arc.head);
        adj[u].push_back({arc.head, arc.capacity, arc.cost, adj[v].size() + (u == v ? 1 : 0), static_cast<int>(a)});
        adj[v].push_back({arc.tail, 0, -arc.cost, adj[u].size() - 1, -1});
    }

    std::vector<Rational> potential(nodes, Rational{0});
    Flow flow;
    flow.arc_flow.assign(net.arcs.size(), 0);

    for (int unit = 0; unit < net.required_flow; ++unit) {
        std::vector<std::optional<Rational>> dist(nodes);
        std::vector<std::pair<int, std::size_t>> pred(nodes, {-1, 0});
        using Item = std::pair<Rational, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
        dist[FlowNetwork::source] = Rational{0};
        queue.push({Rational{0}, FlowNetwork::source});
        std::vector<bool> done(nodes, false);
        while (!queue.empty()) {
            const auto [d, u] = queue.top();
            queue.pop();
            const auto uu = static_cast<std::size_t>(u);
            if (done[uu]) continue;
            done[uu] = true;
            for (std::size_t e = 0; e < adj[uu].size(); ++e) {
                const auto& edge = adj[uu][e];
                if (edge.cap <= 0) continue;
                const auto vv = static_cast<std::size_t>(edge.to);
                if (done[vv]) continue;
                const Rational nd = d + edge.cost + potential[uu] - potential[vv];
                if (!dist[vv] || nd < *dist[vv]) {
                    dist[vv] = nd;
                    pred[vv] = {u, e};
                    queue.push({nd, edge.to});
                }
            }
        }
        if (!dist[FlowNetwork::sink]) throw InfeasibleError("infeasible network");
        for (std::size_t v = 0; v < nodes; ++v)
            if (dist[v]) potential[v] += *dist[v];

        for (int v = FlowNetwork::sink; v != FlowNetwork::source;) {
            const auto [u, e] = pred[static_cast<std::size_t>(v)];
            auto& edge = adj[static_cast<std::size_t>(u)][e];
            edge.cap -= 1;
            adj[static_cast<std::size_t>(v)][edge.rev].cap += 1;
            if (edge.arc >= 0)
                flow.arc_flow[static_cast<std::size_t>(edge.arc)] += 1;
            else
                flow.arc_flow[static_cast<std::size_t>(adj[static_cast<std::size_t>(v)][edge.rev].arc)] -= 1;
            v = u;
        }
    }

    for (std::size_t a = 0; a < net.arcs.size(); ++a) flow.cost += net.arcs[a].cost * flow.arc_flow[a];
    return flow;
}

Schedule decode(const FlowNetwork& net, const Flow& flow)
{
    const int n = net.job_count;
    if (flow.arc_flow.size() != net.arcs.size()) throw Error("flow does not match network");
    for (std::size_t a = 0; a < net.arcs.size(); ++a)
        if (flow.arc_flow[a] < 0 || flow.arc_flow[a] > net.arcs[a].capacity)
            throw Error("flow violates arc capacity");

    // (lane, position) of each job, and the machines fed by each (lane, position)'.
    std::vector<std::optional<std::pair<int, int>>> slot(static_cast<std::size_t>(n));
    std::map<std::pair<int, int>, std::vector<int>> machines_at;
    const int res_base = net.resource_node(0, 1);
    const int dup_base = net.resource_dup_node(0, 1);
    const int mach_base = net.machine_node(0, 1);
    for (std::size_t a = 0; a < net.arcs.size(); ++a) {
        if (flow.arc_flow[a] == 0) continue;
        const auto& arc = net.arcs[a];
        if (arc.tail >= net.job_node(0) && arc.tail < res_base) {
            const int job = arc.tail - net.job_node(0);
            const int off = arc.head - res_base;
            if (slot[static_cast<std::size_t>(job)]) throw Error("flow is not path-decomposable");
            slot[static_cast<std::size_t>(job)] = std::pair{off / n, off % n + 1};
        } else if (arc.tail >= dup_base && arc.tail < mach_base) {
            const int off = arc.tail - dup_base;
            const int machine = (arc.head - mach_base) / n;
            machines_at[{off / n, off % n + 1}].push_back(machine);
        }
    }

    std::vector<JobTiming> timing(static_cast<std::size_t>(n));
    std::map<std::pair<int, int>, std::size_t> used;
    for (int j = 0; j < n; ++j) {
        if (!slot[static_cast<std::size_t>(j)]) throw Error("flow does not route job " + std::to_string(j));
        const auto key = *slot[static_cast<std::size_t>(j)];
        auto& list = machines_at[key];
        auto& k = used[key];
        if (k >= list.size()) throw Error("flow is not path-decomposable");
        std::sort(list.begin(), list.end());
        const Rational start{key.second - 1};
        timing[static_cast<std::size_t>(j)] = {list[k++], start, start + 1};
    }
    return make_schedule(timing);
}

Schedule solve_unit(const Instance& inst, bool weighted)
{
    const auto net = build_network(inst, weighted);
    return decode(net, min_cost_flow(net));
}

void dump_network(std::ostream& out, const FlowNetwork& net)
{
    out << net.node_count << ' ' << net.arcs.size() << '\n';
    for (const auto& arc : net.arcs)
        out << arc.tail << ' ' << arc.head << ' ' << arc.capacity << ' ' << to_string(arc.cost) << '\n';
}

} // namespace partsched
