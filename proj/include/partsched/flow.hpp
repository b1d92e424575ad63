#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "partsched/instance.hpp"

namespace partsched {

/// Position-indexed min-cost-flow model of a unit-time instance.
///
/// Node layout (indices in this order):
///   source, sink,
///   one node per job,
///   (resource, position) nodes, resource-major,
///   their duplicates (resource, position)', same order,
///   (machine, position) nodes, machine-major.
/// Positions run 1..n. Jobs without resources use an extra lane resource with
/// capacity n, placed after the real resources.
struct FlowArc {
    int tail = 0;
    int head = 0;
    int capacity = 0;
    Rational cost{0};
};

struct FlowNetwork {
    int node_count = 0;
    std::vector<FlowArc> arcs;
    int required_flow = 0;

    int job_count = 0;
    int lane_count = 0; // resources, plus one if the free lane is present
    int machine_count = 0;
    bool weighted = false;

    static constexpr int source = 0;
    static constexpr int sink = 1;
    int job_node(int job) const { return 2 + job; }
    int resource_node(int lane, int position) const { return 2 + job_count + lane * job_count + (position - 1); }
    int resource_dup_node(int lane, int position) const
    {
        return 2 + job_count + lane_count * job_count + lane * job_count + (position - 1);
    }
    int machine_node(int machine, int position) const
    {
        return 2 + job_count + 2 * lane_count * job_count + machine * job_count + (position - 1);
    }
};

struct Flow {
    std::vector<int> arc_flow; // parallel to FlowNetwork::arcs
    Rational cost{0};
};

/// Requires p_j = 1 and at most one resource per job; no unmovable flag or
/// unrelated times. Machine subsets drop the (r,p)' -> (i,p) arcs for
/// machines outside M_r. In weighted mode the cost w_j * position sits on the
/// job -> (r, position) arcs instead of the machine -> sink arcs.
FlowNetwork build_network(const Instance& inst, bool weighted);

/// Successive shortest augmenting paths with node potentials. Throws
/// InfeasibleError("infeasible network") if the required flow cannot be routed.
Flow min_cost_flow(const FlowNetwork& net);

/// Reads one (machine, position) per job off an integral flow; the job runs in
/// [position - 1, position). Position gaps are kept.
Schedule decode(const FlowNetwork& net, const Flow& flow);

/// build_network -> min_cost_flow -> decode.
Schedule solve_unit(const Instance& inst, bool weighted = false);

/// "N A" header (node and arc counts), then one "tail head capacity cost" line per arc.
void dump_network(std::ostream& out, const FlowNetwork& net);

} // namespace partsched
