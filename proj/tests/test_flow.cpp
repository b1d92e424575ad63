#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "helpers.hpp"
#include "partsched/errors.hpp"
#include "partsched/flow.hpp"
#include "partsched/oracle.hpp"
#include "reference.hpp"

using namespace partsched;
using th::plain;

namespace {

Instance two_pairs() { return plain(2, 2, {{1, 0}, {1, 0}, {1, 1}, {1, 1}}); }

// Capacities, conservation and value, checked directly on the arc list.
void check_flow(const FlowNetwork& net, const Flow& flow)
{
    REQUIRE(flow.arc_flow.size() == net.arcs.size());
    std::vector<long> balance(static_cast<std::size_t>(net.node_count), 0);
    Rational cost{0};
    for (std::size_t a = 0; a < net.arcs.size(); ++a) {
        const auto& arc = net.arcs[a];
        const int f = flow.arc_flow[a];
        CHECK(f >= 0);
        CHECK(f <= arc.capacity);
        balance[static_cast<std::size_t>(arc.tail)] -= f;
        balance[static_cast<std::size_t>(arc.head)] += f;
        cost += arc.cost * f;
    }
    CHECK(balance[FlowNetwork::source] == -net.required_flow);
    CHECK(balance[FlowNetwork::sink] == net.required_flow);
    for (int v = 2; v < net.node_count; ++v) CHECK(balance[static_cast<std::size_t>(v)] == 0);
    CHECK(cost == flow.cost);
}

Instance random_unit(std::uint64_t seed, int m, int n, int resources)
{
    auto inst = th::random_instance(seed, m, n, resources, 1);
    return inst;
}

} // namespace

TEST_SUITE("flow")
{
    TEST_CASE("two resources, two jobs each: network shape and cost")
    {
        const auto net = build_network(two_pairs(), false);
        CHECK(net.node_count == 30);
        CHECK(net.arcs.size() == 52);
        CHECK(net.required_flow == 4);
        const auto flow = min_cost_flow(net);
        check_flow(net, flow);
        CHECK(flow.cost == 6);
        const auto s = decode(net, flow);
        CHECK(validate_schedule(two_pairs(), s).ok());
        CHECK(objective(two_pairs(), s) == 6);
        int first = 0;
        for (const auto& e : s.entries) first += e.start == 0;
        CHECK(first == 2);
        CHECK(brute_force_opt(two_pairs()).optimum == 6);
    }

    TEST_CASE("single job")
    {
        const auto inst = plain(1, 1, {{1, 0}});
        const auto net = build_network(inst, false);
        CHECK(net.arcs.size() == 5);
        CHECK(min_cost_flow(net).cost == 1);
    }

    TEST_CASE("one shared resource serialises everything")
    {
        const auto inst = plain(3, 1, {{1, 0}, {1, 0}, {1, 0}});
        CHECK(min_cost_flow(build_network(inst, false)).cost == 6);
        CHECK(ref::no_idle(inst).optimum == Rational(6));
    }

    TEST_CASE("arc and node counts follow the closed forms")
    {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const int m = 1 + static_cast<int>(seed % 3);
            const int n = 1 + static_cast<int>(seed % 7);
            const int r = 1 + static_cast<int>(seed % 4);
            const auto inst = random_unit(seed, m, n, r);
            const auto net = build_network(inst, false);
            CHECK(net.node_count == 2 + n + 2 * n * r + m * n);
            CHECK(static_cast<int>(net.arcs.size()) == n * (1 + n + r + r * m + m));
            CHECK(build_network(inst, true).arcs.size() == net.arcs.size());
        }
    }

    TEST_CASE("machine subsets drop arcs")
    {
        auto inst = two_pairs();
        inst.machine_subsets[0] = {0};
        const auto net = build_network(inst, false);
        for (const auto& arc : net.arcs)
            for (int p = 1; p <= net.job_count; ++p)
                CHECK_FALSE((arc.tail == net.resource_dup_node(0, p) && arc.head == net.machine_node(1, p)));
        CHECK(static_cast<int>(net.arcs.size()) == 52 - 4);
        const auto s = solve_unit(inst);
        CHECK(validate_schedule(inst, s).ok());
        CHECK(s.entries[0].machine == 0);
        CHECK(s.entries[1].machine == 0);
    }

    TEST_CASE("capacity sits on the duplicate arcs")
    {
        auto inst = plain(2, 1, {{1, 0}, {1, 0}});
        inst.capacities = {2};
        const auto net = build_network(inst, false);
        const auto dup = std::find_if(net.arcs.begin(), net.arcs.end(), [&](const FlowArc& a) {
            return a.tail == net.resource_node(0, 1) && a.head == net.resource_dup_node(0, 1);
        });
        REQUIRE(dup != net.arcs.end());
        CHECK(dup->capacity == 2);
        CHECK(objective(inst, solve_unit(inst)) == 2);
    }

    TEST_CASE("resource-free jobs use the free lane")
    {
        Instance inst;
        inst.machine_count = 2;
        inst.resource_count = 1;
        inst.jobs = {{0, 1, {0}, 1}, {1, 1, {}, 1}, {2, 1, {}, 1}};
        const auto net = build_network(inst, false);
        CHECK(net.lane_count == 2);
        const auto s = solve_unit(inst);
        CHECK(validate_schedule(inst, s).ok());
        CHECK(objective(inst, s) == 4);
    }

    TEST_CASE("weighted mode")
    {
        auto inst = plain(2, 1, {{1, 0}, {1, 0}});
        inst.jobs[1].weight = 10;
        const auto s = solve_unit(inst, true);
        CHECK(s.entries[1].start == 0);
        CHECK(objective(inst, s) == 12);

        const auto net = build_network(inst, true);
        for (const auto& arc : net.arcs)
            if (arc.head == FlowNetwork::sink) CHECK(arc.cost == 0);
        for (const auto& arc : net.arcs)
            if (arc.tail == net.job_node(1)) CHECK(arc.cost == 10 * (arc.head - net.resource_node(0, 1) + 1));
    }

    TEST_CASE("preconditions")
    {
        auto inst = plain(1, 1, {{2, 0}});
        CHECK(th::error_of([&] { build_network(inst, false); }) == "flow solver requires p_j = 1");
        auto unm = gen_unmovable_gadget({2, 4, {1, 1, 1, 1, 2, 2}}).instance;
        CHECK_THROWS_AS(solve_unit(unm), PreconditionError);
    }

    TEST_CASE("infeasible network")
    {
        auto net = build_network(two_pairs(), false);
        net.required_flow = 5;
        CHECK(th::error_of([&] { min_cost_flow(net); }) == "infeasible network");
    }

    TEST_CASE("dump format")
    {
        const auto net = build_network(plain(1, 1, {{1, 0}}), false);
        std::ostringstream out;
        dump_network(out, net);
        CHECK(out.str() == "6 5\n0 2 1 0\n2 3 1 0\n3 4 1 0\n4 5 1 0\n5 1 1 1\n");
    }

    TEST_CASE("decoded schedules are feasible and cost what the flow costs")
    {
        for (std::uint64_t seed = 0; seed < 150; ++seed) {
            auto inst = random_unit(seed, 1 + static_cast<int>(seed % 3), 2 + static_cast<int>(seed % 6), 3);
            if (seed % 3 == 1) inst.capacities = {2, 1, 2};
            if (seed % 5 == 2 && inst.machine_count > 1) inst.machine_subsets[1] = {0};
            const bool weighted = seed % 2 == 0;
            if (weighted)
                for (auto& job : inst.jobs) job.weight = Rational(1 + job.id % 3, 1 + job.id % 2);
            const auto net = build_network(inst, weighted);
            const auto flow = min_cost_flow(net);
            check_flow(net, flow);
            const auto s = decode(net, flow);
            CHECK(validate_schedule(inst, s).ok());
            CHECK(objective(inst, s) == flow.cost);
        }
    }

    TEST_CASE("weighted optimum matches a slot enumeration")
    {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            auto inst = random_unit(seed, 2, 5, 2);
            for (auto& job : inst.jobs) job.weight = 1 + static_cast<int>((seed + static_cast<std::uint64_t>(job.id) * 7) % 5);
            CHECK(objective(inst, solve_unit(inst, true)) == *ref::unit_slots(inst));
        }
    }
}
