#include "doctest.h"

#include <map>

#include "helpers.hpp"
#include "partsched/errors.hpp"
#include "partsched/io.hpp"
#include "partsched/oracle.hpp"

using namespace partsched;

namespace {

const Graph kite{4, {{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}}};

} // namespace

TEST_SUITE("reductions")
{
    TEST_CASE("example41 family")
    {
        for (const Rational eps : {Rational(1, 2), Rational(1), Rational(1, 1000)}) {
            const auto g = gen_example41(eps);
            CHECK(g.instance.jobs.size() == 12);
            CHECK(g.instance.resource_count == 3);
            CHECK(g.instance.machine_count == 2);
            CHECK(g.threshold == 42 + 10 * eps);
            CHECK(validate_instance(g.instance).ok());
            REQUIRE(g.witness);
            CHECK(objective(g.instance, *g.witness) == *g.threshold);
        }
        CHECK_THROWS_AS(gen_example41(Rational(0)), PreconditionError);
    }

    TEST_CASE("lower-bound family")
    {
        const auto g = gen_lb_family(2, Rational(1, 100));
        CHECK(g.instance.machine_count == 3);
        CHECK(g.instance.resource_count == 7);
        CHECK(g.instance.jobs.size() == 12);
        CHECK(g.threshold == Rational(3321, 100));
        REQUIRE(g.witness);
        CHECK(validate_schedule(g.instance, *g.witness).ok());
        CHECK(objective(g.instance, *g.witness) == Rational(3321, 100));
        CHECK(gen_lb_family(4, Rational(1, 100)).instance.resource_count == 13);
        CHECK_THROWS_AS(gen_lb_family(3, Rational(1, 100)), PreconditionError);
        CHECK_THROWS_AS(gen_lb_family(0, Rational(1, 100)), PreconditionError);
    }

    TEST_CASE("three-partition inputs")
    {
        CHECK(ThreePartitionInput{1, 4, {1, 1, 2}}.problem().empty());
        CHECK_FALSE(ThreePartitionInput{2, 4, {2, 2, 2, 1, 1, 2}}.problem().empty());
        CHECK_FALSE(ThreePartitionInput{1, 8, {1, 3, 4}}.problem().empty());
        CHECK(solve_three_partition({2, 4, {1, 1, 1, 1, 2, 2}}));
        CHECK_FALSE(solve_three_partition({2, 12, {5, 5, 5, 3, 3, 3}}));
        const auto all = all_three_partition_inputs(2, 4);
        REQUIRE(all.size() == 1);
        CHECK(all[0].values == std::vector<int>{1, 1, 1, 1, 2, 2});
        for (const auto& tp : all_three_partition_inputs(2, 12)) CHECK(tp.problem().empty());
    }

    TEST_CASE("machine-subset gadget")
    {
        const ThreePartitionInput tp{1, 4, {1, 1, 2}};
        const auto g = gen_mr_gadget(tp, solve_three_partition(tp));
        CHECK(g.instance.jobs.size() == 13);
        CHECK(g.instance.machine_count == 2);
        CHECK(g.threshold == 3248);
        CHECK(g.provenance.at("N_C") == "8");
        CHECK(g.provenance.at("C") == "32");
        CHECK(validate_instance(g.instance).ok());
        Rational longest{0};
        for (const auto& job : g.instance.jobs) longest = std::max(longest, job.p);
        CHECK(longest == 2048);
        REQUIRE(g.witness);
        CHECK(validate_schedule(g.instance, *g.witness).ok());
        const auto z = objective(g.instance, *g.witness);
        CHECK(z == 3247);
        CHECK(z <= *g.threshold);
        CHECK_FALSE(gen_mr_gadget(tp).witness);
        CHECK_THROWS_AS(gen_mr_gadget({1, 4, {1, 1, 1}}), PreconditionError);
    }

    TEST_CASE("machine-subset witness objective is the closed form")
    {
        // witness objective = mb + m(N_C b + (C + N_C C) N_C / 2) + m(b + N_C^2 C) + Z_A
        for (const auto& tp : all_three_partition_inputs(2, 8)) {
            const auto cert = solve_three_partition(tp);
            if (!cert) continue;
            const auto g = gen_mr_gadget(tp, cert);
            const std::int64_t m = tp.m, b = tp.b, nc = 2 * m * b, c = 8 * m * b;
            Rational za{0};
            for (const auto& triple : *cert) {
                std::vector<int> vals;
                for (int k : triple) vals.push_back(tp.values[static_cast<std::size_t>(k)]);
                std::sort(vals.begin(), vals.end());
                int t = 0;
                for (int v : vals) za += (t += v);
            }
            CHECK(za * 4 >= 7 * m * b);
            CHECK(za <= 2 * m * b);
            const Rational feas = m * b + m * (nc * b + (c + nc * c) * nc / 2) + m * (b + nc * nc * c) + za;
            REQUIRE(g.witness);
            CHECK(validate_schedule(g.instance, *g.witness).ok());
            CHECK(objective(g.instance, *g.witness) == feas);
            CHECK(feas <= *g.threshold);
        }
    }

    TEST_CASE("map to unrelated")
    {
        const ThreePartitionInput tp{1, 4, {1, 1, 2}};
        const auto g = gen_mr_gadget(tp, solve_three_partition(tp));
        const auto u = map_to_unrelated(g, *g.threshold);
        CHECK(u.kind == GadgetKind::unrelated_mapped);
        CHECK(u.threshold == g.threshold);
        CHECK(u.instance.machine_subsets.empty());
        REQUIRE(u.instance.unrelated_times);
        for (int i = 0; i < g.instance.machine_count; ++i)
            for (const auto& job : g.instance.jobs) {
                const auto& t = (*u.instance.unrelated_times)[static_cast<std::size_t>(i)][static_cast<std::size_t>(job.id)];
                CHECK(t == (g.instance.machine_allowed(job.id, i) ? job.p : *g.threshold));
            }
        REQUIRE(u.witness);
        CHECK(validate_schedule(u.instance, *u.witness).ok());
        CHECK(objective(u.instance, *u.witness) == objective(g.instance, *g.witness));
        CHECK_THROWS_AS(map_to_unrelated(g, *g.threshold - 1), PreconditionError);
        CHECK_THROWS_AS(map_to_unrelated(gen_example41(Rational(1)), 100), PreconditionError);
    }

    TEST_CASE("tiny restricted instance keeps its optimum under the map")
    {
        GadgetInstance g;
        g.instance = th::plain(2, 2, {{1, 0}, {2, 1}});
        g.instance.machine_subsets[0] = {1};
        g.threshold = 10;
        const auto u = map_to_unrelated(g, 10);
        CHECK(brute_force_opt(g.instance).optimum == 3);
        CHECK(brute_force_opt(u.instance).optimum == 3);
    }

    TEST_CASE("unmovable gadget")
    {
        const auto g = gen_unmovable_gadget({2, 4, {1, 1, 2, 2, 1, 1}});
        CHECK(g.instance.jobs.size() == 8);
        CHECK(g.instance.resource_count == 6);
        CHECK(g.instance.unmovable);
        CHECK(g.threshold == 20);
        CHECK(brute_force_opt(g.instance).optimum == 20);
        CHECK_THROWS_AS(gen_unmovable_gadget({2, 4, {2, 2, 2, 1, 1, 2}}), PreconditionError);
    }

    TEST_CASE("unmovable gadget separates a no-instance")
    {
        const ThreePartitionInput tp{2, 12, {5, 5, 5, 3, 3, 3}};
        REQUIRE_FALSE(solve_three_partition(tp));
        const auto g = gen_unmovable_gadget(tp);
        CHECK(g.instance.jobs.size() == 24);
        CHECK(g.threshold == 156);
        CHECK(brute_force_opt(g.instance).optimum > 156);
    }

    TEST_CASE("partition(2) gadget")
    {
        const auto g = gen_partition2_gadget(kite);
        CHECK(g.instance.machine_count == 5);
        CHECK(g.instance.jobs.size() == 15);
        CHECK(g.threshold == 30);
        int edge_jobs = 0;
        for (const auto& job : g.instance.jobs) edge_jobs += job.resources.size() == 2;
        CHECK(edge_jobs == 5);

        const Graph triangle{3, {{0, 1}, {1, 2}, {0, 2}}};
        const auto t = gen_partition2_gadget(triangle);
        CHECK(t.threshold == 9);
        CHECK(brute_force_opt(t.instance).optimum == 10);
        const auto p = gen_partition2_gadget(Graph{3, {{0, 1}, {1, 2}}});
        CHECK(p.threshold == 6);
        CHECK(brute_force_opt(p.instance).optimum == 6);
        CHECK_THROWS_AS(gen_partition2_gadget(Graph{2, {}}), PreconditionError);
        CHECK_THROWS_AS(gen_partition2_gadget(Graph{2, {{0, 0}}}), PreconditionError);
    }

    TEST_CASE("partition(2) gadget shape")
    {
        for (const auto& graph : all_graphs(4)) {
            const auto g = gen_partition2_gadget(graph);
            const int delta = graph.max_degree();
            CHECK(g.instance.jobs.size() == static_cast<std::size_t>(delta) * graph.edges.size());
            std::map<int, int> uses;
            for (const auto& job : g.instance.jobs)
                for (int r : job.resources) ++uses[r];
            for (const auto& [r, k] : uses) CHECK(k <= delta);
            CHECK(validate_instance(g.instance).ok());
        }
        CHECK(all_graphs(4).size() == 63);
        CHECK(all_graphs(3).size() == 7);
    }

    TEST_CASE("random generator")
    {
        RandomSpec spec;
        spec.seed = 42;
        spec.jobs = 10;
        const auto a = gen_random(spec);
        const auto b = gen_random(spec);
        CHECK(a.instance == b.instance);
        CHECK(instance_to_json(a.instance).dump() == instance_to_json(b.instance).dump());
        CHECK_FALSE(a.threshold);
        for (const auto& job : a.instance.jobs) {
            CHECK(job.p >= 1);
            CHECK(job.p <= spec.p_max);
        }
        spec.q = 2;
        for (const auto& job : gen_random(spec).instance.jobs) {
            REQUIRE(job.resources.size() == 2);
            CHECK(job.resources[0] != job.resources[1]);
        }
        spec.resources = 1;
        CHECK_THROWS_AS(gen_random(spec), PreconditionError);
        spec.q = 3;
        CHECK_THROWS_AS(gen_random(spec), PreconditionError);
    }

    TEST_CASE("all-singleton resources give the plain SPT optimum")
    {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            RandomSpec spec;
            spec.seed = seed;
            spec.jobs = 6;
            spec.resources = 30;
            spec.machines = 2;
            auto inst = gen_random(spec).instance;
            for (auto& job : inst.jobs) job.resources = {job.id};
            std::vector<Rational> p;
            for (const auto& job : inst.jobs) p.push_back(job.p);
            std::sort(p.begin(), p.end());
            std::vector<Rational> load(2, Rational{0});
            Rational spt{0};
            for (std::size_t k = 0; k < p.size(); ++k) spt += (load[k % 2] += p[k]);
            CHECK(brute_force_opt(inst).optimum == spt);
        }
    }

    TEST_CASE("every generated instance is well-formed")
    {
        CHECK(validate_instance(gen_example41(Rational(1, 3)).instance).ok());
        CHECK(validate_instance(gen_lb_family(6, Rational(1, 7)).instance).ok());
        CHECK(validate_instance(gen_unmovable_gadget({2, 12, {5, 5, 5, 3, 3, 3}}).instance).ok());
        for (const auto& tp : all_three_partition_inputs(2, 8)) CHECK(validate_instance(gen_mr_gadget(tp).instance).ok());
        for (std::uint64_t seed = 0; seed < 50; ++seed) CHECK(validate_instance(th::random_instance(seed, 3, 7, 4, 5, 2)).ok());
    }
}
