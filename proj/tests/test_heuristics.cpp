#include "doctest.h"

#include "helpers.hpp"
#include "partsched/errors.hpp"
#include "partsched/flow.hpp"
#include "partsched/heuristics.hpp"
#include "partsched/oracle.hpp"
#include "partsched/structure.hpp"

using namespace partsched;
using th::plain;

TEST_SUITE("heuristics")
{
    TEST_CASE("spt-available on example41")
    {
        const auto g = gen_example41(Rational(1, 2));
        const auto s = spt_available(g.instance);
        CHECK(validate_schedule(g.instance, s).ok());
        CHECK(objective(g.instance, s) == 51);
    }

    TEST_CASE("spt-available on the lower-bound family")
    {
        const auto g = gen_lb_family(2, Rational(1, 100));
        CHECK(objective(g.instance, spt_available(g.instance)) == 42 + Rational(21, 100));
    }

    TEST_CASE("distinct resources reduce to plain SPT")
    {
        const auto inst = plain(2, 5, {{3, 0}, {1, 1}, {2, 2}, {2, 3}, {1, 4}});
        // SPT on two machines: 1,1 | 2,2 | 3 -> 1+1+3+3+6
        CHECK(objective(inst, spt_available(inst)) == 14);
        CHECK(brute_force_opt(inst).optimum == 14);
    }

    TEST_CASE("affinity keeps a released resource on its machine")
    {
        // At t = 1 both machines are free and r1 was released by machine 1.
        const auto inst = plain(2, 2, {{1, 0}, {1, 1}, {1, 1}});
        const auto s = spt_available(inst);
        CHECK(s.entries[0].machine == 0);
        CHECK(s.entries[1].machine == 1);
        CHECK(s.entries[2].machine == 1);
        CHECK(s.entries[2].start == 1);
    }

    TEST_CASE("spt-available rejects extended instances")
    {
        auto inst = plain(1, 1, {{1, 0}});
        inst.unmovable = true;
        CHECK(th::error_of([&] { spt_available(inst); }) == "spt-available requires plain partition instances");
        auto two = plain(1, 2, {{1, 0}});
        two.jobs[0].resources = {0, 1};
        CHECK_THROWS_AS(spt_available(two), PreconditionError);
    }

    TEST_CASE("spt-available properties on random instances")
    {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const auto inst = th::random_instance(seed, 2 + static_cast<int>(seed % 3), 8, 3, 4);
            const auto s = spt_available(inst);
            CHECK(validate_schedule(inst, s).ok());
            CHECK_FALSE(has_idle_time(inst, s));
            CHECK(is_tight(inst, s));
            CHECK(normalize_tight(inst, s) == s);
            const auto b = bounds(inst);
            CHECK(per_job_bound_violations(inst, s, b).empty());
        }
    }

    TEST_CASE("shrink with c = 1 is the flow optimum")
    {
        const auto inst = plain(2, 2, {{1, 0}, {1, 0}, {1, 1}, {1, 0}});
        CHECK(objective(inst, shrink_solve(inst, 1)) == objective(inst, solve_unit(inst)));
    }

    TEST_CASE("shrink stretches the unit shadow")
    {
        const auto inst = plain(2, 2, {{1, 0}, {2, 0}, {2, 1}, {1, 1}});
        auto shadow = inst;
        for (auto& job : shadow.jobs) job.p = 1;
        CHECK(objective(shadow, solve_unit(shadow)) == 6);
        const auto s = shrink_solve(inst, 2);
        CHECK(validate_schedule(inst, s).ok());
        CHECK(objective(inst, s) <= 12);
        const auto compact = shrink_solve(inst, 2, {true});
        CHECK(validate_schedule(inst, compact).ok());
        CHECK(objective(inst, compact) <= objective(inst, s));
        CHECK_FALSE(has_idle_time(inst, compact));
    }

    TEST_CASE("shrink preconditions")
    {
        const auto inst = plain(1, 1, {{3, 0}});
        CHECK_THROWS_AS(shrink_solve(inst, 2), PreconditionError);
        CHECK_THROWS_AS(shrink_solve(plain(1, 1, {{Rational(1, 2), 0}}), 2), PreconditionError);
        CHECK_THROWS_AS(shrink_solve(inst, 0), PreconditionError);
    }

    TEST_CASE("bounds")
    {
        const auto chain = plain(2, 1, {{1, 0}, {2, 0}, {3, 0}});
        const auto b = bounds(chain);
        CHECK(b.per_job_k == std::vector<Rational>{1, 3, 6});
        CHECK(b.sum_k == 10);
        CHECK(b.opt1 == 10);
        CHECK(b.opt1_over_m == 5);

        const auto free = plain(1, 2, {{1, 0}, {1, 1}});
        CHECK(bounds(free).per_job_k == std::vector<Rational>{1, 1});
        CHECK(bounds(free).sum_k == 2);

        const auto ties = plain(1, 1, {{2, 0}, {1, 0}, {2, 0}});
        CHECK(bounds(ties).per_job_k == std::vector<Rational>{3, 1, 5});
        CHECK(bounds(ties).c1 == std::vector<Rational>{3, 1, 5});

        const auto g = gen_example41(Rational(1, 2));
        CHECK(bounds(g.instance).sum_k <= 47);
    }
}
