#pragma once

#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "partsched/instance.hpp"
#include "partsched/reductions.hpp"

namespace th {

using namespace partsched;

// One resource per job: jobs[k] = {p, resource}.
inline Instance plain(int machines, int resources, std::initializer_list<std::pair<Rational, int>> jobs)
{
    Instance inst;
    inst.machine_count = machines;
    inst.resource_count = resources;
    for (const auto& [p, r] : jobs) inst.jobs.push_back({static_cast<int>(inst.jobs.size()), p, {r}, 1});
    return inst;
}

inline Schedule sched(std::initializer_list<std::tuple<int, int, Rational>> entries)
{
    Schedule s;
    for (const auto& [j, i, t] : entries) s.entries.push_back({j, i, t});
    return s;
}

inline Instance random_instance(std::uint64_t seed, int m, int n, int resources, int p_max, int q = 1)
{
    RandomSpec spec;
    spec.machines = m;
    spec.jobs = n;
    spec.resources = resources;
    spec.p_max = p_max;
    spec.q = q;
    spec.seed = seed;
    return gen_random(spec).instance;
}

// what() of the exception thrown by fn, or "" if nothing is thrown.
inline std::string error_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

inline bool contains(const std::string& text, const std::string& part) { return text.find(part) != std::string::npos; }

} // namespace th
