#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "partsched/graph.hpp"
#include "partsched/instance.hpp"

namespace partsched {

enum class GadgetKind {
    example41,
    lb_family,
    mr_3partition,
    unmovable_3partition,
    partition2_edgecoloring,
    unrelated_mapped,
    random,
};

std::string to_string(GadgetKind kind);

/// An instance together with the decision threshold of the construction it
/// came from. `provenance` records the source object as text (key -> value).
struct GadgetInstance {
    Instance instance;
    std::optional<Rational> threshold;
    GadgetKind kind = GadgetKind::random;
    std::map<std::string, std::string> provenance;
    /// Yes-side layout, when the construction comes with one.
    std::optional<Schedule> witness;
};

struct ThreePartitionInput {
    int m = 0;
    int b = 0;
    std::vector<int> values; // 3m integers

    /// Empty when sum = m*b, |values| = 3m and b/4 <= a <= b/2 for all a.
    std::string problem() const;
};

/// Exhaustive decision: can the values be split into m triples each summing to b?
/// Returns the triples (indices into values) when they exist.
std::optional<std::vector<std::vector<int>>> solve_three_partition(const ThreePartitionInput& tp);

/// Two machines; four unit jobs on each of two resources and four jobs of
/// length 1+eps on a third. Threshold 42 + 10 eps is the optimum.
GadgetInstance gen_example41(const Rational& eps);

/// Three machines; 3c unit jobs with private resources and 3c jobs of length
/// 1+eps sharing one resource. Threshold is the optimum 27c^2/4 + 3c + (9c^2+3c)eps/2.
GadgetInstance gen_lb_family(int c, const Rational& eps);

/// Machine-subset gadget on 2m machines. `certificate` (triples of indices
/// into tp.values, one per machine) makes the generator emit the yes-side
/// layout as `witness`.
GadgetInstance gen_mr_gadget(const ThreePartitionInput& tp,
                             const std::optional<std::vector<std::vector<int>>>& certificate = std::nullopt);

/// Unmovable unit-job gadget: a unit jobs on a fresh resource per value a.
GadgetInstance gen_unmovable_gadget(const ThreePartitionInput& tp);

/// Two-resources-per-job gadget: one machine and one unit job per edge, one
/// resource per vertex, (maxdeg - 1)|E| resource-free unit dummies.
GadgetInstance gen_partition2_gadget(const Graph& g);

/// Replaces machine subsets by unrelated times: p_ij = p_j on allowed
/// machines, `forbidden_time` elsewhere.
GadgetInstance map_to_unrelated(const GadgetInstance& gadget, const Rational& forbidden_time);

struct RandomSpec {
    int machines = 2;
    int jobs = 6;
    int resources = 3;
    int p_max = 4;
    int q = 1; // resources per job, 1 or 2
    std::uint64_t seed = 0;
};

/// Seeded instance: p uniform in [1, p_max], q distinct resources uniform.
GadgetInstance gen_random(const RandomSpec& spec);

/// All labelled simple graphs on `vertices` vertices with at least one edge.
std::vector<Graph> all_graphs(int vertices);

/// Every multiset satisfying the 3-PARTITION input constraints for (m, b).
std::vector<ThreePartitionInput> all_three_partition_inputs(int m, int b);

} // namespace partsched
