#include "partsched/graph.hpp"

#include <algorithm>
#include <set>

namespace partsched {

int Graph::max_degree() const
{
    std::vector<int> degree(static_cast<std::size_t>(std::max(vertex_count, 0)), 0);
    for (const auto& [u, v] : edges) {
        if (u >= 0 && u < vertex_count) ++degree[static_cast<std::size_t>(u)];
        if (v >= 0 && v < vertex_count) ++degree[static_cast<std::size_t>(v)];
    }
    return degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
}

std::string Graph::problem() const
{
    if (vertex_count < 0) return "negative vertex count";
    std::set<std::pair<int, int>> seen;
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
            return "edge {" + std::to_string(u) + "," + std::to_string(v) + "} out of range";
        if (u == v) return "self-loop at vertex " + std::to_string(u);
        if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
            return "repeated edge {" + std::to_string(u) + "," + std::to_string(v) + "}";
    }
    return {};
}

} // namespace partsched
