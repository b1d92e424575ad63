#pragma once

#include <string>
#include <utility>
#include <vector>

namespace partsched {

/// Simple undirected graph on vertices 0..vertex_count-1.
struct Graph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;

    int max_degree() const;

    /// Empty when the graph is simple (no loops, no repeated edges, ids in range).
    std::string problem() const;

    friend bool operator==(const Graph&, const Graph&) = default;
};

} // namespace partsched
