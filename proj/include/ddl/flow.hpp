#ifndef DDL_FLOW_HPP
#define DDL_FLOW_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include "ddl/types.hpp"

namespace ddl
{

/// Dinic max-flow on a small directed graph with integer capacities.
class MaxFlow
{
  public:
    explicit MaxFlow(std::size_t nodes) : adjacency_(nodes), level_(nodes), next_edge_(nodes) {}

    void add_edge(std::size_t from, std::size_t to, Count capacity)
    {
        adjacency_[from].push_back(edges_.size());
        edges_.push_back({to, capacity});
        adjacency_[to].push_back(edges_.size());
        edges_.push_back({from, 0});
    }

    Count run(std::size_t source, std::size_t sink)
    {
        Count flow = 0;
        while (build_levels(source, sink))
        {
            std::fill(next_edge_.begin(), next_edge_.end(), 0);
            while (Count pushed = augment(source, sink, std::numeric_limits<Count>::max()))
                flow += pushed;
        }
        return flow;
    }

  private:
    struct Edge
    {
        std::size_t to;
        Count residual;
    };

    bool build_levels(std::size_t source, std::size_t sink)
    {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<std::size_t> frontier;
        level_[source] = 0;
        frontier.push(source);
        while (!frontier.empty())
        {
            const std::size_t u = frontier.front();
            frontier.pop();
            for (std::size_t id : adjacency_[u])
            {
                const Edge& e = edges_[id];
                if (e.residual > 0 && level_[e.to] < 0)
                {
                    level_[e.to] = level_[u] + 1;
                    frontier.push(e.to);
                }
            }
        }
        return level_[sink] >= 0;
    }

    Count augment(std::size_t u, std::size_t sink, Count limit)
    {
        if (u == sink)
            return limit;
        for (std::size_t& i = next_edge_[u]; i < adjacency_[u].size(); ++i)
        {
            const std::size_t id = adjacency_[u][i];
            Edge& e = edges_[id];
            if (e.residual <= 0 || level_[e.to] != level_[u] + 1)
                continue;
            if (Count pushed = augment(e.to, sink, std::min(limit, e.residual)))
            {
                e.residual -= pushed;
                edges_[id ^ 1].residual += pushed;
                return pushed;
            }
        }
        return 0;
    }

    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> adjacency_;
    std::vector<int> level_;
    std::vector<std::size_t> next_edge_;
};

} // namespace ddl

#endif // DDL_FLOW_HPP
