#include "pmanon/transport.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "pmanon/error.hpp"

namespace pmanon {

TransportSolution solve_transport(const std::vector<std::int64_t>& supply, const std::vector<std::int64_t>& demand,
                                  const std::vector<double>& cost) {
    const std::size_t n = supply.size(), m = demand.size();
    if (cost.size() != n * m) throw ValidationError("transport cost matrix has the wrong shape");
    for (auto s : supply)
        if (s < 0) throw ValidationError("negative supply");
    for (auto d : demand)
        if (d < 0) throw ValidationError("negative demand");
    if (std::accumulate(supply.begin(), supply.end(), std::int64_t{0}) !=
        std::accumulate(demand.begin(), demand.end(), std::int64_t{0}))
        throw ValidationError("supply and demand totals differ");

    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<std::int64_t> rs = supply, rd = demand;
    std::vector<std::int64_t> flow(n * m, 0);
    // Nodes 0..n-1 are sources, n..n+m-1 are sinks.
    std::vector<double> pot(n + m, 0.0), dist(n + m);
    std::vector<std::ptrdiff_t> prev(n + m);
    std::vector<char> done(n + m);

    while (true) {
        std::fill(dist.begin(), dist.end(), inf);
        std::fill(prev.begin(), prev.end(), -1);
        std::fill(done.begin(), done.end(), 0);
        bool any = false;
        for (std::size_t i = 0; i < n; ++i)
            if (rs[i] > 0) dist[i] = 0.0, any = true;
        if (!any) break;

        // Dense Dijkstra on reduced costs.
        while (true) {
            std::ptrdiff_t u = -1;
            for (std::size_t v = 0; v < n + m; ++v)
                if (!done[v] && dist[v] < inf && (u < 0 || dist[v] < dist[u])) u = static_cast<std::ptrdiff_t>(v);
            if (u < 0) break;
            done[u] = 1;
            if (static_cast<std::size_t>(u) < n) {
                const std::size_t i = static_cast<std::size_t>(u);
                for (std::size_t j = 0; j < m; ++j) {
                    double rc = std::max(0.0, cost[i * m + j] + pot[i] - pot[n + j]);
                    if (dist[u] + rc < dist[n + j]) dist[n + j] = dist[u] + rc, prev[n + j] = u;
                }
            } else {
                const std::size_t j = static_cast<std::size_t>(u) - n;
                for (std::size_t i = 0; i < n; ++i) {
                    if (flow[i * m + j] <= 0) continue;
                    double rc = std::max(0.0, -cost[i * m + j] + pot[n + j] - pot[i]);
                    if (dist[u] + rc < dist[i]) dist[i] = dist[u] + rc, prev[i] = u;
                }
            }
        }

        std::ptrdiff_t sink = -1;
        for (std::size_t j = 0; j < m; ++j)
            if (rd[j] > 0 && dist[n + j] < inf && (sink < 0 || dist[n + j] < dist[sink]))
                sink = static_cast<std::ptrdiff_t>(n + j);
        if (sink < 0) throw Error("transport problem is infeasible");

        std::int64_t push = rd[static_cast<std::size_t>(sink) - n];
        std::ptrdiff_t v = sink;
        while (prev[v] >= 0) {
            std::ptrdiff_t u = prev[v];
            if (static_cast<std::size_t>(u) >= n)  // backward edge sink u -> source v
                push = std::min(push, flow[static_cast<std::size_t>(v) * m + (static_cast<std::size_t>(u) - n)]);
            v = u;
        }
        push = std::min(push, rs[static_cast<std::size_t>(v)]);
        rs[static_cast<std::size_t>(v)] -= push;
        rd[static_cast<std::size_t>(sink) - n] -= push;
        v = sink;
        while (prev[v] >= 0) {
            std::ptrdiff_t u = prev[v];
            if (static_cast<std::size_t>(u) < n)
                flow[static_cast<std::size_t>(u) * m + (static_cast<std::size_t>(v) - n)] += push;
            else
                flow[static_cast<std::size_t>(v) * m + (static_cast<std::size_t>(u) - n)] -= push;
            v = u;
        }
        const double dt = dist[sink];
        for (std::size_t x = 0; x < n + m; ++x) pot[x] += std::min(dist[x], dt);
    }

    TransportSolution sol;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (flow[i * m + j] > 0) {
                sol.flows.push_back({i, j, flow[i * m + j]});
                sol.cost += static_cast<double>(flow[i * m + j]) * cost[i * m + j];
            }
    return sol;
}

}  // namespace pmanon
