#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pmanon {

struct TransportFlow {
    std::size_t from = 0;
    std::size_t to = 0;
    std::int64_t amount = 0;
};

struct TransportSolution {
    double cost = 0.0;  // sum of amount * cost
    std::vector<TransportFlow> flows;
};

// Exact minimum-cost transportation by successive shortest paths with
// potentials. Supplies and demands must be non-negative with equal totals;
// cost is row-major supply.size() x demand.size() and non-negative.
TransportSolution solve_transport(const std::vector<std::int64_t>& supply, const std::vector<std::int64_t>& demand,
                                  const std::vector<double>& cost);

}  // namespace pmanon
