#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pmanon/event_log.hpp"

namespace pmanon {

double normalized_levenshtein(const ProjectedTrace& a, const ProjectedTrace& b);

struct VariantFlow {
    std::size_t original = 0;    // index into original_variants
    std::size_t anonymized = 0;  // index into anonymized_variants
    double mass = 0.0;
    double distance = 0.0;
};

struct UtilityReport {
    double du = 1.0;
    double cost = 0.0;
    std::vector<ProjectedTrace> original_variants;
    std::vector<double> original_freq;
    std::vector<ProjectedTrace> anonymized_variants;
    std::vector<double> anonymized_freq;
    std::vector<VariantFlow> plan;
};

inline constexpr std::size_t kDefaultTransportCellCap = 4'000'000;

// Throws ValidationError on an empty log and Error when the variant cost
// matrix would exceed max_cells.
UtilityReport emd_data_utility(const EventLog& original, const EventLog& anonymized, Perspective ps,
                               TimestampAccuracy T = TimestampAccuracy::seconds,
                               std::size_t max_cells = kDefaultTransportCellCap);

using Edge = std::pair<std::string, std::string>;

struct GraphComparison {
    double fitness = 0.0;
    double precision = 0.0;
    double f1 = 0.0;
    std::vector<Edge> missing_edges;  // in the original only
    std::vector<Edge> added_edges;    // in the anonymized log only
};

// Vertex set for the precision complement is `vertices` (the original log's labels).
GraphComparison compare_relations(const DfRelation& original, const DfRelation& anonymized,
                                  const std::set<std::string>& vertices);
GraphComparison dfg_compare(const EventLog& original, const EventLog& anonymized);
GraphComparison handover_compare(const EventLog& original, const EventLog& anonymized);

}  // namespace pmanon
