#include "pmanon/metrics.hpp"

#include <algorithm>
#include <map>

#include "pmanon/error.hpp"
#include "pmanon/kernels.hpp"
#include "pmanon/transport.hpp"

namespace pmanon {

namespace {

std::vector<std::vector<int>> intern(const std::vector<ProjectedTrace>& traces, std::map<ProjectedEvent, int>& ids) {
    std::vector<std::vector<int>> out;
    out.reserve(traces.size());
    for (const auto& t : traces) {
        std::vector<int> v;
        v.reserve(t.size());
        for (const auto& e : t) v.push_back(ids.emplace(e, static_cast<int>(ids.size())).first->second);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

double normalized_levenshtein(const ProjectedTrace& a, const ProjectedTrace& b) {
    std::map<ProjectedEvent, int> ids;
    auto v = intern({a, b}, ids);
    return kernels::normalized_levenshtein(v[0], v[1]);
}

UtilityReport emd_data_utility(const EventLog& original, const EventLog& anonymized, Perspective ps,
                               TimestampAccuracy T, std::size_t max_cells) {
    if (original.empty() || anonymized.empty()) throw ValidationError("data utility needs two non-empty logs");
    auto vo = variants(original, ps, T);
    auto va = variants(anonymized, ps, T);
    UtilityReport r;
    std::vector<std::int64_t> supply, demand;
    const auto n_o = static_cast<std::int64_t>(original.size());
    const auto n_a = static_cast<std::int64_t>(anonymized.size());
    // Integer masses count_i * |EL'| and count_j * |EL| keep the problem exact.
    for (const auto& [t, c] : vo.counts) {
        r.original_variants.push_back(t);
        r.original_freq.push_back(static_cast<double>(c) / static_cast<double>(n_o));
        supply.push_back(static_cast<std::int64_t>(c) * n_a);
    }
    for (const auto& [t, c] : va.counts) {
        r.anonymized_variants.push_back(t);
        r.anonymized_freq.push_back(static_cast<double>(c) / static_cast<double>(n_a));
        demand.push_back(static_cast<std::int64_t>(c) * n_o);
    }
    if (supply.size() * demand.size() > max_cells)
        throw Error("transport problem with " + std::to_string(supply.size()) + " x " + std::to_string(demand.size()) +
                    " variants exceeds the cap of " + std::to_string(max_cells) + " cells; sample the logs first");
    std::map<ProjectedEvent, int> ids;
    auto a = intern(r.original_variants, ids);
    auto b = intern(r.anonymized_variants, ids);
    auto cost = kernels::cost_matrix(a, b);
    auto sol = solve_transport(supply, demand, cost);
    const double total = static_cast<double>(n_o) * static_cast<double>(n_a);
    r.cost = std::clamp(sol.cost / total, 0.0, 1.0);
    r.du = 1.0 - r.cost;
    for (const auto& f : sol.flows)
        r.plan.push_back({f.from, f.to, static_cast<double>(f.amount) / total, cost[f.from * b.size() + f.to]});
    return r;
}

GraphComparison compare_relations(const DfRelation& original, const DfRelation& anonymized,
                                  const std::set<std::string>& vertices) {
    GraphComparison g;
    std::size_t total = 0, kept = 0;
    for (const auto& [e, c] : original) {
        total += c;
        auto it = anonymized.find(e);
        if (it != anonymized.end()) kept += it->second;
        else g.missing_edges.push_back(e);
    }
    for (const auto& [e, c] : anonymized)
        if (!original.contains(e)) g.added_edges.push_back(e);
    if (total == 0) throw ValidationError("the original log has no directly-follows edges; fitness is undefined");
    g.fitness = std::min(1.0, static_cast<double>(kept) / static_cast<double>(total));

    std::size_t absent = 0, still_absent = 0;
    for (const auto& x : vertices)
        for (const auto& y : vertices) {
            Edge e{x, y};
            if (original.contains(e)) continue;
            ++absent;
            if (!anonymized.contains(e)) ++still_absent;
        }
    g.precision = absent == 0 ? 1.0 : static_cast<double>(still_absent) / static_cast<double>(absent);
    g.f1 = (g.fitness + g.precision) == 0.0 ? 0.0 : 2.0 * g.fitness * g.precision / (g.fitness + g.precision);
    return g;
}

GraphComparison dfg_compare(const EventLog& original, const EventLog& anonymized) {
    return compare_relations(directly_follows(original, Perspective::A), directly_follows(anonymized, Perspective::A),
                             activities(original));
}

GraphComparison handover_compare(const EventLog& original, const EventLog& anonymized) {
    if (!original.has_resources() || !anonymized.has_resources())
        throw ValidationError("handover comparison needs resources on every event");
    return compare_relations(directly_follows(original, Perspective::R), directly_follows(anonymized, Perspective::R),
                             resources(original));
}

}  // namespace pmanon
