#pragma once

#include <cstddef>
#include <vector>

#include "pmanon/background.hpp"
#include "pmanon/encoded_log.hpp"
#include "pmanon/privacy.hpp"

// Hot loops with a serial reference and an OpenMP version. The dispatching
// variants pick the parallel one for large inputs; results are identical.
namespace pmanon::kernels {

void set_threads(int n);
int max_threads();
bool openmp_enabled();

std::vector<Verdict> evaluate_level_serial(const EncodedLog& enc, const std::vector<CandidateNode>& level, int K,
                                           double C);
std::vector<Verdict> evaluate_level_parallel(const EncodedLog& enc, const std::vector<CandidateNode>& level, int K,
                                             double C);
std::vector<Verdict> evaluate_level(const EncodedLog& enc, const std::vector<CandidateNode>& level, int K, double C);

// Children of the nodes whose flag is set, concatenated in node order.
std::vector<CandidateNode> expand_level_serial(const CandidateGrower& g, const std::vector<CandidateNode>& level,
                                               const std::vector<char>& extend);
std::vector<CandidateNode> expand_level_parallel(const CandidateGrower& g, const std::vector<CandidateNode>& level,
                                                 const std::vector<char>& extend);
std::vector<CandidateNode> expand_level(const CandidateGrower& g, const std::vector<CandidateNode>& level,
                                        const std::vector<char>& extend);

std::size_t levenshtein(const std::vector<int>& a, const std::vector<int>& b);
inline double normalized_levenshtein(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t m = a.size() > b.size() ? a.size() : b.size();
    return m == 0 ? 0.0 : static_cast<double>(levenshtein(a, b)) / static_cast<double>(m);
}

// Row-major |a| x |b| matrix of normalized edit distances.
std::vector<double> cost_matrix_serial(const std::vector<std::vector<int>>& a, const std::vector<std::vector<int>>& b);
std::vector<double> cost_matrix_parallel(const std::vector<std::vector<int>>& a,
                                         const std::vector<std::vector<int>>& b);
std::vector<double> cost_matrix(const std::vector<std::vector<int>>& a, const std::vector<std::vector<int>>& b);

}  // namespace pmanon::kernels
