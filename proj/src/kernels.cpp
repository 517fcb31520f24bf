#include "pmanon/kernels.hpp"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pmanon::kernels {

namespace {
constexpr std::size_t kParallelMin = 256;
}

void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

std::vector<Verdict> evaluate_level_serial(const EncodedLog& enc, const std::vector<CandidateNode>& level, int K,
                                           double C) {
    std::vector<Verdict> out(level.size());
    for (std::size_t i = 0; i < level.size(); ++i) out[i] = evaluate_cases(enc, level[i].cases, K, C);
    return out;
}

std::vector<Verdict> evaluate_level_parallel(const EncodedLog& enc, const std::vector<CandidateNode>& level, int K,
                                             double C) {
    std::vector<Verdict> out(level.size());
    const auto n = static_cast<std::ptrdiff_t>(level.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = evaluate_cases(enc, level[i].cases, K, C);
    return out;
}

std::vector<Verdict> evaluate_level(const EncodedLog& enc, const std::vector<CandidateNode>& level, int K, double C) {
    if (level.size() < kParallelMin || max_threads() == 1) return evaluate_level_serial(enc, level, K, C);
    return evaluate_level_parallel(enc, level, K, C);
}

std::vector<CandidateNode> expand_level_serial(const CandidateGrower& g, const std::vector<CandidateNode>& level,
                                               const std::vector<char>& extend) {
    std::vector<CandidateNode> out;
    for (std::size_t i = 0; i < level.size(); ++i) {
        if (!extend[i]) continue;
        for (auto& k : g.children(level[i])) out.push_back(std::move(k));
    }
    return out;
}

std::vector<CandidateNode> expand_level_parallel(const CandidateGrower& g, const std::vector<CandidateNode>& level,
                                                 const std::vector<char>& extend) {
    std::vector<std::vector<CandidateNode>> parts(level.size());
    const auto n = static_cast<std::ptrdiff_t>(level.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        if (extend[i]) parts[i] = g.children(level[i]);
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    std::vector<CandidateNode> out;
    out.reserve(total);
    for (auto& p : parts)
        for (auto& k : p) out.push_back(std::move(k));
    return out;
}

std::vector<CandidateNode> expand_level(const CandidateGrower& g, const std::vector<CandidateNode>& level,
                                        const std::vector<char>& extend) {
    if (level.size() < kParallelMin || max_threads() == 1) return expand_level_serial(g, level, extend);
    return expand_level_parallel(g, level, extend);
}

std::size_t levenshtein(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    std::iota(prev.begin(), prev.end(), std::size_t{0});
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::vector<double> cost_matrix_serial(const std::vector<std::vector<int>>& a, const std::vector<std::vector<int>>& b) {
    std::vector<double> m(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) m[i * b.size() + j] = normalized_levenshtein(a[i], b[j]);
    return m;
}

std::vector<double> cost_matrix_parallel(const std::vector<std::vector<int>>& a,
                                         const std::vector<std::vector<int>>& b) {
    std::vector<double> m(a.size() * b.size());
    const auto rows = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < b.size(); ++j) m[i * b.size() + j] = normalized_levenshtein(a[i], b[j]);
    return m;
}

std::vector<double> cost_matrix(const std::vector<std::vector<int>>& a, const std::vector<std::vector<int>>& b) {
    if (a.size() * b.size() < kParallelMin || max_threads() == 1) return cost_matrix_serial(a, b);
    return cost_matrix_parallel(a, b);
}

}  // namespace pmanon::kernels
