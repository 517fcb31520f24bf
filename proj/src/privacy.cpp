#include "pmanon/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "pmanon/error.hpp"
#include "pmanon/kernels.hpp"

namespace pmanon {

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

using ItemSet = std::unordered_set<std::vector<int>, VecHash>;

bool all_subs_in(const std::vector<int>& items, const ItemSet& accepted) {
    std::vector<int> sub(items.size() - 1);
    for (std::size_t skip = 0; skip < items.size(); ++skip) {
        if (skip > 0 && items[skip] == items[skip - 1]) continue;
        for (std::size_t i = 0, j = 0; i < items.size(); ++i)
            if (i != skip) sub[j++] = items[i];
        if (!accepted.contains(sub)) return false;
    }
    return true;
}

const std::vector<std::string>& effective_attrs(const EventLog& log, const PrivacyParams& p) {
    return p.sensitive.empty() ? log.sensitive_attrs() : p.sensitive;
}

}  // namespace

void PrivacyParams::validate() const {
    if (L < 1) throw ValidationError("L must be at least 1");
    if (K < 1) throw ValidationError("K must be at least 1");
    if (!(C > 0.0 && C <= 1.0)) throw ValidationError("C must satisfy 0 < C <= 1");
    if (!(theta >= 0.0 && theta <= 1.0)) throw ValidationError("theta must satisfy 0 <= theta <= 1");
    if (alpha < 0.0 || beta < 0.0 || std::abs(alpha + beta - 1.0) > 1e-9)
        throw ValidationError("alpha and beta must be non-negative and sum to 1");
    if (mft_max_length && *mft_max_length < 1) throw ValidationError("mft max length must be at least 1");
}

std::string to_string(const Verdict& v) {
    if (v.ok()) return "ok";
    std::ostringstream os;
    if (v.k_violation) os << "k_violation";
    for (const auto& a : v.c_violations) {
        if (os.tellp() > 0) os << "+";
        os << "c_violation(" << a << ")";
    }
    return os.str();
}

Verdict evaluate_cases(const EncodedLog& enc, const std::vector<std::uint32_t>& cases, int K, double C) {
    Verdict v;
    v.support = cases.size();
    v.k_violation = cases.size() < static_cast<std::size_t>(K);
    if (cases.empty()) return v;
    std::vector<std::uint32_t> counts;
    for (std::size_t a = 0; a < enc.sensitive.size(); ++a) {
        counts.assign(static_cast<std::size_t>(enc.sensitive_classes[a]), 0);
        std::uint32_t best = 0;
        for (auto c : cases) best = std::max(best, ++counts[enc.sensitive[a][c]]);
        double conf = static_cast<double>(best) / static_cast<double>(cases.size());
        v.max_confidence = std::max(v.max_confidence, conf);
        if (conf > C + 1e-12) v.c_violations.push_back(enc.sensitive_attrs[a]);
    }
    return v;
}

Verdict is_violating(const Candidate& cand, const EventLog& log, const PrivacyParams& params) {
    auto m = match(log, params.spec(), cand, params.T);
    if (m.empty()) throw ValidationError("candidate " + to_string(cand) + " matches no case");
    Verdict v;
    v.support = m.size();
    v.k_violation = m.size() < static_cast<std::size_t>(params.K);
    for (const auto& a : effective_attrs(log, params)) {
        auto c = confidence(log, m, a);
        v.max_confidence = std::max(v.max_confidence, c.max);
        if (c.max > params.C + 1e-12) v.c_violations.push_back(a);
    }
    return v;
}

AuditReport audit_tlkc(const EventLog& log, const PrivacyParams& params, std::size_t max_listed) {
    params.validate();
    auto enc = encode(log, params.perspective(), params.T, params.sensitive);
    AuditReport r;
    CandidateGrower g(enc, params.bk_type);
    std::vector<CandidateNode> level;
    for (auto& n : g.roots())
        if (!n.cases.empty()) level.push_back(std::move(n));
    for (int size = 1; size <= params.L && !level.empty(); ++size) {
        r.candidates_per_size.push_back(level.size());
        auto verdicts = kernels::evaluate_level(enc, level, params.K, params.C);
        for (std::size_t i = 0; i < level.size(); ++i) {
            const auto& v = verdicts[i];
            if (v.ok()) continue;
            ++r.violation_count;
            if (v.k_violation) ++r.k_violation_count;
            if (!v.c_violations.empty()) ++r.c_violation_count;
            if (r.violations.size() < max_listed)
                r.violations.push_back({decode(enc, params.bk_type, level[i].items), v});
        }
        if (size == params.L) break;
        level = kernels::expand_level(g, level, std::vector<char>(level.size(), 1));
    }
    r.satisfied = r.violation_count == 0;
    return r;
}

std::vector<std::vector<int>> enumerate_mvt_encoded(const EncodedLog& enc, const PrivacyParams& params,
                                                    std::vector<Verdict>* verdicts_out) {
    params.validate();
    std::vector<std::vector<int>> mvts;
    CandidateGrower g(enc, params.bk_type);
    std::vector<CandidateNode> level;
    for (auto& n : g.roots())
        if (!n.cases.empty()) level.push_back(std::move(n));
    ItemSet accepted_prev;
    for (int size = 1; size <= params.L && !level.empty(); ++size) {
        if (size > 1) {
            std::erase_if(level, [&](const CandidateNode& n) { return !all_subs_in(n.items, accepted_prev); });
        }
        auto verdicts = kernels::evaluate_level(enc, level, params.K, params.C);
        ItemSet accepted;
        std::vector<char> extend(level.size(), 0);
        for (std::size_t i = 0; i < level.size(); ++i) {
            if (!verdicts[i].ok()) {
                mvts.push_back(level[i].items);
                if (verdicts_out) verdicts_out->push_back(verdicts[i]);
            } else {
                accepted.insert(level[i].items);
                extend[i] = 1;
            }
        }
        if (size == params.L) break;
        level = kernels::expand_level(g, level, extend);
        accepted_prev = std::move(accepted);
    }
    return mvts;
}

MvtSet enumerate_mvt(const EventLog& log, const PrivacyParams& params) {
    auto enc = encode(log, params.perspective(), params.T, params.sensitive);
    std::vector<Verdict> verdicts;
    auto items = enumerate_mvt_encoded(enc, params, &verdicts);
    MvtSet out;
    out.spec = params.spec();
    for (std::size_t i = 0; i < items.size(); ++i)
        out.items.push_back({decode(enc, params.bk_type, items[i]), verdicts[i]});
    return out;
}

std::size_t support_threshold(double theta, std::size_t n) {
    if (theta > 1.0) return n + 1;
    auto t = static_cast<std::size_t>(std::ceil(theta * static_cast<double>(n) - 1e-9));
    return std::max<std::size_t>(t, 1);
}

std::vector<std::vector<int>> enumerate_mft_encoded(const EncodedLog& enc, double theta, std::optional<int> max_length,
                                                    std::vector<std::size_t>* supports) {
    std::size_t thr = support_threshold(theta, enc.size());
    std::size_t longest = 0;
    for (const auto& t : enc.traces) longest = std::max(longest, t.size());
    std::size_t cap = max_length ? static_cast<std::size_t>(*max_length) : longest;

    std::vector<std::vector<CandidateNode>> levels;
    CandidateGrower g(enc, BkType::seq);
    std::vector<CandidateNode> level;
    for (auto& n : g.roots())
        if (n.cases.size() >= thr) level.push_back(std::move(n));
    for (std::size_t size = 1; size <= cap && !level.empty(); ++size) {
        std::vector<CandidateNode> next;
        if (size < cap) {
            auto kids = kernels::expand_level(g, level, std::vector<char>(level.size(), 1));
            for (auto& k : kids)
                if (k.cases.size() >= thr) next.push_back(std::move(k));
        }
        levels.push_back(std::move(level));
        level = std::move(next);
    }

    std::vector<std::vector<int>> out;
    std::vector<std::size_t> sup;
    for (std::size_t n = 0; n < levels.size(); ++n) {
        ItemSet covered;
        if (n + 1 < levels.size()) {
            for (const auto& q : levels[n + 1]) {
                std::vector<int> sub(q.items.size() - 1);
                for (std::size_t skip = 0; skip < q.items.size(); ++skip) {
                    for (std::size_t i = 0, j = 0; i < q.items.size(); ++i)
                        if (i != skip) sub[j++] = q.items[i];
                    covered.insert(sub);
                }
            }
        }
        for (const auto& p : levels[n]) {
            if (covered.contains(p.items)) continue;
            out.push_back(p.items);
            sup.push_back(p.cases.size());
        }
    }
    if (supports) *supports = std::move(sup);
    return out;
}

MftSet enumerate_mft(const EventLog& log, Perspective ps, double theta, TimestampAccuracy T,
                     std::optional<int> max_length) {
    if (theta < 0.0) throw ValidationError("theta must be non-negative");
    auto enc = encode(log, ps, T, {});
    std::vector<std::size_t> sup;
    auto items = enumerate_mft_encoded(enc, theta, max_length, &sup);
    MftSet out;
    out.ps = ps;
    out.threshold = support_threshold(theta, enc.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        ProjectedTrace t;
        for (int x : items[i]) t.push_back(enc.alphabet[x]);
        out.items.push_back({std::move(t), sup[i]});
    }
    return out;
}

ScoreParts score(const ProjectedEvent& e, const MvtSet& mvt, const MftSet& mft) {
    ScoreParts s;
    for (const auto& m : mvt.items)
        if (std::find(m.candidate.elements.begin(), m.candidate.elements.end(), e) != m.candidate.elements.end()) ++s.pg;
    if (s.pg == 0) throw ValidationError("event " + to_string(e) + " occurs in no minimal violating trace");
    for (const auto& m : mft.items)
        if (std::find(m.trace.begin(), m.trace.end(), e) != m.trace.end()) ++s.ul;
    s.score = static_cast<double>(s.pg) / static_cast<double>(s.ul + 1);
    return s;
}

double n_score(const ProjectedEvent& e, const MvtSet& mvt, const EventLog& log, Perspective ps, double alpha,
               double beta, TimestampAccuracy T) {
    if (mvt.items.empty()) throw ValidationError("n-score over an empty set of minimal violating traces");
    if (alpha < 0.0 || beta < 0.0 || std::abs(alpha + beta - 1.0) > 1e-9)
        throw ValidationError("alpha and beta must be non-negative and sum to 1");
    std::size_t pg = 0;
    for (const auto& m : mvt.items)
        if (std::find(m.candidate.elements.begin(), m.candidate.elements.end(), e) != m.candidate.elements.end()) ++pg;
    if (pg == 0) throw ValidationError("event " + to_string(e) + " occurs in no minimal violating trace");
    std::size_t containing = 0;
    for (const auto& p : log.instances()) {
        auto t = project(p, ps, T);
        if (std::find(t.begin(), t.end(), e) != t.end()) ++containing;
    }
    double rpg = static_cast<double>(pg) / static_cast<double>(mvt.items.size());
    double nul = 1.0 - static_cast<double>(containing) / static_cast<double>(log.size());
    return alpha * rpg + beta * nul;
}

}  // namespace pmanon
