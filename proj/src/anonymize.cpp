#include "pmanon/anonymize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>

#include "pmanon/error.hpp"
#include "pmanon/prefix_tree.hpp"

namespace pmanon {

SuppressionOutcome suppress_global(const EventLog& log, const std::vector<ProjectedEvent>& descriptors, Perspective ps,
                                   TimestampAccuracy T) {
    std::set<ProjectedEvent> drop(descriptors.begin(), descriptors.end());
    SuppressionOutcome out;
    std::vector<ProcessInstance> kept;
    for (const auto& p : log.instances()) {
        ProcessInstance q = p;
        q.trace.clear();
        for (const auto& e : p.trace)
            if (!drop.contains(project(e, ps, T))) q.trace.push_back(e);
        out.events_removed += p.trace.size() - q.trace.size();
        if (q.trace.empty()) {
            ++out.dropped_cases;
            continue;
        }
        kept.push_back(std::move(q));
    }
    out.log = EventLog(std::move(kept), log.sensitive_attrs());
    return out;
}

namespace {

struct Candidate2 {
    int item;
    double score;
    std::size_t pg;
    std::size_t ul;
};

// Highest score, then larger PG, then smaller id (candidates arrive in id
// order). With a seed, ties on (score, PG) are broken by a seeded draw instead.
template <class Better>
std::size_t pick_winner(const std::vector<Candidate2>& c, Better better, std::optional<std::mt19937_64>& rng) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < c.size(); ++i)
        if (better(c[i], c[best])) best = i;
    if (!rng) return best;
    std::vector<std::size_t> tied;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!better(c[best], c[i]) && !better(c[i], c[best])) tied.push_back(i);
    std::uniform_int_distribution<std::size_t> d(0, tied.size() - 1);
    return tied[d(*rng)];
}

AnonymizationResult finish(const EventLog& log, const EncodedLog& enc, const PrivacyParams& params,
                           AnonymizationResult r) {
    auto s = suppress_global(log, r.suppression, enc.ps, params.T);
    if (s.log.empty())
        throw Error("suppression would remove every case (bk=" + to_string(params.spec()) + ", T=" +
                    to_string(params.T) + ", L=" + std::to_string(params.L) + ", K=" + std::to_string(params.K) +
                    ", C=" + std::to_string(params.C) + ")");
    r.log = std::move(s.log);
    r.dropped_cases = s.dropped_cases;
    r.events_removed = s.events_removed;
    return r;
}

template <class ScoreFn, class Better>
AnonymizationResult greedy(const EventLog& log, const PrivacyParams& params, const AnonymizeOptions& opt, bool use_mft,
                           ScoreFn score_of, Better better) {
    params.validate();
    auto enc = encode(log, params.perspective(), params.T, params.sensitive);
    AnonymizationResult r;
    auto mvts = enumerate_mvt_encoded(enc, params);
    r.initial_mvts = mvts.size();
    if (mvts.empty()) {
        r.log = log;
        return r;
    }
    PrefixTree mvt_tree, mft_tree;
    for (const auto& m : mvts) mvt_tree.insert(m);
    if (use_mft) {
        auto mfts = enumerate_mft_encoded(enc, params.theta, params.mft_max_length);
        r.initial_mfts = mfts.size();
        for (const auto& m : mfts) mft_tree.insert(m);
    }
    std::optional<std::mt19937_64> rng;
    if (opt.tie_break_seed) rng.emplace(*opt.tie_break_seed);

    while (!mvt_tree.empty()) {
        std::vector<Candidate2> cands;
        for (int x : mvt_tree.items()) {
            std::size_t pg = mvt_tree.containing_count(x);
            std::size_t ul = use_mft ? mft_tree.containing_count(x) : 0;
            cands.push_back({x, score_of(x, pg, ul, mvt_tree.size()), pg, ul});
        }
        auto w = cands[pick_winner(cands, better, rng)];
        IterationRecord rec;
        rec.winner = {enc.alphabet[w.item], w.score, w.pg, w.ul};
        rec.mvts_before = mvt_tree.size();
        if (cands.size() <= opt.score_snapshot_limit)
            for (const auto& c : cands) rec.scores.push_back({enc.alphabet[c.item], c.score, c.pg, c.ul});
        rec.mvts_removed = mvt_tree.remove_containing(w.item);
        if (use_mft) mft_tree.remove_containing(w.item);
        r.suppression.push_back(enc.alphabet[w.item]);
        r.iterations.push_back(std::move(rec));
    }
    return finish(log, enc, params, std::move(r));
}

}  // namespace

AnonymizationResult tlkc_anonymize(const EventLog& log, const PrivacyParams& params, const AnonymizeOptions& opt) {
    auto score_of = [](int, std::size_t pg, std::size_t ul, std::size_t) {
        return static_cast<double>(pg) / static_cast<double>(ul + 1);
    };
    // Exact rational comparison of pg/(ul+1).
    auto better = [](const Candidate2& a, const Candidate2& b) {
        auto lhs = a.pg * (b.ul + 1), rhs = b.pg * (a.ul + 1);
        if (lhs != rhs) return lhs > rhs;
        return a.pg > b.pg;
    };
    return greedy(log, params, opt, true, score_of, better);
}

AnonymizationResult tlkc_ext_anonymize(const EventLog& log, const PrivacyParams& params, const AnonymizeOptions& opt) {
    params.validate();
    auto enc = encode(log, params.perspective(), params.T, params.sensitive);
    // nUL is fixed against the input log.
    std::vector<double> nul(enc.alphabet.size(), 1.0);
    {
        std::vector<std::size_t> containing(enc.alphabet.size(), 0);
        std::vector<std::size_t> seen(enc.alphabet.size(), SIZE_MAX);
        for (std::size_t c = 0; c < enc.traces.size(); ++c)
            for (int x : enc.traces[c])
                if (seen[x] != c) {
                    seen[x] = c;
                    ++containing[x];
                }
        for (std::size_t x = 0; x < nul.size(); ++x)
            nul[x] = 1.0 - static_cast<double>(containing[x]) / static_cast<double>(enc.size());
    }
    const double alpha = params.alpha, beta = params.beta;
    auto score_of = [&](int x, std::size_t pg, std::size_t, std::size_t total) {
        return alpha * static_cast<double>(pg) / static_cast<double>(total) + beta * nul[x];
    };
    auto better = [](const Candidate2& a, const Candidate2& b) {
        if (std::abs(a.score - b.score) > 1e-12) return a.score > b.score;
        return a.pg > b.pg;
    };
    return greedy(log, params, opt, false, score_of, better);
}

namespace {

struct WorkingLog {
    const EventLog& src;
    std::vector<std::vector<int>> cur;          // current projected trace per case
    std::vector<std::vector<std::size_t>> pos;  // kept event positions per case
    std::vector<char> live;

    WorkingLog(const EventLog& log, const EncodedLog& enc) : src(log), cur(enc.traces), live(enc.size(), 1) {
        pos.resize(enc.size());
        for (std::size_t c = 0; c < enc.size(); ++c)
            for (std::size_t i = 0; i < enc.traces[c].size(); ++i) pos[c].push_back(i);
    }

    BaselineResult result() const {
        BaselineResult r;
        std::vector<ProcessInstance> out;
        for (std::size_t c = 0; c < cur.size(); ++c) {
            const auto& p = src.instances()[c];
            if (!live[c]) {
                ++r.dropped_cases;
                r.events_removed += p.trace.size();
                continue;
            }
            ProcessInstance q = p;
            q.trace.clear();
            for (auto i : pos[c]) q.trace.push_back(p.trace[i]);
            r.events_removed += p.trace.size() - q.trace.size();
            out.push_back(std::move(q));
        }
        r.log = EventLog(std::move(out), src.sensitive_attrs());
        return r;
    }
};

bool is_subseq(const std::vector<int>& s, const std::vector<int>& t) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < t.size() && j < s.size(); ++i)
        if (t[i] == s[j]) ++j;
    return j == s.size();
}

constexpr std::size_t kSubtraceBudget = 2'000'000;

std::set<std::vector<int>> subtraces_of_length(const std::vector<int>& v, std::size_t n, std::size_t& budget) {
    std::set<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == n) {
            if (budget-- == 0) throw Error("baseline2: too many subtraces for a trace of length " + std::to_string(v.size()));
            out.insert(cur);
            return;
        }
        for (std::size_t i = start; i + (n - cur.size()) <= v.size(); ++i) {
            cur.push_back(v[i]);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace

BaselineResult baseline1(const EventLog& log, int k, Perspective ps, TimestampAccuracy T) {
    if (k < 1) throw ValidationError("k must be at least 1");
    auto enc = encode(log, ps, T, {});
    std::map<std::vector<int>, std::size_t> cnt;
    for (const auto& t : enc.traces) ++cnt[t];
    WorkingLog w(log, enc);
    for (std::size_t c = 0; c < enc.size(); ++c)
        if (cnt[enc.traces[c]] < static_cast<std::size_t>(k)) w.live[c] = 0;
    return w.result();
}

BaselineResult baseline2(const EventLog& log, int k, Perspective ps, TimestampAccuracy T) {
    if (k < 1) throw ValidationError("k must be at least 1");
    auto enc = encode(log, ps, T, {});
    WorkingLog w(log, enc);
    std::size_t budget = kSubtraceBudget;
    const auto K = static_cast<std::size_t>(k);
    while (true) {
        std::map<std::vector<int>, std::size_t> cnt, first;
        for (std::size_t c = 0; c < enc.size(); ++c) {
            if (!w.live[c]) continue;
            ++cnt[w.cur[c]];
            first.emplace(w.cur[c], c);
        }
        std::vector<const std::vector<int>*> viol;
        for (const auto& [v, n] : cnt)
            if (n < K) viol.push_back(&v);
        if (viol.empty()) break;
        // Longest violating variant first, then the one seen earliest in the log.
        auto v = **std::min_element(viol.begin(), viol.end(), [&](auto a, auto b) {
            if (a->size() != b->size()) return a->size() > b->size();
            return first[*a] < first[*b];
        });

        std::optional<std::vector<int>> chosen;
        for (std::size_t n = v.size() - 1; n >= 1 && !chosen; --n) {
            for (const auto& s : subtraces_of_length(v, n, budget)) {
                std::size_t cls = 0;
                if (auto it = cnt.find(s); it != cnt.end()) cls = it->second;
                for (auto wv : viol)
                    if (*wv != s && is_subseq(s, *wv)) cls += cnt[*wv];
                if (cls >= K) {
                    chosen = s;
                    break;
                }
            }
        }
        if (!chosen) {
            for (std::size_t c = 0; c < enc.size(); ++c)
                if (w.live[c] && w.cur[c] == v) w.live[c] = 0;
            continue;
        }
        std::set<std::vector<int>> targets;
        for (auto wv : viol)
            if (is_subseq(*chosen, *wv)) targets.insert(*wv);
        for (std::size_t c = 0; c < enc.size(); ++c) {
            if (!w.live[c] || !targets.contains(w.cur[c])) continue;
            // Leftmost embedding of the chosen subtrace decides which events stay.
            std::vector<std::size_t> keep;
            std::size_t j = 0;
            for (std::size_t i = 0; i < w.cur[c].size() && j < chosen->size(); ++i)
                if (w.cur[c][i] == (*chosen)[j]) {
                    keep.push_back(w.pos[c][i]);
                    ++j;
                }
            w.pos[c] = std::move(keep);
            w.cur[c] = *chosen;
        }
    }
    return w.result();
}

bool k_variant_check(const EventLog& log, int k, Perspective ps, TimestampAccuracy T) {
    auto v = variants(log, ps, T);
    for (const auto& [t, n] : v.counts)
        if (n < static_cast<std::size_t>(k)) return false;
    return true;
}

}  // namespace pmanon
