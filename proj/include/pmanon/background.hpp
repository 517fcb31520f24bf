#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pmanon/encoded_log.hpp"
#include "pmanon/event_log.hpp"

namespace pmanon {

enum class BkType { set, mult, seq, rel };
enum class BkAttr { ac, re, ar };

struct BkSpec {
    BkType type = BkType::seq;
    BkAttr attr = BkAttr::ac;
    int L = 1;
};

Perspective perspective_of(BkType type, BkAttr attr);
inline Perspective perspective_of(const BkSpec& s) { return perspective_of(s.type, s.attr); }
std::string to_string(BkType t);
std::string to_string(BkAttr a);
// "rel/ar" style.
std::string to_string(const BkSpec& s);
BkSpec parse_bk(std::string_view s, int L = 1);

// Elements are kept in canonical order for set (unique) and mult (with repeats),
// in the given order for seq and rel.
struct Candidate {
    BkType type = BkType::seq;
    std::vector<ProjectedEvent> elements;

    std::size_t size() const { return elements.size(); }
    bool operator==(const Candidate&) const = default;
};

Candidate make_candidate(BkType type, std::vector<ProjectedEvent> elements);
bool is_sub_candidate(const Candidate& sub, const Candidate& super);

// Literal syntax: {a,b}  [a^2,b]  <a,b>  <a@3,b@7>; elements act, act/res, /res or (act,res).
// With attr=re a bare label is a resource.
Candidate parse_candidate(std::string_view text, const BkSpec& spec);
std::string to_string(const Candidate& c);

// Containment by candidate type: subset, sub-multiset, or subsequence.
template <class T>
bool contains(BkType type, const std::vector<T>& trace, const std::vector<T>& cand) {
    if (type == BkType::seq || type == BkType::rel) {
        std::size_t j = 0;
        for (std::size_t i = 0; i < trace.size() && j < cand.size(); ++i)
            if (trace[i] == cand[j]) ++j;
        return j == cand.size();
    }
    std::map<T, int> need;
    for (const auto& x : cand) ++need[x];
    if (type == BkType::set)
        for (auto& [x, n] : need) n = 1;
    for (const auto& x : trace) {
        auto it = need.find(x);
        if (it != need.end() && --it->second == 0) need.erase(it);
    }
    return need.empty();
}

// The log must already carry relative, truncated timestamps. Returns instance indices.
std::vector<std::size_t> match(const EventLog& log, const BkSpec& spec, const Candidate& cand,
                               TimestampAccuracy T = TimestampAccuracy::seconds);

struct Confidence {
    std::map<SensitiveValue, double> fractions;
    double max = 0.0;
};

Confidence confidence(const EventLog& log, const std::vector<std::size_t>& matched, const std::string& attr);

// Encoded candidate plus its match set. For seq and rel, ends[i] is one past the
// position where the leftmost embedding in cases[i] finishes.
struct CandidateNode {
    std::vector<int> items;
    std::vector<std::uint32_t> cases;
    std::vector<std::uint32_t> ends;
};

// Pattern-growth generator over an encoded log; every node it yields is realized.
class CandidateGrower {
public:
    CandidateGrower(const EncodedLog& log, BkType type);

    std::vector<CandidateNode> roots() const;
    std::vector<CandidateNode> children(const CandidateNode& node) const;

private:
    const EncodedLog& log_;
    BkType type_;
};

Candidate decode(const EncodedLog& log, BkType type, const std::vector<int>& items);
std::vector<int> encode_candidate(const EncodedLog& log, const Candidate& c);

// Level-wise walk of realized candidates of size 1..L. visit returns whether to
// extend the node; without a filter every realized candidate is reached.
void enumerate_candidates(const EncodedLog& log, BkType type, int L,
                          const std::function<bool(const CandidateNode&)>& visit);
std::vector<Candidate> enumerate_candidates(const EventLog& log, const BkSpec& spec,
                                            TimestampAccuracy T = TimestampAccuracy::seconds);

}  // namespace pmanon
