#include "pmanon/background.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_map>

#include "pmanon/error.hpp"

namespace pmanon {

Perspective perspective_of(BkType type, BkAttr attr) {
    bool timed = type == BkType::rel;
    switch (attr) {
        case BkAttr::ac: return timed ? Perspective::AT : Perspective::A;
        case BkAttr::re: return timed ? Perspective::RT : Perspective::R;
        case BkAttr::ar: return timed ? Perspective::ART : Perspective::AR;
    }
    return Perspective::A;
}

std::string to_string(BkType t) {
    switch (t) {
        case BkType::set: return "set";
        case BkType::mult: return "mult";
        case BkType::seq: return "seq";
        case BkType::rel: return "rel";
    }
    return "seq";
}

std::string to_string(BkAttr a) {
    switch (a) {
        case BkAttr::ac: return "ac";
        case BkAttr::re: return "re";
        case BkAttr::ar: return "ar";
    }
    return "ac";
}

std::string to_string(const BkSpec& s) { return to_string(s.type) + "/" + to_string(s.attr); }

BkSpec parse_bk(std::string_view s, int L) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos)
        throw ValidationError("background knowledge must look like <type>/<attr>, got '" + std::string(s) + "'");
    auto t = s.substr(0, slash);
    auto a = s.substr(slash + 1);
    BkSpec spec;
    spec.L = L;
    if (t == "set") spec.type = BkType::set;
    else if (t == "mult") spec.type = BkType::mult;
    else if (t == "seq") spec.type = BkType::seq;
    else if (t == "rel") spec.type = BkType::rel;
    else throw ValidationError("unknown background knowledge type '" + std::string(t) + "'");
    if (a == "ac") spec.attr = BkAttr::ac;
    else if (a == "re") spec.attr = BkAttr::re;
    else if (a == "ar") spec.attr = BkAttr::ar;
    else throw ValidationError("unknown background knowledge attribute '" + std::string(a) + "'");
    return spec;
}

Candidate make_candidate(BkType type, std::vector<ProjectedEvent> elements) {
    if (elements.empty()) throw ValidationError("a candidate needs at least one element");
    if (type == BkType::set || type == BkType::mult) std::sort(elements.begin(), elements.end());
    if (type == BkType::set) elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    return Candidate{type, std::move(elements)};
}

bool is_sub_candidate(const Candidate& sub, const Candidate& super) {
    return sub.type == super.type && contains(sub.type, super.elements, sub.elements);
}

namespace {

class LiteralParser {
public:
    LiteralParser(std::string_view text, const BkSpec& spec) : s_(text), spec_(spec) {}

    Candidate parse() {
        skip();
        char open = peek();
        char close = 0;
        BkType kind;
        if (open == '{') kind = BkType::set, close = '}';
        else if (open == '[') kind = BkType::mult, close = ']';
        else if (open == '<') kind = BkType::seq, close = '>';
        else fail("expected '{', '[' or '<'");
        bool ok = kind == spec_.type || (kind == BkType::seq && spec_.type == BkType::rel);
        if (!ok) fail("bracket kind does not match background knowledge type " + to_string(spec_.type));
        ++i_;
        std::vector<ProjectedEvent> elems;
        while (true) {
            skip();
            auto [e, rep] = element();
            for (int r = 0; r < rep; ++r) elems.push_back(e);
            skip();
            if (peek() == ',') {
                ++i_;
                continue;
            }
            if (peek() == close) {
                ++i_;
                break;
            }
            fail(std::string("expected ',' or '") + close + "'");
        }
        skip();
        if (i_ != s_.size()) fail("trailing characters");
        return make_candidate(spec_.type, std::move(elems));
    }

private:
    std::string_view s_;
    BkSpec spec_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("bad candidate '" + std::string(s_) + "': " + msg, i_);
    }
    char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    static bool label_char(char c) { return c != '\0' && std::string_view(",()[]{}<>@^/").find(c) == std::string_view::npos; }

    std::string label() {
        skip();
        std::size_t b = i_;
        while (label_char(peek())) ++i_;
        std::string out(s_.substr(b, i_ - b));
        while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
        if (out.empty()) fail("expected a label");
        return out;
    }

    std::int64_t integer() {
        skip();
        std::size_t b = i_;
        if (peek() == '-' || peek() == '+') ++i_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
        std::int64_t v = 0;
        auto first = s_.data() + b + (s_[b] == '+' ? 1 : 0);
        auto [p, ec] = std::from_chars(first, s_.data() + i_, v);
        if (ec != std::errc{} || p != s_.data() + i_) {
            i_ = b;
            fail("expected an integer");
        }
        return v;
    }

    std::pair<ProjectedEvent, int> element() {
        ProjectedEvent e;
        std::optional<std::string> act, res;
        if (peek() == '(') {
            ++i_;
            act = label();
            skip();
            if (peek() != ',') fail("expected ',' inside (activity,resource)");
            ++i_;
            res = label();
            skip();
            if (peek() != ')') fail("expected ')'");
            ++i_;
        } else if (peek() == '/') {
            ++i_;
            res = label();
        } else {
            act = label();
            if (peek() == '/') {
                ++i_;
                res = label();
            }
        }
        if (spec_.attr == BkAttr::re && act && !res) res.swap(act);
        bool want_act = spec_.attr != BkAttr::re;
        bool want_res = spec_.attr != BkAttr::ac;
        if (want_act != act.has_value() || want_res != res.has_value())
            fail("element fields do not match attribute " + to_string(spec_.attr));
        e.activity = act;
        e.resource = res;
        int rep = 1;
        for (int k = 0; k < 2; ++k) {
            skip();
            if (peek() == '@' && !e.time) {
                if (spec_.type != BkType::rel) fail("'@' times are only allowed for rel candidates");
                ++i_;
                e.time = integer();
            } else if (peek() == '^' && rep == 1) {
                if (spec_.type != BkType::mult) fail("'^' multiplicities are only allowed for multisets");
                ++i_;
                auto n = integer();
                if (n < 1 || n > 1000000) fail("multiplicity out of range");
                rep = static_cast<int>(n);
            }
        }
        if (spec_.type == BkType::rel && !e.time) fail("rel candidates need '@' times on every element");
        return {e, rep};
    }
};

}  // namespace

Candidate parse_candidate(std::string_view text, const BkSpec& spec) { return LiteralParser(text, spec).parse(); }

std::string to_string(const Candidate& c) {
    char open = '<', close = '>';
    if (c.type == BkType::set) open = '{', close = '}';
    if (c.type == BkType::mult) open = '[', close = ']';
    std::string s(1, open);
    for (std::size_t i = 0; i < c.elements.size();) {
        std::size_t j = i + 1;
        if (c.type == BkType::mult)
            while (j < c.elements.size() && c.elements[j] == c.elements[i]) ++j;
        else
            j = i + 1;
        if (i) s += ",";
        s += to_string(c.elements[i]);
        if (j - i > 1) s += "^" + std::to_string(j - i);
        i = j;
    }
    return s + close;
}

std::vector<std::size_t> match(const EventLog& log, const BkSpec& spec, const Candidate& cand, TimestampAccuracy T) {
    if (cand.type != spec.type) throw ValidationError("candidate type does not match the background knowledge spec");
    Perspective ps = perspective_of(spec);
    for (const auto& e : cand.elements)
        if (e.activity.has_value() != has_activity(ps) || e.resource.has_value() != has_resource(ps) ||
            e.time.has_value() != has_time(ps))
            throw ValidationError("candidate element " + to_string(e) + " does not fit perspective " + to_string(ps));
    std::vector<std::size_t> out;
    const auto& inst = log.instances();
    for (std::size_t i = 0; i < inst.size(); ++i)
        if (contains(cand.type, project(inst[i], ps, T), cand.elements)) out.push_back(i);
    return out;
}

Confidence confidence(const EventLog& log, const std::vector<std::size_t>& matched, const std::string& attr) {
    if (matched.empty()) throw ValidationError("confidence of an empty match set");
    std::map<SensitiveValue, std::size_t> counts;
    for (auto i : matched) {
        const auto& p = log.instances().at(i);
        auto it = p.sensitive.find(attr);
        if (it == p.sensitive.end()) throw ValidationError("case '" + p.case_id + "' lacks attribute '" + attr + "'");
        ++counts[it->second];
    }
    Confidence c;
    for (const auto& [v, n] : counts) {
        double f = static_cast<double>(n) / static_cast<double>(matched.size());
        c.fractions[v] = f;
        c.max = std::max(c.max, f);
    }
    return c;
}

CandidateGrower::CandidateGrower(const EncodedLog& log, BkType type) : log_(log), type_(type) {}

std::vector<CandidateNode> CandidateGrower::roots() const {
    std::vector<CandidateNode> nodes(log_.alphabet.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i].items = {static_cast<int>(i)};
    std::vector<std::uint32_t> seen(log_.alphabet.size(), UINT32_MAX);
    for (std::uint32_t c = 0; c < log_.traces.size(); ++c) {
        const auto& t = log_.traces[c];
        for (std::uint32_t p = 0; p < t.size(); ++p) {
            int x = t[p];
            if (seen[x] == c) continue;
            seen[x] = c;
            nodes[x].cases.push_back(c);
            nodes[x].ends.push_back(p + 1);
        }
    }
    return nodes;
}

std::vector<CandidateNode> CandidateGrower::children(const CandidateNode& node) const {
    std::unordered_map<int, CandidateNode> kids;
    const int last = node.items.back();
    if (type_ == BkType::seq || type_ == BkType::rel) {
        std::vector<int> seen;
        for (std::size_t k = 0; k < node.cases.size(); ++k) {
            const auto c = node.cases[k];
            const auto& t = log_.traces[c];
            seen.clear();
            for (std::uint32_t p = node.ends[k]; p < t.size(); ++p) {
                int x = t[p];
                if (std::find(seen.begin(), seen.end(), x) != seen.end()) continue;
                seen.push_back(x);
                auto& kid = kids[x];
                kid.cases.push_back(c);
                kid.ends.push_back(p + 1);
            }
        }
    } else {
        int last_mult = 0;
        for (auto it = node.items.rbegin(); it != node.items.rend() && *it == last; ++it) ++last_mult;
        std::vector<std::pair<int, int>> counts;
        for (auto c : node.cases) {
            counts.clear();
            for (int x : log_.traces[c]) {
                if (x < last || (x == last && type_ == BkType::set)) continue;
                auto it = std::find_if(counts.begin(), counts.end(), [&](auto& pr) { return pr.first == x; });
                if (it == counts.end()) counts.emplace_back(x, 1);
                else ++it->second;
            }
            for (auto [x, n] : counts) {
                if (x == last && n < last_mult + 1) continue;
                kids[x].cases.push_back(c);
                kids[x].ends.push_back(0);
            }
        }
    }
    std::vector<CandidateNode> out;
    out.reserve(kids.size());
    for (auto& [x, kid] : kids) {
        kid.items = node.items;
        kid.items.push_back(x);
        out.push_back(std::move(kid));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.items.back() < b.items.back(); });
    return out;
}

Candidate decode(const EncodedLog& log, BkType type, const std::vector<int>& items) {
    std::vector<ProjectedEvent> el;
    el.reserve(items.size());
    for (int x : items) el.push_back(log.alphabet.at(x));
    return make_candidate(type, std::move(el));
}

std::vector<int> encode_candidate(const EncodedLog& log, const Candidate& c) {
    std::vector<int> out;
    for (const auto& e : c.elements) out.push_back(log.id_of(e));
    return out;
}

void enumerate_candidates(const EncodedLog& log, BkType type, int L,
                          const std::function<bool(const CandidateNode&)>& visit) {
    CandidateGrower g(log, type);
    std::vector<CandidateNode> level;
    for (auto& n : g.roots())
        if (!n.cases.empty()) level.push_back(std::move(n));
    for (int size = 1; size <= L && !level.empty(); ++size) {
        std::vector<CandidateNode> next;
        for (const auto& n : level) {
            if (!visit(n) || size == L) continue;
            for (auto& k : g.children(n)) next.push_back(std::move(k));
        }
        level = std::move(next);
    }
}

std::vector<Candidate> enumerate_candidates(const EventLog& log, const BkSpec& spec, TimestampAccuracy T) {
    auto enc = encode(log, perspective_of(spec), T, {});
    std::vector<Candidate> out;
    enumerate_candidates(enc, spec.type, spec.L, [&](const CandidateNode& n) {
        out.push_back(decode(enc, spec.type, n.items));
        return true;
    });
    return out;
}

}  // namespace pmanon
