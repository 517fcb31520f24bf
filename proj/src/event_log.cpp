#include "pmanon/event_log.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_set>

#include "pmanon/error.hpp"

namespace pmanon {

EventLog::EventLog(std::vector<ProcessInstance> instances, std::vector<std::string> sensitive_attrs)
    : instances_(std::move(instances)), sensitive_attrs_(std::move(sensitive_attrs)) {
    std::unordered_set<std::string> ids;
    for (const auto& p : instances_) {
        if (!ids.insert(p.case_id).second) throw ValidationError("duplicate case id '" + p.case_id + "'");
        if (p.trace.empty()) throw ValidationError("case '" + p.case_id + "' has an empty trace");
        for (std::size_t i = 0; i < p.trace.size(); ++i) {
            if (p.trace[i].activity.empty())
                throw ValidationError("case '" + p.case_id + "' has an event without activity");
            if (i > 0 && p.trace[i].timestamp < p.trace[i - 1].timestamp)
                throw ValidationError("case '" + p.case_id + "' has events out of time order");
        }
        for (const auto& a : sensitive_attrs_)
            if (!p.sensitive.contains(a))
                throw ValidationError("case '" + p.case_id + "' lacks sensitive attribute '" + a + "'");
    }
}

std::size_t EventLog::event_count() const {
    std::size_t n = 0;
    for (const auto& p : instances_) n += p.trace.size();
    return n;
}

bool EventLog::has_resources() const {
    for (const auto& p : instances_)
        for (const auto& e : p.trace)
            if (!e.resource) return false;
    return true;
}

const ProcessInstance* EventLog::find(std::string_view case_id) const {
    for (const auto& p : instances_)
        if (p.case_id == case_id) return &p;
    return nullptr;
}

bool has_activity(Perspective ps) {
    return ps == Perspective::A || ps == Perspective::AR || ps == Perspective::AT || ps == Perspective::ART;
}
bool has_resource(Perspective ps) {
    return ps == Perspective::R || ps == Perspective::AR || ps == Perspective::RT || ps == Perspective::ART;
}
bool has_time(Perspective ps) {
    return ps == Perspective::AT || ps == Perspective::RT || ps == Perspective::ART;
}

std::string to_string(Perspective ps) {
    switch (ps) {
        case Perspective::A: return "A";
        case Perspective::R: return "R";
        case Perspective::AR: return "AR";
        case Perspective::AT: return "AT";
        case Perspective::RT: return "RT";
        case Perspective::ART: return "ART";
    }
    return "A";
}

Perspective parse_perspective(std::string_view s) {
    for (auto ps : {Perspective::A, Perspective::R, Perspective::AR, Perspective::AT, Perspective::RT,
                    Perspective::ART})
        if (to_string(ps) == s) return ps;
    throw ValidationError("unknown perspective '" + std::string(s) + "'");
}

std::string to_string(const ProjectedEvent& e) {
    std::string s;
    if (e.activity && e.resource)
        s = "(" + *e.activity + "," + *e.resource + ")";
    else if (e.activity)
        s = *e.activity;
    else if (e.resource)
        s = *e.resource;
    if (e.time) s += "@" + std::to_string(*e.time);
    return s;
}

std::string to_string(const ProjectedTrace& t) {
    std::string s = "<";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += to_string(t[i]);
    }
    return s + ">";
}

namespace {

ProjectedEvent project_event(const Event& e, Perspective ps, TimestampAccuracy T, const std::string& case_id) {
    ProjectedEvent pe;
    if (has_activity(ps)) pe.activity = e.activity;
    if (has_resource(ps)) {
        if (!e.resource)
            throw ValidationError("perspective " + to_string(ps) + " needs resources but an event of case '" +
                                  case_id + "' has none");
        pe.resource = e.resource;
    }
    if (has_time(ps)) pe.time = floor_div(epoch_seconds(e.timestamp), unit_seconds(T));
    return pe;
}

}  // namespace

ProjectedEvent project(const Event& e, Perspective ps, TimestampAccuracy T) {
    return project_event(e, ps, T, "?");
}

ProjectedTrace project(const ProcessInstance& p, Perspective ps, TimestampAccuracy T) {
    ProjectedTrace out;
    out.reserve(p.trace.size());
    for (const auto& e : p.trace) out.push_back(project_event(e, ps, T, p.case_id));
    return out;
}

ProjectedTrace project(const Trace& trace, Perspective ps, TimestampAccuracy T) {
    ProjectedTrace out;
    out.reserve(trace.size());
    for (const auto& e : trace) out.push_back(project_event(e, ps, T, "?"));
    return out;
}

Trace relative_timestamps(const Trace& trace, Timestamp t0) {
    if (trace.empty()) return {};
    Trace out = trace;
    auto shift = t0 - trace.front().timestamp;
    for (auto& e : out) e.timestamp += shift;
    return out;
}

EventLog make_relative(const EventLog& log, Timestamp t0) {
    auto inst = log.instances();
    for (auto& p : inst) p.trace = relative_timestamps(p.trace, t0);
    return EventLog(std::move(inst), log.sensitive_attrs());
}

EventLog truncate_to_accuracy(const EventLog& log, TimestampAccuracy T) {
    const std::int64_t u = unit_seconds(T);
    auto inst = log.instances();
    for (auto& p : inst)
        for (auto& e : p.trace) e.timestamp = from_epoch_seconds(floor_div(epoch_seconds(e.timestamp), u) * u);
    return EventLog(std::move(inst), log.sensitive_attrs());
}

EventLog prepare_log(const EventLog& log, TimestampAccuracy T, bool relative) {
    return truncate_to_accuracy(relative ? make_relative(log) : log, T);
}

Variants variants(const EventLog& log, Perspective ps, TimestampAccuracy T) {
    Variants v;
    v.traces.reserve(log.size());
    for (const auto& p : log.instances()) {
        v.traces.push_back(project(p, ps, T));
        ++v.counts[v.traces.back()];
    }
    return v;
}

double variant_frequency(const EventLog& log, Perspective ps, const ProjectedTrace& v, TimestampAccuracy T) {
    std::size_t n = 0;
    for (const auto& p : log.instances())
        if (project(p, ps, T) == v) ++n;
    if (n == 0) throw ValidationError("variant " + to_string(v) + " does not occur in the log");
    return static_cast<double>(n) / static_cast<double>(log.size());
}

DfRelation directly_follows(const EventLog& log, Perspective ps) {
    if (ps != Perspective::A && ps != Perspective::R)
        throw ValidationError("directly-follows relations need perspective A or R");
    DfRelation df;
    for (const auto& p : log.instances()) {
        auto t = project(p, ps);
        for (std::size_t i = 0; i + 1 < t.size(); ++i) {
            const auto& x = ps == Perspective::A ? *t[i].activity : *t[i].resource;
            const auto& y = ps == Perspective::A ? *t[i + 1].activity : *t[i + 1].resource;
            ++df[{x, y}];
        }
    }
    return df;
}

std::set<std::string> activities(const EventLog& log) {
    std::set<std::string> out;
    for (const auto& p : log.instances())
        for (const auto& e : p.trace) out.insert(e.activity);
    return out;
}

std::set<std::string> resources(const EventLog& log) {
    std::set<std::string> out;
    for (const auto& p : log.instances())
        for (const auto& e : p.trace)
            if (e.resource) out.insert(*e.resource);
    return out;
}

std::pair<double, double> quartiles(std::vector<double> values) {
    if (values.empty()) throw ValidationError("quartiles of an empty sample");
    std::sort(values.begin(), values.end());
    auto q = [&](double p) {
        double h = (static_cast<double>(values.size()) - 1.0) * p;
        auto lo = static_cast<std::size_t>(std::floor(h));
        std::size_t hi = std::min(lo + 1, values.size() - 1);
        return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
    };
    return {q(0.25), q(0.75)};
}

EventLog discretize_sensitive(const EventLog& log, const std::string& attr) {
    std::vector<std::optional<double>> parsed;
    std::vector<double> present;
    for (const auto& p : log.instances()) {
        auto it = p.sensitive.find(attr);
        if (it == p.sensitive.end())
            throw ValidationError("case '" + p.case_id + "' lacks attribute '" + attr + "'");
        if (!it->second) {
            parsed.emplace_back();
            continue;
        }
        const std::string& s = *it->second;
        double v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
            throw ValidationError("case '" + p.case_id + "' has non-numeric value '" + s + "' for '" + attr + "'");
        parsed.emplace_back(v);
        present.push_back(v);
    }
    if (present.empty()) return log;
    auto [q1, q3] = quartiles(present);
    auto inst = log.instances();
    for (std::size_t i = 0; i < inst.size(); ++i) {
        if (!parsed[i]) continue;
        double v = *parsed[i];
        inst[i].sensitive[attr] = v > q3 ? "high" : (v < q1 ? "low" : "middle");
    }
    return EventLog(std::move(inst), log.sensitive_attrs());
}

}  // namespace pmanon
