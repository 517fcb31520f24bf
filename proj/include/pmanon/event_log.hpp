#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmanon/timestamp.hpp"

namespace pmanon {

struct Event {
    std::string activity;
    std::optional<std::string> resource;
    Timestamp timestamp{};

    bool operator==(const Event&) const = default;
};

using Trace = std::vector<Event>;
// Null sensitive values are kept as nullopt and form their own class.
using SensitiveValue = std::optional<std::string>;

struct ProcessInstance {
    std::string case_id;
    Trace trace;
    std::map<std::string, SensitiveValue> sensitive;

    bool operator==(const ProcessInstance&) const = default;
};

// Immutable once built. The constructor checks the log invariants and throws
// ValidationError on duplicate case ids, empty traces, unordered events, or a
// declared sensitive attribute missing from an instance.
class EventLog {
public:
    EventLog() = default;
    EventLog(std::vector<ProcessInstance> instances, std::vector<std::string> sensitive_attrs = {});

    const std::vector<ProcessInstance>& instances() const { return instances_; }
    const std::vector<std::string>& sensitive_attrs() const { return sensitive_attrs_; }
    std::size_t size() const { return instances_.size(); }
    bool empty() const { return instances_.empty(); }
    std::size_t event_count() const;
    bool has_resources() const;
    const ProcessInstance* find(std::string_view case_id) const;

    bool operator==(const EventLog&) const = default;

private:
    std::vector<ProcessInstance> instances_;
    std::vector<std::string> sensitive_attrs_;
};

enum class Perspective { A, R, AR, AT, RT, ART };

bool has_activity(Perspective ps);
bool has_resource(Perspective ps);
bool has_time(Perspective ps);
std::string to_string(Perspective ps);
Perspective parse_perspective(std::string_view s);

// time is in units of the accuracy used for projection, counted from the epoch.
struct ProjectedEvent {
    std::optional<std::string> activity;
    std::optional<std::string> resource;
    std::optional<std::int64_t> time;

    auto operator<=>(const ProjectedEvent&) const = default;
    bool operator==(const ProjectedEvent&) const = default;
};

using ProjectedTrace = std::vector<ProjectedEvent>;

// "RE", "E4", "(RE,E4)", "RE@3", "(RE,E4)@1".
std::string to_string(const ProjectedEvent& e);
std::string to_string(const ProjectedTrace& t);

ProjectedEvent project(const Event& e, Perspective ps, TimestampAccuracy T = TimestampAccuracy::seconds);
ProjectedTrace project(const ProcessInstance& p, Perspective ps, TimestampAccuracy T = TimestampAccuracy::seconds);
ProjectedTrace project(const Trace& trace, Perspective ps, TimestampAccuracy T = TimestampAccuracy::seconds);

Trace relative_timestamps(const Trace& trace, Timestamp t0);
EventLog make_relative(const EventLog& log, Timestamp t0 = Timestamp{});
EventLog truncate_to_accuracy(const EventLog& log, TimestampAccuracy T);
// Relative (optional) then truncated: the form every privacy operation expects.
EventLog prepare_log(const EventLog& log, TimestampAccuracy T, bool relative = true);

struct Variants {
    std::vector<ProjectedTrace> traces;                // one per instance, log order
    std::map<ProjectedTrace, std::size_t> counts;     // unique variants with multiplicity
};

Variants variants(const EventLog& log, Perspective ps, TimestampAccuracy T = TimestampAccuracy::seconds);
double variant_frequency(const EventLog& log, Perspective ps, const ProjectedTrace& v,
                         TimestampAccuracy T = TimestampAccuracy::seconds);

using DfRelation = std::map<std::pair<std::string, std::string>, std::size_t>;
// ps must be A or R.
DfRelation directly_follows(const EventLog& log, Perspective ps);

std::set<std::string> activities(const EventLog& log);
std::set<std::string> resources(const EventLog& log);

// Q1 and Q3 by linear interpolation between order statistics.
std::pair<double, double> quartiles(std::vector<double> values);

// Quartile-based low/middle/high bucketing of a numeric case attribute.
EventLog discretize_sensitive(const EventLog& log, const std::string& attr);

}  // namespace pmanon
