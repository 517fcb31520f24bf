#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmanon/event_log.hpp"

namespace pmanon {

// A log projected on one perspective with descriptors interned as ints.
// Ids follow canonical descriptor order, so comparing ids compares descriptors.
struct EncodedLog {
    Perspective ps = Perspective::A;
    TimestampAccuracy T = TimestampAccuracy::seconds;
    std::vector<ProjectedEvent> alphabet;
    std::vector<std::vector<int>> traces;

    // Per sensitive attribute, one value-class id per case (null is its own class).
    std::vector<std::string> sensitive_attrs;
    std::vector<std::vector<int>> sensitive;
    std::vector<int> sensitive_classes;

    std::size_t size() const { return traces.size(); }
    // -1 when the descriptor never occurs.
    int id_of(const ProjectedEvent& e) const;
};

// attrs empty means all declared sensitive attributes of the log.
EncodedLog encode(const EventLog& log, Perspective ps, TimestampAccuracy T,
                  const std::vector<std::string>& attrs = {});

}  // namespace pmanon
