#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pmanon/event_log.hpp"
#include "pmanon/privacy.hpp"

namespace pmanon {

struct ScoredEvent {
    ProjectedEvent event;
    double score = 0.0;
    std::size_t pg = 0;
    std::size_t ul = 0;
};

struct IterationRecord {
    ScoredEvent winner;
    std::size_t mvts_before = 0;
    std::size_t mvts_removed = 0;
    // Every candidate event of the round in canonical order. Left empty when
    // the alphabet is large.
    std::vector<ScoredEvent> scores;
};

struct AnonymizationResult {
    EventLog log;
    std::vector<ProjectedEvent> suppression;
    std::size_t dropped_cases = 0;
    std::size_t events_removed = 0;
    std::size_t initial_mvts = 0;
    std::size_t initial_mfts = 0;
    std::vector<IterationRecord> iterations;
};

struct SuppressionOutcome {
    EventLog log;
    std::size_t dropped_cases = 0;
    std::size_t events_removed = 0;
};

SuppressionOutcome suppress_global(const EventLog& log, const std::vector<ProjectedEvent>& descriptors, Perspective ps,
                                   TimestampAccuracy T = TimestampAccuracy::seconds);

struct AnonymizeOptions {
    // Unset: ties go to the canonically smallest descriptor.
    std::optional<std::uint64_t> tie_break_seed;
    std::size_t score_snapshot_limit = 512;
};

// Both expect a prepared log (relative, truncated at params.T). They throw
// Error when suppression would remove every case.
AnonymizationResult tlkc_anonymize(const EventLog& log, const PrivacyParams& params, const AnonymizeOptions& opt = {});
AnonymizationResult tlkc_ext_anonymize(const EventLog& log, const PrivacyParams& params,
                                       const AnonymizeOptions& opt = {});

struct BaselineResult {
    EventLog log;
    std::size_t dropped_cases = 0;
    std::size_t events_removed = 0;
};

BaselineResult baseline1(const EventLog& log, int k, Perspective ps, TimestampAccuracy T = TimestampAccuracy::seconds);
BaselineResult baseline2(const EventLog& log, int k, Perspective ps, TimestampAccuracy T = TimestampAccuracy::seconds);

// Every ps-variant occurs at least k times.
bool k_variant_check(const EventLog& log, int k, Perspective ps, TimestampAccuracy T = TimestampAccuracy::seconds);

}  // namespace pmanon
