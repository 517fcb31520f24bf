#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pmanon/background.hpp"
#include "pmanon/encoded_log.hpp"
#include "pmanon/event_log.hpp"

namespace pmanon {

struct PrivacyParams {
    TimestampAccuracy T = TimestampAccuracy::hours;
    int L = 2;
    int K = 2;
    double C = 0.5;
    double theta = 0.25;
    double alpha = 0.5;
    double beta = 0.5;
    BkType bk_type = BkType::rel;
    BkAttr bk_attr = BkAttr::ar;
    // Empty means every sensitive attribute declared on the log.
    std::vector<std::string> sensitive;
    // Longest MFT pattern to mine; unset means the longest trace.
    std::optional<int> mft_max_length;

    BkSpec spec() const { return BkSpec{bk_type, bk_attr, L}; }
    Perspective perspective() const { return perspective_of(bk_type, bk_attr); }
    // Throws ValidationError naming the offending field.
    void validate() const;
};

struct Verdict {
    bool k_violation = false;
    std::vector<std::string> c_violations;  // attribute names
    std::size_t support = 0;
    double max_confidence = 0.0;

    bool ok() const { return !k_violation && c_violations.empty(); }
};

std::string to_string(const Verdict& v);

// Verdict of a realized candidate on a prepared log.
Verdict is_violating(const Candidate& cand, const EventLog& log, const PrivacyParams& params);

struct AuditViolation {
    Candidate candidate;
    Verdict verdict;
};

struct AuditReport {
    bool satisfied = true;
    std::vector<AuditViolation> violations;  // capped at max_listed
    std::size_t violation_count = 0;
    std::size_t k_violation_count = 0;
    std::size_t c_violation_count = 0;
    std::vector<std::size_t> candidates_per_size;
};

// The log must be prepared (relative, truncated at T).
AuditReport audit_tlkc(const EventLog& log, const PrivacyParams& params, std::size_t max_listed = 1000);

struct MvtItem {
    Candidate candidate;
    Verdict verdict;
};

struct MvtSet {
    BkSpec spec;
    std::vector<MvtItem> items;
};

MvtSet enumerate_mvt(const EventLog& log, const PrivacyParams& params);
// Encoded form used by the anonymizers; items in canonical element order.
std::vector<std::vector<int>> enumerate_mvt_encoded(const EncodedLog& enc, const PrivacyParams& params,
                                                    std::vector<Verdict>* verdicts = nullptr);

struct MftItem {
    ProjectedTrace trace;
    std::size_t support = 0;
};

struct MftSet {
    Perspective ps = Perspective::A;
    std::size_t threshold = 0;
    std::vector<MftItem> items;
};

std::size_t support_threshold(double theta, std::size_t n);
MftSet enumerate_mft(const EventLog& log, Perspective ps, double theta,
                     TimestampAccuracy T = TimestampAccuracy::seconds, std::optional<int> max_length = {});
std::vector<std::vector<int>> enumerate_mft_encoded(const EncodedLog& enc, double theta,
                                                    std::optional<int> max_length = {},
                                                    std::vector<std::size_t>* supports = nullptr);

struct ScoreParts {
    std::size_t pg = 0;
    std::size_t ul = 0;
    double score = 0.0;
};

ScoreParts score(const ProjectedEvent& e, const MvtSet& mvt, const MftSet& mft);
double n_score(const ProjectedEvent& e, const MvtSet& mvt, const EventLog& log, Perspective ps, double alpha,
               double beta, TimestampAccuracy T = TimestampAccuracy::seconds);

// Shared verdict routine over an encoded match set.
Verdict evaluate_cases(const EncodedLog& enc, const std::vector<std::uint32_t>& cases, int K, double C);

}  // namespace pmanon
