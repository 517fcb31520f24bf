#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmanon/event_log.hpp"
#include "pmanon/privacy.hpp"

namespace pmanon {

struct CsvColumnMap {
    std::string case_col = "case_id";
    std::string activity_col = "activity";
    std::string timestamp_col = "timestamp";
    std::optional<std::string> resource_col = "resource";
    std::vector<std::string> sensitive_cols;
    std::string timestamp_format = "iso";

    void validate() const;
};

struct ReadStats {
    std::size_t dropped_attributes = 0;
};

// Trace attributes listed in `sensitive` become sensitive attributes (null when
// absent); other non-standard attributes are dropped and counted.
EventLog read_xes(const std::filesystem::path& path, const std::vector<std::string>& sensitive = {},
                  ReadStats* stats = nullptr);
void write_xes(const EventLog& log, const std::filesystem::path& path);

EventLog read_csv(const std::filesystem::path& path, const CsvColumnMap& map, ReadStats* stats = nullptr);
void write_csv(const EventLog& log, const std::filesystem::path& path, const CsvColumnMap& map = {});

// RFC 4180 records; exposed for reuse and testing.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);
std::string csv_escape(std::string_view field);

enum class LogFormat { xes, csv };
LogFormat infer_format(const std::filesystem::path& path, const std::string& forced = "");

struct RunConfig {
    PrivacyParams params;
    std::string input;
    std::string output;
    std::string anonymized;  // second log for evaluate
    std::string format;      // "", "xes" or "csv"
    std::string output_format;
    std::string algorithm = "tlkc";
    bool relative = true;
    std::vector<std::string> discretize;
    std::optional<std::uint64_t> tie_break_seed;
    int threads = 0;  // 0: library default
    std::string report;
    std::string metric = "all";
    std::string perspective;  // evaluate/stats; empty means derived from bk
    std::size_t max_violations = 50;
    std::size_t transport_cap = 4'000'000;
    CsvColumnMap csv;

    void validate() const;
};

// Applies one key=value pair; keys are the CLI long-option names (plus the
// short aliases T, L, K, C). Throws ValidationError on unknown keys or values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
// Every setting as key/value strings, in a fixed order.
std::vector<std::pair<std::string, std::string>> settings(const RunConfig& cfg);

// Grammar: one "key = value" per line; blank lines and lines starting with '#'
// are ignored; surrounding whitespace and a pair of double quotes are stripped.
RunConfig parse_run_config(std::string_view text, RunConfig base = {});
RunConfig read_run_config(const std::filesystem::path& path, RunConfig base = {});
std::string format_run_config(const RunConfig& cfg);
void write_run_config(const RunConfig& cfg, const std::filesystem::path& path);

}  // namespace pmanon
