#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

namespace pmanon {

using Timestamp = std::chrono::sys_seconds;

enum class TimestampAccuracy { seconds, minutes, hours, days };

std::int64_t unit_seconds(TimestampAccuracy t);
std::string to_string(TimestampAccuracy t);
TimestampAccuracy parse_accuracy(std::string_view s);

// Floor division that rounds toward negative infinity.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline std::int64_t epoch_seconds(Timestamp t) { return t.time_since_epoch().count(); }
inline Timestamp from_epoch_seconds(std::int64_t s) { return Timestamp{std::chrono::seconds{s}}; }

// ISO-8601: YYYY-MM-DD[THH:MM[:SS[.fff]]][Z|+HH:MM|-HH:MM]. Fractions are floored.
Timestamp parse_iso8601(std::string_view s);
// Always "YYYY-MM-DDTHH:MM:SS+00:00".
std::string format_iso8601(Timestamp t);

// format == "iso" selects ISO-8601, anything else is a strptime/strftime pattern in UTC.
Timestamp parse_timestamp(std::string_view s, const std::string& format);
std::string format_timestamp(Timestamp t, const std::string& format);

}  // namespace pmanon
