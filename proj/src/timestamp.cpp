#include "pmanon/timestamp.hpp"

#include <cctype>
#include <cstdio>
#include <ctime>
#include <string>

#include "pmanon/error.hpp"

namespace pmanon {

std::int64_t unit_seconds(TimestampAccuracy t) {
    switch (t) {
        case TimestampAccuracy::seconds: return 1;
        case TimestampAccuracy::minutes: return 60;
        case TimestampAccuracy::hours: return 3600;
        case TimestampAccuracy::days: return 86400;
    }
    return 1;
}

std::string to_string(TimestampAccuracy t) {
    switch (t) {
        case TimestampAccuracy::seconds: return "seconds";
        case TimestampAccuracy::minutes: return "minutes";
        case TimestampAccuracy::hours: return "hours";
        case TimestampAccuracy::days: return "days";
    }
    return "seconds";
}

TimestampAccuracy parse_accuracy(std::string_view s) {
    if (s == "seconds" || s == "s") return TimestampAccuracy::seconds;
    if (s == "minutes" || s == "m") return TimestampAccuracy::minutes;
    if (s == "hours" || s == "h") return TimestampAccuracy::hours;
    if (s == "days" || s == "d") return TimestampAccuracy::days;
    throw ValidationError("unknown timestamp accuracy '" + std::string(s) +
                          "' (expected seconds, minutes, hours or days)");
}

namespace {

struct Cursor {
    std::string_view s;
    std::size_t i = 0;

    bool done() const { return i >= s.size(); }
    char peek() const { return done() ? '\0' : s[i]; }

    int digits(std::size_t n) {
        int v = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (done() || !std::isdigit(static_cast<unsigned char>(s[i])))
                throw ParseError("bad timestamp '" + std::string(s) + "': expected digit", i);
            v = v * 10 + (s[i++] - '0');
        }
        return v;
    }
    void expect(char c) {
        if (peek() != c)
            throw ParseError("bad timestamp '" + std::string(s) + "': expected '" + c + "'", i);
        ++i;
    }
};

}  // namespace

Timestamp parse_iso8601(std::string_view s) {
    using namespace std::chrono;
    Cursor c{s};
    int y = c.digits(4);
    c.expect('-');
    int mo = c.digits(2);
    c.expect('-');
    int d = c.digits(2);
    int hh = 0, mm = 0, ss = 0;
    if (c.peek() == 'T' || c.peek() == ' ') {
        ++c.i;
        hh = c.digits(2);
        c.expect(':');
        mm = c.digits(2);
        if (c.peek() == ':') {
            ++c.i;
            ss = c.digits(2);
            if (c.peek() == '.' || c.peek() == ',') {
                ++c.i;
                if (!std::isdigit(static_cast<unsigned char>(c.peek())))
                    throw ParseError("bad timestamp '" + std::string(s) + "': empty fraction", c.i);
                while (std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.i;
            }
        }
    }
    std::int64_t offset = 0;
    if (c.peek() == 'Z') {
        ++c.i;
    } else if (c.peek() == '+' || c.peek() == '-') {
        int sign = c.peek() == '-' ? -1 : 1;
        ++c.i;
        int oh = c.digits(2);
        if (c.peek() == ':') ++c.i;
        int om = c.digits(2);
        offset = sign * (oh * 3600 + om * 60);
    }
    if (!c.done()) throw ParseError("bad timestamp '" + std::string(s) + "': trailing characters", c.i);
    year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || hh > 23 || mm > 59 || ss > 60)
        throw ParseError("bad timestamp '" + std::string(s) + "': field out of range", 0);
    auto t = sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss} - seconds{offset};
    return time_point_cast<seconds>(t);
}

std::string format_iso8601(Timestamp t) {
    using namespace std::chrono;
    auto dp = floor<days>(t);
    year_month_day ymd{dp};
    hh_mm_ss hms{t - dp};
    char buf[96];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ld+00:00", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                  static_cast<long>(hms.seconds().count()));
    return buf;
}

Timestamp parse_timestamp(std::string_view s, const std::string& format) {
    if (format.empty() || format == "iso") return parse_iso8601(s);
    std::string str(s);
    std::tm tm{};
    const char* end = strptime(str.c_str(), format.c_str(), &tm);
    if (end == nullptr || *end != '\0') {
        std::size_t pos = end ? static_cast<std::size_t>(end - str.c_str()) : 0;
        throw ParseError("timestamp '" + str + "' does not match format '" + format + "'", pos);
    }
    return from_epoch_seconds(static_cast<std::int64_t>(timegm(&tm)));
}

std::string format_timestamp(Timestamp t, const std::string& format) {
    if (format.empty() || format == "iso") return format_iso8601(t);
    std::time_t tt = static_cast<std::time_t>(epoch_seconds(t));
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[128];
    std::size_t n = std::strftime(buf, sizeof buf, format.c_str(), &tm);
    if (n == 0) throw ValidationError("timestamp format '" + format + "' produced no output");
    return std::string(buf, n);
}

}  // namespace pmanon
