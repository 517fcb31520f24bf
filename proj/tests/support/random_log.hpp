#pragma once

#include <random>
#include <string>

#include "pmanon/event_log.hpp"

namespace testlog {

struct Shape {
    int max_cases = 8;
    int max_events = 6;
    int labels = 4;
};

// Small random log with resources, hour-granular timestamps and one or two
// sensitive attributes (occasionally null).
inline pmanon::EventLog random_log(std::mt19937_64& rng, const Shape& s = {}) {
    using namespace pmanon;
    std::uniform_int_distribution<int> ncases(1, s.max_cases), nev(1, s.max_events), lab(0, s.labels - 1),
        gap(0, 2), sval(0, 3), coin(0, 1);
    const bool two_attrs = coin(rng) == 1;
    std::vector<std::string> attrs = {"S"};
    if (two_attrs) attrs.push_back("U");
    std::vector<ProcessInstance> inst;
    int n = ncases(rng);
    for (int c = 0; c < n; ++c) {
        ProcessInstance p;
        p.case_id = "c" + std::to_string(c);
        std::int64_t clock = 0;
        int len = nev(rng);
        for (int i = 0; i < len; ++i) {
            clock += gap(rng) * 3600 + 60 * gap(rng);
            Event e;
            e.activity = std::string(1, static_cast<char>('a' + lab(rng)));
            e.resource = "r" + std::to_string(lab(rng));
            e.timestamp = from_epoch_seconds(clock);
            p.trace.push_back(e);
        }
        for (const auto& a : attrs) {
            int v = sval(rng);
            p.sensitive[a] = v == 3 ? SensitiveValue{} : SensitiveValue{std::string(1, static_cast<char>('x' + v))};
        }
        inst.push_back(std::move(p));
    }
    return EventLog(std::move(inst), attrs);
}

}  // namespace testlog
