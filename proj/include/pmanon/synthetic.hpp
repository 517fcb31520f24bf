#pragma once

#include <cstddef>
#include <cstdint>

#include "pmanon/event_log.hpp"

namespace pmanon {

// Hospital-like process log: triage, lab tests, antibiotics, admission and a
// release, with a skewed variant distribution. Timestamps have minute
// resolution; cases carry Age (integer string) and Diagnosis.
struct SyntheticOptions {
    std::size_t cases = 1050;
    std::uint64_t seed = 1;
};

EventLog synthetic_log(const SyntheticOptions& opt = {});

}  // namespace pmanon
