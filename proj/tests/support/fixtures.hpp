#pragma once

#include <string>

#include "pmanon/io.hpp"
#include "pmanon/privacy.hpp"

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(PMANON_FIXTURES) + "/" + name; }

// Hour-labelled tables; times are already relative.
inline pmanon::EventLog hour_table(const std::string& name) {
    pmanon::CsvColumnMap m;
    m.sensitive_cols = {"Disease"};
    return pmanon::read_csv(path(name), m);
}

inline pmanon::EventLog table4() { return hour_table("table4.csv"); }
inline pmanon::EventLog table9() { return hour_table("table9.csv"); }

inline pmanon::CsvColumnMap table1_map() {
    pmanon::CsvColumnMap m;
    m.case_col = "CaseId";
    m.activity_col = "Activity";
    m.timestamp_col = "Timestamp";
    m.resource_col = "Resource";
    m.sensitive_cols = {"Age", "Disease"};
    m.timestamp_format = "%m.%d.%Y-%H:%M:%S";
    return m;
}

inline pmanon::EventLog table2() { return pmanon::read_csv(path("table1.csv"), table1_map()); }

inline pmanon::PrivacyParams worked_example() {
    pmanon::PrivacyParams p;
    p.T = pmanon::TimestampAccuracy::hours;
    p.L = 2;
    p.K = 2;
    p.C = 0.5;
    p.theta = 0.25;
    p.bk_type = pmanon::BkType::rel;
    p.bk_attr = pmanon::BkAttr::ar;
    p.sensitive = {"Disease"};
    return p;
}

inline pmanon::ProjectedEvent art(const char* a, const char* r, long h) {
    return pmanon::ProjectedEvent{a, r, h};
}

}  // namespace fixtures
