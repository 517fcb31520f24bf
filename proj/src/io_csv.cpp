#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "pmanon/error.hpp"
#include "pmanon/io.hpp"

namespace pmanon {

void CsvColumnMap::validate() const {
    std::set<std::string> names{case_col, activity_col, timestamp_col};
    if (names.size() != 3) throw ValidationError("case, activity and timestamp columns must be distinct");
    if (resource_col && names.contains(*resource_col))
        throw ValidationError("resource column must differ from the required columns");
    for (const auto& s : sensitive_cols)
        if (names.contains(s) || (resource_col && s == *resource_col))
            throw ValidationError("sensitive column '" + s + "' collides with an event column");
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, any = false;
    std::size_t i = 0;
    if (text.substr(0, 3) == "\xEF\xBB\xBF") i = 3;
    auto end_row = [&] {
        row.push_back(std::move(field));
        field.clear();
        if (!(row.size() == 1 && row[0].empty())) rows.push_back(std::move(row));
        row.clear();
        any = false;
    };
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        any = true;
        if (c == '"') quoted = true;
        else if (c == ',') row.push_back(std::move(field)), field.clear();
        else if (c == '\r') continue;
        else if (c == '\n') end_row();
        else field += c;
    }
    if (quoted) throw ParseError("unterminated quoted CSV field", text.size());
    if (any || !field.empty() || !row.empty()) end_row();
    return rows;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

EventLog read_csv(const std::filesystem::path& path, const CsvColumnMap& map, ReadStats* stats) {
    map.validate();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::vector<std::vector<std::string>> rows;
    try {
        rows = parse_csv(buf.str());
    } catch (const ParseError& e) {
        throw ValidationError("'" + path.string() + "': " + e.what());
    }
    if (rows.empty()) throw ValidationError("'" + path.string() + "': missing header row");
    const auto& header = rows[0];
    auto col = [&](const std::string& name) -> std::size_t {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw ValidationError("'" + path.string() + "': no column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t ci = col(map.case_col), ai = col(map.activity_col), ti = col(map.timestamp_col);
    std::optional<std::size_t> ri;
    if (map.resource_col) ri = col(*map.resource_col);
    std::vector<std::size_t> si;
    for (const auto& s : map.sensitive_cols) si.push_back(col(s));
    if (stats) stats->dropped_attributes = (header.size() - 3 - (ri ? 1 : 0) - si.size()) * (rows.size() - 1);

    std::vector<std::string> order;
    std::map<std::string, ProcessInstance> cases;
    std::map<std::string, std::vector<std::pair<Timestamp, Event>>> events;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        auto where = "'" + path.string() + "', row " + std::to_string(r + 1);
        if (row.size() != header.size())
            throw ValidationError(where + ": expected " + std::to_string(header.size()) + " fields, got " +
                                  std::to_string(row.size()));
        const std::string& id = row[ci];
        if (id.empty()) throw ValidationError(where + ": empty case id");
        Event e;
        e.activity = row[ai];
        if (e.activity.empty()) throw ValidationError(where + ": empty activity");
        try {
            e.timestamp = parse_timestamp(row[ti], map.timestamp_format);
        } catch (const ParseError& err) {
            throw ValidationError(where + ": " + err.what());
        }
        if (ri && !row[*ri].empty()) e.resource = row[*ri];
        auto [it, fresh] = cases.try_emplace(id);
        ProcessInstance& p = it->second;
        if (fresh) {
            order.push_back(id);
            p.case_id = id;
            for (std::size_t k = 0; k < si.size(); ++k) {
                const auto& v = row[si[k]];
                p.sensitive[map.sensitive_cols[k]] = v.empty() ? SensitiveValue{} : SensitiveValue{v};
            }
        } else {
            for (std::size_t k = 0; k < si.size(); ++k) {
                const auto& v = row[si[k]];
                SensitiveValue sv = v.empty() ? SensitiveValue{} : SensitiveValue{v};
                if (p.sensitive[map.sensitive_cols[k]] != sv)
                    throw ValidationError(where + ": case '" + id + "' has conflicting values for '" +
                                          map.sensitive_cols[k] + "'");
            }
        }
        events[id].emplace_back(e.timestamp, std::move(e));
    }
    std::vector<ProcessInstance> instances;
    instances.reserve(order.size());
    for (const auto& id : order) {
        auto& evs = events[id];
        std::stable_sort(evs.begin(), evs.end(), [](auto& a, auto& b) { return a.first < b.first; });
        ProcessInstance p = std::move(cases[id]);
        for (auto& [t, e] : evs) p.trace.push_back(std::move(e));
        instances.push_back(std::move(p));
    }
    return EventLog(std::move(instances), map.sensitive_cols);
}

void write_csv(const EventLog& log, const std::filesystem::path& path, const CsvColumnMap& map_in) {
    CsvColumnMap map = map_in;
    if (map.sensitive_cols.empty()) map.sensitive_cols = log.sensitive_attrs();
    map.validate();
    const bool with_res = map.resource_col.has_value();
    std::ostringstream os;
    os << csv_escape(map.case_col) << ',' << csv_escape(map.activity_col) << ',' << csv_escape(map.timestamp_col);
    if (with_res) os << ',' << csv_escape(*map.resource_col);
    for (const auto& s : map.sensitive_cols) os << ',' << csv_escape(s);
    os << '\n';
    for (const auto& p : log.instances()) {
        if (p.trace.empty()) throw ValidationError("cannot write case '" + p.case_id + "' with an empty trace");
        for (const auto& e : p.trace) {
            os << csv_escape(p.case_id) << ',' << csv_escape(e.activity) << ','
               << csv_escape(format_timestamp(e.timestamp, map.timestamp_format));
            if (with_res) os << ',' << csv_escape(e.resource.value_or(""));
            for (const auto& s : map.sensitive_cols) {
                auto it = p.sensitive.find(s);
                os << ',' << (it != p.sensitive.end() && it->second ? csv_escape(*it->second) : "");
            }
            os << '\n';
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << os.str();
    if (!out) throw Error("write failed for '" + path.string() + "'");
}

LogFormat infer_format(const std::filesystem::path& path, const std::string& forced) {
    if (forced == "xes") return LogFormat::xes;
    if (forced == "csv") return LogFormat::csv;
    if (!forced.empty()) throw ValidationError("unknown log format '" + forced + "' (expected xes or csv)");
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".xes") return LogFormat::xes;
    if (ext == ".csv") return LogFormat::csv;
    throw ValidationError("cannot infer log format of '" + path.string() + "'; use --format");
}

}  // namespace pmanon
