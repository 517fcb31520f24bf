#include "pmanon/encoded_log.hpp"

#include <algorithm>
#include <map>

#include "pmanon/error.hpp"

namespace pmanon {

int EncodedLog::id_of(const ProjectedEvent& e) const {
    auto it = std::lower_bound(alphabet.begin(), alphabet.end(), e);
    if (it == alphabet.end() || *it != e) return -1;
    return static_cast<int>(it - alphabet.begin());
}

EncodedLog encode(const EventLog& log, Perspective ps, TimestampAccuracy T, const std::vector<std::string>& attrs) {
    EncodedLog enc;
    enc.ps = ps;
    enc.T = T;
    std::vector<ProjectedTrace> projected;
    projected.reserve(log.size());
    for (const auto& p : log.instances()) projected.push_back(project(p, ps, T));
    for (const auto& t : projected) enc.alphabet.insert(enc.alphabet.end(), t.begin(), t.end());
    std::sort(enc.alphabet.begin(), enc.alphabet.end());
    enc.alphabet.erase(std::unique(enc.alphabet.begin(), enc.alphabet.end()), enc.alphabet.end());
    enc.traces.reserve(projected.size());
    for (const auto& t : projected) {
        std::vector<int> ids;
        ids.reserve(t.size());
        for (const auto& e : t) ids.push_back(enc.id_of(e));
        enc.traces.push_back(std::move(ids));
    }

    enc.sensitive_attrs = attrs.empty() ? log.sensitive_attrs() : attrs;
    for (const auto& a : enc.sensitive_attrs) {
        if (std::find(log.sensitive_attrs().begin(), log.sensitive_attrs().end(), a) == log.sensitive_attrs().end())
            throw ValidationError("sensitive attribute '" + a + "' is not declared on the log");
        std::map<SensitiveValue, int> classes;
        std::vector<int> col;
        col.reserve(log.size());
        for (const auto& p : log.instances()) {
            auto [it, fresh] = classes.emplace(p.sensitive.at(a), static_cast<int>(classes.size()));
            col.push_back(it->second);
        }
        enc.sensitive.push_back(std::move(col));
        enc.sensitive_classes.push_back(static_cast<int>(classes.size()));
    }
    return enc;
}

}  // namespace pmanon
