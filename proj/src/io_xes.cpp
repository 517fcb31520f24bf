#include <algorithm>
#include <fstream>
#include <set>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "pmanon/error.hpp"
#include "pmanon/io.hpp"

namespace pmanon {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string> kValueTags = {"string", "date", "int", "float", "boolean", "id"};

struct Attr {
    std::string tag, key, value;
};

std::optional<Attr> attribute(const std::string& tag, const pt::ptree& node) {
    if (!kValueTags.contains(tag)) return std::nullopt;
    auto key = node.get_optional<std::string>("<xmlattr>.key");
    auto value = node.get_optional<std::string>("<xmlattr>.value");
    if (!key || !value) return std::nullopt;
    return Attr{tag, *key, *value};
}

}  // namespace

EventLog read_xes(const std::filesystem::path& path, const std::vector<std::string>& sensitive, ReadStats* stats) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    pt::ptree tree;
    try {
        pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw ValidationError("'" + path.string() + "': malformed XML: " + e.message() + " (line " +
                              std::to_string(e.line()) + ")");
    }
    auto log_node = tree.get_child_optional("log");
    if (!log_node) throw ValidationError("'" + path.string() + "': no <log> element");

    std::size_t dropped = 0;
    std::vector<ProcessInstance> instances;
    std::size_t trace_no = 0;
    for (const auto& [tag, tnode] : *log_node) {
        if (tag != "trace") continue;
        ++trace_no;
        ProcessInstance p;
        for (const auto& a : sensitive) p.sensitive[a] = std::nullopt;
        std::vector<std::pair<Timestamp, Event>> events;
        bool has_name = false;
        for (const auto& [etag, enode] : tnode) {
            if (etag == "<xmlattr>") continue;
            if (etag == "event") {
                Event e;
                bool has_act = false, has_time = false;
                for (const auto& [atag, anode] : enode) {
                    if (atag == "<xmlattr>") continue;
                    auto attr = attribute(atag, anode);
                    if (!attr) {
                        ++dropped;
                        continue;
                    }
                    if (attr->key == "concept:name") {
                        e.activity = attr->value;
                        has_act = !attr->value.empty();
                    } else if (attr->key == "org:resource") {
                        e.resource = attr->value;
                    } else if (attr->key == "time:timestamp") {
                        try {
                            e.timestamp = parse_iso8601(attr->value);
                        } catch (const ParseError& err) {
                            throw ValidationError("'" + path.string() + "', trace " + std::to_string(trace_no) +
                                                  ": unparseable timestamp '" + attr->value + "'");
                        }
                        has_time = true;
                    } else {
                        ++dropped;
                    }
                }
                if (!has_act)
                    throw ValidationError("'" + path.string() + "', trace " + std::to_string(trace_no) +
                                          ": event without concept:name");
                if (!has_time)
                    throw ValidationError("'" + path.string() + "', trace " + std::to_string(trace_no) +
                                          ": event without time:timestamp");
                events.emplace_back(e.timestamp, std::move(e));
                continue;
            }
            auto attr = attribute(etag, enode);
            if (!attr) {
                ++dropped;
                continue;
            }
            if (attr->key == "concept:name") {
                p.case_id = attr->value;
                has_name = true;
            } else if (std::find(sensitive.begin(), sensitive.end(), attr->key) != sensitive.end()) {
                p.sensitive[attr->key] = attr->value;
            } else {
                ++dropped;
            }
        }
        if (!has_name) p.case_id = std::to_string(trace_no);
        std::stable_sort(events.begin(), events.end(), [](auto& a, auto& b) { return a.first < b.first; });
        for (auto& [t, e] : events) p.trace.push_back(std::move(e));
        instances.push_back(std::move(p));
    }
    if (stats) stats->dropped_attributes = dropped;
    try {
        return EventLog(std::move(instances), sensitive);
    } catch (const ValidationError& e) {
        throw ValidationError("'" + path.string() + "': " + e.what());
    }
}

void write_xes(const EventLog& log, const std::filesystem::path& path) {
    pt::ptree root;
    pt::ptree& xlog = root.add("log", "");
    xlog.put("<xmlattr>.xes.version", "2.0");
    xlog.put("<xmlattr>.xmlns", "http://www.xes-standard.org/");
    auto ext = [&](const char* name, const char* prefix, const char* uri) {
        pt::ptree& e = xlog.add("extension", "");
        e.put("<xmlattr>.name", name);
        e.put("<xmlattr>.prefix", prefix);
        e.put("<xmlattr>.uri", uri);
    };
    ext("Concept", "concept", "http://www.xes-standard.org/concept.xesext");
    ext("Organizational", "org", "http://www.xes-standard.org/org.xesext");
    ext("Time", "time", "http://www.xes-standard.org/time.xesext");
    auto put_attr = [](pt::ptree& parent, const char* tag, const std::string& key, const std::string& value) {
        pt::ptree& a = parent.add(tag, "");
        a.put("<xmlattr>.key", key);
        a.put("<xmlattr>.value", value);
    };
    for (const auto& p : log.instances()) {
        if (p.trace.empty()) throw ValidationError("cannot write case '" + p.case_id + "' with an empty trace");
        pt::ptree& t = xlog.add("trace", "");
        put_attr(t, "string", "concept:name", p.case_id);
        for (const auto& [k, v] : p.sensitive)
            if (v) put_attr(t, "string", k, *v);
        for (const auto& e : p.trace) {
            pt::ptree& ev = t.add("event", "");
            put_attr(ev, "string", "concept:name", e.activity);
            if (e.resource) put_attr(ev, "string", "org:resource", *e.resource);
            put_attr(ev, "date", "time:timestamp", format_iso8601(e.timestamp));
        }
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    pt::write_xml(out, root, pt::xml_writer_make_settings<std::string>(' ', 2));
    if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace pmanon
