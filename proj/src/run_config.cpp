#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pmanon/error.hpp"
#include "pmanon/io.hpp"

namespace pmanon {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

template <class T>
T number(const std::string& key, const std::string& v) {
    T out{};
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw ValidationError("setting '" + key + "': '" + v + "' is not a valid number");
    return out;
}

bool boolean(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ValidationError("setting '" + key + "': '" + v + "' is not a boolean");
}

std::vector<std::string> list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
}

std::string num(double d) {
    std::ostringstream os;
    os.precision(17);
    os << d;
    return os.str();
}

}  // namespace

void RunConfig::validate() const {
    params.validate();
    static const std::vector<std::string> algos = {"tlkc", "tlkc-ext", "baseline1", "baseline2"};
    if (std::find(algos.begin(), algos.end(), algorithm) == algos.end())
        throw ValidationError("unknown algorithm '" + algorithm + "' (expected tlkc, tlkc-ext, baseline1, baseline2)");
    static const std::vector<std::string> metrics = {"all", "emd", "dfg", "handover"};
    if (std::find(metrics.begin(), metrics.end(), metric) == metrics.end())
        throw ValidationError("unknown metric '" + metric + "' (expected all, emd, dfg, handover)");
    if (!perspective.empty()) parse_perspective(perspective);
    if (threads < 0) throw ValidationError("threads must be non-negative");
    csv.validate();
}

void apply_setting(RunConfig& c, const std::string& key_in, const std::string& value_in) {
    const std::string key = trim(key_in);
    const std::string v = trim(value_in);
    auto& p = c.params;
    if (key == "input") c.input = v;
    else if (key == "output") c.output = v;
    else if (key == "anonymized") c.anonymized = v;
    else if (key == "format") c.format = v;
    else if (key == "output-format") c.output_format = v;
    else if (key == "algorithm") c.algorithm = v;
    else if (key == "time-accuracy" || key == "T") p.T = parse_accuracy(v);
    else if (key == "max-size" || key == "L") p.L = number<int>(key, v);
    else if (key == "k-anonymity" || key == "K") p.K = number<int>(key, v);
    else if (key == "confidence" || key == "C") p.C = number<double>(key, v);
    else if (key == "theta") p.theta = number<double>(key, v);
    else if (key == "alpha") p.alpha = number<double>(key, v);
    else if (key == "beta") p.beta = number<double>(key, v);
    else if (key == "bk") {
        auto s = parse_bk(v, p.L);
        p.bk_type = s.type;
        p.bk_attr = s.attr;
    } else if (key == "sensitive") p.sensitive = list(v);
    else if (key == "discretize") c.discretize = list(v);
    else if (key == "keep-timestamps") c.relative = !boolean(key, v);
    else if (key == "mft-max-length") {
        if (v.empty() || v == "auto") p.mft_max_length.reset();
        else p.mft_max_length = number<int>(key, v);
    } else if (key == "tie-break") {
        if (v.empty() || v == "canonical") c.tie_break_seed.reset();
        else c.tie_break_seed = number<std::uint64_t>(key, v);
    } else if (key == "threads") c.threads = number<int>(key, v);
    else if (key == "report") c.report = v;
    else if (key == "metric") c.metric = v;
    else if (key == "perspective") c.perspective = v;
    else if (key == "max-violations") c.max_violations = number<std::size_t>(key, v);
    else if (key == "transport-cap") c.transport_cap = number<std::size_t>(key, v);
    else if (key == "case-column") c.csv.case_col = v;
    else if (key == "activity-column") c.csv.activity_col = v;
    else if (key == "timestamp-column") c.csv.timestamp_col = v;
    else if (key == "resource-column") {
        if (v.empty()) c.csv.resource_col.reset();
        else c.csv.resource_col = v;
    } else if (key == "timestamp-format") c.csv.timestamp_format = v;
    else throw ValidationError("unknown setting '" + key + "'");
}

std::vector<std::pair<std::string, std::string>> settings(const RunConfig& c) {
    const auto& p = c.params;
    return {
        {"input", c.input},
        {"output", c.output},
        {"anonymized", c.anonymized},
        {"format", c.format},
        {"output-format", c.output_format},
        {"algorithm", c.algorithm},
        {"time-accuracy", to_string(p.T)},
        {"max-size", std::to_string(p.L)},
        {"k-anonymity", std::to_string(p.K)},
        {"confidence", num(p.C)},
        {"theta", num(p.theta)},
        {"alpha", num(p.alpha)},
        {"beta", num(p.beta)},
        {"bk", to_string(p.spec())},
        {"sensitive", join(p.sensitive)},
        {"discretize", join(c.discretize)},
        {"keep-timestamps", c.relative ? "false" : "true"},
        {"mft-max-length", p.mft_max_length ? std::to_string(*p.mft_max_length) : "auto"},
        {"tie-break", c.tie_break_seed ? std::to_string(*c.tie_break_seed) : "canonical"},
        {"threads", std::to_string(c.threads)},
        {"report", c.report},
        {"metric", c.metric},
        {"perspective", c.perspective},
        {"max-violations", std::to_string(c.max_violations)},
        {"transport-cap", std::to_string(c.transport_cap)},
        {"case-column", c.csv.case_col},
        {"activity-column", c.csv.activity_col},
        {"timestamp-column", c.csv.timestamp_col},
        {"resource-column", c.csv.resource_col.value_or("")},
        {"timestamp-format", c.csv.timestamp_format},
    };
}

RunConfig parse_run_config(std::string_view text, RunConfig base) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
        auto key = trim(std::string_view(t).substr(0, eq));
        auto value = trim(std::string_view(t).substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        try {
            apply_setting(base, key, value);
        } catch (const ValidationError& e) {
            throw ValidationError("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

RunConfig read_run_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_run_config(buf.str(), std::move(base));
    } catch (const ValidationError& e) {
        throw ValidationError("'" + path.string() + "': " + e.what());
    }
}

std::string format_run_config(const RunConfig& cfg) {
    std::string out;
    for (const auto& [k, v] : settings(cfg)) out += k + " = " + v + "\n";
    return out;
}

void write_run_config(const RunConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write config '" + path.string() + "'");
    out << format_run_config(cfg);
    if (!out) throw Error("write failed for config '" + path.string() + "'");
}

}  // namespace pmanon
