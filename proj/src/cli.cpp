#include "pmanon/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>

#include "CLI11.hpp"
#include "json.hpp"
#include "pmanon/anonymize.hpp"
#include "pmanon/background.hpp"
#include "pmanon/error.hpp"
#include "pmanon/io.hpp"
#include "pmanon/kernels.hpp"
#include "pmanon/metrics.hpp"
#include "pmanon/privacy.hpp"

namespace pmanon {

namespace {

using json = nlohmann::json;

struct OptionSpec {
    const char* names;
    const char* key;
    const char* help;
};

const std::vector<OptionSpec> kOptions = {
    {"-i,--input", "input", "Input event log (.xes or .csv)"},
    {"-o,--output", "output", "Output event log"},
    {"--anonymized", "anonymized", "Anonymized log to compare against (evaluate)"},
    {"--format", "format", "Force the input format: xes or csv"},
    {"--output-format", "output-format", "Force the output format: xes or csv"},
    {"--algorithm", "algorithm", "tlkc, tlkc-ext, baseline1 or baseline2"},
    {"-T,--time-accuracy", "time-accuracy", "Timestamp accuracy: seconds, minutes, hours, days"},
    {"-L,--max-size", "max-size", "Maximal background knowledge size L"},
    {"-K,--k-anonymity", "k-anonymity", "Minimal group size K (also k for the baselines)"},
    {"-C,--confidence", "confidence", "Maximal sensitive-value confidence C in (0,1]"},
    {"--theta", "theta", "Support threshold for maximal frequent traces"},
    {"--alpha", "alpha", "Privacy weight of the extended score"},
    {"--beta", "beta", "Utility weight of the extended score"},
    {"--bk", "bk", "Background knowledge <type>/<attr>, e.g. rel/ar"},
    {"--sensitive", "sensitive", "Comma-separated sensitive case attributes"},
    {"--discretize", "discretize", "Numeric sensitive attributes to bucket by quartiles"},
    {"--mft-max-length", "mft-max-length", "Longest maximal frequent trace to mine (auto = longest trace)"},
    {"--tie-break", "tie-break", "canonical, or an integer seed for random tie-breaking"},
    {"--threads", "threads", "Worker threads for the parallel kernels (0 = default)"},
    {"--report", "report", "Write a JSON report to this path"},
    {"--metric", "metric", "all, emd, dfg or handover"},
    {"--perspective", "perspective", "Perspective for evaluate/stats: A, R, AR, AT, RT, ART"},
    {"--max-violations", "max-violations", "How many violations to list"},
    {"--transport-cap", "transport-cap", "Largest variant cost matrix for the EMD solver"},
    {"--case-column", "case-column", "CSV case id column"},
    {"--activity-column", "activity-column", "CSV activity column"},
    {"--timestamp-column", "timestamp-column", "CSV timestamp column"},
    {"--resource-column", "resource-column", "CSV resource column (empty for none)"},
    {"--timestamp-format", "timestamp-format", "CSV timestamp format: iso or a strptime pattern"},
};

struct Command {
    CLI::App* app = nullptr;
    std::map<std::string, CLI::Option*> options;
    std::map<std::string, std::string> values;
    std::string config;
    bool keep_timestamps = false;
    CLI::Option* keep_opt = nullptr;
    std::string candidate;
};

void add_common(Command& c) {
    for (const auto& o : kOptions) c.options[o.key] = c.app->add_option(o.names, c.values[o.key], o.help);
    c.app->add_option("--config", c.config, "Flat key = value config file; flags override it");
    c.keep_opt = c.app->add_flag("--keep-timestamps", c.keep_timestamps,
                                 "Use timestamps as given instead of making them relative to the case start");
}

RunConfig effective_config(const Command& c) {
    RunConfig cfg;
    if (!c.config.empty()) cfg = read_run_config(c.config);
    for (const auto& [key, opt] : c.options)
        if (opt->count() > 0) apply_setting(cfg, key, c.values.at(key));
    if (c.keep_opt->count() > 0) cfg.relative = !c.keep_timestamps;
    cfg.validate();
    if (cfg.threads > 0) kernels::set_threads(cfg.threads);
    return cfg;
}

json config_json(const RunConfig& cfg) {
    json j = json::object();
    for (const auto& [k, v] : settings(cfg)) j[k] = v;
    return j;
}

EventLog load(const std::string& path, const RunConfig& cfg, const std::string& forced_format) {
    if (path.empty()) throw ValidationError("no input log given (--input)");
    auto fmt = infer_format(path, forced_format);
    const auto& sens = cfg.params.sensitive;
    EventLog log;
    if (fmt == LogFormat::xes) {
        log = read_xes(path, sens);
    } else {
        CsvColumnMap map = cfg.csv;
        map.sensitive_cols = sens;
        log = read_csv(path, map);
    }
    for (const auto& a : cfg.discretize) log = discretize_sensitive(log, a);
    return log;
}

void save(const EventLog& log, const RunConfig& cfg) {
    std::string forced = cfg.output_format;
    if (forced.empty()) {
        try {
            forced = infer_format(cfg.output) == LogFormat::xes ? "xes" : "csv";
        } catch (const ValidationError&) {
            forced = infer_format(cfg.input, cfg.format) == LogFormat::xes ? "xes" : "csv";
        }
    }
    if (infer_format(cfg.output, forced) == LogFormat::xes) write_xes(log, cfg.output);
    else write_csv(log, cfg.output, cfg.csv);
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write report '" + path + "'");
    out << j.dump(2) << "\n";
}

std::string fixed(double v, int digits = 4) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

json scored_json(const ScoredEvent& s) {
    return {{"event", to_string(s.event)}, {"score", s.score}, {"pg", s.pg}, {"ul", s.ul}};
}

int cmd_anonymize(const Command& c, std::ostream& out, std::ostream& err) {
    auto cfg = effective_config(c);
    if (cfg.output.empty()) throw ValidationError("anonymize needs --output");
    auto start = std::chrono::steady_clock::now();
    auto log = load(cfg.input, cfg, cfg.format);
    auto prepared = prepare_log(log, cfg.params.T, cfg.relative);
    const std::size_t events_in = prepared.event_count();

    json report;
    report["config"] = config_json(cfg);
    report["algorithm"] = cfg.algorithm;
    EventLog result;
    std::size_t removed = 0, dropped = 0;
    if (cfg.algorithm == "tlkc" || cfg.algorithm == "tlkc-ext") {
        AnonymizeOptions opt;
        opt.tie_break_seed = cfg.tie_break_seed;
        auto r = cfg.algorithm == "tlkc" ? tlkc_anonymize(prepared, cfg.params, opt)
                                         : tlkc_ext_anonymize(prepared, cfg.params, opt);
        result = std::move(r.log);
        removed = r.events_removed;
        dropped = r.dropped_cases;
        json sup = json::array(), iters = json::array();
        for (const auto& e : r.suppression) sup.push_back(to_string(e));
        for (const auto& it : r.iterations) {
            json j = scored_json(it.winner);
            j["mvts_before"] = it.mvts_before;
            j["mvts_removed"] = it.mvts_removed;
            iters.push_back(j);
        }
        report["suppression"] = sup;
        report["iterations"] = iters;
        report["initial_mvts"] = r.initial_mvts;
        report["initial_mfts"] = r.initial_mfts;
        for (const auto& it : r.iterations)
            out << "winner " << to_string(it.winner.event) << " score=" << fixed(it.winner.score)
                << " remaining_mvts=" << it.mvts_before << "\n";
    } else {
        auto ps = cfg.params.perspective();
        auto r = cfg.algorithm == "baseline1" ? baseline1(prepared, cfg.params.K, ps, cfg.params.T)
                                              : baseline2(prepared, cfg.params.K, ps, cfg.params.T);
        result = std::move(r.log);
        removed = r.events_removed;
        dropped = r.dropped_cases;
    }
    save(result, cfg);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report["summary"] = {{"events_in", events_in},
                         {"events_removed", removed},
                         {"cases_in", prepared.size()},
                         {"cases_dropped", dropped},
                         {"runtime_seconds", secs}};
    write_json(cfg.report.empty() ? cfg.output + ".report.json" : cfg.report, report);
    if (result.empty()) err << "warning: the anonymized log is empty (every case was removed)\n";
    out << removed << " events removed, " << dropped << " cases dropped, runtime " << fixed(secs, 3) << " s\n";
    return kExitOk;
}

int cmd_audit(const Command& c, std::ostream& out, std::ostream&) {
    auto cfg = effective_config(c);
    auto log = prepare_log(load(cfg.input, cfg, cfg.format), cfg.params.T, cfg.relative);
    auto r = audit_tlkc(log, cfg.params, cfg.max_violations);
    json viol = json::array();
    for (const auto& v : r.violations) {
        out << "violation " << to_string(v.candidate) << " " << to_string(v.verdict) << " match=" << v.verdict.support
            << " max_confidence=" << fixed(v.verdict.max_confidence) << "\n";
        viol.push_back({{"candidate", to_string(v.candidate)},
                        {"verdict", to_string(v.verdict)},
                        {"match_size", v.verdict.support},
                        {"max_confidence", v.verdict.max_confidence}});
    }
    if (r.satisfied) out << "satisfied\n";
    else
        out << "not satisfied: " << r.violation_count << " violating candidates (" << r.k_violation_count << " K, "
            << r.c_violation_count << " C)\n";
    if (!cfg.report.empty()) {
        json j;
        j["config"] = config_json(cfg);
        j["satisfied"] = r.satisfied;
        j["violation_count"] = r.violation_count;
        j["k_violation_count"] = r.k_violation_count;
        j["c_violation_count"] = r.c_violation_count;
        j["candidates_per_size"] = r.candidates_per_size;
        j["violations"] = viol;
        write_json(cfg.report, j);
    }
    return r.satisfied ? kExitOk : kExitViolation;
}

int cmd_attack(const Command& c, std::ostream& out, std::ostream&) {
    auto cfg = effective_config(c);
    auto spec = cfg.params.spec();
    auto cand = parse_candidate(c.candidate, spec);
    auto log = prepare_log(load(cfg.input, cfg, cfg.format), cfg.params.T, cfg.relative);
    auto m = match(log, spec, cand, cfg.params.T);
    out << m.size() << " matches";
    if (!m.empty()) {
        out << ":";
        for (auto i : m) out << " " << log.instances()[i].case_id;
    }
    out << "\n";
    json j;
    j["config"] = config_json(cfg);
    j["candidate"] = to_string(cand);
    j["cases"] = json::array();
    for (auto i : m) j["cases"].push_back(log.instances()[i].case_id);
    j["confidence"] = json::object();
    if (!m.empty()) {
        const auto& attrs = cfg.params.sensitive.empty() ? log.sensitive_attrs() : cfg.params.sensitive;
        for (const auto& a : attrs) {
            auto conf = confidence(log, m, a);
            out << a << ":";
            for (const auto& [v, f] : conf.fractions) {
                out << " " << v.value_or("<null>") << "=" << fixed(f, 2);
                j["confidence"][a][v.value_or("<null>")] = f;
            }
            out << " (max " << fixed(conf.max, 2) << ")\n";
        }
    }
    if (!cfg.report.empty()) write_json(cfg.report, j);
    return kExitOk;
}

json graph_json(const GraphComparison& g) {
    json missing = json::array(), added = json::array();
    for (const auto& [x, y] : g.missing_edges) missing.push_back({x, y});
    for (const auto& [x, y] : g.added_edges) added.push_back({x, y});
    return {{"fitness", g.fitness}, {"precision", g.precision}, {"f1", g.f1}, {"missing_edges", missing},
            {"added_edges", added}};
}

int cmd_evaluate(const Command& c, std::ostream& out, std::ostream&) {
    auto cfg = effective_config(c);
    if (cfg.anonymized.empty()) throw ValidationError("evaluate needs --anonymized");
    auto orig = load(cfg.input, cfg, cfg.format);
    auto anon = load(cfg.anonymized, cfg, cfg.format);
    Perspective ps = cfg.perspective.empty() ? Perspective::A : parse_perspective(cfg.perspective);
    if (has_time(ps)) {
        orig = prepare_log(orig, cfg.params.T, cfg.relative);
        anon = prepare_log(anon, cfg.params.T, cfg.relative);
    }
    json j;
    j["config"] = config_json(cfg);
    j["metrics"] = json::array();
    const bool all = cfg.metric == "all";
    if (all || cfg.metric == "emd") {
        auto r = emd_data_utility(orig, anon, ps, cfg.params.T, cfg.transport_cap);
        out << "emd du=" << fixed(r.du, 6) << " (perspective " << to_string(ps) << ", " << r.original_variants.size()
            << " x " << r.anonymized_variants.size() << " variants)\n";
        json plan = json::array();
        for (const auto& f : r.plan)
            plan.push_back({{"original", to_string(r.original_variants[f.original])},
                            {"anonymized", to_string(r.anonymized_variants[f.anonymized])},
                            {"mass", f.mass},
                            {"distance", f.distance}});
        j["metrics"].push_back({{"metric", "emd"}, {"perspective", to_string(ps)}, {"value", r.du}, {"plan", plan}});
    }
    if (all || cfg.metric == "dfg") {
        auto g = dfg_compare(orig, anon);
        out << "dfg fitness=" << fixed(g.fitness) << " precision=" << fixed(g.precision) << " f1=" << fixed(g.f1) << "\n";
        auto gj = graph_json(g);
        gj["metric"] = "dfg";
        j["metrics"].push_back(gj);
    }
    if (cfg.metric == "handover" || (all && orig.has_resources() && anon.has_resources())) {
        auto g = handover_compare(orig, anon);
        out << "handover fitness=" << fixed(g.fitness) << " precision=" << fixed(g.precision) << " f1=" << fixed(g.f1)
            << "\n";
        auto gj = graph_json(g);
        gj["metric"] = "handover";
        j["metrics"].push_back(gj);
    }
    if (!cfg.report.empty()) write_json(cfg.report, j);
    return kExitOk;
}

int cmd_stats(const Command& c, std::ostream& out, std::ostream&) {
    auto cfg = effective_config(c);
    auto log = load(cfg.input, cfg, cfg.format);
    json j;
    j["config"] = config_json(cfg);
    j["cases"] = log.size();
    j["events"] = log.event_count();
    j["activities"] = activities(log).size();
    j["resources"] = resources(log).size();
    out << "cases " << log.size() << "\n";
    out << "events " << log.event_count() << "\n";
    out << "activities " << activities(log).size() << "\n";
    out << "resources " << resources(log).size() << "\n";
    std::vector<Perspective> pss;
    if (!cfg.perspective.empty()) pss.push_back(parse_perspective(cfg.perspective));
    else {
        pss.push_back(Perspective::A);
        if (log.has_resources()) pss.insert(pss.end(), {Perspective::R, Perspective::AR});
    }
    auto prepared = prepare_log(log, cfg.params.T, cfg.relative);
    for (auto ps : pss) {
        auto v = variants(has_time(ps) ? prepared : log, ps, cfg.params.T);
        out << "variants " << to_string(ps) << " " << v.counts.size() << "\n";
        j["variants"][to_string(ps)] = v.counts.size();
    }
    if (!cfg.report.empty()) write_json(cfg.report, j);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Event log anonymization under TLKC-privacy"};
    app.require_subcommand(1);
    std::vector<std::unique_ptr<Command>> cmds;
    auto make = [&](const char* name, const char* help) {
        auto c = std::make_unique<Command>();
        c->app = app.add_subcommand(name, help);
        add_common(*c);
        cmds.push_back(std::move(c));
        return cmds.back().get();
    };
    auto* anon = make("anonymize", "Suppress events until the privacy requirement holds");
    auto* audit = make("audit", "Check a log against a privacy requirement");
    auto* attack = make("attack", "List the cases matching a background knowledge candidate");
    attack->app->add_option("candidate", attack->candidate, "Candidate literal, e.g. '{VI,IN}' or '<(RE,E4)@1>'")
        ->required();
    auto* eval = make("evaluate", "Compare an anonymized log with the original");
    auto* stats = make("stats", "Case, event and variant counts");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? kExitOk : kExitUsage;
    }
    try {
        if (anon->app->parsed()) return cmd_anonymize(*anon, out, err);
        if (audit->app->parsed()) return cmd_audit(*audit, out, err);
        if (attack->app->parsed()) return cmd_attack(*attack, out, err);
        if (eval->app->parsed()) return cmd_evaluate(*eval, out, err);
        if (stats->app->parsed()) return cmd_stats(*stats, out, err);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace pmanon
