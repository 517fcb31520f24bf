// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "pmanon/anonymize.hpp"
#include "pmanon/error.hpp"
#include "pmanon/io.hpp"
#include "pmanon/metrics.hpp"
#include "pmanon/synthetic.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "support/random_log.hpp"

using namespace pmanon;
using fixtures::art;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back("failed: " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o) {
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << "\n";
    for (const auto& n : o.notes) std::cout << "     " << n << "\n";
    if (!o.pass) ++failures;
}

std::string fmt(double v, int d = 4) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(d) << v;
    return os.str();
}

std::vector<std::vector<SensitiveValue>> columns(const EventLog& log) {
    std::vector<std::vector<SensitiveValue>> out;
    for (const auto& a : log.sensitive_attrs()) {
        out.emplace_back();
        for (const auto& p : log.instances()) out.back().push_back(p.sensitive.at(a));
    }
    return out;
}

const std::vector<BkType> kTypes = {BkType::set, BkType::mult, BkType::seq, BkType::rel};
const std::vector<BkAttr> kAttrs = {BkAttr::ac, BkAttr::re, BkAttr::ar};
constexpr int kCorpus = 240;

std::vector<EventLog> corpus() {
    std::mt19937_64 rng(20240611);
    std::vector<EventLog> logs;
    for (int i = 0; i < kCorpus; ++i) logs.push_back(prepare_log(testlog::random_log(rng), TimestampAccuracy::hours));
    return logs;
}

PrivacyParams draw_params(std::mt19937_64& rng, BkType t, BkAttr a) {
    static const double cs[] = {0.25, 0.5, 1.0};
    PrivacyParams p;
    p.T = TimestampAccuracy::hours;
    p.bk_type = t;
    p.bk_attr = a;
    p.L = std::uniform_int_distribution<int>(1, 4)(rng);
    p.K = std::uniform_int_distribution<int>(1, 4)(rng);
    p.C = cs[std::uniform_int_distribution<int>(0, 2)(rng)];
    p.theta = 0.25;
    return p;
}

void criterion1() {
    Outcome o;
    const auto t0 = Clock::now();
    auto r = tlkc_anonymize(fixtures::table4(), fixtures::worked_example());
    const double secs = seconds_since(t0);
    auto score_of = [&](std::size_t it, const ProjectedEvent& e) {
        if (it >= r.iterations.size()) return -1.0;
        for (const auto& s : r.iterations[it].scores)
            if (s.event == e) return s.score;
        return -1.0;
    };
    const std::vector<std::pair<ProjectedEvent, double>> table7 = {
        {art("RE", "E4", 1), 0.75}, {art("HO", "E3", 4), 0.25}, {art("VI", "D1", 5), 1.50},
        {art("BT", "N1", 7), 0.20}, {art("VI", "D1", 8), 0.17}, {art("RL", "E2", 9), 0.20}};
    std::string row;
    for (const auto& [e, want] : table7) {
        double got = score_of(0, e);
        row += " " + fmt(got, 3);
        o.require(std::fabs(got - want) <= 0.01, "initial score of " + to_string(e) + " = " + fmt(got) + ", want " + fmt(want, 2));
    }
    o.note("initial scores:" + row);
    o.require(!r.iterations.empty() && r.iterations[0].winner.event == art("VI", "D1", 5), "first winner (VI,D1)@5");
    const std::vector<std::pair<ProjectedEvent, double>> table8 = {
        {art("RE", "E4", 1), 0.5}, {art("HO", "E3", 4), 0.33}, {art("BT", "N1", 7), 0.25}};
    row.clear();
    for (const auto& [e, want] : table8) {
        double got = score_of(1, e);
        row += " " + fmt(got, 3);
        o.require(std::fabs(got - want) <= 0.01, "updated score of " + to_string(e) + " = " + fmt(got));
    }
    o.note("updated scores:" + row);
    o.require(r.iterations.size() == 2 && r.iterations[1].winner.event == art("RE", "E4", 1), "second winner (RE,E4)@1");
    o.require(r.log == fixtures::table9(), "output equals the expected final log");
    o.require(r.events_removed == 6, "6 events removed (got " + std::to_string(r.events_removed) + ")");
    o.require(secs < 1.0, "runtime < 1 s");
    o.note("runtime " + fmt(secs) + " s");
    report(1, "worked example (scores, winners, final log)", o);
}

void criterion2() {
    Outcome o;
    const auto t0 = Clock::now();
    auto t4 = fixtures::table4();
    auto k2 = baseline2(t4, 2, Perspective::ART, TimestampAccuracy::hours);
    auto k4 = baseline2(t4, 4, Perspective::ART, TimestampAccuracy::hours);
    auto b1 = baseline1(t4, 2, Perspective::ART, TimestampAccuracy::hours);
    const double secs = seconds_since(t0);
    o.note("baseline-2 k=2 removed " + std::to_string(k2.events_removed) + " events; k=4 removed " +
           std::to_string(k4.events_removed));
    o.require(k2.events_removed == 12, "baseline-2 k=2 removes 12 events");
    o.require(k2.log == fixtures::hour_table("table5.csv"), "baseline-2 k=2 output equals the expected k=2 log");
    o.require(k4.events_removed == 18, "baseline-2 k=4 removes 18 events");
    o.require(k4.log == fixtures::hour_table("table6.csv"), "baseline-2 k=4 output equals the expected k=4 log");
    o.require(b1.log.empty(), "baseline-1 k=2 empties the log");
    o.require(secs < 1.0, "runtime < 1 s");
    o.note("runtime " + fmt(secs) + " s");
    report(2, "baseline golden tests", o);
}

void criterion3() {
    Outcome o;
    auto check_log = [&](const EventLog& raw, const std::string& label) {
        auto log = prepare_log(raw, TimestampAccuracy::hours);
        const std::vector<std::tuple<const char*, const char*, const char*>> cases = {
            {"set/ac", "{VI,IN}", "4"},        {"mult/ac", "[HO,BT^2]", "2"},
            {"seq/ac", "<RE,VI,HO>", "5"},     {"set/re", "{E1,D2}", "5"},
            {"mult/re", "[N1^2,E3]", "2"},     {"seq/re", "<E4,D2>", "4"},
            {"set/ar", "{(HO,E6)}", "5"},      {"mult/ar", "[(BT,N1)^2]", "2"},
            {"seq/ar", "<(RE,E4),(VI,D2)>", "4"}, {"rel/ac", "<HO@0,VI@24>", "2"},
            {"rel/re", "<E1@0,E3@1>", "3"},    {"rel/ar", "<(VI,D3)@1,(RL,E6)@5>", "6"}};
        for (const auto& [bk, lit, want] : cases) {
            auto spec = parse_bk(bk, 4);
            auto m = match(log, spec, parse_candidate(lit, spec), TimestampAccuracy::hours);
            std::string got;
            for (auto i : m) got += (got.empty() ? "" : ",") + log.instances()[i].case_id;
            o.require(got == want, label + " " + bk + " " + lit + " -> {" + got + "}, want {" + want + "}");
        }
    };
    check_log(fixtures::table2(), "csv");
    check_log(read_xes(fixtures::path("table2.xes"), {"Age", "Disease"}), "xes");
    o.note("12 attacks on the csv and xes fixtures");
    report(3, "attack matcher golden tests", o);
}

void criterion4(const std::vector<EventLog>& logs) {
    Outcome o;
    std::mt19937_64 rng(4);
    std::size_t checks = 0, mismatches = 0, mvts = 0;
    const auto t0 = Clock::now();
    for (const auto& l : logs)
        for (auto t : kTypes)
            for (auto a : kAttrs) {
                auto p = draw_params(rng, t, a);
                std::vector<oracle::Pattern> traces;
                for (const auto& pi : l.instances()) traces.push_back(project(pi, p.perspective(), p.T));
                auto expect = oracle::mvt(t, traces, columns(l), p.L, p.K, p.C);
                std::set<oracle::Pattern> got;
                for (const auto& it : enumerate_mvt(l, p).items) got.insert(it.candidate.elements);
                ++checks;
                mvts += expect.size();
                if (got != expect) ++mismatches;
            }
    const double secs = seconds_since(t0);
    o.require(logs.size() >= 200, "at least 200 logs");
    o.require(mismatches == 0, std::to_string(mismatches) + " mismatching (log, type, attr) runs");
    o.require(secs < 60.0, "runtime < 60 s");
    o.note(std::to_string(logs.size()) + " logs x 12 background types = " + std::to_string(checks) + " runs, " +
           std::to_string(mvts) + " MVTs, runtime " + fmt(secs, 2) + " s");
    report(4, "MVT enumeration equals the brute-force oracle", o);
}

void criterion5(const std::vector<EventLog>& logs) {
    Outcome o;
    std::mt19937_64 rng(5);
    std::size_t runs = 0, emptied = 0, unsound = 0, base_runs = 0, base_bad = 0;
    for (const auto& l : logs)
        for (auto t : kTypes)
            for (auto a : kAttrs) {
                auto p = draw_params(rng, t, a);
                for (int alg = 0; alg < 2; ++alg) {
                    try {
                        auto r = alg == 0 ? tlkc_anonymize(l, p) : tlkc_ext_anonymize(l, p);
                        ++runs;
                        if (!audit_tlkc(r.log, p).satisfied) ++unsound;
                    } catch (const Error&) {
                        ++emptied;
                    }
                }
                auto ps = p.perspective();
                for (auto* fn : {&baseline1, &baseline2}) {
                    auto b = fn(l, p.K, ps, p.T);
                    ++base_runs;
                    if (!k_variant_check(b.log, p.K, ps, p.T)) ++base_bad;
                }
            }
    o.require(unsound == 0, std::to_string(unsound) + " tlkc/tlkc-ext outputs fail the audit");
    o.require(base_bad == 0, std::to_string(base_bad) + " baseline outputs fail the k-variant check");
    o.note(std::to_string(runs) + " audited outputs, " + std::to_string(emptied) +
           " runs rejected because suppression would empty the log, " + std::to_string(base_runs) + " baseline runs");
    report(5, "soundness of all four anonymizers", o);
}

void criterion6(const std::vector<EventLog>& logs) {
    Outcome o;
    std::mt19937_64 rng(6);
    std::size_t chains = 0, broken = 0, passing_at_4 = 0;
    for (const auto& l : logs)
        for (auto t : kTypes)
            for (auto a : kAttrs) {
                PrivacyParams p;
                p.T = TimestampAccuracy::hours;
                p.bk_type = t;
                p.bk_attr = a;
                p.C = 1.0;
                p.K = std::uniform_int_distribution<int>(1, 4)(rng);
                std::vector<bool> ok;
                for (int L = 1; L <= 4; ++L) {
                    p.L = L;
                    ok.push_back(audit_tlkc(l, p).satisfied);
                }
                ++chains;
                passing_at_4 += ok[3];
                for (int L = 1; L < 4; ++L)
                    for (int lower = 0; lower < L; ++lower)
                        if (ok[L] && !ok[lower]) ++broken;
            }
    o.require(broken == 0, std::to_string(broken) + " (L, L') pairs pass at L but fail at L' < L");
    o.note(std::to_string(chains) + " audit chains L=1..4, " + std::to_string(passing_at_4) + " pass at L=4");
    report(6, "K-monotonicity in L with C=1", o);
}

void criterion7(const std::vector<EventLog>& logs) {
    Outcome o;
    std::size_t du_checks = 0;
    for (const auto& l : logs)
        for (auto ps : {Perspective::A, Perspective::AR, Perspective::ART}) {
            ++du_checks;
            o.require(emd_data_utility(l, l, ps, TimestampAccuracy::hours).du == 1.0, "du(EL,EL) == 1");
        }
    o.require(emd_data_utility(fixtures::table4(), fixtures::table4(), Perspective::ART, TimestampAccuracy::hours).du ==
                  1.0,
              "du == 1 on the worked example");

    auto log_of = [](const std::vector<std::pair<std::string, int>>& spec) {
        std::vector<ProcessInstance> inst;
        int id = 0;
        for (const auto& [s, n] : spec)
            for (int k = 0; k < n; ++k) {
                ProcessInstance p{"c" + std::to_string(id++), {}, {}};
                for (std::size_t i = 0; i < s.size(); ++i)
                    p.trace.push_back(Event{std::string(1, s[i]), "r" + std::string(1, s[i]),
                                            from_epoch_seconds(static_cast<std::int64_t>(i))});
                inst.push_back(p);
            }
        return EventLog(inst);
    };
    auto nlev = [](const std::string& a, const std::string& b) {
        std::vector<std::vector<int>> d(a.size() + 1, std::vector<int>(b.size() + 1));
        for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<int>(i);
        for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<int>(j);
        for (std::size_t i = 1; i <= a.size(); ++i)
            for (std::size_t j = 1; j <= b.size(); ++j)
                d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] != b[j - 1])});
        return static_cast<double>(d[a.size()][b.size()]) / static_cast<double>(std::max(a.size(), b.size()));
    };
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> len(1, 4), ch(0, 2), cnt(1, 9);
    auto word = [&] {
        std::string s;
        for (int i = len(rng); i > 0; --i) s.push_back(static_cast<char>('a' + ch(rng)));
        return s;
    };
    double worst = 0.0;
    int grids = 0;
    while (grids < 100) {
        std::string x1 = word(), x2 = word(), y1 = word(), y2 = word();
        if (x1 == x2 || y1 == y2) continue;
        int a1 = cnt(rng), a2 = cnt(rng), b1 = cnt(rng), b2 = cnt(rng);
        double du = emd_data_utility(log_of({{x1, a1}, {x2, a2}}), log_of({{y1, b1}, {y2, b2}}), Perspective::A).du;
        double p[2] = {double(a1) / (a1 + a2), double(a2) / (a1 + a2)};
        double q[2] = {double(b1) / (b1 + b2), double(b2) / (b1 + b2)};
        double cost[2][2] = {{nlev(x1, y1), nlev(x1, y2)}, {nlev(x2, y1), nlev(x2, y2)}};
        worst = std::max(worst, std::fabs(du - (1.0 - oracle::emd_grid_2x2(p, q, cost))));
        ++grids;
    }
    o.require(worst <= 1e-6, "two-variant du within 1e-6 of the grid search (worst " + fmt(worst, 9) + ")");

    std::size_t identical = 0;
    for (const auto& l : logs) {
        if (directly_follows(l, Perspective::A).empty() || directly_follows(l, Perspective::R).empty()) continue;
        auto g = dfg_compare(l, l);
        auto h = handover_compare(l, l);
        ++identical;
        o.require(g.fitness == 1.0 && g.precision == 1.0 && g.f1 == 1.0, "dfg 1/1/1 on identical logs");
        o.require(h.fitness == 1.0 && h.precision == 1.0 && h.f1 == 1.0, "handover 1/1/1 on identical logs");
    }

    // Precision on suppression-only outputs: every tlkc output of the corpus
    // plus the worked example.
    std::size_t outputs = 0, below = 0;
    std::string example;
    auto probe = [&](const EventLog& in, const EventLog& out, const std::string& label) {
        if (out.empty() || directly_follows(in, Perspective::A).empty()) return;
        ++outputs;
        auto g = dfg_compare(in, out);
        auto h = handover_compare(in, out);
        if (g.precision < 1.0 || h.precision < 1.0) {
            ++below;
            if (example.empty() && !g.added_edges.empty())
                example = label + ": dfg precision " + fmt(g.precision) + ", new edge " + g.added_edges[0].first +
                          "->" + g.added_edges[0].second;
        }
    };
    probe(fixtures::table4(), fixtures::table9(), "worked example");
    std::mt19937_64 prng(77);
    for (const auto& l : logs) {
        PrivacyParams p = draw_params(prng, BkType::set, BkAttr::ac);
        try {
            probe(l, tlkc_anonymize(l, p).log, "corpus");
        } catch (const Error&) {
        }
        probe(l, baseline1(l, 2, Perspective::A).log, "baseline-1");
    }
    o.require(below == 0, "precision 1.0 on every suppression-only output (" + std::to_string(below) + " of " +
                              std::to_string(outputs) + " below 1; " + example + ")");
    o.note(std::to_string(du_checks) + " self-distance checks, " + std::to_string(grids) + " grid searches, " +
           std::to_string(identical) + " identical-log graph comparisons, " + std::to_string(outputs) +
           " suppressed outputs");
    report(7, "utility metrics", o);
}

void criterion8(const fs::path& workdir) {
    Outcome o;
    fs::create_directories(workdir);
    const auto src = workdir / "synthetic.xes";
    const auto dst = workdir / "synthetic_anonymized.xes";
    write_xes(synthetic_log({}), src);

    PrivacyParams p;
    p.T = TimestampAccuracy::minutes;
    p.L = 2;
    p.K = 20;
    p.C = 0.5;
    p.bk_type = BkType::rel;
    p.bk_attr = BkAttr::ar;
    p.sensitive = {"Diagnosis"};

    const auto t0 = Clock::now();
    auto log = read_xes(src, p.sensitive);
    auto r = tlkc_ext_anonymize(prepare_log(log, p.T), p);
    write_xes(r.log, dst);
    const double secs = seconds_since(t0);

    auto back = read_xes(dst, p.sensitive);
    auto audit = audit_tlkc(prepare_log(back, p.T, false), p);
    o.require(log.size() >= 1000, "at least 1000 cases");
    o.require(secs < 600.0, "runtime < 600 s");
    o.require(audit.satisfied, "anonymized output passes the audit (" + std::to_string(audit.violation_count) +
                                   " violations)");
    o.note(std::to_string(log.size()) + " cases, " + std::to_string(log.event_count()) + " events; " +
           std::to_string(r.iterations.size()) + " suppressed descriptors, " + std::to_string(r.events_removed) +
           " events removed, " + std::to_string(r.dropped_cases) + " cases dropped; runtime " + fmt(secs, 2) + " s");
    report(8, "tlkc-ext on a 1000+ case log (T=minutes, L=2, K=20, C=0.5)", o);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance"};
    std::string workdir = (fs::temp_directory_path() / "pmanon_acceptance").string();
    app.add_option("--workdir", workdir, "scratch directory for the large smoke run");
    CLI11_PARSE(app, argc, argv);

    auto logs = corpus();
    auto guarded = [](int id, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            Outcome o;
            o.require(false, std::string("exception: ") + e.what());
            report(id, "aborted", o);
        }
    };
    guarded(1, criterion1);
    guarded(2, criterion2);
    guarded(3, criterion3);
    guarded(4, [&] { criterion4(logs); });
    guarded(5, [&] { criterion5(logs); });
    guarded(6, [&] { criterion6(logs); });
    guarded(7, [&] { criterion7(logs); });
    guarded(8, [&] { criterion8(workdir); });
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
    return failures == 0 ? 0 : 1;
}
