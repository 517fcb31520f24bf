#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "pmanon/anonymize.hpp"
#include "pmanon/error.hpp"
#include "pmanon/kernels.hpp"
#include "pmanon/metrics.hpp"
#include "pmanon/transport.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "support/random_log.hpp"

using namespace pmanon;

namespace {

ProjectedTrace acts(const std::string& s) {
    ProjectedTrace t;
    for (char c : s) t.push_back(ProjectedEvent{std::string(1, c), {}, {}});
    return t;
}

// Log whose cases spell out the given activity strings, with the given multiplicities.
EventLog log_of(const std::vector<std::pair<std::string, int>>& spec, const char* res = nullptr) {
    std::vector<ProcessInstance> inst;
    int id = 0;
    for (const auto& [s, n] : spec)
        for (int k = 0; k < n; ++k) {
            ProcessInstance p{"c" + std::to_string(id++), {}, {}};
            for (std::size_t i = 0; i < s.size(); ++i)
                p.trace.push_back(Event{std::string(1, s[i]), res ? std::optional<std::string>(res) : std::nullopt,
                                        from_epoch_seconds(static_cast<std::int64_t>(i))});
            inst.push_back(p);
        }
    return EventLog(inst);
}

double edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::vector<int>> d(a.size() + 1, std::vector<int>(b.size() + 1));
    for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<int>(i);
    for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= a.size(); ++i)
        for (std::size_t j = 1; j <= b.size(); ++j)
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] != b[j - 1])});
    return static_cast<double>(d[a.size()][b.size()]) / static_cast<double>(std::max(a.size(), b.size()));
}

}  // namespace

TEST_CASE("normalized levenshtein") {
    CHECK(normalized_levenshtein(acts("abc"), acts("abc")) == 0.0);
    CHECK(normalized_levenshtein(acts("abc"), acts("ab")) == doctest::Approx(1.0 / 3));
    CHECK(normalized_levenshtein(acts("a"), acts("b")) == 1.0);
    CHECK(normalized_levenshtein({}, {}) == 0.0);

    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> len(0, 5), ch(0, 2);
    auto word = [&] {
        std::string s;
        int n = len(rng);
        for (int i = 0; i < n; ++i) s.push_back(static_cast<char>('a' + ch(rng)));
        return s;
    };
    for (int i = 0; i < 300; ++i) {
        auto x = word(), y = word(), z = word();
        if (x.empty() && y.empty()) continue;
        double dxy = normalized_levenshtein(acts(x), acts(y));
        CHECK(dxy == doctest::Approx(edit_distance(x, y)));
        CHECK(dxy == normalized_levenshtein(acts(y), acts(x)));
        CHECK((dxy == 0.0) == (x == y));
        // The raw edit distance satisfies the triangle inequality.
        CHECK(kernels::levenshtein({x.begin(), x.end()}, {z.begin(), z.end()}) <=
              kernels::levenshtein({x.begin(), x.end()}, {y.begin(), y.end()}) +
                  kernels::levenshtein({y.begin(), y.end()}, {z.begin(), z.end()}));
    }
}

TEST_CASE("transport solver") {
    auto s = solve_transport({2, 1}, {1, 2}, {0, 1, 1, 0});
    CHECK(s.cost == doctest::Approx(1.0));
    CHECK_THROWS_AS(solve_transport({1}, {2}, {0}), Error);
    CHECK_THROWS_AS(solve_transport({1}, {1}, {0, 0}), Error);

    // Against exhaustive enumeration on 2x3 integer problems.
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> amt(0, 4);
    std::uniform_real_distribution<double> c(0.0, 1.0);
    for (int round = 0; round < 200; ++round) {
        std::vector<std::int64_t> sup = {amt(rng), amt(rng)};
        std::int64_t total = sup[0] + sup[1];
        std::int64_t d0 = std::uniform_int_distribution<std::int64_t>(0, total)(rng);
        std::int64_t d1 = std::uniform_int_distribution<std::int64_t>(0, total - d0)(rng);
        std::vector<std::int64_t> dem = {d0, d1, total - d0 - d1};
        std::vector<double> cost(6);
        for (auto& x : cost) x = c(rng);
        double best = 1e300;
        for (std::int64_t a = 0; a <= std::min(sup[0], dem[0]); ++a)
            for (std::int64_t b = 0; b <= std::min(sup[0] - a, dem[1]); ++b) {
                std::int64_t cc = sup[0] - a - b;
                if (cc > dem[2]) continue;
                double v = a * cost[0] + b * cost[1] + cc * cost[2] + (dem[0] - a) * cost[3] + (dem[1] - b) * cost[4] +
                           (dem[2] - cc) * cost[5];
                best = std::min(best, v);
            }
        auto sol = solve_transport(sup, dem, cost);
        CHECK(sol.cost == doctest::Approx(best).epsilon(1e-9));
        std::vector<std::int64_t> out(2, 0), in(3, 0);
        for (const auto& f : sol.flows) {
            out[f.from] += f.amount;
            in[f.to] += f.amount;
        }
        CHECK(out == sup);
        CHECK(in == dem);
    }
}

TEST_CASE("emd data utility") {
    auto t4 = fixtures::table4();
    CHECK(emd_data_utility(t4, t4, Perspective::ART, TimestampAccuracy::hours).du == 1.0);
    auto single = emd_data_utility(log_of({{"ab", 1}}), log_of({{"a", 1}}), Perspective::A);
    CHECK(single.du == doctest::Approx(0.5));

    auto r = emd_data_utility(log_of({{"ab", 3}, {"c", 1}}), log_of({{"a", 2}, {"cd", 2}}), Perspective::A);
    double p[2] = {0.75, 0.25}, q[2] = {0.5, 0.5};
    double cost[2][2] = {{0.5, 1.0}, {1.0, 0.5}};
    CHECK(r.du == doctest::Approx(1.0 - oracle::emd_grid_2x2(p, q, cost)).epsilon(1e-6));
    CHECK(r.du == doctest::Approx(0.375));

    auto a = log_of({{"ab", 1}});
    CHECK_THROWS_AS(emd_data_utility(a, EventLog{}, Perspective::A), ValidationError);
    CHECK_THROWS_AS(emd_data_utility(log_of({{"ab", 1}, {"b", 1}}), a, Perspective::A, TimestampAccuracy::seconds, 1),
                    Error);
}

TEST_CASE("emd on random two-variant logs against a grid search") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> len(1, 4), ch(0, 2), cnt(1, 6);
    auto word = [&] {
        std::string s;
        int n = len(rng);
        for (int i = 0; i < n; ++i) s.push_back(static_cast<char>('a' + ch(rng)));
        return s;
    };
    int checked = 0;
    while (checked < 100) {
        std::string x1 = word(), x2 = word(), y1 = word(), y2 = word();
        if (x1 == x2 || y1 == y2) continue;
        int a1 = cnt(rng), a2 = cnt(rng), b1 = cnt(rng), b2 = cnt(rng);
        auto r = emd_data_utility(log_of({{x1, a1}, {x2, a2}}), log_of({{y1, b1}, {y2, b2}}), Perspective::A);
        double p[2] = {double(a1) / (a1 + a2), double(a2) / (a1 + a2)};
        double q[2] = {double(b1) / (b1 + b2), double(b2) / (b1 + b2)};
        double cost[2][2] = {{edit_distance(x1, y1), edit_distance(x1, y2)}, {edit_distance(x2, y1), edit_distance(x2, y2)}};
        CHECK(r.du == doctest::Approx(1.0 - oracle::emd_grid_2x2(p, q, cost)).epsilon(1e-6));
        auto back = emd_data_utility(log_of({{y1, b1}, {y2, b2}}), log_of({{x1, a1}, {x2, a2}}), Perspective::A);
        CHECK(back.du == doctest::Approx(r.du).epsilon(1e-12));
        CHECK(r.du >= 0.0);
        CHECK(r.du <= 1.0);
        ++checked;
    }
}

TEST_CASE("dfg comparison") {
    auto t2 = fixtures::table2();
    auto same = dfg_compare(t2, t2);
    CHECK(same.fitness == 1.0);
    CHECK(same.precision == 1.0);
    CHECK(same.f1 == 1.0);

    auto orig = log_of({{"abc", 2}, {"ac", 1}});
    auto nob = log_of({{"ac", 3}});
    auto g = dfg_compare(orig, nob);
    CHECK(g.fitness == doctest::Approx(3.0 / 5.0));
    CHECK(g.precision == 1.0);
    CHECK(g.f1 == doctest::Approx(0.75));
    CHECK(g.missing_edges.size() == 2);
    CHECK(g.added_edges.empty());

    auto added = compare_relations({{{"a", "b"}, 1}}, {{{"b", "a"}, 1}}, {"a", "b"});
    CHECK(added.fitness == 0.0);
    CHECK(added.precision == doctest::Approx(2.0 / 3));
    CHECK(compare_relations({{{"a", "a"}, 1}}, {}, {"a"}).precision == 1.0);
    CHECK(compare_relations({{{"a", "b"}, 1}, {{"b", "a"}, 1}}, {{{"a", "a"}, 1}, {{"b", "b"}, 1}}, {"a", "b"}).f1 ==
          0.0);
    CHECK_THROWS_AS(dfg_compare(log_of({{"a", 2}}), log_of({{"a", 2}})), ValidationError);
}

TEST_CASE("handover comparison") {
    auto t2 = fixtures::table2();
    auto df = directly_follows(t2, Perspective::R);
    CHECK(df.contains({"E4", "D3"}));
    CHECK(df.contains({"E1", "E3"}));
    auto same = handover_compare(t2, t2);
    CHECK(same.f1 == 1.0);
    auto solo = log_of({{"abc", 2}}, "R1");
    auto h = handover_compare(solo, solo);
    CHECK(h.fitness == 1.0);
    CHECK(h.precision == 1.0);
    CHECK_THROWS_AS(handover_compare(log_of({{"ab", 1}}), log_of({{"ab", 1}})), ValidationError);
}

TEST_CASE("precision after suppression") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 100; ++i) {
        auto l = prepare_log(testlog::random_log(rng), TimestampAccuracy::hours);
        if (directly_follows(l, Perspective::A).empty()) continue;
        auto b = baseline1(l, 2, Perspective::A);
        if (b.log.empty()) continue;
        CHECK(dfg_compare(l, b.log).precision == 1.0);
        CHECK(handover_compare(l, b.log).precision == 1.0);
    }
    // Removing events from the middle of a trace joins its neighbours: the
    // worked example's output gains HO->BT, which the input never had.
    auto g = dfg_compare(fixtures::table4(), fixtures::table9());
    CHECK(g.added_edges == std::vector<Edge>{{"HO", "BT"}});
    CHECK(g.precision < 1.0);
}
