#include "pmanon/synthetic.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace pmanon {

namespace {

class Builder {
public:
    explicit Builder(std::uint64_t seed) : rng_(seed) {}

    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

    template <class T>
    const T& pick(const std::vector<T>& v, const std::vector<double>& w) {
        std::discrete_distribution<std::size_t> d(w.begin(), w.end());
        return v[d(rng_)];
    }

    int gap_minutes() {
        static const std::vector<int> gaps = {0, 1, 2, 5, 10, 30, 60, 240, 1440};
        static const std::vector<double> w = {30, 25, 15, 10, 8, 5, 4, 2, 1};
        return pick(gaps, w);
    }

    void add(Trace& t, std::int64_t& clock, const std::string& act, const std::string& res) {
        clock += 60LL * gap_minutes();
        t.push_back(Event{act, res, from_epoch_seconds(clock)});
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace

EventLog synthetic_log(const SyntheticOptions& opt) {
    Builder b(opt.seed);
    const std::vector<std::string> er = {"A", "B", "C"};
    const std::vector<double> er_w = {6, 3, 1};
    const std::vector<std::string> wards = {"E", "F", "G", "H"};
    const std::vector<double> ward_w = {5, 3, 1, 1};
    const std::vector<std::string> diagnoses = {"sepsis", "pneumonia", "uti", "other"};
    const std::vector<double> diag_w = {4, 3, 2, 1};
    const std::vector<std::string> releases = {"Release A", "Release B", "Release C", "Release D", "Release E"};
    const std::vector<double> rel_w = {20, 4, 2, 1, 1};
    std::uniform_int_distribution<int> age(20, 90);
    std::uniform_int_distribution<std::int64_t> start(0, 365LL * 24 * 60);

    std::vector<ProcessInstance> inst;
    inst.reserve(opt.cases);
    for (std::size_t c = 0; c < opt.cases; ++c) {
        ProcessInstance p;
        p.case_id = "S" + std::to_string(c + 1);
        Trace& t = p.trace;
        std::int64_t clock = 60 * start(b.rng());
        t.push_back(Event{"ER Registration", b.pick(er, er_w), from_epoch_seconds(clock)});
        b.add(t, clock, "ER Triage", b.pick(er, er_w));
        if (b.chance(0.8)) b.add(t, clock, "ER Sepsis Triage", b.pick(er, er_w));
        std::vector<std::string> labs;
        if (b.chance(0.9)) labs.push_back("Leucocytes");
        if (b.chance(0.9)) labs.push_back("CRP");
        if (b.chance(0.6)) labs.push_back("LacticAcid");
        if (b.chance(0.3)) std::shuffle(labs.begin(), labs.end(), b.rng());
        for (const auto& l : labs) b.add(t, clock, l, "B");
        if (b.chance(0.6)) b.add(t, clock, "IV Liquid", b.pick(er, er_w));
        if (b.chance(0.7)) b.add(t, clock, "IV Antibiotics", b.pick(er, er_w));
        bool admitted = false;
        if (b.chance(0.6)) {
            b.add(t, clock, "Admission NC", b.pick(wards, ward_w));
            admitted = true;
        }
        if (b.chance(0.08)) {
            b.add(t, clock, "Admission IC", b.pick(wards, ward_w));
            admitted = true;
        }
        if (admitted) {
            int rounds = std::uniform_int_distribution<int>(0, 3)(b.rng());
            for (int i = 0; i < rounds; ++i) {
                b.add(t, clock, "Leucocytes", "B");
                if (b.chance(0.7)) b.add(t, clock, "CRP", "B");
            }
            if (b.chance(0.85)) b.add(t, clock, b.pick(releases, rel_w), b.pick(wards, ward_w));
            if (b.chance(0.1)) b.add(t, clock, "Return ER", b.pick(er, er_w));
        }
        p.sensitive["Age"] = std::to_string(age(b.rng()));
        p.sensitive["Diagnosis"] = b.pick(diagnoses, diag_w);
        inst.push_back(std::move(p));
    }
    return EventLog(std::move(inst), {"Age", "Diagnosis"});
}

}  // namespace pmanon
