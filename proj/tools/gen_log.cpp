// Writes a synthetic hospital log for smoke runs and benchmarks.
#include <iostream>

#include "CLI11.hpp"
#include "pmanon/error.hpp"
#include "pmanon/io.hpp"
#include "pmanon/synthetic.hpp"

int main(int argc, char** argv) {
    CLI::App app{"gen_log"};
    pmanon::SyntheticOptions opt;
    std::string out;
    std::string format;
    app.add_option("-o,--output", out, "output path (.xes or .csv)")->required();
    app.add_option("-n,--cases", opt.cases, "number of cases")->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed, "random seed");
    app.add_option("--format", format, "xes or csv (default: from extension)");
    CLI11_PARSE(app, argc, argv);
    try {
        auto log = pmanon::synthetic_log(opt);
        if (pmanon::infer_format(out, format) == pmanon::LogFormat::xes)
            pmanon::write_xes(log, out);
        else
            pmanon::write_csv(log, out);
        std::cout << log.size() << " cases, " << log.event_count() << " events -> " << out << "\n";
    } catch (const pmanon::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
