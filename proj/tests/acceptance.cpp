// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <cstdlib>
#include <iostream>
#include <string>

#include "finmon/laws.hpp"

using namespace finmon;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name << " (" << detail << ")\n";
    if (!ok) ++failures;
}

void suite(const std::string& name, const std::string& label, std::size_t cases,
           double max_millis = 0.0) {
    LawReport r = run_law_suite(name, cases, 0);
    bool ok = r.ok() && (max_millis == 0.0 || r.millis < max_millis);
    std::string detail = std::to_string(r.cases - r.failures.size()) + "/" +
                         std::to_string(r.cases) + " cases, " +
                         std::to_string(r.millis) + " ms";
    if (!r.ok()) detail += "; first failure: " + r.failures.front().what;
    if (r.ok() && max_millis > 0.0 && r.millis >= max_millis)
        detail += "; exceeded " + std::to_string(max_millis) + " ms budget";
    report(label, ok, detail);
}

} // namespace

int main() {
    suite("monad", "1 monad laws: 200 exact cases under 5 s", 200, 5000.0);
    suite("commutative", "2 commutativity: swap symmetry, Fubini, double integral", 200);
    suite("integration", "3 integration calculus: change of variables, exchange, adjunction",
          200);
    suite("chu", "4 chu laws: eta, triple dualisation, curry, dual-tensor-hom under 10 s",
          100, 10000.0);
    suite("ftc", "5 quantitative fundamental theorem: 0.0025 error and 1/4 ratios", 4);
    suite("fourier", "6 characteristic functions: normalisation, psd, injectivity", 100);
    suite("levy", "7 shrinking diracs: both verdicts converge, no flag", 1);

    const char* cli = std::getenv("FINMON_CLI_PATH");
    const char* dir = std::getenv("FINMON_GOLDEN_DIR");
#ifdef FINMON_CLI_PATH
    if (!cli) cli = FINMON_CLI_PATH;
#endif
#ifdef FINMON_GOLDEN_DIR
    if (!dir) dir = FINMON_GOLDEN_DIR;
#endif
    if (cli && dir) {
        std::string cmd = std::string(dir) + "/run_golden.sh '" + cli + "' '" + dir +
                          "' > /dev/null 2>&1";
        int rc = std::system(cmd.c_str());
        report("8 cli determinism: golden suite byte-identical twice", rc == 0,
               rc == 0 ? "all cases match" : "run_golden.sh exit " + std::to_string(rc));
    } else {
        report("8 cli determinism: golden suite byte-identical twice", false,
               "FINMON_CLI_PATH/FINMON_GOLDEN_DIR not set");
    }

    if (failures) std::cout << failures << " criterion(s) failed\n";
    return failures ? 1 : 0;
}
