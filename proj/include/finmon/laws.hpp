#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace finmon {

struct LawFailure {
    std::size_t case_index;
    std::string what;
    std::string reproducer; // serialized inputs of the failing case
};

struct LawReport {
    std::string suite;
    std::size_t cases = 0;
    std::vector<LawFailure> failures;
    double millis = 0.0;

    bool ok() const { return failures.empty(); }
};

// Suites: monad, commutative, integration, chu, fourier (seeded random),
// ftc, levy (fixed quantitative checks; cases/seed ignored).
LawReport run_law_suite(const std::string& suite, std::size_t cases, std::uint64_t seed);

const std::vector<std::string>& law_suite_names();

} // namespace finmon
