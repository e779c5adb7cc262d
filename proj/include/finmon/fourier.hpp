#pragma once

#include <complex>

#include "finmon/measure.hpp"

namespace finmon {

struct CharEvaluation {
    std::vector<std::vector<double>> grid;
    std::vector<std::complex<double>> values;
};

// Characteristic function: value(x) = Σ_φ w_φ exp(2πi <φ, x>), where the
// measure's points carry the dual vectors φ as coordinates.
CharEvaluation char_fn(const Measure& mu, const std::vector<std::vector<double>>& xs);

std::complex<double> char_value(const Measure& mu, const std::vector<double>& x);

struct PDReport {
    std::vector<std::vector<double>> points;
    std::vector<std::vector<std::complex<double>>> gram; // M_ij = f(x_i - x_j)
    bool psd = false;
    bool hermitian_ok = true;
    std::vector<std::complex<double>> witness; // c with c^H M c < 0, when !psd
    double witness_value = 0.0;
    double tol = 0.0;
};

// PSD certification by pivoted Hermitian elimination; a failed pivot yields
// a certifying vector with c^H M c < 0.
PDReport pd_check(const std::function<std::complex<double>(const std::vector<double>&)>& f,
                  const std::vector<std::vector<double>>& points, double tol);

struct LevyReport {
    std::vector<double> char_deviations; // max over grid per sequence element
    Verdict char_verdict = Verdict::Inconclusive;
    WeakConvReport weak;
    bool flag = false; // raised iff the two verdicts disagree
};

LevyReport levy_diagnostic(
    const std::vector<Measure>& seq, const Measure& limit,
    const std::vector<std::vector<double>>& grid,
    const std::vector<std::pair<std::function<Scalar(const Point&)>, std::string>>& tests,
    double tol);

} // namespace finmon
