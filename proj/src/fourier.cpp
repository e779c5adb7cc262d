#include "finmon/fourier.hpp"

#include <cmath>
#include <limits>

namespace finmon {

std::complex<double> char_value(const Measure& mu, const std::vector<double>& x) {
    auto dim = mu.space()->coord_dim();
    if (!dim)
        throw MissingCoordinates("characteristic function needs coordinates on space '" +
                                 mu.space()->name() + "'");
    if (x.size() != *dim)
        throw DimensionMismatch("grid vector dimension " + std::to_string(x.size()) +
                                ", expected " + std::to_string(*dim));
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [i, w] : mu.atoms()) {
        const auto& phi = *mu.space()->point(i).coords;
        double dot = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) dot += phi[k].to_double() * x[k];
        acc += w.to_complex() * std::polar(1.0, 2.0 * M_PI * dot);
    }
    return acc;
}

CharEvaluation char_fn(const Measure& mu, const std::vector<std::vector<double>>& xs) {
    CharEvaluation out;
    out.grid = xs;
    out.values.reserve(xs.size());
    for (const auto& x : xs) out.values.push_back(char_value(mu, x));
    return out;
}

PDReport pd_check(const std::function<std::complex<double>(const std::vector<double>&)>& f,
                  const std::vector<std::vector<double>>& points, double tol) {
    if (!(tol > 0.0)) throw InvalidParameter("pd_check needs tol > 0");
    std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (points[i] == points[j])
                throw DuplicatePoints("sample points must be pairwise distinct");
    PDReport rep;
    rep.points = points;
    rep.tol = tol;
    auto diff = [&](std::size_t i, std::size_t j) {
        std::vector<double> d(points[i].size());
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = points[i][k] - points[j][k];
        return d;
    };
    rep.gram.assign(n, std::vector<std::complex<double>>(n));
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            rep.gram[i][j] = f(diff(i, j));
            scale = std::max(scale, std::abs(rep.gram[i][j].real()));
        }
    for (std::size_t i = 0; i < n && rep.hermitian_ok; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(rep.gram[i][j] - std::conj(rep.gram[j][i])) > tol * (1.0 + scale)) {
                rep.hermitian_ok = false;
                break;
            }
    // work on the hermitized matrix so the factorization is well-posed
    std::vector<std::vector<std::complex<double>>> s(n, std::vector<std::complex<double>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            s[i][j] = 0.5 * (rep.gram[i][j] + std::conj(rep.gram[j][i]));

    const double thr = tol * (1.0 + scale);
    std::vector<std::size_t> order;       // pivot indices in elimination order
    std::vector<bool> done(n, false);
    // multipliers[t][i]: L entry of row i against pivot t
    std::vector<std::vector<std::complex<double>>> multipliers;

    auto build_witness = [&](std::vector<std::complex<double>> seed) {
        // solve L^H c = seed over the eliminated pivots, back to front
        for (std::size_t t = order.size(); t-- > 0;) {
            std::size_t p = order[t];
            std::complex<double> acc = seed[p];
            for (std::size_t i = 0; i < n; ++i)
                if (i != p) acc -= std::conj(multipliers[t][i]) * seed[i];
            seed[p] = acc;
        }
        return seed;
    };
    auto finish_not_psd = [&](std::vector<std::complex<double>> seed) {
        rep.witness = build_witness(std::move(seed));
        std::complex<double> q{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                q += std::conj(rep.witness[i]) * rep.gram[i][j] * rep.witness[j];
        rep.witness_value = q.real();
        rep.psd = false;
    };

    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        double best_diag = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && s[i][i].real() > best_diag) {
                best_diag = s[i][i].real();
                best = i;
            }
        if (best_diag < -thr) {
            std::vector<std::complex<double>> seed(n, 0.0);
            seed[best] = 1.0;
            finish_not_psd(std::move(seed));
            return rep;
        }
        if (best_diag <= thr) {
            // all remaining diagonals are ~0; any sizable off-diagonal
            // certifies indefiniteness via a 2x2 block
            for (std::size_t i = 0; i < n; ++i) {
                if (done[i]) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (done[j] || j == i) continue;
                    if (std::abs(s[i][j]) > std::sqrt(thr * (1.0 + scale))) {
                        std::vector<std::complex<double>> seed(n, 0.0);
                        seed[i] = 1.0;
                        seed[j] = -std::conj(s[i][j]) / std::abs(s[i][j]);
                        finish_not_psd(std::move(seed));
                        return rep;
                    }
                }
            }
            break; // residual is numerically zero
        }
        std::size_t p = best;
        done[p] = true;
        order.push_back(p);
        std::vector<std::complex<double>> mult(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i]) mult[i] = s[i][p] / s[p][p];
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (done[j]) continue;
                s[i][j] -= mult[i] * std::conj(mult[j]) * s[p][p];
            }
        }
        multipliers.push_back(std::move(mult));
    }
    rep.psd = true;
    return rep;
}

LevyReport levy_diagnostic(
    const std::vector<Measure>& seq, const Measure& limit,
    const std::vector<std::vector<double>>& grid,
    const std::vector<std::pair<std::function<Scalar(const Point&)>, std::string>>& tests,
    double tol) {
    if (seq.empty()) throw EmptySequence("levy diagnostic needs a nonempty sequence");
    LevyReport rep;
    CharEvaluation limit_char = char_fn(limit, grid);
    for (const auto& m : seq) {
        CharEvaluation c = char_fn(m, grid);
        double dev = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k)
            dev = std::max(dev, std::abs(c.values[k] - limit_char.values[k]));
        rep.char_deviations.push_back(dev);
    }
    rep.char_verdict = tail_verdict(rep.char_deviations, tol);
    rep.weak = weak_convergence_report(seq, limit, tests, tol);
    rep.flag = rep.char_verdict != rep.weak.verdict;
    return rep;
}

} // namespace finmon
