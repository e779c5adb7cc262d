#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "finmon/fourier.hpp"

using namespace finmon;

namespace {

Scalar q(long n, long d = 1) { return Scalar::exact(mpq_class(n, d)); }

SpacePtr line_pm_half() {
    return make_space("Phi", {Point{"m", std::vector<Scalar>{q(-1, 2)}},
                              Point{"p", std::vector<Scalar>{q(1, 2)}}});
}

} // namespace

TEST_CASE("characteristic function closed forms") {
    SpacePtr phi = line_pm_half();
    Measure unif(phi, FieldTag::Real, Backend::Exact, {{"m", q(1, 2)}, {"p", q(1, 2)}});

    SUBCASE("normalisation at the origin") {
        CHECK(std::abs(char_value(unif, {0.0}) - 1.0) <= 1e-12);
    }
    SUBCASE("uniform on {-1/2, 1/2} at x = 1 gives cos(pi) = -1") {
        CHECK(std::abs(char_value(unif, {1.0}) - std::complex<double>(-1.0, 0.0)) <= 1e-12);
    }
    SUBCASE("a dirac at the origin is constant one") {
        SpacePtr zero = make_space("Z", {Point{"o", std::vector<Scalar>{q(0)}}});
        Measure d0 = dirac(zero, "o");
        for (double x : {-2.0, -0.3, 0.0, 1.7})
            CHECK(std::abs(char_value(d0, {x}) - 1.0) <= 1e-12);
    }
    SUBCASE("dirac at phi = 1 evaluated at x = 1/4 gives i") {
        SpacePtr one = make_space("O", {Point{"u", std::vector<Scalar>{q(1)}}});
        CHECK(std::abs(char_value(dirac(one, "u"), {0.25}) -
                       std::complex<double>(0.0, 1.0)) <= 1e-12);
    }
    SUBCASE("hermitian symmetry") {
        for (double x : {0.1, 0.7, 1.9})
            CHECK(std::abs(char_value(unif, {-x}) - std::conj(char_value(unif, {x}))) <=
                  1e-12);
    }
    SUBCASE("grid evaluation matches pointwise evaluation") {
        CharEvaluation ev = char_fn(unif, {{0.0}, {1.0}, {0.5}});
        REQUIRE(ev.values.size() == 3);
        CHECK(ev.values[0] == char_value(unif, {0.0}));
        CHECK(std::abs(ev.values[2]) <= 1e-12); // cos(pi/2)
    }
    SUBCASE("coordinate validation") {
        SpacePtr bare = make_space("B", {Point{"a", {}}});
        CHECK_THROWS_AS(char_value(dirac(bare, "a"), {0.0}), MissingCoordinates);
        CHECK_THROWS_AS(char_value(unif, {0.0, 0.0}), DimensionMismatch);
    }
}

TEST_CASE("positive-definiteness certification") {
    SUBCASE("the constant one function is psd") {
        PDReport r = pd_check([](const std::vector<double>&) {
            return std::complex<double>(1.0, 0.0);
        }, {{0.0}, {1.0}, {2.5}}, 1e-9);
        CHECK(r.psd);
        CHECK(r.hermitian_ok);
    }
    SUBCASE("char of uniform {-1/2,1/2} on {0, 1/2} gives the identity gram") {
        SpacePtr phi = line_pm_half();
        Measure unif(phi, FieldTag::Real, Backend::Exact, {{"m", q(1, 2)}, {"p", q(1, 2)}});
        PDReport r = pd_check(
            [&](const std::vector<double>& x) { return char_value(unif, x); },
            {{0.0}, {0.5}}, 1e-9);
        CHECK(r.psd);
        CHECK(std::abs(r.gram[0][0] - 1.0) <= 1e-12);
        CHECK(std::abs(r.gram[0][1]) <= 1e-12);
    }
    SUBCASE("an indefinite gram yields a certifying witness") {
        // f(0) = 1, f(+-1) = 2: gram [[1,2],[2,1]] has eigenvalues 3, -1
        PDReport r = pd_check([](const std::vector<double>& x) {
            return std::complex<double>(x[0] == 0.0 ? 1.0 : 2.0, 0.0);
        }, {{0.0}, {1.0}}, 1e-9);
        CHECK_FALSE(r.psd);
        REQUIRE(r.witness.size() == 2);
        CHECK(r.witness_value < 0.0);
        // recompute c^H M c independently
        std::complex<double> acc = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                acc += std::conj(r.witness[i]) * r.gram[i][j] * r.witness[j];
        CHECK(acc.real() == doctest::Approx(r.witness_value));
    }
    SUBCASE("duplicate points are rejected") {
        CHECK_THROWS_AS(pd_check([](const std::vector<double>&) {
                            return std::complex<double>(1.0, 0.0);
                        }, {{1.0}, {1.0}}, 1e-9),
                        DuplicatePoints);
    }
}

TEST_CASE("levy diagnostic verdicts") {
    std::vector<Point> pts;
    pts.push_back(Point{"q0", std::vector<Scalar>{Scalar::fp(0.0)}});
    pts.push_back(Point{"q1", std::vector<Scalar>{Scalar::fp(1.0)}});
    for (int n = 2; n <= 20; ++n)
        pts.push_back(Point{"h" + std::to_string(n),
                            std::vector<Scalar>{Scalar::fp(1.0 / n)}});
    SpacePtr line = make_space("line", std::move(pts));
    auto f_x = [](const Point& p) { return p.coords->at(0); };
    std::vector<std::pair<std::function<Scalar(const Point&)>, std::string>> tests{
        {f_x, "x1"}};
    std::vector<std::vector<double>> grid{{0.25}, {0.5}};

    SUBCASE("shrinking diracs: both verdicts converge, no flag") {
        std::vector<Measure> seq;
        for (int n = 2; n <= 20; ++n)
            seq.push_back(dirac(line, "h" + std::to_string(n), Backend::Float));
        LevyReport r = levy_diagnostic(seq, dirac(line, "q0", Backend::Float), grid, tests,
                                       0.3);
        CHECK(r.char_verdict == Verdict::Converged);
        CHECK(r.weak.verdict == Verdict::Converged);
        CHECK_FALSE(r.flag);
    }
    SUBCASE("constant sequence converges trivially") {
        std::vector<Measure> seq(9, dirac(line, "q1", Backend::Float));
        LevyReport r = levy_diagnostic(seq, dirac(line, "q1", Backend::Float), grid, tests,
                                       1e-9);
        CHECK(r.char_verdict == Verdict::Converged);
        CHECK(r.weak.verdict == Verdict::Converged);
        CHECK_FALSE(r.flag);
    }
    SUBCASE("alternating diracs: both diverge, still no flag") {
        std::vector<Measure> seq;
        for (int n = 0; n < 12; ++n)
            seq.push_back(dirac(line, n % 2 ? "q1" : "q0", Backend::Float));
        LevyReport r = levy_diagnostic(seq, dirac(line, "q0", Backend::Float), grid, tests,
                                       1e-2);
        CHECK(r.char_verdict == Verdict::Diverged);
        CHECK(r.weak.verdict == Verdict::Diverged);
        CHECK_FALSE(r.flag);
    }
}
