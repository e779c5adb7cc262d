#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "finmon/integration.hpp"

using namespace finmon;

namespace {

Scalar q(long n, long d = 1) { return Scalar::exact(mpq_class(n, d)); }

Matrix vec2(long a, long b) {
    Matrix v(2, 1, Backend::Exact);
    v.at(0, 0) = Scalar::exact_int(a);
    v.at(1, 0) = Scalar::exact_int(b);
    return v;
}

} // namespace

TEST_CASE("vector integral is the weighted sum in canonical order") {
    SpacePtr x = make_space("X", {Point{"a", {}}, Point{"b", {}}});
    PairedSpace v("V", Matrix::identity(2, Backend::Exact));
    VectorFn f(x, v, {vec2(1, 0), vec2(0, 1)});
    Measure mu(x, FieldTag::Real, Backend::Exact, {{"a", q(2)}, {"b", q(-1)}});
    CHECK(integrate_vector(mu, f) == vec2(2, -1));
    CHECK(integrate_vector(dirac(x, "b"), f) == vec2(0, 1));
    CHECK(integrate_vector(Measure::zero(x, FieldTag::Real, Backend::Exact), f) ==
          Matrix(2, 1, Backend::Exact));
    CHECK(integrate_vector(mu, f) ==
          free_extend(x, v, f.table).map * measure_coordinates(mu));
    SpacePtr y = make_space("Y", {Point{"c", {}}});
    CHECK_THROWS_AS(integrate_vector(dirac(y, "c"), f), SpaceMismatch);
}

TEST_CASE("double integral: both orders and the product form agree") {
    SpacePtr x = make_space("X", {Point{"1", std::vector<Scalar>{q(1)}},
                                  Point{"2", std::vector<Scalar>{q(2)}}});
    SpacePtr y = make_space("Y", {Point{"3", std::vector<Scalar>{q(3)}}});
    SpacePtr xy = product_space(x, y);
    PairedSpace r1("R1", Matrix::identity(1, Backend::Exact));
    // f(x, y) = x * y, tabulated on the product space
    std::vector<Matrix> table;
    for (const Point& p : xy->points()) {
        Matrix v(1, 1, Backend::Exact);
        v.at(0, 0) = p.coords->at(0) * p.coords->at(1);
        table.push_back(std::move(v));
    }
    VectorFn f(xy, r1, std::move(table));
    Measure mu(x, FieldTag::Real, Backend::Exact, {{"1", q(1, 2)}, {"2", q(1, 2)}});
    Measure nu(y, FieldTag::Real, Backend::Exact, {{"3", q(1)}});
    DoubleIntegralResult d = double_integral(f, mu, nu);
    CHECK(d.order_xy.at(0, 0) == q(9, 2));
    CHECK(d.order_yx == d.order_xy);
    CHECK(d.product_form == d.order_xy);
}

TEST_CASE("midpoint discretization of Lebesgue measure") {
    CHECK_THROWS_AS(lebesgue_uniform(0.0, 3), InvalidParameter);
    CHECK_THROWS_AS(lebesgue_uniform(1.0, 0), InvalidParameter);
    Measure one = lebesgue_uniform(1.0, 1);
    REQUIRE(one.atoms().size() == 1);
    CHECK(one.space()->point(0).coords->at(0).to_double() == 0.5);
    for (std::size_t n : {1u, 7u, 32u}) {
        Measure m = lebesgue_uniform(1.0, n);
        Scalar mass = Scalar::zero(Backend::Float);
        Scalar first_moment = Scalar::zero(Backend::Float);
        for (const auto& [i, w] : m.atoms()) {
            mass += w;
            first_moment += w * m.space()->point(i).coords->at(0);
        }
        CHECK(mass.to_double() == doctest::Approx(1.0).epsilon(1e-14));
        // the midpoint rule is exact on degree <= 1
        CHECK(first_moment.to_double() == doctest::Approx(0.5).epsilon(1e-14));
    }
}

TEST_CASE("curves evaluate and differentiate exactly") {
    Curve gamma({{0.0, 0.0, 1.0}, {0.0, 0.0, 0.0, 1.0}}); // (t^2, t^3)
    CHECK(gamma.dim() == 2);
    CHECK(gamma.eval(2.0)[0] == 4.0);
    CHECK(gamma.eval(2.0)[1] == 8.0);
    Curve d = gamma.derivative();
    CHECK(d.eval(2.0)[0] == 4.0);  // 2t
    CHECK(d.eval(2.0)[1] == 12.0); // 3t^2
}

TEST_CASE("fundamental theorem, forward direction") {
    SUBCASE("affine curves integrate exactly") {
        Curve affine({{1.0, 2.0}, {-3.0, 0.5}});
        for (std::size_t n : {1u, 5u, 13u})
            CHECK(ftc_forward(affine, 1.0, n).max_error <= 1e-12);
    }
    SUBCASE("closed-form midpoint error for t^3") {
        Curve gamma({{0.0, 0.0, 1.0}, {0.0, 0.0, 0.0, 1.0}});
        FtcForwardResult r = ftc_forward(gamma, 1.0, 10);
        CHECK(r.errors[0] <= 1e-12);                    // t^2 coordinate: exact
        CHECK(std::abs(r.errors[1] - 0.0025) <= 1e-12); // 1/(4 n^2)
        double prev = r.errors[1];
        for (std::size_t n : {20u, 40u, 80u}) {
            double cur = ftc_forward(gamma, 1.0, n).errors[1];
            CHECK(cur / prev == doctest::Approx(0.25).epsilon(0.04));
            prev = cur;
        }
    }
    SUBCASE("preconditions") {
        Curve c({{0.0, 1.0}});
        CHECK_THROWS_AS(ftc_forward(c, 0.0, 5), InvalidParameter);
        CHECK_THROWS_AS(ftc_forward(c, 1.5, 5), InvalidParameter);
        CHECK_THROWS_AS(ftc_forward(c, 1.0, 0), InvalidParameter);
    }
}

TEST_CASE("fundamental theorem, inverse direction") {
    SUBCASE("constant curves differentiate exactly") {
        Curve c({{7.0}, {-2.0}});
        FtcInverseResult r = ftc_inverse(c, 0.5, 1e-3, 50);
        CHECK(r.max_error <= 1e-11); // exact up to difference-quotient rounding
        CHECK(r.quotient[0] == doctest::Approx(7.0));
    }
    SUBCASE("linear curve error is O(h^2) + O(1/n^2)") {
        Curve lin({{0.0, 1.0}});
        CHECK(ftc_inverse(lin, 0.5, 1e-3, 1000).max_error < 1e-5);
    }
    SUBCASE("halving h decreases the error for a quartic") {
        Curve quartic({{0.0, 0.0, 0.0, 0.0, 1.0}});
        double e1 = ftc_inverse(quartic, 0.5, 0.2, 4000).max_error;
        double e2 = ftc_inverse(quartic, 0.5, 0.1, 4000).max_error;
        double e3 = ftc_inverse(quartic, 0.5, 0.05, 4000).max_error;
        CHECK(e2 < e1);
        CHECK(e3 < e2);
    }
    SUBCASE("preconditions") {
        Curve c({{0.0, 1.0}});
        CHECK_THROWS_AS(ftc_inverse(c, 0.5, 0.0, 5), InvalidParameter);
        CHECK_THROWS_AS(ftc_inverse(c, 0.99, 0.05, 5), InvalidParameter);
    }
}
