#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finmon/measure.hpp"

using namespace finmon;

namespace {

SpacePtr space_ab() {
    return make_space("X", {Point{"a", {}}, Point{"b", {}}});
}

Scalar q(long n, long d = 1) { return Scalar::exact(mpq_class(n, d)); }

} // namespace

TEST_CASE("space invariants") {
    CHECK_THROWS_AS(make_space("bad", {Point{"a", {}}, Point{"a", {}}}), DuplicateLabel);
    CHECK_THROWS_AS(
        make_space("bad", {Point{"a", std::vector<Scalar>{q(1)}},
                           Point{"b", std::vector<Scalar>{q(1), q(2)}}}),
        RaggedCoordinates);
}

TEST_CASE("canonical form drops zeros and merges duplicates") {
    SpacePtr x = space_ab();
    Measure mu(x, FieldTag::Real, Backend::Exact,
               {{"b", q(1, 4)}, {"a", q(0)}, {"b", q(1, 4)}});
    REQUIRE(mu.atoms().size() == 1);
    CHECK(mu.atoms()[0].first == 1);
    CHECK(mu.atoms()[0].second == q(1, 2));
    CHECK(mu.weight_at("a") == q(0));
    CHECK_THROWS_AS(Measure(x, FieldTag::Real, Backend::Exact, {{"zzz", q(1)}}),
                    UnknownLabel);
}

TEST_CASE("dirac and scalar integration") {
    SpacePtr x = space_ab();
    Measure d = dirac(x, "a");
    CHECK(is_probability(d));
    CHECK(integrate_scalar(d, [](const Point& p) {
              return Scalar::exact_int(p.label == "a" ? 7 : 0);
          }) == q(7));
    Measure z = Measure::zero(x, FieldTag::Real, Backend::Exact);
    CHECK(integrate_scalar(z, [](const Point&) { return Scalar::exact_int(5); }) == q(0));
}

TEST_CASE("pushforward aggregates mass") {
    SpacePtr x = space_ab();
    SpacePtr y = make_space("Y", {Point{"c", {}}});
    Measure mu(x, FieldTag::Real, Backend::Exact, {{"a", q(1, 3)}, {"b", q(1, 4)}});
    Measure pushed = pushforward(MapTable::constant(x, y, "c"), mu);
    CHECK(pushed.weight_at("c") == q(7, 12));
    CHECK(measures_equal(pushforward(MapTable::identity(x), mu), mu));
    CHECK(measures_equal(pushforward(MapTable::constant(x, x, "b"), dirac(x, "a")),
                         dirac(x, "b")));
}

TEST_CASE("product measure on the canonical product space") {
    SpacePtr x = space_ab();
    SpacePtr y = make_space("Y", {Point{"c", {}}, Point{"d", {}}});
    Measure mu(x, FieldTag::Real, Backend::Exact, {{"a", q(1, 2)}, {"b", q(1, 2)}});
    Measure nu(y, FieldTag::Real, Backend::Exact, {{"c", q(1, 3)}, {"d", q(2, 3)}});
    Measure p = product(mu, nu);
    CHECK(p.weight_at("(a,c)") == q(1, 6));
    CHECK(p.weight_at("(a,d)") == q(1, 3));
    CHECK(p.weight_at("(b,c)") == q(1, 6));
    CHECK(p.weight_at("(b,d)") == q(1, 3));
    CHECK(is_probability(p));
    // dirac x dirac, and the zero annihilator
    CHECK(measures_equal(product(dirac(x, "a"), dirac(y, "d")),
                         dirac(product_space(x, y), "(a,d)")));
    Measure z = Measure::zero(y, FieldTag::Real, Backend::Exact);
    CHECK(product(mu, z).atoms().empty());
}

TEST_CASE("flatten: unit laws and linear expansion") {
    SpacePtr x = space_ab();
    Measure mu(x, FieldTag::Real, Backend::Exact, {{"a", q(1, 3)}, {"b", q(2, 3)}});
    Measure nu = dirac(x, "b");
    CHECK(measures_equal(flatten(meta_dirac(mu)), mu));
    CHECK(measures_equal(flatten(dirac_pushforward(mu)), mu));
    MetaMeasure half(x, Backend::Exact, {{mu, q(1, 2)}, {nu, q(1, 2)}});
    Measure mixed = flatten(half);
    CHECK(mixed.weight_at("a") == q(1, 6));
    CHECK(mixed.weight_at("b") == q(5, 6));
}

TEST_CASE("meta-measure atoms merge structurally equal inner measures") {
    SpacePtr x = space_ab();
    Measure mu(x, FieldTag::Real, Backend::Exact, {{"a", q(1)}});
    MetaMeasure pi(x, Backend::Exact, {{mu, q(1, 4)}, {mu, q(1, 4)}});
    REQUIRE(pi.atoms().size() == 1);
    CHECK(pi.atoms()[0].second == q(1, 2));
}

TEST_CASE("total variation") {
    SpacePtr x = space_ab();
    Measure mu(x, FieldTag::Real, Backend::Exact, {{"a", q(1, 2)}, {"b", q(-1, 3)}});
    CHECK(total_variation(mu) == q(5, 6));
    CHECK(total_variation(dirac(x, "a")) == q(1));
    CHECK(total_variation(Measure::zero(x, FieldTag::Real, Backend::Exact)) == q(0));
    // exact complex weights: |w|^2 stays exact
    Measure zc(x, FieldTag::Complex, Backend::Exact, {{"a", Scalar::exact(3, 4)}});
    CHECK(total_variation_sq(zc) == q(25));
    CHECK(total_variation(zc).backend() == Backend::Float);
    CHECK(total_variation(zc).to_double() == doctest::Approx(5.0));
}

TEST_CASE("probability detection") {
    SpacePtr x = space_ab();
    CHECK(is_probability(
        Measure(x, FieldTag::Real, Backend::Exact, {{"a", q(1, 2)}, {"b", q(1, 2)}})));
    CHECK_FALSE(is_probability(
        Measure(x, FieldTag::Real, Backend::Exact, {{"a", q(-1, 2)}, {"b", q(3, 2)}})));
    CHECK_FALSE(is_probability(
        Measure(x, FieldTag::Real, Backend::Exact, {{"a", q(1, 2)}})));
}

TEST_CASE("weak convergence diagnostics") {
    std::vector<Point> pts;
    pts.push_back(Point{"q0", std::vector<Scalar>{Scalar::fp(0.0)}});
    for (int n = 1; n <= 12; ++n)
        pts.push_back(Point{"q" + std::to_string(n),
                            std::vector<Scalar>{Scalar::fp(1.0 / n)}});
    SpacePtr line = make_space("line", std::move(pts));
    auto f_x = [](const Point& p) { return p.coords->at(0); };
    std::vector<std::pair<std::function<Scalar(const Point&)>, std::string>> tests{
        {f_x, "x1"}};

    SUBCASE("shrinking diracs converge") {
        std::vector<Measure> seq;
        for (int n = 1; n <= 12; ++n)
            seq.push_back(dirac(line, "q" + std::to_string(n), Backend::Float));
        WeakConvReport r = weak_convergence_report(seq, dirac(line, "q0", Backend::Float),
                                                   tests, 0.2);
        CHECK(r.verdict == Verdict::Converged);
        CHECK(r.deviations[0][0] == doctest::Approx(1.0));
        CHECK(r.deviations[0][11] == doctest::Approx(1.0 / 12));
    }
    SUBCASE("constant sequence converges with zero deviations") {
        std::vector<Measure> seq(6, dirac(line, "q1", Backend::Float));
        WeakConvReport r = weak_convergence_report(seq, dirac(line, "q1", Backend::Float),
                                                   tests, 1e-9);
        CHECK(r.verdict == Verdict::Converged);
        for (double d : r.deviations[0]) CHECK(d == 0.0);
    }
    SUBCASE("alternating sequence diverges") {
        std::vector<Measure> seq;
        for (int n = 0; n < 12; ++n)
            seq.push_back(dirac(line, n % 2 ? "q1" : "q0", Backend::Float));
        WeakConvReport r = weak_convergence_report(seq, dirac(line, "q0", Backend::Float),
                                                   tests, 1e-2);
        CHECK(r.verdict == Verdict::Diverged);
    }
    SUBCASE("empty sequence is rejected") {
        CHECK_THROWS_AS(weak_convergence_report({}, dirac(line, "q0", Backend::Float),
                                                tests, 1e-2),
                        EmptySequence);
    }
}
