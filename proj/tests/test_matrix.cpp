#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finmon/gen.hpp"
#include "finmon/matrix.hpp"

using namespace finmon;

namespace {

Matrix m2(long a, long b, long c, long d) {
    Matrix m(2, 2, Backend::Exact);
    m.at(0, 0) = Scalar::exact_int(a);
    m.at(0, 1) = Scalar::exact_int(b);
    m.at(1, 0) = Scalar::exact_int(c);
    m.at(1, 1) = Scalar::exact_int(d);
    return m;
}

} // namespace

TEST_CASE("product, transpose, identity") {
    Matrix a = m2(1, 2, 3, 4);
    Matrix b = m2(0, 1, 1, 0);
    CHECK(a * b == m2(2, 1, 4, 3));
    CHECK(a.transpose() == m2(1, 3, 2, 4));
    CHECK((a * Matrix::identity(2, Backend::Exact)) == a);
    CHECK_THROWS_AS(a * Matrix(3, 3, Backend::Exact), DimensionMismatch);
}

TEST_CASE("rank and invertibility, exact") {
    CHECK(rank(m2(1, 2, 2, 4)) == 1);
    CHECK(rank(m2(1, 2, 3, 4)) == 2);
    CHECK(rank(Matrix(2, 2, Backend::Exact)) == 0);
    CHECK(is_invertible(m2(1, 2, 3, 4)));
    CHECK_FALSE(is_invertible(m2(1, 2, 2, 4)));
}

TEST_CASE("solve and inverse are exact") {
    Matrix a = m2(2, 1, 1, 1);
    Matrix x = solve(a, Matrix::identity(2, Backend::Exact));
    CHECK(a * x == Matrix::identity(2, Backend::Exact));
    CHECK(inverse(a) == x);
    CHECK_THROWS_AS(solve(m2(1, 2, 2, 4), Matrix::identity(2, Backend::Exact)),
                    SingularMatrix);
    // degenerate 0x0 system has the empty solution
    Matrix e(0, 0, Backend::Exact);
    Matrix r = solve(e, Matrix(0, 3, Backend::Exact));
    CHECK(r.rows() == 0);
    CHECK(r.cols() == 3);
}

TEST_CASE("random inverse round-trip") {
    SplitMix64 rng(11);
    for (int k = 0; k < 50; ++k) {
        std::size_t n = 1 + rng.below(5);
        Matrix a = random_invertible(rng, n);
        CHECK(a * inverse(a) == Matrix::identity(n, Backend::Exact));
    }
}

TEST_CASE("null space spans the kernel") {
    Matrix a = m2(1, 2, 2, 4);
    Matrix k = null_space(a);
    CHECK(k.cols() == 1);
    Matrix prod = a * k;
    CHECK(prod == Matrix(2, 1, Backend::Exact));
    CHECK(null_space(m2(1, 0, 0, 1)).cols() == 0);
}

TEST_CASE("independent rows picked greedily in order") {
    Matrix a(3, 2, Backend::Exact);
    a.at(0, 0) = Scalar::exact_int(1);
    a.at(1, 0) = Scalar::exact_int(2); // dependent on row 0
    a.at(2, 1) = Scalar::exact_int(1);
    auto rows = independent_rows(a);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == 0);
    CHECK(rows[1] == 2);
}

TEST_CASE("float elimination uses a relative threshold") {
    Matrix a(2, 2, Backend::Float);
    a.at(0, 0) = Scalar::fp(1.0);
    a.at(0, 1) = Scalar::fp(2.0);
    a.at(1, 0) = Scalar::fp(2.0);
    a.at(1, 1) = Scalar::fp(4.0 + 1e-14); // numerically rank 1
    CHECK(rank(a) == 1);
    Matrix b(2, 2, Backend::Float);
    b.at(0, 0) = Scalar::fp(1e-3);
    b.at(1, 1) = Scalar::fp(1e-3); // small but well above threshold
    CHECK(rank(b) == 2);
}
