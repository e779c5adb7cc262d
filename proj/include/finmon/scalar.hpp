#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>

#include "finmon/errors.hpp"

namespace finmon {

enum class Backend { Exact, Float };

const char* to_string(Backend b);

// Field element. Exact backend holds a Gaussian rational (pair of
// arbitrary-precision rationals), float backend a binary64 complex.
// Arithmetic never coerces between backends: mixing throws BackendMismatch.
class Scalar {
public:
    Scalar() : backend_(Backend::Exact) {}

    static Scalar exact(mpq_class re, mpq_class im = 0);
    static Scalar exact_int(long n) { return exact(mpq_class(n)); }
    static Scalar fp(double re, double im = 0.0);
    static Scalar fp(std::complex<double> z) { return fp(z.real(), z.imag()); }
    static Scalar zero(Backend b) { return b == Backend::Exact ? Scalar() : fp(0.0); }
    static Scalar one(Backend b) { return b == Backend::Exact ? exact_int(1) : fp(1.0); }

    Backend backend() const { return backend_; }

    const mpq_class& re_q() const { return re_; }
    const mpq_class& im_q() const { return im_; }
    std::complex<double> to_complex() const;
    double to_double() const; // real part as double

    bool is_zero() const;
    bool is_real() const;
    bool is_exact() const { return backend_ == Backend::Exact; }

    Scalar operator-() const;
    Scalar conj() const;
    // |z|^2, same backend (exact-closed even for Gaussian rationals).
    Scalar abs_sq() const;
    double abs() const { return std::abs(to_complex()); }
    Scalar pow(unsigned e) const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    // Exact backend: structural equality of canonical rationals.
    // Float backend: bitwise IEEE equality.
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // |a - b| <= tol * (1 + |b|); both backends accepted.
    static bool approx_equal(const Scalar& a, const Scalar& b, double tol);

    // Canonical text form. Exact: "p/q" or "p" (plus "+r/s i" when complex);
    // float: shortest round-trip decimal.
    std::string str() const;

private:
    Backend backend_;
    mpq_class re_, im_;          // exact payload
    std::complex<double> f_{0.0, 0.0}; // float payload
};

// Shortest round-trip decimal form of a binary64, capped at 17 significant
// digits. Used everywhere a float reaches serialized output.
std::string format_double(double x);

void check_same_backend(const Scalar& a, const Scalar& b);

} // namespace finmon
