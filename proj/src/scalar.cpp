#include "finmon/scalar.hpp"

#include <charconv>
#include <cmath>

namespace finmon {

const char* to_string(Backend b) {
    return b == Backend::Exact ? "exact" : "float";
}

Scalar Scalar::exact(mpq_class re, mpq_class im) {
    Scalar s;
    s.backend_ = Backend::Exact;
    re.canonicalize();
    im.canonicalize();
    s.re_ = std::move(re);
    s.im_ = std::move(im);
    return s;
}

Scalar Scalar::fp(double re, double im) {
    Scalar s;
    s.backend_ = Backend::Float;
    s.f_ = {re, im};
    return s;
}

std::complex<double> Scalar::to_complex() const {
    if (backend_ == Backend::Float) return f_;
    return {re_.get_d(), im_.get_d()};
}

double Scalar::to_double() const {
    return backend_ == Backend::Float ? f_.real() : re_.get_d();
}

bool Scalar::is_zero() const {
    if (backend_ == Backend::Exact) return re_ == 0 && im_ == 0;
    return f_ == std::complex<double>(0.0, 0.0);
}

bool Scalar::is_real() const {
    if (backend_ == Backend::Exact) return im_ == 0;
    return f_.imag() == 0.0;
}

Scalar Scalar::operator-() const {
    if (backend_ == Backend::Exact) return exact(-re_, -im_);
    return fp(-f_);
}

Scalar Scalar::conj() const {
    if (backend_ == Backend::Exact) return exact(re_, -im_);
    return fp(std::conj(f_));
}

Scalar Scalar::abs_sq() const {
    if (backend_ == Backend::Exact) return exact(re_ * re_ + im_ * im_);
    return fp(std::norm(f_));
}

Scalar Scalar::pow(unsigned e) const {
    Scalar acc = one(backend_);
    Scalar base = *this;
    while (e > 0) {
        if (e & 1u) acc = acc * base;
        base = base * base;
        e >>= 1u;
    }
    return acc;
}

void check_same_backend(const Scalar& a, const Scalar& b) {
    if (a.backend() != b.backend())
        throw BackendMismatch("cannot mix exact and float scalars in one expression");
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    check_same_backend(a, b);
    if (a.backend_ == Backend::Exact) return Scalar::exact(a.re_ + b.re_, a.im_ + b.im_);
    return Scalar::fp(a.f_ + b.f_);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    check_same_backend(a, b);
    if (a.backend_ == Backend::Exact) return Scalar::exact(a.re_ - b.re_, a.im_ - b.im_);
    return Scalar::fp(a.f_ - b.f_);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    check_same_backend(a, b);
    if (a.backend_ == Backend::Exact)
        return Scalar::exact(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    return Scalar::fp(a.f_ * b.f_);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    check_same_backend(a, b);
    if (a.backend_ == Backend::Exact) {
        mpq_class n = b.re_ * b.re_ + b.im_ * b.im_;
        if (n == 0) throw DivisionByZero("exact division by zero");
        return Scalar::exact((a.re_ * b.re_ + a.im_ * b.im_) / n,
                             (a.im_ * b.re_ - a.re_ * b.im_) / n);
    }
    return Scalar::fp(a.f_ / b.f_);
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.backend_ != b.backend_) return false;
    if (a.backend_ == Backend::Exact) return a.re_ == b.re_ && a.im_ == b.im_;
    return a.f_ == b.f_;
}

bool Scalar::approx_equal(const Scalar& a, const Scalar& b, double tol) {
    if (a.backend_ == Backend::Exact && b.backend_ == Backend::Exact) return a == b;
    return std::abs(a.to_complex() - b.to_complex()) <= tol * (1.0 + std::abs(b.to_complex()));
}

std::string format_double(double x) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {
std::string rat_str(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_str();
}
} // namespace

std::string Scalar::str() const {
    if (backend_ == Backend::Exact) {
        if (im_ == 0) return rat_str(re_);
        return rat_str(re_) + (im_ > 0 ? "+" : "") + rat_str(im_) + "i";
    }
    if (f_.imag() == 0.0) return format_double(f_.real());
    return format_double(f_.real()) + (f_.imag() < 0 ? "" : "+") + format_double(f_.imag()) + "i";
}

} // namespace finmon
