#pragma once

#include "finmon/chu.hpp"
#include "finmon/measure.hpp"

namespace finmon {

// Tabulated map from a finite carrier into a paired-space carrier.
struct VectorFn {
    SpacePtr domain;
    PairedSpace codomain;
    std::vector<Matrix> table; // one column vector per point, in point order

    VectorFn(SpacePtr d, PairedSpace c, std::vector<Matrix> t);
    const Matrix& value(std::size_t point_index) const { return table[point_index]; }
};

// Monadic integral: weighted sum of f over the atoms, in canonical order.
// Coincides with free_extend(f) applied to the measure's coordinate vector.
Matrix integrate_vector(const Measure& mu, const VectorFn& f);

// Coordinate vector of mu in K^X (the free paired space on mu's carrier).
Matrix measure_coordinates(const Measure& mu);

struct DoubleIntegralResult {
    Matrix order_xy;     // ∫(∫ f(x,y) dμ(x)) dν(y)
    Matrix order_yx;     // ∫(∫ f(x,y) dν(y)) dμ(x)
    Matrix product_form; // ∫ f d(μ⊗ν)
};

DoubleIntegralResult double_integral(const VectorFn& f, const Measure& mu, const Measure& nu);

// Polynomial curve [0,1] -> R^d with exact analytic derivative.
class Curve {
public:
    Curve(std::vector<std::vector<double>> coeffs); // coeffs[i][k] = c_{i,k} of t^k

    std::size_t dim() const { return coeffs_.size(); }
    std::vector<double> eval(double t) const;
    Curve derivative() const;
    const std::vector<std::vector<double>>& coeffs() const { return coeffs_; }

private:
    std::vector<std::vector<double>> coeffs_;
};

// Midpoint discretization of Lebesgue measure on [0, t]: n atoms at
// (i+1/2)t/n, weight t/n each; float backend, coordinate points.
Measure lebesgue_uniform(double t, std::size_t n);

struct FtcForwardResult {
    std::vector<double> integral;  // ∫_0^t γ'(s) ds, midpoint quadrature
    std::vector<double> reference; // γ(t) - γ(0)
    std::vector<double> errors;    // per coordinate
    double max_error;
};

FtcForwardResult ftc_forward(const Curve& gamma, double t, std::size_t n);

struct FtcInverseResult {
    std::vector<double> quotient;  // (F(t+h) - F(t-h)) / 2h, F(s) = ∫_0^s γ
    std::vector<double> reference; // γ(t)
    std::vector<double> errors;
    double max_error;
};

FtcInverseResult ftc_inverse(const Curve& gamma, double t, double h, std::size_t n);

} // namespace finmon
