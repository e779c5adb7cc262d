#include "finmon/integration.hpp"

#include <cmath>

namespace finmon {

VectorFn::VectorFn(SpacePtr d, PairedSpace c, std::vector<Matrix> t)
    : domain(std::move(d)), codomain(std::move(c)), table(std::move(t)) {
    if (table.size() != domain->size())
        throw DimensionMismatch("vector function table must cover every point of '" +
                                domain->name() + "'");
    for (const auto& v : table)
        if (v.rows() != codomain.dim() || v.cols() != 1)
            throw DimensionMismatch("vector function value dimension must be " +
                                    std::to_string(codomain.dim()));
}

Matrix integrate_vector(const Measure& mu, const VectorFn& f) {
    if (!mu.space()->same_structure(*f.domain))
        throw SpaceMismatch("integrate_vector: measure on '" + mu.space()->name() +
                            "', function on '" + f.domain->name() + "'");
    Matrix acc(f.codomain.dim(), 1, f.codomain.backend());
    for (const auto& [i, w] : mu.atoms())
        acc = acc + f.value(i).scaled(w);
    return acc;
}

Matrix measure_coordinates(const Measure& mu) {
    Matrix v(mu.space()->size(), 1, mu.backend());
    for (const auto& [i, w] : mu.atoms()) v.at(i, 0) = w;
    return v;
}

DoubleIntegralResult double_integral(const VectorFn& f, const Measure& mu, const Measure& nu) {
    SpacePtr xy = product_space(mu.space(), nu.space());
    if (!f.domain->same_structure(*xy))
        throw SpaceMismatch("double_integral: function domain '" + f.domain->name() +
                            "' is not the canonical product of '" + mu.space()->name() +
                            "' and '" + nu.space()->name() + "'");
    std::size_t nx = mu.space()->size(), ny = nu.space()->size();
    Backend bk = f.codomain.backend();
    auto slice_value = [&](std::size_t i, std::size_t j) -> const Matrix& {
        return f.value(i * ny + j);
    };
    // order_xy: inner integral over mu for each fixed y, then integrate over nu
    std::vector<Matrix> inner_x;
    inner_x.reserve(ny);
    for (std::size_t j = 0; j < ny; ++j) {
        Matrix acc(f.codomain.dim(), 1, bk);
        for (const auto& [i, w] : mu.atoms()) acc = acc + slice_value(i, j).scaled(w);
        inner_x.push_back(std::move(acc));
    }
    Matrix order_xy(f.codomain.dim(), 1, bk);
    for (const auto& [j, v] : nu.atoms()) order_xy = order_xy + inner_x[j].scaled(v);

    std::vector<Matrix> inner_y;
    inner_y.reserve(nx);
    for (std::size_t i = 0; i < nx; ++i) {
        Matrix acc(f.codomain.dim(), 1, bk);
        for (const auto& [j, v] : nu.atoms()) acc = acc + slice_value(i, j).scaled(v);
        inner_y.push_back(std::move(acc));
    }
    Matrix order_yx(f.codomain.dim(), 1, bk);
    for (const auto& [i, w] : mu.atoms()) order_yx = order_yx + inner_y[i].scaled(w);

    Matrix product_form = integrate_vector(product(mu, nu), f);
    return DoubleIntegralResult{std::move(order_xy), std::move(order_yx),
                                std::move(product_form)};
}

Curve::Curve(std::vector<std::vector<double>> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw InvalidParameter("curve needs at least one coordinate");
}

std::vector<double> Curve::eval(double t) const {
    std::vector<double> out(coeffs_.size(), 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        double acc = 0.0;
        for (std::size_t k = coeffs_[i].size(); k-- > 0;) acc = acc * t + coeffs_[i][k];
        out[i] = acc;
    }
    return out;
}

Curve Curve::derivative() const {
    std::vector<std::vector<double>> d(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].size() <= 1) {
            d[i] = {0.0};
            continue;
        }
        for (std::size_t k = 1; k < coeffs_[i].size(); ++k)
            d[i].push_back(static_cast<double>(k) * coeffs_[i][k]);
    }
    return Curve(std::move(d));
}

Measure lebesgue_uniform(double t, std::size_t n) {
    if (!(t > 0.0) || n < 1)
        throw InvalidParameter("lebesgue_uniform requires t > 0 and n >= 1");
    std::vector<Point> pts;
    std::vector<std::pair<std::string, Scalar>> atoms;
    double w = t / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        double mid = (static_cast<double>(i) + 0.5) * t / static_cast<double>(n);
        std::string label = "t" + std::to_string(i);
        pts.push_back(Point{label, std::vector<Scalar>{Scalar::fp(mid)}});
        atoms.emplace_back(label, Scalar::fp(w));
    }
    SpacePtr space = make_space("midpoints", std::move(pts));
    return Measure(space, FieldTag::Real, Backend::Float, std::move(atoms));
}

namespace {

// Samples a curve at a quadrature measure's coordinate points.
VectorFn sample_curve(const Curve& c, const Measure& quad) {
    std::size_t d = c.dim();
    PairedSpace v("R" + std::to_string(d), Matrix::identity(d, Backend::Float));
    std::vector<Matrix> table;
    table.reserve(quad.space()->size());
    for (std::size_t i = 0; i < quad.space()->size(); ++i) {
        double s = (*quad.space()->point(i).coords)[0].to_double();
        std::vector<double> val = c.eval(s);
        Matrix col(d, 1, Backend::Float);
        for (std::size_t k = 0; k < d; ++k) col.at(k, 0) = Scalar::fp(val[k]);
        table.push_back(std::move(col));
    }
    return VectorFn(quad.space(), std::move(v), std::move(table));
}

} // namespace

FtcForwardResult ftc_forward(const Curve& gamma, double t, std::size_t n) {
    if (!(t > 0.0) || t > 1.0 || n < 1)
        throw InvalidParameter("ftc_forward requires t in (0,1] and n >= 1");
    Measure quad = lebesgue_uniform(t, n);
    Matrix integral = integrate_vector(quad, sample_curve(gamma.derivative(), quad));
    std::vector<double> at_t = gamma.eval(t);
    std::vector<double> at_0 = gamma.eval(0.0);
    FtcForwardResult r;
    r.max_error = 0.0;
    for (std::size_t k = 0; k < gamma.dim(); ++k) {
        r.integral.push_back(integral.at(k, 0).to_double());
        r.reference.push_back(at_t[k] - at_0[k]);
        r.errors.push_back(std::abs(r.integral[k] - r.reference[k]));
        r.max_error = std::max(r.max_error, r.errors[k]);
    }
    return r;
}

FtcInverseResult ftc_inverse(const Curve& gamma, double t, double h, std::size_t n) {
    if (!(h > 0.0) || !(t - h > 0.0) || !(t + h < 1.0) || n < 1)
        throw InvalidParameter("ftc_inverse requires 0 < h, t±h inside (0,1), n >= 1");
    auto antiderivative_at = [&](double s) {
        Measure quad = lebesgue_uniform(s, n);
        return integrate_vector(quad, sample_curve(gamma, quad));
    };
    Matrix hi = antiderivative_at(t + h);
    Matrix lo = antiderivative_at(t - h);
    std::vector<double> ref = gamma.eval(t);
    FtcInverseResult r;
    r.max_error = 0.0;
    for (std::size_t k = 0; k < gamma.dim(); ++k) {
        double q = (hi.at(k, 0).to_double() - lo.at(k, 0).to_double()) / (2.0 * h);
        r.quotient.push_back(q);
        r.reference.push_back(ref[k]);
        r.errors.push_back(std::abs(q - ref[k]));
        r.max_error = std::max(r.max_error, r.errors[k]);
    }
    return r;
}

} // namespace finmon
