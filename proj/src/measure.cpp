#include "finmon/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace finmon {

const char* to_string(FieldTag f) { return f == FieldTag::Real ? "real" : "complex"; }

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Converged: return "converged";
        case Verdict::Diverged: return "diverged";
        default: return "inconclusive";
    }
}

namespace {

void check_weight(FieldTag field, Backend backend, const Scalar& w) {
    if (w.backend() != backend)
        throw BackendMismatch("atom weight backend does not match measure backend");
    if (field == FieldTag::Real && !w.is_real())
        throw InvalidParameter("real-field measure has a non-real weight");
}

std::vector<std::pair<std::size_t, Scalar>> canonicalize(
    const FiniteSpace& space, FieldTag field, Backend backend,
    std::vector<std::pair<std::size_t, Scalar>> raw) {
    std::map<std::size_t, Scalar> acc;
    for (auto& [i, w] : raw) {
        check_weight(field, backend, w);
        auto it = acc.find(i);
        if (it == acc.end())
            acc.emplace(i, w);
        else
            it->second += w;
    }
    std::vector<std::pair<std::size_t, Scalar>> out;
    for (auto& [i, w] : acc) {
        if (i >= space.size()) throw UnknownLabel("atom index out of range");
        if (!w.is_zero()) out.emplace_back(i, w);
    }
    return out;
}

} // namespace

Measure::Measure(SpacePtr space, FieldTag field, Backend backend,
                 std::vector<std::pair<std::string, Scalar>> atoms)
    : space_(std::move(space)), field_(field), backend_(backend) {
    std::vector<std::pair<std::size_t, Scalar>> raw;
    raw.reserve(atoms.size());
    for (auto& [label, w] : atoms) raw.emplace_back(space_->index_of(label), w);
    atoms_ = canonicalize(*space_, field_, backend_, std::move(raw));
}

Measure measure_from_indexed(SpacePtr space, FieldTag field, Backend backend,
                             std::vector<std::pair<std::size_t, Scalar>> atoms) {
    Measure m(std::move(space), field, backend);
    m.atoms_ = canonicalize(*m.space_, field, backend, std::move(atoms));
    return m;
}

Measure Measure::zero(SpacePtr space, FieldTag field, Backend backend) {
    return measure_from_indexed(std::move(space), field, backend, {});
}

Scalar Measure::weight_at(std::size_t point_index) const {
    for (const auto& [i, w] : atoms_)
        if (i == point_index) return w;
    return Scalar::zero(backend_);
}

Scalar Measure::weight_at(const std::string& label) const {
    return weight_at(space_->index_of(label));
}

Measure Measure::operator+(const Measure& o) const {
    if (!space_->same_structure(*o.space_))
        throw SpaceMismatch("measure sum across different spaces");
    auto raw = atoms_;
    raw.insert(raw.end(), o.atoms_.begin(), o.atoms_.end());
    return measure_from_indexed(space_, field_, backend_, std::move(raw));
}

Measure Measure::scaled(const Scalar& s) const {
    auto raw = atoms_;
    for (auto& [i, w] : raw) w *= s;
    FieldTag f = field_;
    if (!s.is_real()) f = FieldTag::Complex;
    return measure_from_indexed(space_, f, backend_, std::move(raw));
}

std::string Measure::canonical_key() const {
    std::string k = space_->name();
    for (const auto& [i, w] : atoms_) {
        k += '|';
        k += space_->point(i).label;
        k += '=';
        k += w.str();
    }
    return k;
}

std::string Measure::str() const {
    std::string s = "{";
    bool first = true;
    for (const auto& [i, w] : atoms_) {
        if (!first) s += ", ";
        first = false;
        s += space_->point(i).label + ": " + w.str();
    }
    return s + "}";
}

bool measures_equal(const Measure& a, const Measure& b) {
    if (!a.space()->same_structure(*b.space())) return false;
    if (a.backend() == Backend::Exact && b.backend() == Backend::Exact) {
        if (a.atoms().size() != b.atoms().size()) return false;
        for (std::size_t k = 0; k < a.atoms().size(); ++k)
            if (a.atoms()[k].first != b.atoms()[k].first ||
                !(a.atoms()[k].second == b.atoms()[k].second))
                return false;
        return true;
    }
    constexpr double tol = 1e-12;
    for (std::size_t i = 0; i < a.space()->size(); ++i)
        if (!Scalar::approx_equal(a.weight_at(i), b.weight_at(i), tol)) return false;
    return true;
}

Measure dirac(const SpacePtr& space, const std::string& label, Backend backend, FieldTag field) {
    return Measure(space, field, backend, {{label, Scalar::one(backend)}});
}

Scalar integrate_scalar(const Measure& mu, const std::function<Scalar(const Point&)>& f) {
    Scalar acc = Scalar::zero(mu.backend());
    for (const auto& [i, w] : mu.atoms())
        acc += w * f(mu.space()->point(i));
    return acc;
}

Measure pushforward(const MapTable& f, const Measure& mu) {
    if (!mu.space()->same_structure(*f.source()))
        throw SpaceMismatch("pushforward: measure lives on '" + mu.space()->name() +
                            "', map starts at '" + f.source()->name() + "'");
    std::vector<std::pair<std::size_t, Scalar>> raw;
    raw.reserve(mu.atoms().size());
    for (const auto& [i, w] : mu.atoms()) raw.emplace_back(f.apply(i), w);
    return measure_from_indexed(f.target(), mu.field(), mu.backend(), std::move(raw));
}

Measure product(const Measure& mu, const Measure& nu) {
    if (mu.backend() != nu.backend())
        throw BackendMismatch("product of measures on different backends");
    SpacePtr xy = product_space(mu.space(), nu.space());
    std::size_t ny = nu.space()->size();
    std::vector<std::pair<std::size_t, Scalar>> raw;
    raw.reserve(mu.atoms().size() * nu.atoms().size());
    for (const auto& [i, w] : mu.atoms())
        for (const auto& [j, v] : nu.atoms())
            raw.emplace_back(i * ny + j, w * v);
    FieldTag f = (mu.field() == FieldTag::Real && nu.field() == FieldTag::Real)
                     ? FieldTag::Real
                     : FieldTag::Complex;
    return measure_from_indexed(std::move(xy), f, mu.backend(), std::move(raw));
}

Scalar total_variation(const Measure& mu) {
    bool all_real = true;
    for (const auto& [i, w] : mu.atoms())
        if (!w.is_real()) { all_real = false; break; }
    if (mu.backend() == Backend::Exact && all_real) {
        mpq_class acc = 0;
        for (const auto& [i, w] : mu.atoms())
            acc += ::abs(w.re_q());
        return Scalar::exact(acc);
    }
    // complex exact moduli are generally irrational: report on the float side
    double acc = 0.0;
    for (const auto& [i, w] : mu.atoms()) acc += w.abs();
    return Scalar::fp(acc);
}

Scalar total_variation_sq(const Measure& mu) {
    Scalar acc = Scalar::zero(mu.backend());
    for (const auto& [i, w] : mu.atoms()) acc += w.abs_sq();
    return acc;
}

bool is_probability(const Measure& mu) {
    if (mu.backend() == Backend::Exact) {
        mpq_class sum = 0;
        for (const auto& [i, w] : mu.atoms()) {
            if (!w.is_real() || w.re_q() < 0) return false;
            sum += w.re_q();
        }
        return sum == 1;
    }
    constexpr double tol = 1e-12;
    double sum = 0.0;
    for (const auto& [i, w] : mu.atoms()) {
        auto z = w.to_complex();
        if (std::abs(z.imag()) > tol || z.real() < -tol) return false;
        sum += z.real();
    }
    return std::abs(sum - 1.0) <= tol;
}

MetaMeasure::MetaMeasure(SpacePtr base, Backend backend,
                         std::vector<std::pair<Measure, Scalar>> atoms)
    : base_(std::move(base)), backend_(backend) {
    std::map<std::string, std::pair<Measure, Scalar>> acc;
    for (auto& [m, w] : atoms) {
        if (!m.space()->same_structure(*base_))
            throw SpaceMismatch("meta-measure atom lives on '" + m.space()->name() +
                                "', expected base '" + base_->name() + "'");
        if (w.backend() != backend_ || m.backend() != backend_)
            throw BackendMismatch("meta-measure backend mismatch");
        std::string key = m.canonical_key();
        auto it = acc.find(key);
        if (it == acc.end())
            acc.emplace(key, std::make_pair(std::move(m), w));
        else
            it->second.second += w;
    }
    for (auto& [key, mw] : acc)
        if (!mw.second.is_zero()) atoms_.push_back(std::move(mw));
}

Measure flatten(const MetaMeasure& pi) {
    std::vector<std::pair<std::size_t, Scalar>> raw;
    FieldTag field = FieldTag::Real;
    for (const auto& [m, w] : pi.atoms()) {
        if (!w.is_real() || m.field() == FieldTag::Complex) field = FieldTag::Complex;
        for (const auto& [i, v] : m.atoms()) raw.emplace_back(i, w * v);
    }
    return measure_from_indexed(pi.base(), field, pi.backend(), std::move(raw));
}

MetaMeasure meta_dirac(const Measure& mu) {
    return MetaMeasure(mu.space(), mu.backend(), {{mu, Scalar::one(mu.backend())}});
}

MetaMeasure dirac_pushforward(const Measure& mu) {
    std::vector<std::pair<Measure, Scalar>> atoms;
    for (const auto& [i, w] : mu.atoms())
        atoms.emplace_back(dirac(mu.space(), mu.space()->point(i).label, mu.backend(), mu.field()),
                           w);
    return MetaMeasure(mu.space(), mu.backend(), std::move(atoms));
}

Verdict tail_verdict(const std::vector<double>& devs, double tol) {
    if (devs.empty()) throw EmptySequence("empty deviation sequence");
    std::size_t third = std::max<std::size_t>(1, devs.size() / 3);
    double tail_max = 0.0;
    for (std::size_t k = devs.size() - third; k < devs.size(); ++k)
        tail_max = std::max(tail_max, devs[k]);
    if (tail_max < tol) return Verdict::Converged;
    std::size_t mid_end = devs.size() - third;
    std::size_t mid_begin = mid_end >= third ? mid_end - third : 0;
    double mid_max = 0.0;
    for (std::size_t k = mid_begin; k < std::max(mid_end, mid_begin + 1) && k < devs.size(); ++k)
        mid_max = std::max(mid_max, devs[k]);
    if (tail_max >= mid_max) return Verdict::Diverged;
    return Verdict::Inconclusive;
}

WeakConvReport weak_convergence_report(
    const std::vector<Measure>& seq, const Measure& limit,
    const std::vector<std::pair<std::function<Scalar(const Point&)>, std::string>>& tests,
    double tol) {
    if (seq.empty()) throw EmptySequence("weak convergence needs a nonempty sequence");
    for (const auto& m : seq)
        if (!m.space()->same_structure(*limit.space()))
            throw SpaceMismatch("weak convergence sequence on mixed spaces");
    WeakConvReport rep;
    rep.tol = tol;
    bool any_diverged = false, all_converged = true;
    for (const auto& [f, name] : tests) {
        Scalar lim_val = integrate_scalar(limit, f);
        std::vector<double> devs;
        devs.reserve(seq.size());
        for (const auto& m : seq)
            devs.push_back(std::abs(integrate_scalar(m, f).to_complex() - lim_val.to_complex()));
        Verdict v = tail_verdict(devs, tol);
        if (v == Verdict::Diverged) any_diverged = true;
        if (v != Verdict::Converged) all_converged = false;
        rep.test_names.push_back(name);
        rep.deviations.push_back(std::move(devs));
    }
    rep.verdict = all_converged ? Verdict::Converged
                 : any_diverged ? Verdict::Diverged
                                : Verdict::Inconclusive;
    return rep;
}

} // namespace finmon
