#pragma once

#include <functional>
#include <string>
#include <vector>

#include "finmon/space.hpp"

namespace finmon {

enum class FieldTag { Real, Complex };

const char* to_string(FieldTag f);

// Finitely supported K-valued measure on a finite carrier. Canonical form:
// atoms sorted by the space's point order, zero weights dropped.
class Measure {
public:
    Measure(SpacePtr space, FieldTag field, Backend backend,
            std::vector<std::pair<std::string, Scalar>> atoms);

    static Measure zero(SpacePtr space, FieldTag field, Backend backend);

    const SpacePtr& space() const { return space_; }
    FieldTag field() const { return field_; }
    Backend backend() const { return backend_; }

    // Canonical atoms as (point index, weight), sorted, nonzero.
    const std::vector<std::pair<std::size_t, Scalar>>& atoms() const { return atoms_; }

    Scalar weight_at(std::size_t point_index) const;
    Scalar weight_at(const std::string& label) const;

    Measure operator+(const Measure& o) const;
    Measure scaled(const Scalar& s) const;

    // Deterministic text key, also used to canonicalize meta-measures.
    std::string canonical_key() const;

    std::string str() const;

private:
    Measure(SpacePtr space, FieldTag field, Backend backend)
        : space_(std::move(space)), field_(field), backend_(backend) {}
    SpacePtr space_;
    FieldTag field_;
    Backend backend_;
    std::vector<std::pair<std::size_t, Scalar>> atoms_;

    friend Measure measure_from_indexed(SpacePtr space, FieldTag field, Backend backend,
                                        std::vector<std::pair<std::size_t, Scalar>> atoms);
};

Measure measure_from_indexed(SpacePtr space, FieldTag field, Backend backend,
                             std::vector<std::pair<std::size_t, Scalar>> atoms);

// Structural equality of canonical forms (exact backend) or componentwise
// |Δ| <= 1e-12 (1+|w|) (float).
bool measures_equal(const Measure& a, const Measure& b);

Measure dirac(const SpacePtr& space, const std::string& label,
              Backend backend = Backend::Exact, FieldTag field = FieldTag::Real);

Scalar integrate_scalar(const Measure& mu,
                        const std::function<Scalar(const Point&)>& f);

Measure pushforward(const MapTable& f, const Measure& mu);

// Product measure on the canonical product space.
Measure product(const Measure& mu, const Measure& nu);

Scalar total_variation(const Measure& mu);
// Σ |w|^2 over atoms; exact-closed on the exact backend.
Scalar total_variation_sq(const Measure& mu);

bool is_probability(const Measure& mu);

// Finitely supported measure on M(X): atoms are (inner measure, weight).
// Canonical form merges structurally equal inner measures and orders atoms
// by the inner measure's canonical key.
class MetaMeasure {
public:
    MetaMeasure(SpacePtr base, Backend backend,
                std::vector<std::pair<Measure, Scalar>> atoms);

    const SpacePtr& base() const { return base_; }
    Backend backend() const { return backend_; }
    const std::vector<std::pair<Measure, Scalar>>& atoms() const { return atoms_; }

private:
    SpacePtr base_;
    Backend backend_;
    std::vector<std::pair<Measure, Scalar>> atoms_;
};

// Monad multiplication: expectation of a measure on measures.
Measure flatten(const MetaMeasure& pi);

// Unit at the meta level: delta at mu.
MetaMeasure meta_dirac(const Measure& mu);

// Pushforward of mu along x -> delta_x, an element of M(M(X)).
MetaMeasure dirac_pushforward(const Measure& mu);

enum class Verdict { Converged, Diverged, Inconclusive };
const char* to_string(Verdict v);

struct WeakConvReport {
    std::vector<std::string> test_names;
    // deviations[t][n] = |mu_n(f_t) - mu(f_t)|
    std::vector<std::vector<double>> deviations;
    Verdict verdict = Verdict::Inconclusive;
    double tol = 0.0;
};

// Tail diagnostic over the supplied test family (never a proof of weak
// convergence in the full C_b(X) sense): converged iff every test's
// deviation over the last third stays below tol; diverged iff some test's
// last-third peak reaches tol without decaying relative to the middle third.
WeakConvReport weak_convergence_report(
    const std::vector<Measure>& seq, const Measure& limit,
    const std::vector<std::pair<std::function<Scalar(const Point&)>, std::string>>& tests,
    double tol);

// Shared by the Fourier diagnostics: verdict for one deviation sequence.
Verdict tail_verdict(const std::vector<double>& deviations, double tol);

} // namespace finmon
