#include "finmon/laws.hpp"

#include <chrono>
#include <cmath>
#include <functional>

#include "finmon/expr.hpp"
#include "finmon/fourier.hpp"
#include "finmon/gen.hpp"
#include "finmon/integration.hpp"

namespace finmon {

namespace {

std::string matrix_str(const Matrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) s += ";";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) s += ",";
            s += m.at(i, j).str();
        }
    }
    return s + "]";
}

struct SuiteRun {
    LawReport report;
    std::size_t current_case = 0;

    void check(bool ok, const std::string& what, const std::string& repro) {
        if (!ok) report.failures.push_back(LawFailure{current_case, what, repro});
    }
};

// ---------------------------------------------------------------- monad

void monad_case(SuiteRun& run, SplitMix64& rng) {
    SpacePtr x = random_space(rng, 8, "X");
    SpacePtr y = random_space(rng, 8, "Y");
    Measure mu = random_measure(rng, x);
    std::string repro = "mu=" + mu.str();

    run.check(measures_equal(flatten(meta_dirac(mu)), mu), "first unit law", repro);
    run.check(measures_equal(flatten(dirac_pushforward(mu)), mu), "second unit law", repro);

    // associativity: both collapses of a three-level measure agree
    std::size_t outer = 1 + rng.below(3);
    std::vector<std::pair<MetaMeasure, Scalar>> big;
    for (std::size_t i = 0; i < outer; ++i)
        big.emplace_back(random_meta(rng, x), random_rational(rng));
    std::vector<std::pair<Measure, Scalar>> route_a;
    std::vector<std::pair<Measure, Scalar>> route_b;
    for (const auto& [pi, w] : big) {
        route_a.emplace_back(flatten(pi), w);
        for (const auto& [inner, v] : pi.atoms()) route_b.emplace_back(inner, w * v);
    }
    Measure assoc_a = flatten(MetaMeasure(x, Backend::Exact, std::move(route_a)));
    Measure assoc_b = flatten(MetaMeasure(x, Backend::Exact, std::move(route_b)));
    run.check(measures_equal(assoc_a, assoc_b), "associativity law",
              "lhs=" + assoc_a.str() + " rhs=" + assoc_b.str());

    // naturality of the unit and of the multiplication
    MapTable f = random_map(rng, x, y);
    std::size_t px = rng.below(x->size());
    run.check(measures_equal(pushforward(f, dirac(x, x->point(px).label)),
                             dirac(y, y->point(f.apply(px)).label)),
              "unit naturality f_* delta_x = delta_f(x)", repro);
    MetaMeasure pi = random_meta(rng, x);
    std::vector<std::pair<Measure, Scalar>> pushed;
    for (const auto& [inner, w] : pi.atoms()) pushed.emplace_back(pushforward(f, inner), w);
    run.check(measures_equal(pushforward(f, flatten(pi)),
                             flatten(MetaMeasure(y, Backend::Exact, std::move(pushed)))),
              "multiplication naturality", repro);

    // functoriality through a random composite
    SpacePtr z = random_space(rng, 8, "Z");
    MapTable g = random_map(rng, y, z);
    run.check(measures_equal(pushforward(g.compose_after(f), mu),
                             pushforward(g, pushforward(f, mu))),
              "pushforward functoriality", repro);

    // probability closure and total variation multiplicativity
    Measure p = random_probability(rng, x);
    Measure q = random_probability(rng, y);
    run.check(is_probability(product(p, q)), "P closed under product",
              "p=" + p.str() + " q=" + q.str());
    run.check(is_probability(pushforward(f, p)), "P closed under pushforward", "p=" + p.str());
    std::vector<std::pair<Measure, Scalar>> patoms;
    patoms.emplace_back(p, Scalar::exact(mpq_class(1, 3)));
    patoms.emplace_back(random_probability(rng, x), Scalar::exact(mpq_class(2, 3)));
    run.check(is_probability(flatten(MetaMeasure(x, Backend::Exact, std::move(patoms)))),
              "P closed under flatten", "p=" + p.str());
    Measure nu = random_measure(rng, y);
    run.check(total_variation(product(mu, nu)) == total_variation(mu) * total_variation(nu),
              "total variation multiplicative on products",
              "mu=" + mu.str() + " nu=" + nu.str());
}

// ---------------------------------------------------------- commutative

void commutative_case(SuiteRun& run, SplitMix64& rng) {
    SpacePtr x = random_space(rng, 5, "X");
    SpacePtr y = random_space(rng, 5, "Y");
    FieldTag field = rng.below(3) == 0 ? FieldTag::Complex : FieldTag::Real;
    Measure mu = random_measure(rng, x, field);
    Measure nu = random_measure(rng, y, field);
    std::string repro = "mu=" + mu.str() + " nu=" + nu.str();

    run.check(measures_equal(pushforward(MapTable::swap(x, y), product(mu, nu)),
                             product(nu, mu)),
              "symmetry swap_*(mu (x) nu) = nu (x) mu", repro);

    // scalar Fubini on a random tabulated integrand
    SpacePtr xy = product_space(x, y);
    std::vector<Scalar> table;
    for (std::size_t k = 0; k < xy->size(); ++k) table.push_back(random_rational(rng));
    std::size_t ny = y->size();
    Scalar lhs = Scalar::zero(Backend::Exact), rhs = lhs;
    for (const auto& [j, v] : nu.atoms()) {
        Scalar inner = Scalar::zero(Backend::Exact);
        for (const auto& [i, w] : mu.atoms()) inner += w * table[i * ny + j];
        lhs += v * inner;
    }
    for (const auto& [i, w] : mu.atoms()) {
        Scalar inner = Scalar::zero(Backend::Exact);
        for (const auto& [j, v] : nu.atoms()) inner += v * table[i * ny + j];
        rhs += w * inner;
    }
    run.check(lhs == rhs, "scalar Fubini", repro);

    // vector-valued: the two iterated orders and the product form agree
    PairedSpace v = random_paired_space(rng, 4, "V");
    std::vector<Matrix> vals;
    for (std::size_t k = 0; k < xy->size(); ++k) vals.push_back(random_vector(rng, v.dim()));
    VectorFn fn(xy, v, std::move(vals));
    DoubleIntegralResult d = double_integral(fn, mu, nu);
    run.check(d.order_xy == d.order_yx && d.order_xy == d.product_form,
              "vector Fubini / associativity of the double integral",
              repro + " xy=" + matrix_str(d.order_xy) + " yx=" + matrix_str(d.order_yx) +
                  " prod=" + matrix_str(d.product_form));
}

// ---------------------------------------------------------- integration

void integration_case(SuiteRun& run, SplitMix64& rng) {
    SpacePtr x = random_space(rng, 6, "X");
    SpacePtr y = random_space(rng, 6, "Y");
    Measure mu = random_measure(rng, x);
    PairedSpace v = random_paired_space(rng, 4, "V");
    std::string repro = "mu=" + mu.str();

    // change of variables
    MapTable g = random_map(rng, x, y);
    std::vector<Matrix> fy;
    for (std::size_t k = 0; k < y->size(); ++k) fy.push_back(random_vector(rng, v.dim()));
    VectorFn f(y, v, fy);
    std::vector<Matrix> composed;
    for (std::size_t k = 0; k < x->size(); ++k) composed.push_back(fy[g.apply(k)]);
    VectorFn f_after_g(x, v, std::move(composed));
    run.check(integrate_vector(pushforward(g, mu), f) == integrate_vector(mu, f_after_g),
              "change of variables", repro);

    // operator exchange
    PairedSpace w = random_paired_space(rng, 4, "W");
    PairedMap t = random_paired_map(rng, v, w);
    std::vector<Matrix> gx;
    for (std::size_t k = 0; k < x->size(); ++k) gx.push_back(random_vector(rng, v.dim()));
    VectorFn gv(x, v, gx);
    std::vector<Matrix> tg;
    for (std::size_t k = 0; k < x->size(); ++k) tg.push_back(t.map * gx[k]);
    VectorFn tgv(x, w, std::move(tg));
    run.check(t.map * integrate_vector(mu, gv) == integrate_vector(mu, tgv),
              "operator exchange T(∫g dmu) = ∫(T∘g) dmu",
              repro + " T=" + matrix_str(t.map));

    // the adjunction: integration realizes the unique free extension
    PairedMap ext = free_extend(x, v, gx);
    run.check(integrate_vector(mu, gv) == ext.map * measure_coordinates(mu),
              "integral equals free extension applied to coordinates", repro);

    // linearity in both arguments
    Scalar alpha = random_rational(rng);
    Measure nu = random_measure(rng, x);
    std::vector<Matrix> hx;
    for (std::size_t k = 0; k < x->size(); ++k) hx.push_back(random_vector(rng, v.dim()));
    VectorFn hv(x, v, hx);
    std::vector<Matrix> combo;
    for (std::size_t k = 0; k < x->size(); ++k) combo.push_back(gx[k].scaled(alpha) + hx[k]);
    VectorFn cv(x, v, std::move(combo));
    run.check(integrate_vector(mu, cv) ==
                  integrate_vector(mu, gv).scaled(alpha) + integrate_vector(mu, hv),
              "linearity in the integrand", repro);
    run.check(integrate_vector(mu.scaled(alpha) + nu, gv) ==
                  integrate_vector(mu, gv).scaled(alpha) + integrate_vector(nu, gv),
              "linearity in the measure", repro + " nu=" + nu.str());
}

// ------------------------------------------------------------------ chu

void chu_case(SuiteRun& run, SplitMix64& rng) {
    PairedSpace a = random_paired_space(rng, 6, "A");
    PairedSpace b = random_paired_space(rng, 6, "B");
    std::string repro = "G_A=" + matrix_str(a.pairing()) + " G_B=" + matrix_str(b.pairing());

    run.check(dual(dual(a)).pairing() == a.pairing(), "dual is an involution", repro);

    PairedMap eta_a = eta(a);
    run.check(is_invertible(eta_a.map), "eta invertible", repro);
    PairedMap f = random_paired_map(rng, a, b);
    run.check(paired_maps_equal(compose(eta(b), f), compose(dual(dual(f)), eta_a)),
              "eta natural", repro + " f=" + matrix_str(f.map));

    // triple dualisation retraction on the dual
    PairedMap retraction = compose(dual(eta_a), eta(dual(a)));
    run.check(retraction.map.is_identity(), "triple dualisation retraction",
              repro + " r=" + matrix_str(retraction.map));

    // adjoint uniqueness against the closed form
    Matrix closed_form = inverse(a.pairing()) * f.map.transpose() * b.pairing();
    run.check(closed_form == f.adjoint, "adjoint closed form", repro);

    // the defining equation of the tensor, read backwards
    run.check(dual(tensor(a, b)).pairing() == internal_hom(a, dual(b)).pairing(),
              "dual(tensor(A,B)) = hom(A, dual(B))", repro);

    // hom respects composition
    PairedSpace a2 = random_paired_space(rng, 3, "A2");
    PairedSpace a3 = random_paired_space(rng, 3, "A3");
    PairedSpace b2 = random_paired_space(rng, 3, "B2");
    PairedSpace b3 = random_paired_space(rng, 3, "B3");
    PairedMap f1 = random_paired_map(rng, a, a2);
    PairedMap f2 = random_paired_map(rng, a2, a3);
    PairedMap g1 = random_paired_map(rng, b, b2);
    PairedMap g2 = random_paired_map(rng, b2, b3);
    run.check(paired_maps_equal(hom_map(compose(f2, f1), compose(g2, g1)),
                                compose(hom_map(f1, g2), hom_map(f2, g1))),
              "hom functoriality", repro);

    // curry/uncurry round-trip at small dimension
    PairedSpace ca = random_paired_space(rng, 3, "cA");
    PairedSpace cb = random_paired_space(rng, 3, "cB");
    PairedSpace cc = random_paired_space(rng, 3, "cC");
    CurryIso iso = curry(ca, cb, cc);
    run.check(compose(iso.backward, iso.forward).map.is_identity() &&
                  compose(iso.forward, iso.backward).map.is_identity(),
              "curry/uncurry mutually inverse",
              "dims=(" + std::to_string(ca.dim()) + "," + std::to_string(cb.dim()) + "," +
                  std::to_string(cc.dim()) + ")");

    // separation and extensionalization commute up to canonical isomorphism
    std::size_t n = 1 + rng.below(4), m = 1 + rng.below(4);
    std::size_t r = rng.below(std::min(n, m) + 1);
    Matrix low = r == 0 ? Matrix(n, m, Backend::Exact)
                        : random_matrix(rng, n, r) * random_matrix(rng, r, m);
    RawPair raw{"R", low};
    SeparationResult s = separate(raw);
    ExtensionalizationResult e = extensionalize(raw);
    SeparationResult s_after_e = separate(e.pair);
    ExtensionalizationResult e_after_s = extensionalize(s.pair);
    std::string raw_repro = "G=" + matrix_str(low);
    run.check(s_after_e.pair.dim() == e_after_s.pair.dim() &&
                  s_after_e.pair.dual_dim() == e_after_s.pair.dual_dim(),
              "reflection dimensions commute", raw_repro);
    // both routes must reproduce the original pairing on representatives
    Matrix route1 = s_after_e.projection.transpose() * s_after_e.pair.pairing *
                    e.dual_projection;
    Matrix route2 = s.projection.transpose() * e_after_s.pair.pairing *
                    e_after_s.dual_projection;
    run.check(route1 == low && route2 == low, "reflections reproduce the pairing", raw_repro);

    // bilinear maps factor through the tensor of free pairs
    SpacePtr x = random_space(rng, 3, "X");
    SpacePtr y = random_space(rng, 3, "Y");
    PairedSpace v = random_paired_space(rng, 3, "V");
    PairedSpace t = tensor(free_paired(*x), free_paired(*y));
    Matrix w = random_matrix(rng, v.dim(), t.dim());
    auto fn = [&](const Matrix& u, const Matrix& z) {
        return w * rank_one(free_paired(*x), free_paired(*y), u, z);
    };
    std::vector<std::pair<Scalar, Scalar>> coeffs;
    for (int k = 0; k < 4; ++k)
        coeffs.emplace_back(random_rational(rng), random_rational(rng));
    BilinearFactorization bf = factor_bilinear(x, y, v, fn, coeffs);
    run.check(bf.bilinear && bf.factor_map == w,
              "bilinear map factors uniquely through the tensor",
              "W=" + matrix_str(w) + (bf.bilinear ? "" : " (" + bf.failure + ")"));
}

// -------------------------------------------------------------- fourier

struct FourierState {
    std::size_t injectivity_found = 0;
    std::size_t injectivity_total = 0;
};

void fourier_case(SuiteRun& run, SplitMix64& rng, FourierState& st) {
    SpacePtr space = random_coord_space(rng, 6, 2, "Phi");
    Measure mu = random_probability(rng, space);
    std::string repro = "mu=" + mu.str();

    run.check(std::abs(char_value(mu, {0.0, 0.0}) - 1.0) <= 1e-12,
              "normalisation mu_hat(0) = 1", repro);

    // Hermitian symmetry on a random grid point
    std::vector<double> xv{rng.unit() * 4.0 - 2.0, rng.unit() * 4.0 - 2.0};
    std::vector<double> neg{-xv[0], -xv[1]};
    run.check(std::abs(char_value(mu, neg) - std::conj(char_value(mu, xv))) <= 1e-12,
              "Hermitian symmetry", repro);

    // positive-definiteness of the characteristic function
    std::vector<std::vector<double>> pts;
    while (pts.size() < 5) {
        std::vector<double> p{rng.range(-8, 8) / 4.0, rng.range(-8, 8) / 4.0};
        bool dup = false;
        for (const auto& q : pts) dup |= (q == p);
        if (!dup) pts.push_back(std::move(p));
    }
    PDReport pd = pd_check([&](const std::vector<double>& d) { return char_value(mu, d); },
                           pts, 1e-9);
    run.check(pd.psd && pd.hermitian_ok, "characteristic function positive-definite", repro);

    // product law
    SpacePtr space2 = random_coord_space(rng, 4, 2, "Psi");
    Measure nu = random_probability(rng, space2);
    std::vector<double> yv{rng.unit() * 4.0 - 2.0, rng.unit() * 4.0 - 2.0};
    std::vector<double> xy{xv[0], xv[1], yv[0], yv[1]};
    run.check(std::abs(char_value(product(mu, nu), xy) -
                       char_value(mu, xv) * char_value(nu, yv)) <= 1e-12,
              "product law for characteristic functions", repro + " nu=" + nu.str());

    // injectivity witness hunt on the fixed 9x9 grid (aggregated below)
    SpacePtr space3 = random_coord_space(rng, 5, 2, "Phi");
    Measure mu2 = random_probability(rng, space3);
    if (mu.canonical_key() != mu2.canonical_key()) {
        ++st.injectivity_total;
        bool found = false;
        for (int i = 0; i < 9 && !found; ++i)
            for (int j = 0; j < 9 && !found; ++j) {
                std::vector<double> g{-2.0 + 0.5 * i, -2.0 + 0.5 * j};
                found = std::abs(char_value(mu, g) - char_value(mu2, g)) > 1e-6;
            }
        if (found) ++st.injectivity_found;
    }
}

// ------------------------------------------------------------------ ftc

void ftc_checks(SuiteRun& run) {
    Curve gamma({{0.0, 0.0, 1.0}, {0.0, 0.0, 0.0, 1.0}}); // (t^2, t^3)
    run.current_case = 0;
    FtcForwardResult r10 = ftc_forward(gamma, 1.0, 10);
    run.check(std::abs(r10.errors[1] - 0.0025) <= 1e-12,
              "midpoint error for t^3 at n=10 equals 1/(4n^2)",
              "error=" + format_double(r10.errors[1]));
    run.check(r10.errors[0] <= 1e-12, "midpoint exact on the quadratic coordinate",
              "error=" + format_double(r10.errors[0]));
    run.current_case = 1;
    double prev = r10.errors[1];
    for (std::size_t n : {20u, 40u, 80u}) {
        double cur = ftc_forward(gamma, 1.0, n).errors[1];
        double ratio = cur / prev;
        run.check(ratio >= 0.24 && ratio <= 0.26,
                  "error ratio error(2n)/error(n) in [0.24, 0.26] at n=" + std::to_string(n / 2),
                  "ratio=" + format_double(ratio));
        prev = cur;
        ++run.current_case;
    }
    run.report.cases = run.current_case;
}

// ----------------------------------------------------------------- levy

void levy_checks(SuiteRun& run) {
    std::vector<Point> pts;
    pts.push_back(Point{"q0", std::vector<Scalar>{Scalar::fp(0.0)}});
    for (int n = 1; n <= 50; ++n)
        pts.push_back(Point{"q" + std::to_string(n),
                            std::vector<Scalar>{Scalar::fp(1.0 / n)}});
    SpacePtr space = make_space("line", std::move(pts));
    std::vector<Measure> seq;
    for (int n = 1; n <= 50; ++n)
        seq.push_back(dirac(space, "q" + std::to_string(n), Backend::Float));
    Measure limit = dirac(space, "q0", Backend::Float);

    std::vector<std::pair<std::function<Scalar(const Point&)>, std::string>> tests;
    for (const char* text : {"x1", "x1^2", "sin(x1)"}) {
        ExprPtr e = parse_expr(text, 1);
        tests.emplace_back(
            [e](const Point& p) { return eval_expr(*e, *p.coords, Backend::Float); }, text);
    }
    std::vector<std::vector<double>> grid;
    for (double g : {-0.5, -0.25, 0.0, 0.25, 0.5}) grid.push_back({g});

    LevyReport rep = levy_diagnostic(seq, limit, grid, tests, 1e-1);
    run.current_case = 0;
    run.check(rep.char_verdict == Verdict::Converged, "characteristic verdict converged",
              "verdict=" + std::string(to_string(rep.char_verdict)));
    run.check(rep.weak.verdict == Verdict::Converged, "weak-convergence verdict converged",
              "verdict=" + std::string(to_string(rep.weak.verdict)));
    run.check(!rep.flag, "consistency flag not raised", "");
    run.report.cases = 1;
}

} // namespace

const std::vector<std::string>& law_suite_names() {
    static const std::vector<std::string> names{"monad",  "commutative", "integration",
                                                "chu",    "fourier",     "ftc",
                                                "levy"};
    return names;
}

LawReport run_law_suite(const std::string& suite, std::size_t cases, std::uint64_t seed) {
    SuiteRun run;
    run.report.suite = suite;
    auto start = std::chrono::steady_clock::now();
    if (suite == "ftc") {
        ftc_checks(run);
    } else if (suite == "levy") {
        levy_checks(run);
    } else {
        if (suite != "monad" && suite != "commutative" && suite != "integration" &&
            suite != "chu" && suite != "fourier")
            throw InvalidParameter("unknown law suite '" + suite + "'");
        run.report.cases = cases;
        FourierState st;
        for (std::size_t c = 0; c < cases; ++c) {
            run.current_case = c;
            SplitMix64 rng(seed * 0x100000001ull + c);
            if (suite == "monad")
                monad_case(run, rng);
            else if (suite == "commutative")
                commutative_case(run, rng);
            else if (suite == "integration")
                integration_case(run, rng);
            else if (suite == "chu")
                chu_case(run, rng);
            else
                fourier_case(run, rng, st);
        }
        if (suite == "fourier" && st.injectivity_total > 0) {
            // the grid hunt is statistical: allow 1 miss per 100 pairs
            std::size_t allowed = st.injectivity_total / 100;
            if (st.injectivity_total - st.injectivity_found > allowed)
                run.report.failures.push_back(LawFailure{
                    cases, "injectivity witnesses found only " +
                               std::to_string(st.injectivity_found) + "/" +
                               std::to_string(st.injectivity_total),
                    ""});
        }
    }
    run.report.millis = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return run.report;
}

} // namespace finmon
