#include "finmon/cli.hpp"

#include <charconv>
#include <map>
#include <vector>

#include "finmon/expr.hpp"
#include "finmon/fourier.hpp"
#include "finmon/json_io.hpp"

namespace finmon {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const char* kUsage =
    "usage: finmon <command> [args] [--in <file.json>]...\n"
    "\n"
    "commands:\n"
    "  measure push --map M --measure MU          pushforward M_* MU\n"
    "  measure product --left MU --right NU       product measure\n"
    "  measure flatten --meta PI                  monad multiplication\n"
    "  measure tv --measure MU                    total variation\n"
    "  measure isprob --measure MU                probability test\n"
    "  integrate --measure MU --fn F              vector integral\n"
    "  double --fn F --mu MU --nu NU              both iterated orders + product form\n"
    "  char --measure MU --grid G                 characteristic function on a grid\n"
    "  pd --measure MU --points G [--tol T]       positive-definiteness certificate\n"
    "  chu dual --pair A\n"
    "  chu hom --left A --right B\n"
    "  chu tensor --left A --right B\n"
    "  chu eta --pair A\n"
    "  chu curry --a A --b B --c C\n"
    "  chu separate --raw R\n"
    "  chu ext --raw R\n"
    "  chu free --space X [--backend exact|float]\n"
    "  chu extend --fn F                          free extension of a vector function\n"
    "  ftc forward --curve C --t T --n N\n"
    "  ftc inverse --curve C --t T --h H --n N\n"
    "  weakconv --seq S --limit MU --tests T [--tol T]\n"
    "  levy --seq S --limit MU --grid G --tests T [--tol T]\n"
    "  laws <suite> [--cases N] [--seed S]        suites: monad commutative integration\n"
    "                                             chu fourier ftc levy\n";

struct Args {
    std::vector<std::string> files;
    std::map<std::string, std::string> flags;

    const std::string& get(const std::string& flag) const {
        auto it = flags.find(flag);
        if (it == flags.end()) throw UsageError("missing required option --" + flag);
        return it->second;
    }
    std::string get_or(const std::string& flag, const std::string& dflt) const {
        auto it = flags.find(flag);
        return it == flags.end() ? dflt : it->second;
    }
    double get_double(const std::string& flag) const {
        const std::string& s = get(flag);
        try {
            std::size_t used = 0;
            double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw UsageError("option --" + flag + " expects a number, got '" + s + "'");
        }
    }
    std::uint64_t get_count(const std::string& flag, std::uint64_t dflt) const {
        auto it = flags.find(flag);
        if (it == flags.end()) return dflt;
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(it->second.data(),
                                       it->second.data() + it->second.size(), v);
        if (ec != std::errc() || p != it->second.data() + it->second.size())
            throw UsageError("option --" + flag + " expects a nonnegative integer, got '" +
                             it->second + "'");
        return v;
    }
};

Args parse_args(int argc, const char* const* argv, int first) {
    Args a;
    for (int i = first; i < argc; ++i) {
        std::string s = argv[i];
        if (s.rfind("--", 0) != 0) throw UsageError("unexpected argument '" + s + "'");
        std::string flag = s.substr(2);
        if (i + 1 >= argc) throw UsageError("option --" + flag + " needs a value");
        std::string value = argv[++i];
        if (flag == "in") {
            a.files.push_back(value);
        } else {
            if (a.flags.count(flag)) throw UsageError("option --" + flag + " given twice");
            a.flags.emplace(flag, value);
        }
    }
    return a;
}

Backend backend_flag(const Args& a) {
    std::string b = a.get_or("backend", "exact");
    if (b == "exact") return Backend::Exact;
    if (b == "float") return Backend::Float;
    throw UsageError("option --backend expects 'exact' or 'float', got '" + b + "'");
}

json complex_to_json(std::complex<double> z) {
    return json::array({z.real(), z.imag()});
}

json doubles_to_json(const std::vector<double>& v) {
    json out = json::array();
    for (double x : v) out.push_back(x);
    return out;
}

json grid_to_json(const std::vector<std::vector<double>>& grid) {
    json out = json::array();
    for (const auto& p : grid) out.push_back(doubles_to_json(p));
    return out;
}

// Test family as callables, expressions parsed against the space's coords.
std::vector<std::pair<std::function<Scalar(const Point&)>, std::string>>
build_tests(const std::vector<std::string>& exprs, const SpacePtr& space, Backend backend) {
    if (!space->coord_dim())
        throw SchemaError("test family needs a coordinate space, but '" + space->name() +
                          "' has no coords");
    std::size_t dim = *space->coord_dim();
    std::vector<std::pair<std::function<Scalar(const Point&)>, std::string>> tests;
    for (const std::string& text : exprs) {
        ExprPtr e = parse_expr(text, dim);
        tests.emplace_back(
            [e, backend](const Point& p) { return eval_expr(*e, *p.coords, backend); }, text);
    }
    return tests;
}

json weak_report_to_json(const WeakConvReport& r) {
    json out;
    out["tests"] = r.test_names;
    json dev = json::array();
    for (const auto& row : r.deviations) dev.push_back(doubles_to_json(row));
    out["deviations"] = std::move(dev);
    out["verdict"] = to_string(r.verdict);
    out["tol"] = r.tol;
    return out;
}

int cmd_measure(const std::string& sub, const Args& a, std::ostream& out) {
    Workspace ws = load_workspace(a.files);
    json result;
    if (sub == "push") {
        result = measure_to_json(pushforward(ws_map(ws, a.get("map")),
                                             ws_measure(ws, a.get("measure"))));
    } else if (sub == "product") {
        result = measure_to_json(product(ws_measure(ws, a.get("left")),
                                         ws_measure(ws, a.get("right"))));
    } else if (sub == "flatten") {
        result = measure_to_json(flatten(ws_meta(ws, a.get("meta"))));
    } else if (sub == "tv") {
        const Measure& mu = ws_measure(ws, a.get("measure"));
        result["total_variation"] = scalar_to_json(total_variation(mu));
        result["total_variation_sq"] = scalar_to_json(total_variation_sq(mu));
    } else if (sub == "isprob") {
        result["is_probability"] = is_probability(ws_measure(ws, a.get("measure")));
    } else {
        throw UsageError("unknown measure subcommand '" + sub + "'");
    }
    out << result.dump(2) << "\n";
    return 0;
}

int cmd_chu(const std::string& sub, const Args& a, std::ostream& out) {
    Workspace ws = load_workspace(a.files);
    json result;
    if (sub == "dual") {
        result = paired_space_to_json(dual(ws_paired_space(ws, a.get("pair"))));
    } else if (sub == "hom") {
        result = paired_space_to_json(internal_hom(ws_paired_space(ws, a.get("left")),
                                                   ws_paired_space(ws, a.get("right"))));
    } else if (sub == "tensor") {
        result = paired_space_to_json(tensor(ws_paired_space(ws, a.get("left")),
                                             ws_paired_space(ws, a.get("right"))));
    } else if (sub == "eta") {
        result = paired_map_to_json(eta(ws_paired_space(ws, a.get("pair"))));
    } else if (sub == "curry") {
        CurryIso iso = curry(ws_paired_space(ws, a.get("a")), ws_paired_space(ws, a.get("b")),
                             ws_paired_space(ws, a.get("c")));
        result["forward"] = paired_map_to_json(iso.forward);
        result["backward"] = paired_map_to_json(iso.backward);
    } else if (sub == "separate") {
        SeparationResult s = separate(ws_raw_pair(ws, a.get("raw")));
        result["pair"] = raw_pair_to_json(s.pair);
        result["projection"] = matrix_to_json(s.projection);
    } else if (sub == "ext") {
        ExtensionalizationResult e = extensionalize(ws_raw_pair(ws, a.get("raw")));
        result["pair"] = raw_pair_to_json(e.pair);
        result["dual_projection"] = matrix_to_json(e.dual_projection);
    } else if (sub == "free") {
        result = paired_space_to_json(
            free_paired(*ws_space(ws, a.get("space")), backend_flag(a)));
    } else if (sub == "extend") {
        const VectorFn& f = ws_vector_fn(ws, a.get("fn"));
        result = paired_map_to_json(free_extend(f.domain, f.codomain, f.table));
    } else {
        throw UsageError("unknown chu subcommand '" + sub + "'");
    }
    out << result.dump(2) << "\n";
    return 0;
}

int cmd_ftc(const std::string& sub, const Args& a, std::ostream& out) {
    Workspace ws = load_workspace(a.files);
    const Curve& c = ws_curve(ws, a.get("curve"));
    double t = a.get_double("t");
    std::size_t n = static_cast<std::size_t>(a.get_count("n", 0));
    json result;
    if (sub == "forward") {
        FtcForwardResult r = ftc_forward(c, t, n);
        result["integral"] = doubles_to_json(r.integral);
        result["reference"] = doubles_to_json(r.reference);
        result["errors"] = doubles_to_json(r.errors);
        result["max_error"] = r.max_error;
    } else if (sub == "inverse") {
        FtcInverseResult r = ftc_inverse(c, t, a.get_double("h"), n);
        result["quotient"] = doubles_to_json(r.quotient);
        result["reference"] = doubles_to_json(r.reference);
        result["errors"] = doubles_to_json(r.errors);
        result["max_error"] = r.max_error;
    } else {
        throw UsageError("unknown ftc subcommand '" + sub + "'");
    }
    out << result.dump(2) << "\n";
    return 0;
}

int cmd_simple(const std::string& cmd, const Args& a, std::ostream& out) {
    Workspace ws = load_workspace(a.files);
    json result;
    if (cmd == "integrate") {
        const VectorFn& f = ws_vector_fn(ws, a.get("fn"));
        Matrix v = integrate_vector(ws_measure(ws, a.get("measure")), f);
        result["codomain"] = f.codomain.name();
        result["integral"] = vector_to_json(v);
    } else if (cmd == "double") {
        DoubleIntegralResult r = double_integral(ws_vector_fn(ws, a.get("fn")),
                                                 ws_measure(ws, a.get("mu")),
                                                 ws_measure(ws, a.get("nu")));
        result["order_xy"] = vector_to_json(r.order_xy);
        result["order_yx"] = vector_to_json(r.order_yx);
        result["product_form"] = vector_to_json(r.product_form);
    } else if (cmd == "char") {
        CharEvaluation ev = char_fn(ws_measure(ws, a.get("measure")),
                                    ws_grid(ws, a.get("grid")));
        result["grid"] = grid_to_json(ev.grid);
        json vals = json::array();
        for (auto z : ev.values) vals.push_back(complex_to_json(z));
        result["values"] = std::move(vals);
    } else if (cmd == "pd") {
        const Measure& mu = ws_measure(ws, a.get("measure"));
        double tol = a.flags.count("tol") ? a.get_double("tol") : 1e-9;
        PDReport r = pd_check(
            [&](const std::vector<double>& x) { return char_value(mu, x); },
            ws_grid(ws, a.get("points")), tol);
        result["points"] = grid_to_json(r.points);
        json gram = json::array();
        for (const auto& row : r.gram) {
            json jr = json::array();
            for (auto z : row) jr.push_back(complex_to_json(z));
            gram.push_back(std::move(jr));
        }
        result["gram"] = std::move(gram);
        result["hermitian"] = r.hermitian_ok;
        result["psd"] = r.psd;
        result["tol"] = r.tol;
        if (!r.psd) {
            json w = json::array();
            for (auto z : r.witness) w.push_back(complex_to_json(z));
            result["witness"] = std::move(w);
            result["witness_value"] = r.witness_value;
        }
    } else if (cmd == "weakconv") {
        const std::vector<Measure>& seq = ws_sequence(ws, a.get("seq"));
        const Measure& limit = ws_measure(ws, a.get("limit"));
        double tol = a.flags.count("tol") ? a.get_double("tol") : 1e-9;
        auto tests = build_tests(ws_tests(ws, a.get("tests")), limit.space(), limit.backend());
        result = weak_report_to_json(weak_convergence_report(seq, limit, tests, tol));
    } else { // levy
        const std::vector<Measure>& seq = ws_sequence(ws, a.get("seq"));
        const Measure& limit = ws_measure(ws, a.get("limit"));
        double tol = a.flags.count("tol") ? a.get_double("tol") : 1e-9;
        auto tests = build_tests(ws_tests(ws, a.get("tests")), limit.space(), limit.backend());
        LevyReport r = levy_diagnostic(seq, limit, ws_grid(ws, a.get("grid")), tests, tol);
        result["char_deviations"] = doubles_to_json(r.char_deviations);
        result["char_verdict"] = to_string(r.char_verdict);
        result["weak"] = weak_report_to_json(r.weak);
        result["flag"] = r.flag;
    }
    out << result.dump(2) << "\n";
    return 0;
}

int cmd_laws(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    if (argc < 3) throw UsageError("laws needs a suite name");
    std::string suite = argv[2];
    Args a = parse_args(argc, argv, 3);
    std::size_t cases = static_cast<std::size_t>(a.get_count("cases", 100));
    std::uint64_t seed = a.get_count("seed", 0);
    LawReport r;
    try {
        r = run_law_suite(suite, cases, seed);
    } catch (const InvalidParameter& e) {
        throw UsageError(e.what());
    }
    out << law_report_to_json(r).dump(2) << "\n";
    err << "suite " << r.suite << ": " << (r.cases - r.failures.size()) << "/" << r.cases
        << " cases passed in " << format_double(r.millis) << " ms\n";
    return r.ok() ? 0 : 4;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    if (argc < 2) throw UsageError("no command given");
    std::string cmd = argv[1];
    if (cmd == "help" || cmd == "--help" || cmd == "-h") {
        out << kUsage;
        return 0;
    }
    if (cmd == "laws") return cmd_laws(argc, argv, out, err);
    if (cmd == "measure" || cmd == "chu" || cmd == "ftc") {
        if (argc < 3) throw UsageError(cmd + " needs a subcommand");
        std::string sub = argv[2];
        Args a = parse_args(argc, argv, 3);
        if (cmd == "measure") return cmd_measure(sub, a, out);
        if (cmd == "chu") return cmd_chu(sub, a, out);
        return cmd_ftc(sub, a, out);
    }
    if (cmd == "integrate" || cmd == "double" || cmd == "char" || cmd == "pd" ||
        cmd == "weakconv" || cmd == "levy") {
        Args a = parse_args(argc, argv, 2);
        return cmd_simple(cmd, a, out);
    }
    throw UsageError("unknown command '" + cmd + "'");
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(argc, argv, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << kUsage;
        return 1;
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const SyntaxError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const VariableOutOfRange& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownIdentifier& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace finmon
