#include "finmon/json_io.hpp"

#include <fstream>

#include "finmon/expr.hpp"

namespace finmon {

namespace {

std::string rat_str(const mpq_class& q) { return q.get_str(); }

mpq_class rat_from_string(const std::string& s, const std::string& where) {
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0)
        throw SchemaError(where + ": '" + s + "' is not a rational (expected \"p\" or \"p/q\")");
    if (q.get_den() == 0) throw SchemaError(where + ": zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

const json& need(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(where + ": missing required field '" + key + "'");
    return j.at(key);
}

std::string need_string(const json& j, const std::string& key, const std::string& where) {
    const json& v = need(j, key, where);
    if (!v.is_string()) throw SchemaError(where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

const json& need_array(const json& j, const std::string& key, const std::string& where) {
    const json& v = need(j, key, where);
    if (!v.is_array()) throw SchemaError(where + ": field '" + key + "' must be an array");
    return v;
}

double need_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw SchemaError(where + ": expected a number");
    return v.get<double>();
}

std::size_t need_count(const json& j, const std::string& key, const std::string& where) {
    const json& v = need(j, key, where);
    if (!v.is_number_unsigned())
        throw SchemaError(where + ": field '" + key + "' must be a nonnegative integer");
    return v.get<std::size_t>();
}

template <typename M>
void reject_duplicate(const M& m, const std::string& name, const std::string& kind,
                      const std::string& where) {
    if (m.count(name))
        throw SchemaError(where + ": duplicate " + kind + " name '" + name + "'");
}

FieldTag field_from_json(const json& parent, const std::string& where) {
    if (!parent.contains("field")) return FieldTag::Real;
    std::string f = need_string(parent, "field", where);
    if (f == "real") return FieldTag::Real;
    if (f == "complex") return FieldTag::Complex;
    throw SchemaError(where + ": field must be \"real\" or \"complex\", got '" + f + "'");
}

} // namespace

Backend backend_from_json(const json& parent, const std::string& where, Backend fallback) {
    if (!parent.contains("backend")) return fallback;
    std::string b = need_string(parent, "backend", where);
    if (b == "exact") return Backend::Exact;
    if (b == "float") return Backend::Float;
    throw SchemaError(where + ": backend must be \"exact\" or \"float\", got '" + b + "'");
}

json scalar_to_json(const Scalar& s) {
    if (s.backend() == Backend::Exact) {
        if (s.im_q() == 0) return json(rat_str(s.re_q()));
        return json::array({rat_str(s.re_q()), rat_str(s.im_q())});
    }
    std::complex<double> z = s.to_complex();
    if (z.imag() == 0.0) return json(z.real());
    return json::array({z.real(), z.imag()});
}

Scalar scalar_from_json(const json& j, Backend backend, const std::string& where) {
    if (backend == Backend::Exact) {
        if (j.is_string()) return Scalar::exact(rat_from_string(j.get<std::string>(), where));
        if (j.is_number_integer())
            return Scalar::exact_int(j.get<long>());
        if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_string())
            return Scalar::exact(rat_from_string(j[0].get<std::string>(), where),
                                 rat_from_string(j[1].get<std::string>(), where));
        throw SchemaError(where + ": exact scalar must be \"p/q\", an integer, or "
                          "[\"p/q\",\"r/s\"]");
    }
    if (j.is_number()) return Scalar::fp(j.get<double>());
    if (j.is_array() && j.size() == 2)
        return Scalar::fp(need_number(j[0], where), need_number(j[1], where));
    throw SchemaError(where + ": float scalar must be a number or [re, im]");
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, Backend backend, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw SchemaError(where + ": matrix must be a nonempty array of rows");
    std::size_t cols = 0;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array()) throw SchemaError(where + ": matrix row " + std::to_string(i) +
                                                " must be an array");
        if (i == 0) cols = j[i].size();
        if (j[i].size() != cols)
            throw SchemaError(where + ": matrix row " + std::to_string(i) + " has " +
                              std::to_string(j[i].size()) + " entries, expected " +
                              std::to_string(cols));
    }
    if (cols == 0) throw SchemaError(where + ": matrix rows must be nonempty");
    Matrix m(j.size(), cols, backend);
    for (std::size_t i = 0; i < j.size(); ++i)
        for (std::size_t c = 0; c < cols; ++c)
            m.at(i, c) = scalar_from_json(j[i][c], backend,
                                          where + "[" + std::to_string(i) + "][" +
                                              std::to_string(c) + "]");
    return m;
}

json vector_to_json(const Matrix& column) {
    json out = json::array();
    for (std::size_t i = 0; i < column.rows(); ++i) out.push_back(scalar_to_json(column.at(i, 0)));
    return out;
}

json space_to_json(const FiniteSpace& x) {
    json pts = json::array();
    for (const Point& p : x.points()) {
        json jp;
        jp["label"] = p.label;
        if (p.coords) {
            json cs = json::array();
            for (const Scalar& c : *p.coords) cs.push_back(scalar_to_json(c));
            jp["coords"] = std::move(cs);
        }
        pts.push_back(std::move(jp));
    }
    json out;
    out["name"] = x.name();
    out["points"] = std::move(pts);
    return out;
}

json measure_to_json(const Measure& mu) {
    json atoms = json::array();
    for (const auto& [idx, w] : mu.atoms()) {
        json a;
        a["label"] = mu.space()->point(idx).label;
        a["weight"] = scalar_to_json(w);
        atoms.push_back(std::move(a));
    }
    json out;
    out["space"] = mu.space()->name();
    out["field"] = to_string(mu.field());
    out["backend"] = to_string(mu.backend());
    out["atoms"] = std::move(atoms);
    return out;
}

json raw_pair_to_json(const RawPair& r) {
    json out;
    out["name"] = r.name;
    out["dim"] = r.dim();
    out["dual_dim"] = r.dual_dim();
    out["backend"] = to_string(r.backend());
    out["pairing"] = matrix_to_json(r.pairing);
    return out;
}

json paired_space_to_json(const PairedSpace& a) {
    json out;
    out["name"] = a.name();
    out["dim"] = a.dim();
    out["dual_dim"] = a.dim();
    out["backend"] = to_string(a.backend());
    out["pairing"] = matrix_to_json(a.pairing());
    return out;
}

json paired_map_to_json(const PairedMap& f) {
    json out;
    out["from"] = f.source.name();
    out["to"] = f.target.name();
    out["matrix"] = matrix_to_json(f.map);
    out["adjoint"] = matrix_to_json(f.adjoint);
    return out;
}

json law_report_to_json(const LawReport& r) {
    json fails = json::array();
    for (const LawFailure& f : r.failures) {
        json jf;
        jf["case"] = f.case_index;
        jf["what"] = f.what;
        jf["reproducer"] = f.reproducer;
        fails.push_back(std::move(jf));
    }
    json out;
    out["suite"] = r.suite;
    out["cases"] = r.cases;
    out["failures"] = std::move(fails);
    return out;
}

namespace {

SpacePtr load_space(const json& j, const std::string& where) {
    std::string name = need_string(j, "name", where);
    const json& jpts = need_array(j, "points", where);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < jpts.size(); ++i) {
        std::string pw = where + ".points[" + std::to_string(i) + "]";
        Point p;
        p.label = need_string(jpts[i], "label", pw);
        if (jpts[i].contains("coords")) {
            const json& jc = jpts[i].at("coords");
            if (!jc.is_array()) throw SchemaError(pw + ": coords must be an array");
            std::vector<Scalar> cs;
            for (std::size_t k = 0; k < jc.size(); ++k) {
                // strings are exact rationals, numbers are binary64
                Backend b = jc[k].is_string() ? Backend::Exact : Backend::Float;
                cs.push_back(scalar_from_json(jc[k], b,
                                              pw + ".coords[" + std::to_string(k) + "]"));
            }
            p.coords = std::move(cs);
        }
        pts.push_back(std::move(p));
    }
    return make_space(std::move(name), std::move(pts));
}

// Accepts a space name (string) or an inline space object; inline spaces
// are registered in the workspace under their own name.
SpacePtr resolve_space(Workspace& ws, const json& j, const std::string& where) {
    if (j.is_string()) return ws_space(ws, j.get<std::string>());
    if (j.is_object()) {
        SpacePtr sp = load_space(j, where);
        auto it = ws.spaces.find(sp->name());
        if (it != ws.spaces.end()) {
            if (!it->second->same_structure(*sp))
                throw SchemaError(where + ": inline space '" + sp->name() +
                                  "' conflicts with an existing definition");
            return it->second;
        }
        ws.spaces.emplace(sp->name(), sp);
        return ws.spaces.at(sp->name());
    }
    throw SchemaError(where + ": space must be a name or an inline space object");
}

Measure load_measure(Workspace& ws, const json& j, const std::string& where) {
    SpacePtr sp = resolve_space(ws, need(j, "space", where), where + ".space");
    FieldTag field = field_from_json(j, where);
    Backend backend = backend_from_json(j, where);
    const json& jatoms = need_array(j, "atoms", where);
    std::vector<std::pair<std::string, Scalar>> atoms;
    for (std::size_t i = 0; i < jatoms.size(); ++i) {
        std::string aw = where + ".atoms[" + std::to_string(i) + "]";
        atoms.emplace_back(need_string(jatoms[i], "label", aw),
                           scalar_from_json(need(jatoms[i], "weight", aw), backend, aw));
    }
    return Measure(sp, field, backend, std::move(atoms));
}

PairedSpace load_paired_space(const json& j, const std::string& where) {
    std::string name = need_string(j, "name", where);
    Backend backend = backend_from_json(j, where);
    Matrix g = matrix_from_json(need(j, "pairing", where), backend, where + ".pairing");
    if (need_count(j, "dim", where) != g.rows() ||
        need_count(j, "dual_dim", where) != g.cols())
        throw SchemaError(where + ": dim/dual_dim do not match the pairing matrix shape " +
                          std::to_string(g.rows()) + "x" + std::to_string(g.cols()));
    return PairedSpace(std::move(name), std::move(g));
}

RawPair load_raw_pair(const json& j, const std::string& where) {
    std::string name = need_string(j, "name", where);
    Backend backend = backend_from_json(j, where);
    Matrix g = matrix_from_json(need(j, "pairing", where), backend, where + ".pairing");
    if (need_count(j, "dim", where) != g.rows() ||
        need_count(j, "dual_dim", where) != g.cols())
        throw SchemaError(where + ": dim/dual_dim do not match the pairing matrix shape " +
                          std::to_string(g.rows()) + "x" + std::to_string(g.cols()));
    return RawPair{std::move(name), std::move(g)};
}

VectorFn load_vector_fn(Workspace& ws, const json& j, const std::string& where) {
    SpacePtr sp = resolve_space(ws, need(j, "space", where), where + ".space");
    if (j.contains("exprs")) {
        const json& je = j.at("exprs");
        if (!je.is_array() || je.empty())
            throw SchemaError(where + ": exprs must be a nonempty array of strings");
        if (!sp->coord_dim())
            throw SchemaError(where + ": exprs need a coordinate space, but '" + sp->name() +
                              "' has no coords");
        std::size_t dim = *sp->coord_dim();
        Backend coord_backend =
            dim > 0 ? sp->point(0).coords->at(0).backend() : Backend::Exact;
        Backend backend = backend_from_json(j, where, coord_backend);
        std::vector<ExprPtr> exprs;
        for (std::size_t i = 0; i < je.size(); ++i) {
            if (!je[i].is_string())
                throw SchemaError(where + ".exprs[" + std::to_string(i) + "]: must be a string");
            exprs.push_back(parse_expr(je[i].get<std::string>(), dim));
        }
        PairedSpace codomain =
            j.contains("codomain")
                ? ws_paired_space(ws, need_string(j, "codomain", where))
                : PairedSpace("R" + std::to_string(exprs.size()),
                              Matrix::identity(exprs.size(), backend));
        std::vector<Matrix> table;
        for (const Point& p : sp->points()) {
            Matrix v(exprs.size(), 1, backend);
            for (std::size_t i = 0; i < exprs.size(); ++i)
                v.at(i, 0) = eval_expr(*exprs[i], *p.coords, backend);
            table.push_back(std::move(v));
        }
        return VectorFn(sp, std::move(codomain), std::move(table));
    }
    PairedSpace codomain = ws_paired_space(ws, need_string(j, "codomain", where));
    const json& jt = need(j, "table", where);
    if (!jt.is_object()) throw SchemaError(where + ": table must map labels to vectors");
    std::vector<Matrix> table;
    for (const Point& p : sp->points()) {
        if (!jt.contains(p.label))
            throw SchemaError(where + ".table: missing value for point '" + p.label + "'");
        const json& jv = jt.at(p.label);
        if (!jv.is_array())
            throw SchemaError(where + ".table." + p.label + ": must be an array");
        Matrix v(jv.size(), 1, codomain.backend());
        for (std::size_t i = 0; i < jv.size(); ++i)
            v.at(i, 0) = scalar_from_json(jv[i], codomain.backend(),
                                          where + ".table." + p.label);
        table.push_back(std::move(v));
    }
    if (jt.size() != sp->size())
        throw SchemaError(where + ".table: has " + std::to_string(jt.size()) +
                          " entries for a space of " + std::to_string(sp->size()) + " points");
    return VectorFn(sp, std::move(codomain), std::move(table));
}

Curve load_curve(const json& j, const std::string& where) {
    std::size_t dim = need_count(j, "dim", where);
    const json& jc = need_array(j, "coeffs", where);
    if (jc.size() != dim)
        throw SchemaError(where + ": coeffs has " + std::to_string(jc.size()) +
                          " coordinate lists, expected dim = " + std::to_string(dim));
    std::vector<std::vector<double>> coeffs;
    for (std::size_t i = 0; i < jc.size(); ++i) {
        if (!jc[i].is_array())
            throw SchemaError(where + ".coeffs[" + std::to_string(i) + "]: must be an array");
        std::vector<double> row;
        for (const json& v : jc[i])
            row.push_back(need_number(v, where + ".coeffs[" + std::to_string(i) + "]"));
        coeffs.push_back(std::move(row));
    }
    return Curve(std::move(coeffs));
}

MapTable load_map(Workspace& ws, const json& j, const std::string& where) {
    SpacePtr from = resolve_space(ws, need(j, "from", where), where + ".from");
    SpacePtr to = resolve_space(ws, need(j, "to", where), where + ".to");
    const json& ja = need(j, "assignment", where);
    if (!ja.is_object())
        throw SchemaError(where + ": assignment must map source labels to target labels");
    std::vector<std::pair<std::string, std::string>> assignment;
    for (const auto& [k, v] : ja.items()) {
        if (!v.is_string())
            throw SchemaError(where + ".assignment." + k + ": must be a target label string");
        assignment.emplace_back(k, v.get<std::string>());
    }
    return MapTable(from, to, assignment);
}

PairedMap load_paired_map(Workspace& ws, const json& j, const std::string& where) {
    const PairedSpace& from = ws_paired_space(ws, need_string(j, "from", where));
    const PairedSpace& to = ws_paired_space(ws, need_string(j, "to", where));
    Matrix m = matrix_from_json(need(j, "matrix", where), from.backend(), where + ".matrix");
    if (!j.contains("adjoint")) return make_paired_map(from, to, std::move(m));
    Matrix adj = matrix_from_json(j.at("adjoint"), from.backend(), where + ".adjoint");
    return make_paired_map(from, to, std::move(m), std::move(adj));
}

void load_file(Workspace& ws, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path + ": cannot open file");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
    if (!doc.is_object()) throw SchemaError(path + ": top level must be a JSON object");

    static const char* kinds[] = {"spaces",      "measures", "meta_measures", "sequences",
                                  "raw_pairs",   "paired_spaces", "maps",     "paired_maps",
                                  "curves",      "vector_fns",    "grids",    "tests"};
    for (const auto& [key, val] : doc.items()) {
        bool known = false;
        for (const char* k : kinds) known |= (key == k);
        if (!known) throw SchemaError(path + ": unknown top-level key '" + key + "'");
        if (!val.is_array())
            throw SchemaError(path + "." + key + ": must be an array");
    }
    auto each = [&](const char* kind, auto&& fn) {
        if (!doc.contains(kind)) return;
        const json& arr = doc.at(kind);
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string where = path + "." + kind + "[" + std::to_string(i) + "]";
            if (!arr[i].is_object()) throw SchemaError(where + ": must be an object");
            fn(arr[i], where);
        }
    };

    each("spaces", [&](const json& j, const std::string& where) {
        SpacePtr sp = load_space(j, where);
        reject_duplicate(ws.spaces, sp->name(), "space", where);
        ws.spaces.emplace(sp->name(), std::move(sp));
    });
    each("measures", [&](const json& j, const std::string& where) {
        std::string name = need_string(j, "name", where);
        reject_duplicate(ws.measures, name, "measure", where);
        ws.measures.emplace(name, load_measure(ws, j, where));
    });
    each("meta_measures", [&](const json& j, const std::string& where) {
        std::string name = need_string(j, "name", where);
        reject_duplicate(ws.meta_measures, name, "meta-measure", where);
        SpacePtr sp = resolve_space(ws, need(j, "space", where), where + ".space");
        Backend backend = backend_from_json(j, where);
        const json& jatoms = need_array(j, "atoms", where);
        std::vector<std::pair<Measure, Scalar>> atoms;
        for (std::size_t i = 0; i < jatoms.size(); ++i) {
            std::string aw = where + ".atoms[" + std::to_string(i) + "]";
            const json& jm = need(jatoms[i], "measure", aw);
            Measure inner = jm.is_string() ? ws_measure(ws, jm.get<std::string>())
                                           : load_measure(ws, jm, aw + ".measure");
            atoms.emplace_back(std::move(inner),
                               scalar_from_json(need(jatoms[i], "weight", aw), backend, aw));
        }
        ws.meta_measures.emplace(name, MetaMeasure(sp, backend, std::move(atoms)));
    });
    each("sequences", [&](const json& j, const std::string& where) {
        std::string name = need_string(j, "name", where);
        reject_duplicate(ws.sequences, name, "sequence", where);
        const json& jm = need_array(j, "measures", where);
        std::vector<Measure> seq;
        for (std::size_t i = 0; i < jm.size(); ++i) {
            if (!jm[i].is_string())
                throw SchemaError(where + ".measures[" + std::to_string(i) +
                                  "]: must be a measure name");
            seq.push_back(ws_measure(ws, jm[i].get<std::string>()));
        }
        ws.sequences.emplace(name, std::move(seq));
    });
    each("raw_pairs", [&](const json& j, const std::string& where) {
        RawPair r = load_raw_pair(j, where);
        reject_duplicate(ws.raw_pairs, r.name, "raw pair", where);
        ws.raw_pairs.emplace(r.name, std::move(r));
    });
    each("paired_spaces", [&](const json& j, const std::string& where) {
        PairedSpace p = load_paired_space(j, where);
        reject_duplicate(ws.paired_spaces, p.name(), "paired space", where);
        ws.paired_spaces.emplace(p.name(), std::move(p));
    });
    each("maps", [&](const json& j, const std::string& where) {
        std::string name = need_string(j, "name", where);
        reject_duplicate(ws.maps, name, "map", where);
        ws.maps.emplace(name, load_map(ws, j, where));
    });
    each("paired_maps", [&](const json& j, const std::string& where) {
        std::string name = need_string(j, "name", where);
        reject_duplicate(ws.paired_maps, name, "paired map", where);
        ws.paired_maps.emplace(name, load_paired_map(ws, j, where));
    });
    each("curves", [&](const json& j, const std::string& where) {
        std::string name = need_string(j, "name", where);
        reject_duplicate(ws.curves, name, "curve", where);
        ws.curves.emplace(name, load_curve(j, where));
    });
    each("vector_fns", [&](const json& j, const std::string& where) {
        std::string name = need_string(j, "name", where);
        reject_duplicate(ws.vector_fns, name, "vector function", where);
        ws.vector_fns.emplace(name, load_vector_fn(ws, j, where));
    });
    each("grids", [&](const json& j, const std::string& where) {
        std::string name = need_string(j, "name", where);
        reject_duplicate(ws.grids, name, "grid", where);
        const json& jp = need_array(j, "points", where);
        std::vector<std::vector<double>> pts;
        for (std::size_t i = 0; i < jp.size(); ++i) {
            if (!jp[i].is_array())
                throw SchemaError(where + ".points[" + std::to_string(i) +
                                  "]: must be an array of numbers");
            std::vector<double> v;
            for (const json& c : jp[i])
                v.push_back(need_number(c, where + ".points[" + std::to_string(i) + "]"));
            pts.push_back(std::move(v));
        }
        ws.grids.emplace(name, std::move(pts));
    });
    each("tests", [&](const json& j, const std::string& where) {
        std::string name = need_string(j, "name", where);
        reject_duplicate(ws.test_families, name, "test family", where);
        const json& je = need_array(j, "exprs", where);
        std::vector<std::string> exprs;
        for (std::size_t i = 0; i < je.size(); ++i) {
            if (!je[i].is_string())
                throw SchemaError(where + ".exprs[" + std::to_string(i) +
                                  "]: must be an expression string");
            exprs.push_back(je[i].get<std::string>());
        }
        ws.test_families.emplace(name, std::move(exprs));
    });
}

template <typename M>
const typename M::mapped_type& lookup(const M& m, const std::string& name,
                                      const std::string& kind) {
    auto it = m.find(name);
    if (it == m.end()) throw SchemaError("no " + kind + " named '" + name + "' in the workspace");
    return it->second;
}

} // namespace

Workspace load_workspace(const std::vector<std::string>& files) {
    Workspace ws;
    for (const std::string& f : files) load_file(ws, f);
    return ws;
}

const SpacePtr& ws_space(const Workspace& ws, const std::string& name) {
    return lookup(ws.spaces, name, "space");
}
const Measure& ws_measure(const Workspace& ws, const std::string& name) {
    return lookup(ws.measures, name, "measure");
}
const MetaMeasure& ws_meta(const Workspace& ws, const std::string& name) {
    return lookup(ws.meta_measures, name, "meta-measure");
}
const std::vector<Measure>& ws_sequence(const Workspace& ws, const std::string& name) {
    return lookup(ws.sequences, name, "sequence");
}
const RawPair& ws_raw_pair(const Workspace& ws, const std::string& name) {
    return lookup(ws.raw_pairs, name, "raw pair");
}
const PairedSpace& ws_paired_space(const Workspace& ws, const std::string& name) {
    return lookup(ws.paired_spaces, name, "paired space");
}
const MapTable& ws_map(const Workspace& ws, const std::string& name) {
    return lookup(ws.maps, name, "map");
}
const PairedMap& ws_paired_map(const Workspace& ws, const std::string& name) {
    return lookup(ws.paired_maps, name, "paired map");
}
const Curve& ws_curve(const Workspace& ws, const std::string& name) {
    return lookup(ws.curves, name, "curve");
}
const VectorFn& ws_vector_fn(const Workspace& ws, const std::string& name) {
    return lookup(ws.vector_fns, name, "vector function");
}
const std::vector<std::vector<double>>& ws_grid(const Workspace& ws, const std::string& name) {
    return lookup(ws.grids, name, "grid");
}
const std::vector<std::string>& ws_tests(const Workspace& ws, const std::string& name) {
    return lookup(ws.test_families, name, "test family");
}

} // namespace finmon
