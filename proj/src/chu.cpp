#include "finmon/chu.hpp"

namespace finmon {

namespace {

Matrix vec_col_major(const Matrix& h) {
    Matrix v(h.rows() * h.cols(), 1, h.backend());
    for (std::size_t j = 0; j < h.cols(); ++j)
        for (std::size_t i = 0; i < h.rows(); ++i)
            v.at(j * h.rows() + i, 0) = h.at(i, j);
    return v;
}

Matrix unvec_col_major(const Matrix& v, std::size_t rows, std::size_t cols) {
    Matrix h(rows, cols, v.backend());
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i)
            h.at(i, j) = v.at(j * rows + i, 0);
    return h;
}

bool matrices_match(const Matrix& a, const Matrix& b) {
    if (a.backend() == Backend::Exact) return a == b;
    return Matrix::approx_equal(a, b, 1e-9);
}

} // namespace

PairedSpace::PairedSpace(std::string name, Matrix pairing)
    : name_(std::move(name)), pairing_(std::move(pairing)) {
    if (pairing_.rows() != pairing_.cols())
        throw DegeneratePairing("paired space '" + name_ + "': pairing matrix is " +
                                std::to_string(pairing_.rows()) + "x" +
                                std::to_string(pairing_.cols()) + ", must be square");
    if (!is_invertible(pairing_))
        throw DegeneratePairing("paired space '" + name_ +
                                "': pairing matrix is singular (not separated-extensional)");
}

Scalar PairedSpace::pair(const Matrix& x, const Matrix& phi) const {
    return (x.transpose() * pairing_ * phi).at(0, 0);
}

PairedSpace PairedSpace::dualising(Backend backend) {
    return PairedSpace("D", Matrix::identity(1, backend));
}

PairedMap make_paired_map(const PairedSpace& source, const PairedSpace& target, Matrix map) {
    if (map.rows() != target.dim() || map.cols() != source.dim())
        throw DimensionMismatch("paired map matrix must be " + std::to_string(target.dim()) +
                                "x" + std::to_string(source.dim()));
    Matrix adj = solve(source.pairing(), map.transpose() * target.pairing());
    return PairedMap{source, target, std::move(map), std::move(adj)};
}

PairedMap make_paired_map(const PairedSpace& source, const PairedSpace& target,
                          Matrix map, Matrix adjoint) {
    if (!matrices_match(map.transpose() * target.pairing(), source.pairing() * adjoint))
        throw AdjointMismatch("adjointness identity A^T G_target = G_source B fails for map '" +
                              source.name() + "' -> '" + target.name() + "'");
    return PairedMap{source, target, std::move(map), std::move(adjoint)};
}

PairedMap compose(const PairedMap& g, const PairedMap& f) {
    if (!f.target.same_structure(g.source))
        throw DimensionMismatch("paired map composition mismatch");
    return PairedMap{f.source, g.target, g.map * f.map, f.adjoint * g.adjoint};
}

PairedMap identity_map(const PairedSpace& a) {
    Matrix id = Matrix::identity(a.dim(), a.backend());
    return PairedMap{a, a, id, id};
}

bool paired_maps_equal(const PairedMap& a, const PairedMap& b) {
    return a.source.same_structure(b.source) && a.target.same_structure(b.target) &&
           a.map == b.map && a.adjoint == b.adjoint;
}

PairedSpace dual(const PairedSpace& a) {
    return PairedSpace("dual(" + a.name() + ")", a.pairing().transpose());
}

PairedMap dual(const PairedMap& f) {
    return PairedMap{dual(f.target), dual(f.source), f.adjoint, f.map};
}

std::size_t hom_index(std::size_t i, std::size_t j, std::size_t dim_b) {
    return j * dim_b + i;
}

std::size_t tensor_index(std::size_t a, std::size_t b, std::size_t dim_a) {
    return b * dim_a + a;
}

PairedSpace internal_hom(const PairedSpace& a, const PairedSpace& b) {
    if (a.backend() != b.backend()) throw BackendMismatch("internal hom backend mismatch");
    std::size_t na = a.dim(), nb = b.dim();
    Matrix g(na * nb, na * nb, a.backend());
    const Matrix& ga = a.pairing();
    const Matrix& gb = b.pairing();
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t p = 0; p < na; ++p)
                for (std::size_t q = 0; q < nb; ++q)
                    g.at(hom_index(i, j, nb), tensor_index(p, q, na)) =
                        ga.at(p, j) * gb.at(i, q);
    return PairedSpace("hom(" + a.name() + "," + b.name() + ")", std::move(g));
}

Matrix hom_coords_of_map(const PairedSpace& a, const PairedSpace& b, const Matrix& f) {
    // F = H G_A^T  =>  H = F (G_A^T)^{-1}
    return solve(a.pairing(), f.transpose()).transpose();
}

Matrix map_of_hom_coords(const PairedSpace& a, const PairedSpace& /*b*/, const Matrix& h) {
    return h * a.pairing().transpose();
}

PairedMap hom_map(const PairedMap& f, const PairedMap& g) {
    // [f, g]: [A', B] -> [A, B'],  h |-> g ∘ h ∘ f
    const PairedSpace& a = f.source;
    const PairedSpace& a2 = f.target;
    const PairedSpace& b = g.source;
    const PairedSpace& b2 = g.target;
    PairedSpace src = internal_hom(a2, b);
    PairedSpace dst = internal_hom(a, b2);
    Matrix big(dst.dim(), src.dim(), a.backend());
    for (std::size_t k = 0; k < src.dim(); ++k) {
        Matrix h(b.dim(), a2.dim(), a.backend());
        h.at(k % b.dim(), k / b.dim()) = Scalar::one(a.backend());
        Matrix comp = g.map * map_of_hom_coords(a2, b, h) * f.map;
        big.set_col(k, vec_col_major(hom_coords_of_map(a, b2, comp)));
    }
    return make_paired_map(src, dst, std::move(big));
}

PairedSpace tensor(const PairedSpace& a, const PairedSpace& b) {
    PairedSpace t = dual(internal_hom(a, dual(b)));
    return PairedSpace("tensor(" + a.name() + "," + b.name() + ")", t.pairing());
}

Matrix rank_one(const PairedSpace& a, const PairedSpace& b, const Matrix& x, const Matrix& y) {
    if (x.rows() != a.dim() || y.rows() != b.dim())
        throw DimensionMismatch("rank-one factor dimensions do not match the pair");
    Matrix v(a.dim() * b.dim(), 1, a.backend());
    for (std::size_t p = 0; p < a.dim(); ++p)
        for (std::size_t q = 0; q < b.dim(); ++q)
            v.at(tensor_index(p, q, a.dim()), 0) = x.at(p, 0) * y.at(q, 0);
    return v;
}

PairedMap eta(const PairedSpace& a) {
    PairedSpace dd = dual(dual(a));
    // <eta(x), h>_dd = <x, h>_A for all h:  G_dd^T eta = G_A^T
    Matrix m = solve(dd.pairing().transpose(), a.pairing().transpose());
    return make_paired_map(a, dd, std::move(m));
}

CurryIso curry(const PairedSpace& a, const PairedSpace& b, const PairedSpace& c) {
    if (a.backend() != b.backend() || b.backend() != c.backend())
        throw BackendMismatch("curry backend mismatch");
    std::size_t na = a.dim(), nb = b.dim(), nc = c.dim();
    PairedSpace t = tensor(a, b);
    PairedSpace hom_tc = internal_hom(t, c);
    PairedSpace hom_bc = internal_hom(b, c);
    PairedSpace hom_a_bc = internal_hom(a, hom_bc);
    std::size_t n = na * nb * nc;
    Matrix gt_t = t.pairing().transpose();
    Matrix ga_t_inv = inverse(a.pairing().transpose());
    Matrix gb_t_inv = inverse(b.pairing().transpose());
    Matrix phi(n, n, a.backend());
    for (std::size_t k = 0; k < n; ++k) {
        Matrix h1(nc, na * nb, a.backend());
        h1.at(k % nc, k / nc) = Scalar::one(a.backend());
        Matrix f1 = h1 * gt_t; // map on tensor carrier coordinates
        Matrix graw(nb * nc, na, a.backend());
        for (std::size_t p = 0; p < na; ++p) {
            Matrix m_p(nc, nb, a.backend());
            for (std::size_t q = 0; q < nb; ++q)
                m_p.set_col(q, f1.col(tensor_index(p, q, na)));
            graw.set_col(p, vec_col_major(m_p * gb_t_inv));
        }
        phi.set_col(k, vec_col_major(graw * ga_t_inv));
    }
    Matrix phi_inv = inverse(phi);
    return CurryIso{make_paired_map(hom_tc, hom_a_bc, std::move(phi)),
                    make_paired_map(hom_a_bc, hom_tc, std::move(phi_inv))};
}

SeparationResult separate(const RawPair& r) {
    const Matrix& g = r.pairing;
    std::size_t n = g.rows();
    std::vector<std::size_t> row_basis = independent_rows(g);
    std::size_t rk = row_basis.size();
    if (rk == n) {
        return SeparationResult{RawPair{"sep(" + r.name + ")", g},
                                Matrix::identity(n, g.backend())};
    }
    Matrix gq(rk, g.cols(), g.backend());
    for (std::size_t s = 0; s < rk; ++s)
        for (std::size_t j = 0; j < g.cols(); ++j)
            gq.at(s, j) = g.at(row_basis[s], j);
    // pick rk independent columns to solve for quotient coordinates
    std::vector<std::size_t> col_basis = independent_rows(gq.transpose());
    Matrix m(rk, rk, g.backend());
    Matrix gcols(n, rk, g.backend());
    for (std::size_t tcol = 0; tcol < rk; ++tcol) {
        for (std::size_t s = 0; s < rk; ++s) m.at(s, tcol) = gq.at(s, col_basis[tcol]);
        for (std::size_t i = 0; i < n; ++i) gcols.at(i, tcol) = g.at(i, col_basis[tcol]);
    }
    Matrix projection = solve(m.transpose(), gcols.transpose());
    return SeparationResult{RawPair{"sep(" + r.name + ")", std::move(gq)},
                            std::move(projection)};
}

ExtensionalizationResult extensionalize(const RawPair& r) {
    SeparationResult s = separate(RawPair{r.name, r.pairing.transpose()});
    return ExtensionalizationResult{RawPair{"ext(" + r.name + ")", s.pair.pairing.transpose()},
                                    std::move(s.projection)};
}

ReflectionResult reflect(const RawPair& r) {
    SeparationResult s = separate(r);
    ExtensionalizationResult e = extensionalize(s.pair);
    return ReflectionResult{PairedSpace("refl(" + r.name + ")", e.pair.pairing),
                            std::move(s.projection), std::move(e.dual_projection)};
}

PairedSpace free_paired(const FiniteSpace& x, Backend backend) {
    return PairedSpace("free(" + x.name() + ")", Matrix::identity(x.size(), backend));
}

PairedMap free_extend(const SpacePtr& x, const PairedSpace& v,
                      const std::vector<Matrix>& values_per_point) {
    if (values_per_point.size() != x->size())
        throw DimensionMismatch("free_extend needs one value per point of '" + x->name() + "'");
    Matrix a(v.dim(), x->size(), v.backend());
    for (std::size_t j = 0; j < x->size(); ++j) {
        if (values_per_point[j].rows() != v.dim() || values_per_point[j].cols() != 1)
            throw DimensionMismatch("value for point '" + x->point(j).label +
                                    "' must be a vector of dimension " +
                                    std::to_string(v.dim()));
        a.set_col(j, values_per_point[j]);
    }
    return make_paired_map(free_paired(*x, v.backend()), v, std::move(a));
}

BilinearFactorization factor_bilinear(
    const SpacePtr& x, const SpacePtr& y, const PairedSpace& v,
    const std::function<Matrix(const Matrix&, const Matrix&)>& fn,
    const std::vector<std::pair<Scalar, Scalar>>& sample_coeffs) {
    Backend bk = v.backend();
    std::size_t nx = x->size(), ny = y->size();
    auto basis = [&](std::size_t n, std::size_t k) {
        Matrix e(n, 1, bk);
        e.at(k, 0) = Scalar::one(bk);
        return e;
    };
    BilinearFactorization out;
    std::vector<std::vector<Matrix>> m(nx);
    for (std::size_t p = 0; p < nx; ++p)
        for (std::size_t q = 0; q < ny; ++q) {
            Matrix val = fn(basis(nx, p), basis(ny, q));
            if (val.rows() != v.dim() || val.cols() != 1)
                throw DimensionMismatch("bilinear map value has wrong dimension");
            m[p].push_back(std::move(val));
        }
    // linearity in each slot, probed with the supplied coefficients
    std::size_t ci = 0;
    auto next_coeffs = [&]() {
        const auto& c = sample_coeffs[ci % sample_coeffs.size()];
        ++ci;
        return c;
    };
    for (std::size_t p = 0; p < nx; ++p)
        for (std::size_t q = 0; q < ny; ++q) {
            auto [alpha, beta] = next_coeffs();
            std::size_t p2 = (p + 1) % nx, q2 = (q + 1) % ny;
            Matrix left = fn(basis(nx, p).scaled(alpha) + basis(nx, p2), basis(ny, q));
            Matrix want = m[p][q].scaled(alpha) + m[p2][q];
            if (!matrices_match(left, want)) {
                out.failure = "not linear in the first slot at basis pair (" +
                              x->point(p).label + "," + y->point(q).label + ")";
                return out;
            }
            left = fn(basis(nx, p), basis(ny, q).scaled(beta) + basis(ny, q2));
            want = m[p][q].scaled(beta) + m[p][q2];
            if (!matrices_match(left, want)) {
                out.failure = "not linear in the second slot at basis pair (" +
                              x->point(p).label + "," + y->point(q).label + ")";
                return out;
            }
        }
    PairedSpace fx = free_paired(*x, bk);
    PairedSpace fy = free_paired(*y, bk);
    PairedSpace t = tensor(fx, fy);
    Matrix big(v.dim(), nx * ny, bk);
    for (std::size_t p = 0; p < nx; ++p)
        for (std::size_t q = 0; q < ny; ++q)
            big.set_col(tensor_index(p, q, nx), m[p][q]);
    out.bilinear = true;
    out.factor_map = (make_paired_map(t, v, std::move(big))).map;
    return out;
}

} // namespace finmon
