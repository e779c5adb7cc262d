#include "finmon/gen.hpp"

namespace finmon {

Scalar random_rational(SplitMix64& rng, long max_num, long max_den) {
    mpq_class q(rng.range(-max_num, max_num), rng.range(1, max_den));
    q.canonicalize();
    return Scalar::exact(q);
}

Scalar random_gaussian_rational(SplitMix64& rng) {
    mpq_class re(rng.range(-9, 9), rng.range(1, 9));
    mpq_class im(rng.range(-9, 9), rng.range(1, 9));
    re.canonicalize();
    im.canonicalize();
    return Scalar::exact(re, im);
}

SpacePtr random_space(SplitMix64& rng, std::size_t max_points, const std::string& name) {
    std::size_t n = 1 + rng.below(max_points);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(Point{"p" + std::to_string(i), {}});
    return make_space(name, std::move(pts));
}

SpacePtr random_coord_space(SplitMix64& rng, std::size_t max_points, std::size_t dim,
                            const std::string& name) {
    std::size_t n = 1 + rng.below(max_points);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Scalar> coords;
        for (std::size_t k = 0; k < dim; ++k) {
            mpq_class q(rng.range(-16, 16), 8);
            q.canonicalize();
            coords.push_back(Scalar::exact(q));
        }
        pts.push_back(Point{"p" + std::to_string(i), std::move(coords)});
    }
    return make_space(name, std::move(pts));
}

Measure random_measure(SplitMix64& rng, const SpacePtr& space, FieldTag field) {
    std::vector<std::pair<std::string, Scalar>> atoms;
    for (std::size_t i = 0; i < space->size(); ++i) {
        if (rng.below(4) == 0) continue; // sparse supports included
        Scalar w = field == FieldTag::Real ? random_rational(rng)
                                           : random_gaussian_rational(rng);
        atoms.emplace_back(space->point(i).label, w);
    }
    return Measure(space, field, Backend::Exact, std::move(atoms));
}

Measure random_probability(SplitMix64& rng, const SpacePtr& space) {
    std::vector<std::pair<std::string, Scalar>> atoms;
    mpq_class total = 0;
    std::vector<mpq_class> raw(space->size());
    for (std::size_t i = 0; i < space->size(); ++i) {
        raw[i] = mpq_class(rng.range(0, 8), rng.range(1, 5));
        raw[i].canonicalize();
        total += raw[i];
    }
    if (total == 0) {
        raw[rng.below(space->size())] = 1;
        total = 1;
    }
    for (std::size_t i = 0; i < space->size(); ++i)
        if (raw[i] != 0) atoms.emplace_back(space->point(i).label, Scalar::exact(raw[i] / total));
    return Measure(space, FieldTag::Real, Backend::Exact, std::move(atoms));
}

MetaMeasure random_meta(SplitMix64& rng, const SpacePtr& space, std::size_t max_inner) {
    std::size_t n = 1 + rng.below(max_inner);
    std::vector<std::pair<Measure, Scalar>> atoms;
    for (std::size_t i = 0; i < n; ++i)
        atoms.emplace_back(random_measure(rng, space), random_rational(rng));
    return MetaMeasure(space, Backend::Exact, std::move(atoms));
}

MapTable random_map(SplitMix64& rng, const SpacePtr& source, const SpacePtr& target) {
    std::vector<std::pair<std::string, std::string>> assignment;
    for (std::size_t i = 0; i < source->size(); ++i)
        assignment.emplace_back(source->point(i).label,
                                target->point(rng.below(target->size())).label);
    return MapTable(source, target, assignment);
}

Matrix random_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols, long bound) {
    Matrix m(rows, cols, Backend::Exact);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = Scalar::exact_int(rng.range(-bound, bound));
    return m;
}

Matrix random_invertible(SplitMix64& rng, std::size_t n) {
    // L U with unit diagonals stays invertible by construction
    Matrix l = Matrix::identity(n, Backend::Exact);
    Matrix u = Matrix::identity(n, Backend::Exact);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            l.at(i, j) = Scalar::exact_int(rng.range(-2, 2));
            u.at(j, i) = Scalar::exact_int(rng.range(-2, 2));
        }
    for (std::size_t i = 0; i < n; ++i) {
        long d = rng.range(1, 3);
        if (rng.below(2)) d = -d;
        u.at(i, i) = Scalar::exact_int(d);
    }
    return l * u;
}

PairedSpace random_paired_space(SplitMix64& rng, std::size_t max_dim, const std::string& name) {
    std::size_t n = 1 + rng.below(max_dim);
    return PairedSpace(name, random_invertible(rng, n));
}

PairedMap random_paired_map(SplitMix64& rng, const PairedSpace& source,
                            const PairedSpace& target) {
    return make_paired_map(source, target, random_matrix(rng, target.dim(), source.dim()));
}

Matrix random_vector(SplitMix64& rng, std::size_t n) {
    Matrix v(n, 1, Backend::Exact);
    for (std::size_t i = 0; i < n; ++i) v.at(i, 0) = random_rational(rng, 5, 5);
    return v;
}

} // namespace finmon
