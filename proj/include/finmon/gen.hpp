#pragma once

#include "finmon/chu.hpp"
#include "finmon/measure.hpp"
#include "finmon/rng.hpp"

namespace finmon {

// Seeded random instances for the law suites. Exact backend throughout.

Scalar random_rational(SplitMix64& rng, long max_num = 9, long max_den = 9);
Scalar random_gaussian_rational(SplitMix64& rng);

SpacePtr random_space(SplitMix64& rng, std::size_t max_points, const std::string& name);
// Space whose points carry random rational coordinates in [-2, 2]^dim.
SpacePtr random_coord_space(SplitMix64& rng, std::size_t max_points, std::size_t dim,
                            const std::string& name);

Measure random_measure(SplitMix64& rng, const SpacePtr& space,
                       FieldTag field = FieldTag::Real);
Measure random_probability(SplitMix64& rng, const SpacePtr& space);
MetaMeasure random_meta(SplitMix64& rng, const SpacePtr& space, std::size_t max_inner = 4);

MapTable random_map(SplitMix64& rng, const SpacePtr& source, const SpacePtr& target);

Matrix random_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols, long bound = 3);
Matrix random_invertible(SplitMix64& rng, std::size_t n);
PairedSpace random_paired_space(SplitMix64& rng, std::size_t max_dim, const std::string& name);
PairedMap random_paired_map(SplitMix64& rng, const PairedSpace& source,
                            const PairedSpace& target);
Matrix random_vector(SplitMix64& rng, std::size_t n);

} // namespace finmon
