#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "finmon/scalar.hpp"

namespace finmon {

struct Point {
    std::string label;
    std::optional<std::vector<Scalar>> coords; // real scalars, uniform dim per space
};

// Labeled finite carrier. Point order is canonical and fixed at construction.
class FiniteSpace {
public:
    FiniteSpace(std::string name, std::vector<Point> points);

    const std::string& name() const { return name_; }
    std::size_t size() const { return points_.size(); }
    const Point& point(std::size_t i) const { return points_[i]; }
    const std::vector<Point>& points() const { return points_; }

    std::optional<std::size_t> find(const std::string& label) const;
    std::size_t index_of(const std::string& label) const; // throws UnknownLabel

    // Coordinate dimension shared by all points, if coords are present.
    std::optional<std::size_t> coord_dim() const { return coord_dim_; }

    bool same_structure(const FiniteSpace& other) const;

private:
    std::string name_;
    std::vector<Point> points_;
    std::unordered_map<std::string, std::size_t> index_;
    std::optional<std::size_t> coord_dim_;
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;

SpacePtr make_space(std::string name, std::vector<Point> points);

// Canonical product: labels "(x,y)", order lexicographic in the factors'
// canonical orders, coords concatenated when both factors carry them.
SpacePtr product_space(const SpacePtr& x, const SpacePtr& y);

std::string product_label(const std::string& x, const std::string& y);

// Total map between finite spaces, by point index.
class MapTable {
public:
    MapTable(SpacePtr source, SpacePtr target,
             const std::vector<std::pair<std::string, std::string>>& assignment);
    static MapTable identity(const SpacePtr& space);
    static MapTable constant(const SpacePtr& source, const SpacePtr& target,
                             const std::string& target_label);
    // Swap map (X x Y) -> (Y x X) between canonical product spaces.
    static MapTable swap(const SpacePtr& x, const SpacePtr& y);

    const SpacePtr& source() const { return source_; }
    const SpacePtr& target() const { return target_; }
    std::size_t apply(std::size_t source_index) const { return image_[source_index]; }

    MapTable compose_after(const MapTable& first) const; // this ∘ first

private:
    MapTable(SpacePtr source, SpacePtr target, std::vector<std::size_t> image)
        : source_(std::move(source)), target_(std::move(target)), image_(std::move(image)) {}
    SpacePtr source_;
    SpacePtr target_;
    std::vector<std::size_t> image_;
};

} // namespace finmon
