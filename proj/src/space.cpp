#include "finmon/space.hpp"

namespace finmon {

FiniteSpace::FiniteSpace(std::string name, std::vector<Point> points)
    : name_(std::move(name)), points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        auto [it, inserted] = index_.emplace(points_[i].label, i);
        if (!inserted)
            throw DuplicateLabel("duplicate point label '" + points_[i].label +
                                 "' in space '" + name_ + "'");
        if (points_[i].coords) {
            std::size_t d = points_[i].coords->size();
            if (!coord_dim_) coord_dim_ = d;
            if (*coord_dim_ != d)
                throw RaggedCoordinates("point '" + points_[i].label + "' in space '" + name_ +
                                        "' has " + std::to_string(d) + " coordinates, expected " +
                                        std::to_string(*coord_dim_));
            for (const auto& c : *points_[i].coords)
                if (!c.is_real())
                    throw RaggedCoordinates("coordinates must be real (point '" +
                                            points_[i].label + "')");
        }
    }
}

std::optional<std::size_t> FiniteSpace::find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t FiniteSpace::index_of(const std::string& label) const {
    auto i = find(label);
    if (!i) throw UnknownLabel("no point '" + label + "' in space '" + name_ + "'");
    return *i;
}

bool FiniteSpace::same_structure(const FiniteSpace& other) const {
    if (name_ != other.name_ || points_.size() != other.points_.size()) return false;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i].label != other.points_[i].label) return false;
        if (points_[i].coords.has_value() != other.points_[i].coords.has_value()) return false;
        if (points_[i].coords) {
            const auto& a = *points_[i].coords;
            const auto& b = *other.points_[i].coords;
            if (a.size() != b.size()) return false;
            for (std::size_t k = 0; k < a.size(); ++k)
                if (!(a[k] == b[k])) return false;
        }
    }
    return true;
}

SpacePtr make_space(std::string name, std::vector<Point> points) {
    return std::make_shared<FiniteSpace>(std::move(name), std::move(points));
}

std::string product_label(const std::string& x, const std::string& y) {
    return "(" + x + "," + y + ")";
}

SpacePtr product_space(const SpacePtr& x, const SpacePtr& y) {
    std::vector<Point> pts;
    pts.reserve(x->size() * y->size());
    bool coords = x->coord_dim() && y->coord_dim();
    for (std::size_t i = 0; i < x->size(); ++i) {
        for (std::size_t j = 0; j < y->size(); ++j) {
            Point p;
            p.label = product_label(x->point(i).label, y->point(j).label);
            if (coords) {
                std::vector<Scalar> c = *x->point(i).coords;
                const auto& cy = *y->point(j).coords;
                c.insert(c.end(), cy.begin(), cy.end());
                p.coords = std::move(c);
            }
            pts.push_back(std::move(p));
        }
    }
    return make_space(product_label(x->name(), y->name()), std::move(pts));
}

MapTable::MapTable(SpacePtr source, SpacePtr target,
                   const std::vector<std::pair<std::string, std::string>>& assignment)
    : source_(std::move(source)), target_(std::move(target)) {
    // sentinel: a target index can never equal the target's size
    image_.assign(source_->size(), target_->size());
    for (const auto& [from, to] : assignment) {
        std::size_t si = source_->index_of(from);
        image_[si] = target_->index_of(to);
    }
    for (std::size_t i = 0; i < image_.size(); ++i)
        if (image_[i] == target_->size())
            throw UnknownLabel("map is not total: no image for point '" +
                               source_->point(i).label + "'");
}

MapTable MapTable::identity(const SpacePtr& space) {
    std::vector<std::size_t> im(space->size());
    for (std::size_t i = 0; i < im.size(); ++i) im[i] = i;
    return MapTable(space, space, std::move(im));
}

MapTable MapTable::constant(const SpacePtr& source, const SpacePtr& target,
                            const std::string& target_label) {
    std::vector<std::size_t> im(source->size(), target->index_of(target_label));
    return MapTable(source, target, std::move(im));
}

MapTable MapTable::swap(const SpacePtr& x, const SpacePtr& y) {
    SpacePtr xy = product_space(x, y);
    SpacePtr yx = product_space(y, x);
    std::vector<std::size_t> im(xy->size());
    std::size_t ny = y->size(), nx = x->size();
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j)
            im[i * ny + j] = j * nx + i;
    return MapTable(xy, yx, std::move(im));
}

MapTable MapTable::compose_after(const MapTable& first) const {
    if (!first.target_->same_structure(*source_))
        throw SpaceMismatch("composition mismatch: '" + first.target_->name() +
                            "' vs '" + source_->name() + "'");
    std::vector<std::size_t> im(first.source_->size());
    for (std::size_t i = 0; i < im.size(); ++i) im[i] = image_[first.image_[i]];
    return MapTable(first.source_, target_, std::move(im));
}

} // namespace finmon
