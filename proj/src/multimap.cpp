#include "setpoint/multimap.hpp"

#include <algorithm>

namespace setpoint {

MultiMap::MultiMap(SpacePtr space, PointSet domain, std::vector<PointSet> values)
    : space_(std::move(space)), domain_(std::move(domain)), values_(std::move(values)) {
    if (!space_) throw ValidationError("multimap requires a space");
    if (values_.size() != domain_.size()) {
        throw ValidationError("multimap has " + std::to_string(values_.size()) +
                              " value sets for a domain of size " +
                              std::to_string(domain_.size()));
    }
    position_.assign(static_cast<std::size_t>(space_->size()), -1);
    for (std::size_t k = 0; k < domain_.size(); ++k) {
        position_[static_cast<std::size_t>(domain_[k])] = static_cast<int>(k);
        for (int t : values_[k]) {
            if (t < 0 || t >= space_->size()) {
                throw ValidationError("value index out of universe: " + std::to_string(t));
            }
        }
    }
}

bool MultiMap::in_domain(int x) const {
    return x >= 0 && x < space_->size() && position_[static_cast<std::size_t>(x)] >= 0;
}

const PointSet& MultiMap::value(int x) const {
    if (!in_domain(x)) {
        throw ValidationError("point " + std::to_string(x) + " is outside the map domain");
    }
    return values_[static_cast<std::size_t>(position_[static_cast<std::size_t>(x)])];
}

bool MultiMap::is_self_map() const {
    for (std::size_t k = 0; k < domain_.size(); ++k) {
        for (int t : values_[k]) {
            if (!in_domain(t)) return false;
        }
    }
    return true;
}

double gap(const MultiMap& map, int x) { return point_set_dist(map.space(), x, map.value(x)); }

std::vector<int> fixed_points(const MultiMap& map) {
    std::vector<int> out;
    for (int x : map.domain()) {
        if (map.value(x).contains(x)) out.push_back(x);
    }
    return out;
}

double lipschitz_estimate(const MultiMap& map) {
    const PointSet& dom = map.domain();
    if (dom.size() < 2) return 0.0;
    double best = 0.0;
    for (std::size_t a = 0; a < dom.size(); ++a) {
        for (std::size_t b = a + 1; b < dom.size(); ++b) {
            const double dd = map.space().dist(dom[a], dom[b]);
            const double dv = hausdorff(map.space(), map.value(dom[a]), map.value(dom[b]));
            best = std::max(best, dv / dd);
        }
    }
    return best;
}

std::vector<GraphPair> graph(const MultiMap& map) {
    std::vector<GraphPair> out;
    for (int x : map.domain()) {
        for (int t : map.value(x)) out.push_back({x, t});
    }
    return out;
}

}  // namespace setpoint
