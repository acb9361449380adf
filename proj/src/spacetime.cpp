#include "beablesim/spacetime.hpp"

#include <cmath>
#include <stdexcept>

namespace beablesim {

std::string to_string(CausalRelation r) {
    switch (r) {
        case CausalRelation::TimelikeFuture: return "timelike-future";
        case CausalRelation::LightlikeFuture: return "lightlike-future";
        case CausalRelation::Spacelike: return "spacelike";
        case CausalRelation::LightlikePast: return "lightlike-past";
        case CausalRelation::TimelikePast: return "timelike-past";
        case CausalRelation::Coincident: return "coincident";
    }
    return "unknown";
}

CausalRelation causal_relation(const Event& a, const Event& b, double tol_causal) {
    if (!std::isfinite(a.t) || !std::isfinite(a.x) || !std::isfinite(b.t) ||
        !std::isfinite(b.x)) {
        throw std::invalid_argument("causal_relation: non-finite event coordinates");
    }
    const double dt = b.t - a.t;
    const double dx = b.x - a.x;
    const double adt = std::abs(dt);
    const double adx = std::abs(dx);

    if (adt <= tol_causal && adx <= tol_causal) {
        return CausalRelation::Coincident;
    }
    if (std::abs(adx - adt) <= tol_causal) {
        return dt > 0.0 ? CausalRelation::LightlikeFuture : CausalRelation::LightlikePast;
    }
    if (adx > adt) {
        return CausalRelation::Spacelike;
    }
    return dt > 0.0 ? CausalRelation::TimelikeFuture : CausalRelation::TimelikePast;
}

OutsideFlcRegion outside_flc_region(const Event& y, double final_time) {
    if (!std::isfinite(y.t) || !std::isfinite(y.x) || !std::isfinite(final_time)) {
        throw std::invalid_argument("outside_flc_region: non-finite input");
    }
    if (y.t > final_time) {
        throw std::invalid_argument("outside_flc_region: event lies after the final hypersurface");
    }
    return OutsideFlcRegion{y.x, final_time - y.t};
}

bool contains(const OutsideFlcRegion& region, double x, double tol_causal) {
    return std::abs(x - region.center) - region.radius > tol_causal;
}

}  // namespace beablesim
