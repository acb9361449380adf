#pragma once

#include <string>

namespace beablesim {

/// A point (t, x) in 1+1-dimensional Minkowski coordinates, c = 1.
/// All geometry lives in one fixed global frame (the scenario's coordinates).
struct Event {
    double t = 0.0;
    double x = 0.0;
};

/// Classification of an ordered event pair: where the second event lies
/// relative to the light cone of the first.
enum class CausalRelation {
    TimelikeFuture,
    LightlikeFuture,
    Spacelike,
    LightlikePast,
    TimelikePast,
    Coincident,
};

std::string to_string(CausalRelation r);

/// Half-width of the band around the light cone that is classified lightlike.
/// Scenario files may override it via tolerances.tol_causal.
inline constexpr double kDefaultCausalTol = 1e-9;

/// Exactly one classification per ordered pair; swapping the arguments maps
/// Future <-> Past and fixes Spacelike and Coincident.
/// Throws std::invalid_argument on non-finite coordinates.
CausalRelation causal_relation(const Event& a, const Event& b,
                               double tol_causal = kDefaultCausalTol);

/// The part of the hypersurface {t = T} strictly outside the future light
/// cone of an interior event y: {x' : |x' - center| > radius} with
/// center = y.x and radius = T - y.t. The region is open; points at exactly
/// lightlike separation belong to its excluded closed complement.
struct OutsideFlcRegion {
    double center = 0.0;
    double radius = 0.0;
};

/// Throws std::invalid_argument if y.t > final_time.
OutsideFlcRegion outside_flc_region(const Event& y, double final_time);

/// Strict containment. Positions within tol_causal of the cone count as
/// lightlike and are excluded.
bool contains(const OutsideFlcRegion& region, double x,
              double tol_causal = kDefaultCausalTol);

}  // namespace beablesim
