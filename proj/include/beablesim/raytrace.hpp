#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "beablesim/scenario.hpp"
#include "beablesim/spacetime.hpp"

namespace beablesim {

inline constexpr long kDefaultMaxBounces = 1'000'000;

/// Raised when a photon exceeds the reversal budget before reaching the
/// final hypersurface: in 1+1 dimensions perfect bounces can confine a
/// photon between two occupied positions forever.
class TrappedPhotonError : public std::runtime_error {
public:
    TrappedPhotonError(int photon_id, std::string branch_label, long max_bounces);
    int photon_id() const { return photon_id_; }
    const std::string& branch_label() const { return branch_label_; }

private:
    int photon_id_;
    std::string branch_label_;
};

/// Lightlike segment starting at (t_start, x_start) with slope dir; it ends
/// where the next segment begins, or at the final time.
struct Segment {
    double t_start;
    double x_start;
    int dir;
};

/// Piecewise-lightlike path of one photon in one branch, from t = 0 to
/// t = t_end (the scenario's final time). Consecutive segments join
/// continuously and every bounce lies at an occupied system position.
struct Trajectory {
    int photon_id = -1;
    std::string branch_label;
    std::vector<Segment> segments;
    std::vector<Event> bounces;
    double t_end = 0.0;
};

/// Advance from (0, x0, dir) to the nearest occupied system position in the
/// direction of travel, reverse there, and repeat until t = T. Positions not
/// occupied in this branch are passed through freely. A photon starting
/// exactly on an occupied position bounces immediately at t = 0.
Trajectory trace(const Photon& p, int photon_id, const Branch& branch,
                 const Scenario& s, long max_bounces = kDefaultMaxBounces);

/// Bounce events ignoring the final-time cutoff, until the photon escapes
/// every occupied position. Used to locate the interaction horizon.
std::vector<Event> bounce_events_unbounded(const Photon& p, int photon_id,
                                           const Branch& branch, const Scenario& s,
                                           long max_bounces = kDefaultMaxBounces);

/// Latest bounce time over all branches and photons (0 when nothing bounces).
double interaction_horizon(const Scenario& s, long max_bounces = kDefaultMaxBounces);

/// Piecewise-linear evaluation; at an exact bounce time returns the bounce
/// position. Throws std::invalid_argument outside [0, t_end].
double position_at(const Trajectory& traj, double t);

}  // namespace beablesim
