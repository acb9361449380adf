#include "beablesim/raytrace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace beablesim {

TrappedPhotonError::TrappedPhotonError(int photon_id, std::string branch_label,
                                       long max_bounces)
    : std::runtime_error("trapped photon " + std::to_string(photon_id) + " in branch " +
                         branch_label + ": exceeded " + std::to_string(max_bounces) +
                         " bounces before the final time"),
      photon_id_(photon_id),
      branch_label_(std::move(branch_label)) {}

namespace {

std::vector<double> occupied_positions(const Branch& branch, const Scenario& s) {
    std::vector<double> pos;
    pos.reserve(s.systems.size());
    for (std::size_t i = 0; i < s.systems.size(); ++i) {
        pos.push_back(s.systems[i].components[branch.choice[i]].x);
    }
    return pos;
}

// Nearest occupied position strictly ahead of x in direction dir.
bool next_target(const std::vector<double>& occupied, double x, int dir, double tol_pos,
                 double* target) {
    double best = std::numeric_limits<double>::infinity();
    bool found = false;
    for (double p : occupied) {
        const double d = (p - x) * dir;
        if (d > tol_pos && d < best) {
            best = d;
            *target = p;
            found = true;
        }
    }
    return found;
}

bool on_occupied_position(const std::vector<double>& occupied, double x, double tol_pos) {
    for (double p : occupied) {
        if (std::abs(p - x) <= tol_pos) return true;
    }
    return false;
}

}  // namespace

Trajectory trace(const Photon& p, int photon_id, const Branch& branch, const Scenario& s,
                 long max_bounces) {
    const std::vector<double> occupied = occupied_positions(branch, s);
    const double T = s.final_time;

    Trajectory traj;
    traj.photon_id = photon_id;
    traj.branch_label = branch.label;
    traj.t_end = T;

    double t = 0.0;
    double x = p.x0;
    int dir = p.dir;
    if (on_occupied_position(occupied, x, s.tol.pos)) {
        traj.bounces.push_back(Event{0.0, x});
        dir = -dir;
    }
    traj.segments.push_back(Segment{t, x, dir});

    long n = 0;
    for (;;) {
        double target = 0.0;
        if (!next_target(occupied, x, dir, s.tol.pos, &target)) break;
        const double arrival = t + (target - x) * dir;
        if (arrival >= T) break;  // no reversal at or beyond the final surface
        if (++n > max_bounces) {
            throw TrappedPhotonError(photon_id, branch.label, max_bounces);
        }
        t = arrival;
        x = target;
        dir = -dir;
        traj.bounces.push_back(Event{t, x});
        traj.segments.push_back(Segment{t, x, dir});
    }
    return traj;
}

std::vector<Event> bounce_events_unbounded(const Photon& p, int photon_id,
                                           const Branch& branch, const Scenario& s,
                                           long max_bounces) {
    const std::vector<double> occupied = occupied_positions(branch, s);
    std::vector<Event> bounces;

    double t = 0.0;
    double x = p.x0;
    int dir = p.dir;
    if (on_occupied_position(occupied, x, s.tol.pos)) {
        bounces.push_back(Event{0.0, x});
        dir = -dir;
    }
    long n = 0;
    for (;;) {
        double target = 0.0;
        if (!next_target(occupied, x, dir, s.tol.pos, &target)) break;
        if (++n > max_bounces) {
            throw TrappedPhotonError(photon_id, branch.label, max_bounces);
        }
        t += (target - x) * dir;
        x = target;
        dir = -dir;
        bounces.push_back(Event{t, x});
    }
    return bounces;
}

double interaction_horizon(const Scenario& s, long max_bounces) {
    double horizon = 0.0;
    for (const Branch& b : enumerate_branches(s)) {
        for (std::size_t j = 0; j < s.photons.size(); ++j) {
            const auto bounces =
                bounce_events_unbounded(s.photons[j], static_cast<int>(j), b, s, max_bounces);
            if (!bounces.empty()) horizon = std::max(horizon, bounces.back().t);
        }
    }
    return horizon;
}

double position_at(const Trajectory& traj, double t) {
    constexpr double kSlack = 1e-12;
    if (!(t >= -kSlack && t <= traj.t_end + kSlack)) {
        throw std::invalid_argument("position_at: time " + std::to_string(t) +
                                    " outside [0, " + std::to_string(traj.t_end) + "]");
    }
    t = std::clamp(t, 0.0, traj.t_end);
    auto it = std::upper_bound(traj.segments.begin(), traj.segments.end(), t,
                               [](double value, const Segment& seg) { return value < seg.t_start; });
    const Segment& seg = *(it - 1);  // segments always start at t = 0
    return seg.x_start + seg.dir * (t - seg.t_start);
}

}  // namespace beablesim
