#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace beablesim {

/// Uniform spacetime grid, inclusive of both bounds in each direction.
struct GridSpec {
    double t_min = 0.0;
    double t_max = 0.0;
    int nt = 0;
    double x_min = 0.0;
    double x_max = 0.0;
    int nx = 0;

    double dt() const { return nt > 1 ? (t_max - t_min) / (nt - 1) : 0.0; }
    double dx() const { return nx > 1 ? (x_max - x_min) / (nx - 1) : 0.0; }
    double time_at(int i) const { return t_min + dt() * i; }
    double x_at(int j) const { return x_min + dx() * j; }
};

/// One localized component of a massive system's initial superposition.
/// Only |amplitude|^2 enters the dynamics; the phase is stored but unused.
struct Component {
    double x = 0.0;
    std::complex<double> amplitude{1.0, 0.0};
    double prob() const { return std::norm(amplitude); }
};

/// A massive system with H = 0: its components never move. sigma is a
/// display width for rendered profiles only (0 = one grid cell top-hat).
struct MassiveSystem {
    double mass = 1.0;
    double sigma = 0.0;
    std::vector<Component> components;
};

/// A pointlike lightlike excitation travelling at |dx/dt| = 1.
struct Photon {
    double x0 = 0.0;
    int dir = +1;
    double energy = 1.0;
};

struct Tolerances {
    double pos = 1e-9;
    double norm = 1e-9;
    double causal = 1e-9;
};

struct Scenario {
    std::vector<MassiveSystem> systems;
    std::vector<Photon> photons;
    double final_time = 0.0;  // the hypersurface t = T carrying the final data
    GridSpec grid;
    std::uint64_t seed = 0;
    Tolerances tol;

    int source_count() const {
        return static_cast<int>(systems.size() + photons.size());
    }
};

/// One term of the global superposition: a choice of localized component for
/// every system. All photon trajectories are determined by the choice.
struct Branch {
    std::vector<int> choice;  // component index per system, in system order
    double weight = 1.0;      // product of |amplitude|^2 over the choice
    std::string label;        // 1-based component indices, comma separated
};

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;
    bool ok() const { return violations.empty(); }
};

/// Structural checks plus, when the structure is sound, per-branch ray
/// tracing checks (final time after every interaction, trapped photons,
/// near-coincident cross-branch deposits). Violations are data, not errors.
ValidationReport validate(const Scenario& s);

/// Cartesian product of component choices across systems, in a deterministic
/// canonical order (first system is the most significant digit). A scenario
/// without systems yields a single empty branch of weight 1.
std::vector<Branch> enumerate_branches(const Scenario& s);

/// Position occupied by a system in a given branch.
double occupied_position(const Scenario& s, const Branch& b, int system_index);

std::string branch_label(const std::vector<int>& choice);

}  // namespace beablesim
