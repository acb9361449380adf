#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "beablesim/boundary.hpp"

namespace beablesim {

/// Conditional-expectation energy density at one spacetime point, with the
/// per-source breakdown and the posterior over branches still consistent
/// with the final data visible from that point.
struct BeableSample {
    Event y;
    double total = 0.0;
    std::vector<double> contributions;  // systems first, then photons
    std::vector<int> consistent;        // branch indices into the ensemble
    std::vector<double> posterior;      // aligned with `consistent`, sums to 1
};

/// Beable samples over a spacetime grid, stored per channel. Row i is the
/// time index, column j the position index.
struct BeableField {
    GridSpec grid;
    std::vector<std::string> source_names;  // systems first, then photons
    Eigen::ArrayXXd total;
    std::vector<Eigen::ArrayXXd> per_source;
    Eigen::ArrayXXi n_consistent;
};

enum class EvalPolicy { Sequential, Parallel };

/// Cell-integrated rendering of a point source at a query position: a
/// one-cell top-hat carrying the full energy when sigma == 0, otherwise a
/// Gaussian of width sigma integrated over the cell. Conditioning never uses
/// this profile; it is a rendering of the underlying delta function.
double rendered_density(double x, double source_pos, double energy, double sigma,
                        double cell_dx, double tol_pos);

/// The recipe at a point: posterior-weighted branch-local densities, with
/// the posterior restricted to branches consistent with the outcome data
/// strictly outside the future light cone of y.
BeableSample beable_at(const Event& y, const FinalOutcome& outcome, const Scenario& s);
BeableSample beable_at(const Event& y, const FinalOutcome& outcome,
                       const BranchEnsemble& ensemble, const Scenario& s);

/// The named photon's contribution at each of the given points.
std::vector<double> ray_beable(int photon_id, const std::vector<Event>& ray_points,
                               const FinalOutcome& outcome, const Scenario& s);

/// beable_at over every grid point. Parallel evaluation is bit-identical to
/// sequential: cells are independent and evaluated by identical code.
BeableField compute_field(const Scenario& s, const FinalOutcome& outcome,
                          EvalPolicy policy = EvalPolicy::Parallel);

/// Largest absolute difference over the total and per-source channels.
double max_abs_diff(const BeableField& a, const BeableField& b);

struct SweepReport {
    std::vector<double> final_times;
    struct Pair {
        double t_a;
        double t_b;
        double deviation;
    };
    std::vector<Pair> pairs;
    double max_deviation = 0.0;
};

/// Recomputes the field over the subgrid for each final time, holding the
/// outcome branch fixed, and reports pairwise deviations. Every final time
/// must exceed the interaction horizon and the subgrid must end at or before
/// the smallest of them.
SweepReport sweep_final_time(const Scenario& s, const std::string& branch_label,
                             const std::vector<double>& final_times,
                             const GridSpec& subgrid);

double asymptotic_check(const Scenario& s, const std::string& branch_label,
                        const std::vector<double>& final_times, const GridSpec& subgrid);

}  // namespace beablesim
