#include "beablesim/beables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace beablesim {

namespace {

constexpr double kTimeSlack = 1e-12;

void check_time_range(const Event& y, const Scenario& s) {
    if (!std::isfinite(y.t) || !std::isfinite(y.x)) {
        throw std::invalid_argument("beable_at: non-finite event coordinates");
    }
    if (y.t < -kTimeSlack || y.t > s.final_time + kTimeSlack) {
        throw std::invalid_argument("beable_at: time " + std::to_string(y.t) +
                                    " outside [0, " + std::to_string(s.final_time) + "]");
    }
}

int outcome_index(const BranchEnsemble& e, const FinalOutcome& outcome) {
    const int idx = e.index_of(outcome.branch.label);
    if (idx < 0) {
        throw std::invalid_argument("outcome branch '" + outcome.branch.label +
                                    "' does not belong to this scenario");
    }
    return idx;
}

// Consistent set and posterior at one point. `mask` and `posterior` are
// caller-provided scratch of ensemble size; returns the set size.
int eval_consistent(const Scenario& s, const BranchEnsemble& e, int outcome_idx,
                    double t, double x, char* mask, double* posterior) {
    const OutsideFlcRegion region{x, s.final_time - t};
    const auto& outcome_key = e.sorted_deposits[outcome_idx];
    int count = 0;
    double weight_sum = 0.0;
    for (std::size_t b = 0; b < e.branches.size(); ++b) {
        const bool ok =
            restricted_keys_equal(e.sorted_deposits[b], outcome_key, region, s.tol.causal);
        mask[b] = ok ? 1 : 0;
        if (ok) {
            ++count;
            weight_sum += e.branches[b].weight;
        }
    }
    if (count == 0 || !(weight_sum > 0.0)) {
        throw std::logic_error("beable_at: empty consistent set at t=" + std::to_string(t) +
                               " x=" + std::to_string(x));
    }
    for (std::size_t b = 0; b < e.branches.size(); ++b) {
        posterior[b] = mask[b] ? e.branches[b].weight / weight_sum : 0.0;
    }
    return count;
}

// Contributions of every source at one point, given the posterior scratch.
void eval_contributions(const Scenario& s, const BranchEnsemble& e, double t, double x,
                        const char* mask, const double* posterior, double* contributions) {
    const double dx = s.grid.dx();
    const int nsys = static_cast<int>(s.systems.size());
    for (int i = 0; i < nsys; ++i) {
        const MassiveSystem& sys = s.systems[i];
        double c = 0.0;
        for (std::size_t b = 0; b < e.branches.size(); ++b) {
            if (!mask[b]) continue;
            const double pos = sys.components[e.branches[b].choice[i]].x;
            c += posterior[b] * rendered_density(x, pos, sys.mass, sys.sigma, dx, s.tol.pos);
        }
        contributions[i] = c;
    }
    for (std::size_t j = 0; j < s.photons.size(); ++j) {
        double c = 0.0;
        for (std::size_t b = 0; b < e.branches.size(); ++b) {
            if (!mask[b]) continue;
            const double pos = position_at(e.trajectories[b][j], t);
            c += posterior[b] *
                 rendered_density(x, pos, s.photons[j].energy, 0.0, dx, s.tol.pos);
        }
        contributions[nsys + static_cast<int>(j)] = c;
    }
}

std::vector<std::string> source_names(const Scenario& s) {
    std::vector<std::string> names;
    names.reserve(s.source_count());
    for (std::size_t i = 0; i < s.systems.size(); ++i) {
        names.push_back("system" + std::to_string(i));
    }
    for (std::size_t j = 0; j < s.photons.size(); ++j) {
        names.push_back("photon" + std::to_string(j));
    }
    return names;
}

}  // namespace

double rendered_density(double x, double source_pos, double energy, double sigma,
                        double cell_dx, double tol_pos) {
    const double d = x - source_pos;
    const double h = 0.5 * cell_dx;
    if (sigma > 0.0) {
        const double inv = 1.0 / (sigma * std::sqrt(2.0));
        return 0.5 * energy * (std::erf((d + h) * inv) - std::erf((d - h) * inv));
    }
    // Top-hat with a tolerance band so that a source exactly on a cell
    // boundary renders into both adjacent cells, symmetrically.
    return std::abs(d) <= h + tol_pos ? energy : 0.0;
}

BeableSample beable_at(const Event& y, const FinalOutcome& outcome, const Scenario& s) {
    return beable_at(y, outcome, BranchEnsemble::build(s), s);
}

BeableSample beable_at(const Event& y, const FinalOutcome& outcome,
                       const BranchEnsemble& ensemble, const Scenario& s) {
    check_time_range(y, s);
    const int oidx = outcome_index(ensemble, outcome);
    const std::size_t nb = ensemble.branches.size();
    std::vector<char> mask(nb);
    std::vector<double> posterior(nb);
    eval_consistent(s, ensemble, oidx, y.t, y.x, mask.data(), posterior.data());

    BeableSample sample;
    sample.y = y;
    sample.contributions.resize(s.source_count());
    eval_contributions(s, ensemble, y.t, y.x, mask.data(), posterior.data(),
                       sample.contributions.data());
    for (double c : sample.contributions) sample.total += c;
    for (std::size_t b = 0; b < nb; ++b) {
        if (mask[b]) {
            sample.consistent.push_back(static_cast<int>(b));
            sample.posterior.push_back(posterior[b]);
        }
    }
    return sample;
}

std::vector<double> ray_beable(int photon_id, const std::vector<Event>& ray_points,
                               const FinalOutcome& outcome, const Scenario& s) {
    if (photon_id < 0 || photon_id >= static_cast<int>(s.photons.size())) {
        throw std::invalid_argument("ray_beable: no photon " + std::to_string(photon_id));
    }
    const BranchEnsemble ensemble = BranchEnsemble::build(s);
    const int source = static_cast<int>(s.systems.size()) + photon_id;
    std::vector<double> out;
    out.reserve(ray_points.size());
    for (const Event& y : ray_points) {
        out.push_back(beable_at(y, outcome, ensemble, s).contributions[source]);
    }
    return out;
}

BeableField compute_field(const Scenario& s, const FinalOutcome& outcome,
                          EvalPolicy policy) {
    const BranchEnsemble ensemble = BranchEnsemble::build(s);
    const int oidx = outcome_index(ensemble, outcome);
    const GridSpec& g = s.grid;
    const int nsrc = s.source_count();

    BeableField field;
    field.grid = g;
    field.source_names = source_names(s);
    field.total = Eigen::ArrayXXd::Zero(g.nt, g.nx);
    field.per_source.assign(nsrc, Eigen::ArrayXXd::Zero(g.nt, g.nx));
    field.n_consistent = Eigen::ArrayXXi::Zero(g.nt, g.nx);

    const std::size_t nb = ensemble.branches.size();
    auto eval_rows = [&](int row_begin, int row_end) {
        std::vector<char> mask(nb);
        std::vector<double> posterior(nb);
        std::vector<double> contributions(nsrc);
        for (int i = row_begin; i < row_end; ++i) {
            const double t = g.time_at(i);
            for (int j = 0; j < g.nx; ++j) {
                const double x = g.x_at(j);
                const int count = eval_consistent(s, ensemble, oidx, t, x, mask.data(),
                                                  posterior.data());
                eval_contributions(s, ensemble, t, x, mask.data(), posterior.data(),
                                   contributions.data());
                double total = 0.0;
                for (int k = 0; k < nsrc; ++k) {
                    field.per_source[k](i, j) = contributions[k];
                    total += contributions[k];
                }
                field.total(i, j) = total;
                field.n_consistent(i, j) = count;
            }
        }
    };

    int threads = 1;
    if (policy == EvalPolicy::Parallel) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        threads = std::clamp(threads, 1, std::max(1, g.nt));
    }
    if (threads == 1) {
        eval_rows(0, g.nt);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        const int chunk = (g.nt + threads - 1) / threads;
        for (int w = 0; w < threads; ++w) {
            const int begin = w * chunk;
            const int end = std::min(g.nt, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(eval_rows, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    return field;
}

double max_abs_diff(const BeableField& a, const BeableField& b) {
    if (a.total.rows() != b.total.rows() || a.total.cols() != b.total.cols() ||
        a.per_source.size() != b.per_source.size()) {
        throw std::invalid_argument("max_abs_diff: field shapes differ");
    }
    double dev = (a.total - b.total).abs().maxCoeff();
    for (std::size_t k = 0; k < a.per_source.size(); ++k) {
        dev = std::max(dev, (a.per_source[k] - b.per_source[k]).abs().maxCoeff());
    }
    return dev;
}

SweepReport sweep_final_time(const Scenario& s, const std::string& branch_label,
                             const std::vector<double>& final_times,
                             const GridSpec& subgrid) {
    if (final_times.empty()) {
        throw std::invalid_argument("sweep_final_time: empty list of final times");
    }
    const double horizon = interaction_horizon(s);
    double t_min_final = final_times.front();
    for (double T : final_times) {
        if (!(T > horizon)) {
            throw std::invalid_argument("sweep_final_time: final time " + std::to_string(T) +
                                        " does not exceed the interaction horizon " +
                                        std::to_string(horizon));
        }
        t_min_final = std::min(t_min_final, T);
    }
    if (subgrid.t_max > t_min_final) {
        throw std::invalid_argument("sweep_final_time: subgrid extends past the smallest final time");
    }
    if (subgrid.t_min < 0.0 || subgrid.nt < 2 || subgrid.nx < 2) {
        throw std::invalid_argument("sweep_final_time: malformed subgrid");
    }

    std::vector<BeableField> fields;
    fields.reserve(final_times.size());
    for (double T : final_times) {
        Scenario st = s;
        st.final_time = T;
        st.grid = subgrid;
        fields.push_back(compute_field(st, forced_outcome(st, branch_label)));
    }

    SweepReport report;
    report.final_times = final_times;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        for (std::size_t j = i + 1; j < fields.size(); ++j) {
            const double dev = max_abs_diff(fields[i], fields[j]);
            report.pairs.push_back({final_times[i], final_times[j], dev});
            report.max_deviation = std::max(report.max_deviation, dev);
        }
    }
    return report;
}

double asymptotic_check(const Scenario& s, const std::string& branch_label,
                        const std::vector<double>& final_times, const GridSpec& subgrid) {
    return sweep_final_time(s, branch_label, final_times, subgrid).max_deviation;
}

}  // namespace beablesim
