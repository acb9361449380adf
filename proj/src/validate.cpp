#include <algorithm>
#include <cmath>
#include <sstream>

#include "beablesim/boundary.hpp"
#include "beablesim/scenario.hpp"

namespace beablesim {

namespace {

constexpr int kMaxBranchCount = 4096;

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void check_structure(const Scenario& s, ValidationReport& report) {
    auto violation = [&](const std::string& msg) { report.violations.push_back(msg); };

    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(s.final_time) || !(s.final_time > 0.0)) {
        violation("T: final time must be finite and > 0");
    }

    for (std::size_t i = 0; i < s.systems.size(); ++i) {
        const MassiveSystem& sys = s.systems[i];
        const std::string tag = "system " + std::to_string(i);
        if (!finite(sys.mass) || !(sys.mass > 0.0)) {
            violation("system: " + tag + " mass must be > 0");
        }
        if (!finite(sys.sigma) || sys.sigma < 0.0) {
            violation("system: " + tag + " sigma must be >= 0");
        }
        if (sys.components.empty()) {
            violation("system: " + tag + " needs at least one component");
            continue;
        }
        double norm_sum = 0.0;
        bool coords_ok = true;
        for (const Component& c : sys.components) {
            if (!finite(c.x) || !finite(c.amplitude.real()) || !finite(c.amplitude.imag())) {
                violation("finite: " + tag + " has non-finite component data");
                coords_ok = false;
                break;
            }
            norm_sum += c.prob();
        }
        if (!coords_ok) continue;
        if (std::abs(norm_sum - 1.0) > s.tol.norm) {
            violation("norm: " + tag + " amplitude norms sum to " + fmt(norm_sum) +
                      ", expected 1 within " + fmt(s.tol.norm));
        }
        const double min_sep = std::max(4.0 * sys.sigma, s.tol.pos);
        for (std::size_t a = 0; a < sys.components.size(); ++a) {
            for (std::size_t b = a + 1; b < sys.components.size(); ++b) {
                if (std::abs(sys.components[a].x - sys.components[b].x) <= min_sep) {
                    violation("component-overlap: " + tag + " components " +
                              std::to_string(a) + "," + std::to_string(b) +
                              " closer than " + fmt(min_sep));
                }
            }
        }
    }

    // Coincident occupied positions across systems make the bounce rule
    // ambiguous; forbidden rather than guessed at.
    for (std::size_t i = 0; i < s.systems.size(); ++i) {
        for (std::size_t j = i + 1; j < s.systems.size(); ++j) {
            for (const Component& a : s.systems[i].components) {
                for (const Component& b : s.systems[j].components) {
                    if (std::abs(a.x - b.x) <= s.tol.pos) {
                        violation("cross-system-overlap: systems " + std::to_string(i) + "," +
                                  std::to_string(j) + " both occupy x=" + fmt(a.x));
                    }
                }
            }
        }
    }

    for (std::size_t j = 0; j < s.photons.size(); ++j) {
        const Photon& p = s.photons[j];
        const std::string tag = "photon " + std::to_string(j);
        if (!finite(p.x0)) violation("finite: " + tag + " x0 is not finite");
        if (p.dir != 1 && p.dir != -1) violation("photon: " + tag + " dir must be +1 or -1");
        if (!finite(p.energy) || !(p.energy > 0.0)) {
            violation("photon: " + tag + " energy must be > 0");
        }
    }

    const GridSpec& g = s.grid;
    if (g.nt < 2 || g.nx < 2) violation("grid: nt and nx must be at least 2");
    if (!finite(g.t_min) || !finite(g.t_max) || !finite(g.x_min) || !finite(g.x_max) ||
        g.t_min > g.t_max || g.x_min >= g.x_max) {
        violation("grid: bounds must be finite with tMin <= tMax and xMin < xMax");
    } else if (g.t_min < 0.0 || g.t_max > s.final_time) {
        violation("grid: time range [" + fmt(g.t_min) + ", " + fmt(g.t_max) +
                  "] must lie within [0, T=" + fmt(s.final_time) + "]");
    }

    double branch_count = 1.0;
    for (const MassiveSystem& sys : s.systems) {
        branch_count *= static_cast<double>(std::max<std::size_t>(sys.components.size(), 1));
    }
    if (branch_count > kMaxBranchCount) {
        violation("branch-count: " + fmt(branch_count) + " branches exceed the limit of " +
                  std::to_string(kMaxBranchCount));
    }
}

void check_dynamics(const Scenario& s, ValidationReport& report) {
    const std::vector<Branch> branches = enumerate_branches(s);

    std::vector<std::vector<Deposit>> deposits_per_branch;
    deposits_per_branch.reserve(branches.size());
    for (const Branch& b : branches) {
        bool traceable = true;
        for (std::size_t j = 0; j < s.photons.size(); ++j) {
            try {
                const auto bounces =
                    bounce_events_unbounded(s.photons[j], static_cast<int>(j), b, s);
                if (!bounces.empty() && bounces.back().t >= s.final_time) {
                    report.violations.push_back(
                        "T-too-small: branch " + b.label + " photon " + std::to_string(j) +
                        " interacts at t=" + fmt(bounces.back().t) +
                        ", not strictly before T=" + fmt(s.final_time));
                }
            } catch (const TrappedPhotonError& err) {
                report.violations.push_back(std::string("trapped-photon: ") + err.what());
                traceable = false;
            }
        }
        if (traceable && report.violations.empty()) {
            deposits_per_branch.push_back(final_deposits(b, s));
        }
    }

    // Cross-branch deposits that are close but not identified under the
    // position quantization would make the restricted-data comparison
    // knife-edged; surface them as warnings.
    if (deposits_per_branch.size() == branches.size()) {
        for (std::size_t a = 0; a < branches.size(); ++a) {
            for (std::size_t b = a + 1; b < branches.size(); ++b) {
                for (const Deposit& da : deposits_per_branch[a]) {
                    for (const Deposit& db : deposits_per_branch[b]) {
                        const double gap = std::abs(da.x - db.x);
                        if (gap <= 10.0 * s.tol.pos &&
                            quantize(da.x, s.tol.pos) != quantize(db.x, s.tol.pos)) {
                            report.warnings.push_back(
                                "deposit-proximity: branches " + branches[a].label + "," +
                                branches[b].label + " deposits at x=" + fmt(da.x) + " and x=" +
                                fmt(db.x) + " are within 10*tol_pos but not identified");
                        }
                    }
                }
            }
        }
    }
}

}  // namespace

ValidationReport validate(const Scenario& s) {
    ValidationReport report;
    check_structure(s, report);
    if (report.ok()) {
        check_dynamics(s, report);
    }
    return report;
}

}  // namespace beablesim
