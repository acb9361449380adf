#include "beablesim/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace beablesim {

namespace {

// splitmix64 finalizer: one well-distributed u64 per seed, identical on
// every platform (std::uniform_real_distribution is not).
std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double unit_uniform(std::uint64_t seed) {
    return static_cast<double>(splitmix64(seed) >> 11) * 0x1.0p-53;
}

}  // namespace

std::int64_t quantize(double value, double tol) {
    const double q = value / tol;
    constexpr double kLimit = 9.0e18;
    return std::llround(std::clamp(q, -kLimit, kLimit));
}

std::vector<Deposit> final_deposits(const Branch& branch, const Scenario& s) {
    std::vector<Deposit> out;
    out.reserve(s.photons.size() + s.systems.size());
    for (std::size_t j = 0; j < s.photons.size(); ++j) {
        const Trajectory traj = trace(s.photons[j], static_cast<int>(j), branch, s);
        out.push_back(Deposit{position_at(traj, s.final_time), s.photons[j].energy,
                              SourceKind::Photon, static_cast<int>(j), -1});
    }
    for (std::size_t i = 0; i < s.systems.size(); ++i) {
        out.push_back(Deposit{occupied_position(s, branch, static_cast<int>(i)),
                              s.systems[i].mass, SourceKind::System, static_cast<int>(i),
                              branch.choice[i]});
    }
    return out;
}

FinalOutcome sample_outcome(const Scenario& s, std::uint64_t seed) {
    const std::vector<Branch> branches = enumerate_branches(s);
    const double u = unit_uniform(seed);
    double cumulative = 0.0;
    std::size_t pick = branches.size() - 1;  // guard against rounding in the sum
    for (std::size_t i = 0; i < branches.size(); ++i) {
        cumulative += branches[i].weight;
        if (u < cumulative) {
            pick = i;
            break;
        }
    }
    const Branch& b = branches[pick];
    return FinalOutcome{b, final_deposits(b, s), b.weight};
}

FinalOutcome forced_outcome(const Scenario& s, const std::string& branch_label) {
    for (const Branch& b : enumerate_branches(s)) {
        if (b.label == branch_label) {
            if (!(b.weight > 0.0)) {
                throw std::invalid_argument("forced_outcome: branch " + branch_label +
                                            " has zero Born weight");
            }
            return FinalOutcome{b, final_deposits(b, s), b.weight};
        }
    }
    throw std::invalid_argument("forced_outcome: no branch labelled '" + branch_label + "'");
}

RestrictedDataKey restricted_key(const std::vector<Deposit>& deposits,
                                 const OutsideFlcRegion& region, const Tolerances& tol) {
    RestrictedDataKey key;
    for (const Deposit& d : deposits) {
        if (contains(region, d.x, tol.causal)) {
            key.entries.emplace_back(quantize(d.x, tol.pos), quantize(d.energy, tol.norm));
        }
    }
    std::sort(key.entries.begin(), key.entries.end());
    return key;
}

std::vector<Branch> consistent_branches(const FinalOutcome& outcome, const Event& y,
                                        const Scenario& s) {
    const OutsideFlcRegion region = outside_flc_region(y, s.final_time);
    const RestrictedDataKey outcome_key = restricted_key(outcome.deposits, region, s.tol);

    std::vector<Branch> out;
    for (const Branch& b : enumerate_branches(s)) {
        if (restricted_key(final_deposits(b, s), region, s.tol) == outcome_key) {
            out.push_back(b);
        }
    }
    if (out.empty()) {
        throw std::logic_error("consistent_branches: no branch matches the outcome data");
    }
    return out;
}

BranchEnsemble BranchEnsemble::build(const Scenario& s) {
    BranchEnsemble e;
    e.branches = enumerate_branches(s);
    e.trajectories.resize(e.branches.size());
    e.deposits.resize(e.branches.size());
    e.sorted_deposits.resize(e.branches.size());
    for (std::size_t b = 0; b < e.branches.size(); ++b) {
        auto& trajs = e.trajectories[b];
        trajs.reserve(s.photons.size());
        for (std::size_t j = 0; j < s.photons.size(); ++j) {
            trajs.push_back(trace(s.photons[j], static_cast<int>(j), e.branches[b], s));
        }
        auto& deps = e.deposits[b];
        deps.reserve(s.photons.size() + s.systems.size());
        for (std::size_t j = 0; j < s.photons.size(); ++j) {
            deps.push_back(Deposit{position_at(trajs[j], s.final_time), s.photons[j].energy,
                                   SourceKind::Photon, static_cast<int>(j), -1});
        }
        for (std::size_t i = 0; i < s.systems.size(); ++i) {
            deps.push_back(Deposit{occupied_position(s, e.branches[b], static_cast<int>(i)),
                                   s.systems[i].mass, SourceKind::System,
                                   static_cast<int>(i), e.branches[b].choice[i]});
        }
        auto& sorted = e.sorted_deposits[b];
        sorted.reserve(deps.size());
        for (const Deposit& d : deps) {
            sorted.push_back(QuantizedDeposit{d.x, quantize(d.x, s.tol.pos),
                                              quantize(d.energy, s.tol.norm)});
        }
        std::sort(sorted.begin(), sorted.end(),
                  [](const QuantizedDeposit& a, const QuantizedDeposit& b2) {
                      return std::pair{a.qx, a.qe} < std::pair{b2.qx, b2.qe};
                  });
    }
    return e;
}

int BranchEnsemble::index_of(const std::string& label) const {
    for (std::size_t b = 0; b < branches.size(); ++b) {
        if (branches[b].label == label) return static_cast<int>(b);
    }
    return -1;
}

bool restricted_keys_equal(const std::vector<QuantizedDeposit>& a,
                           const std::vector<QuantizedDeposit>& b,
                           const OutsideFlcRegion& region, double tol_causal) {
    std::size_t i = 0;
    std::size_t j = 0;
    for (;;) {
        while (i < a.size() && !contains(region, a[i].x, tol_causal)) ++i;
        while (j < b.size() && !contains(region, b[j].x, tol_causal)) ++j;
        if (i == a.size() || j == b.size()) {
            return i == a.size() && j == b.size();
        }
        if (a[i].qx != b[j].qx || a[i].qe != b[j].qe) return false;
        ++i;
        ++j;
    }
}

}  // namespace beablesim
