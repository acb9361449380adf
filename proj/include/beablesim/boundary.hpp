#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "beablesim/raytrace.hpp"
#include "beablesim/scenario.hpp"
#include "beablesim/spacetime.hpp"

namespace beablesim {

enum class SourceKind { System, Photon };

/// A localized energy record on the final hypersurface t = T: a photon's or
/// system's position there, standing in for the continuous outcome field.
struct Deposit {
    double x = 0.0;
    double energy = 0.0;
    SourceKind kind = SourceKind::System;
    int id = -1;         // index into the scenario's systems or photons
    int component = -1;  // branch-occupied component index (systems only)
};

/// The sampled final boundary condition: one branch and its deposits.
struct FinalOutcome {
    Branch branch;
    std::vector<Deposit> deposits;
    double weight = 1.0;
};

/// Canonical multiset of (position, energy) pairs inside a region, quantized
/// by the scenario tolerances. Equal keys mean identical final data over the
/// region; absence of a deposit is encoded by the key simply lacking it.
struct RestrictedDataKey {
    std::vector<std::pair<std::int64_t, std::int64_t>> entries;  // sorted
    friend bool operator==(const RestrictedDataKey&, const RestrictedDataKey&) = default;
};

std::int64_t quantize(double value, double tol);

/// One deposit per photon at its traced position at T, one per system at its
/// occupied component position. Propagates TrappedPhotonError.
std::vector<Deposit> final_deposits(const Branch& branch, const Scenario& s);

/// Selects a branch with probability equal to its Born weight, using a
/// deterministic generator derived from the seed alone.
FinalOutcome sample_outcome(const Scenario& s, std::uint64_t seed);

/// Outcome for an explicitly named branch, bypassing sampling. Rejects
/// unknown labels and branches of zero Born weight.
FinalOutcome forced_outcome(const Scenario& s, const std::string& branch_label);

RestrictedDataKey restricted_key(const std::vector<Deposit>& deposits,
                                 const OutsideFlcRegion& region, const Tolerances& tol);

/// Branches whose restricted data over the outside-future-light-cone region
/// of y equals the outcome's; always contains the outcome branch.
std::vector<Branch> consistent_branches(const FinalOutcome& outcome, const Event& y,
                                        const Scenario& s);

/// Deposit augmented with its quantized key entry, presorted per branch so
/// that region-filtered key comparisons need no allocation.
struct QuantizedDeposit {
    double x;
    std::int64_t qx;
    std::int64_t qe;
};

/// Per-branch trajectories and deposits, computed once and shared by grid
/// evaluation. Immutable after build; safe for concurrent readers.
struct BranchEnsemble {
    std::vector<Branch> branches;
    std::vector<std::vector<Trajectory>> trajectories;  // [branch][photon]
    std::vector<std::vector<Deposit>> deposits;         // [branch]
    std::vector<std::vector<QuantizedDeposit>> sorted_deposits;  // [branch], key order

    static BranchEnsemble build(const Scenario& s);

    /// Index of a branch by label; -1 if absent.
    int index_of(const std::string& label) const;
};

/// Equality of the two branches' quantized deposit multisets restricted to
/// the region. Two-pointer walk over the presorted arrays.
bool restricted_keys_equal(const std::vector<QuantizedDeposit>& a,
                           const std::vector<QuantizedDeposit>& b,
                           const OutsideFlcRegion& region, double tol_causal);

}  // namespace beablesim
