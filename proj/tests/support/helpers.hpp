#pragma once

// Test-only helpers: a brute-force re-evaluation of the conditioning recipe
// written straight from its definitions (independent of the engine's
// evaluation path), scenario generators, and the mirror transform.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "beablesim/scenario.hpp"
#include "beablesim/scenario_io.hpp"

namespace testsupport {

inline beablesim::Scenario load_canonical(const std::string& name) {
    return beablesim::load_scenario(std::string(BEABLESIM_SCENARIO_DIR) + "/" + name + ".json");
}

struct NaiveBranch {
    std::vector<int> choice;
    double weight = 1.0;
};

inline std::vector<NaiveBranch> naive_branches(const beablesim::Scenario& s) {
    std::vector<NaiveBranch> out;
    std::vector<int> choice;
    auto recurse = [&](auto&& self, std::size_t level) -> void {
        if (level == s.systems.size()) {
            NaiveBranch b;
            b.choice = choice;
            for (std::size_t i = 0; i < choice.size(); ++i) {
                b.weight *= std::norm(s.systems[i].components[choice[i]].amplitude);
            }
            out.push_back(std::move(b));
            return;
        }
        for (std::size_t c = 0; c < s.systems[level].components.size(); ++c) {
            choice.push_back(static_cast<int>(c));
            self(self, level + 1);
            choice.pop_back();
        }
    };
    recurse(recurse, 0);
    return out;
}

// Photon position by direct stepping through the bounce sequence.
inline double naive_photon_position(const beablesim::Scenario& s, const NaiveBranch& b,
                                    int photon, double t) {
    std::vector<double> occupied;
    for (std::size_t i = 0; i < s.systems.size(); ++i) {
        occupied.push_back(s.systems[i].components[b.choice[i]].x);
    }
    double now = 0.0;
    double x = s.photons[photon].x0;
    int dir = s.photons[photon].dir;
    for (double p : occupied) {
        if (std::abs(p - x) <= s.tol.pos) {
            dir = -dir;
            break;
        }
    }
    for (long iter = 0; iter < 20'000'000; ++iter) {
        double best = 1e300;
        bool found = false;
        for (double p : occupied) {
            const double d = (p - x) * dir;
            if (d > s.tol.pos && d < best) {
                best = d;
                found = true;
            }
        }
        if (!found || now + best >= t) {
            return x + dir * (t - now);
        }
        now += best;
        x += dir * best;
        dir = -dir;
    }
    throw std::runtime_error("naive_photon_position: bounce budget exceeded");
}

inline std::vector<std::pair<double, double>> naive_deposits(const beablesim::Scenario& s,
                                                             const NaiveBranch& b) {
    std::vector<std::pair<double, double>> out;
    for (std::size_t j = 0; j < s.photons.size(); ++j) {
        out.emplace_back(naive_photon_position(s, b, static_cast<int>(j), s.final_time),
                         s.photons[j].energy);
    }
    for (std::size_t i = 0; i < s.systems.size(); ++i) {
        out.emplace_back(s.systems[i].components[b.choice[i]].x, s.systems[i].mass);
    }
    return out;
}

// Per-source contributions of the recipe at (t, x): condition on the outcome
// branch's deposits strictly outside the future light cone, form the
// posterior over matching branches, and mix branch-local densities.
inline std::vector<double> naive_contributions(const beablesim::Scenario& s,
                                               std::size_t outcome_branch, double t, double x) {
    const auto branches = naive_branches(s);
    const double radius = s.final_time - t;

    auto key_of = [&](const NaiveBranch& b) {
        std::vector<std::pair<std::int64_t, std::int64_t>> key;
        for (const auto& [dx, de] : naive_deposits(s, b)) {
            if (std::abs(dx - x) - radius > s.tol.causal) {
                key.emplace_back(std::llround(dx / s.tol.pos), std::llround(de / s.tol.norm));
            }
        }
        std::sort(key.begin(), key.end());
        return key;
    };

    const auto outcome_key = key_of(branches[outcome_branch]);
    std::vector<std::size_t> consistent;
    double weight_sum = 0.0;
    for (std::size_t b = 0; b < branches.size(); ++b) {
        if (key_of(branches[b]) == outcome_key) {
            consistent.push_back(b);
            weight_sum += branches[b].weight;
        }
    }

    const double half = 0.5 * s.grid.dx();
    auto top_hat = [&](double pos, double energy) {
        return std::abs(x - pos) <= half + s.tol.pos ? energy : 0.0;
    };

    std::vector<double> contributions(s.source_count(), 0.0);
    for (std::size_t b : consistent) {
        const double post = branches[b].weight / weight_sum;
        for (std::size_t i = 0; i < s.systems.size(); ++i) {
            if (s.systems[i].sigma != 0.0) {
                throw std::runtime_error("naive recipe handles sigma == 0 only");
            }
            const double pos = s.systems[i].components[branches[b].choice[i]].x;
            contributions[i] += post * top_hat(pos, s.systems[i].mass);
        }
        for (std::size_t j = 0; j < s.photons.size(); ++j) {
            const double pos = naive_photon_position(s, branches[b], static_cast<int>(j), t);
            contributions[s.systems.size() + j] += post * top_hat(pos, s.photons[j].energy);
        }
    }
    return contributions;
}

inline double naive_total(const beablesim::Scenario& s, std::size_t outcome_branch, double t,
                          double x) {
    double total = 0.0;
    for (double c : naive_contributions(s, outcome_branch, t, x)) total += c;
    return total;
}

// Random scenarios whose photons start outside the hull of all component
// positions, so no branch can trap a photon and every photon bounces at most
// once. Positions sit on distinct slots to keep branches distinguishable.
inline beablesim::Scenario random_scenario(std::mt19937_64& rng) {
    using namespace beablesim;
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Scenario s;
    s.final_time = 100.0;
    s.grid = GridSpec{0.0, 20.0, 9, -12.0, 12.0, 25};
    s.seed = rng();

    std::vector<double> slots;
    for (double x = -8.0; x <= 8.0; x += 2.0) slots.push_back(x);
    std::shuffle(slots.begin(), slots.end(), rng);
    std::size_t next_slot = 0;

    const int nsys = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < nsys; ++i) {
        MassiveSystem sys;
        sys.mass = 0.5 + 1.5 * unit(rng);
        const int ncomp = 1 + static_cast<int>(rng() % 3);
        double norm_sum = 0.0;
        for (int c = 0; c < ncomp; ++c) {
            Component comp;
            comp.x = slots[next_slot++];
            comp.amplitude = {0.2 + 0.8 * unit(rng), unit(rng) - 0.5};
            norm_sum += comp.prob();
            sys.components.push_back(comp);
        }
        const double scale = 1.0 / std::sqrt(norm_sum);
        for (Component& comp : sys.components) comp.amplitude *= scale;
        s.systems.push_back(std::move(sys));
    }

    const int nphot = static_cast<int>(rng() % 3);
    for (int j = 0; j < nphot; ++j) {
        Photon p;
        const bool from_left = rng() % 2 == 0;
        p.x0 = (from_left ? -1.0 : 1.0) * (10.0 + 5.0 * unit(rng));
        const bool inward = rng() % 4 != 0;
        p.dir = (from_left == inward) ? +1 : -1;
        p.energy = 0.5 + 1.5 * unit(rng);
        s.photons.push_back(p);
    }
    return s;
}

// Reflect every position about `center`, reversing each system's component
// list so positions stay ascending. Branch labels map through
// mirrored_choice below.
inline beablesim::Scenario mirror_scenario(const beablesim::Scenario& s, double center) {
    beablesim::Scenario m = s;
    for (auto& sys : m.systems) {
        for (auto& comp : sys.components) comp.x = 2.0 * center - comp.x;
        std::reverse(sys.components.begin(), sys.components.end());
    }
    for (auto& p : m.photons) {
        p.x0 = 2.0 * center - p.x0;
        p.dir = -p.dir;
    }
    const double new_min = 2.0 * center - s.grid.x_max;
    const double new_max = 2.0 * center - s.grid.x_min;
    m.grid.x_min = new_min;
    m.grid.x_max = new_max;
    return m;
}

inline std::vector<int> mirrored_choice(const beablesim::Scenario& s,
                                        const std::vector<int>& choice) {
    std::vector<int> out(choice.size());
    for (std::size_t i = 0; i < choice.size(); ++i) {
        out[i] = static_cast<int>(s.systems[i].components.size()) - 1 - choice[i];
    }
    return out;
}

}  // namespace testsupport
