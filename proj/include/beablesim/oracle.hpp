#pragma once

#include <optional>

#include "beablesim/scenario.hpp"

namespace beablesim {

/// Parameters of the two bounce models in closed form. Defaults are the
/// canonical parameterization used by the bundled scenario files.
struct ModelParams {
    double x1 = 0.0;
    double x2 = 4.0;
    double t1 = 5.0;  // arrival time of the (left) photon at x1
    double a_sq = 0.3;
    double b_sq = 0.7;
    double mass = 1.0;
    double energy = 1.0;
    int outcome_branch = 1;  // 1 = system found at x1, 2 = at x2

    double t2() const { return t1 + (x2 - x1); }
    /// Time at which both sites collapse in the two-photon model.
    double model2_collapse_time() const { return t1 - (x2 - x1); }
};

/// Probe loci for the one-photon model: the two component sites, the
/// incoming ray, and the two outgoing rays labelled by bounce site.
enum class Model1Probe { SiteX1, SiteX2, RayIncoming, RayOutX1, RayOutX2 };

/// Probe loci for the symmetric two-photon model. Rays are labelled by
/// photon (left/right) and by the site whose bounce produces them.
enum class Model2Probe {
    SiteX1,
    SiteX2,
    RayLeftIncoming,
    RayLeftOffX1,
    RayLeftOffX2,
    RayRightIncoming,
    RayRightOffX1,
    RayRightOffX2,
};

/// System energy at a site. Values at exact breakpoints take the
/// pre-collapse value (the lightlike boundary is excluded from conditioning).
double model1_system_beable(const ModelParams& p, double t, Model1Probe site);

/// Photon energy carried by a ray locus at time t. Where a locus passes
/// through a bounce vertex occupied by the actual photon, the value at that
/// instant is the full photon energy.
double model1_photon_beable(const ModelParams& p, double t, Model1Probe ray);

/// System or photon energy at a two-photon-model probe locus.
double model2_beable(const ModelParams& p, double t, Model2Probe probe);

/// Spatial position of a probe locus at time t.
double model1_probe_x(const ModelParams& p, double t, Model1Probe probe);
double model2_probe_x(const ModelParams& p, double t, Model2Probe probe);

/// Recognized scenario shapes for the closed forms. `branch_label_x1` is the
/// label of the branch whose occupied component sits at x1.
struct Model1Shape {
    ModelParams params;
    int photon_id = 0;
    std::string branch_label_x1;
    std::string branch_label_x2;
};

struct Model2Shape {
    ModelParams params;
    int left_photon_id = 0;
    int right_photon_id = 1;
    double right_energy = 1.0;  // energy of the right photon (left is params.energy)
    std::string branch_label_x1;
    std::string branch_label_x2;
};

/// Shape matchers: one system with two components plus one left-incoming
/// photon (model 1) or two photons arriving at their first sites at the same
/// time (model 2). Empty when the scenario has a different shape.
std::optional<Model1Shape> match_model1(const Scenario& s);
std::optional<Model2Shape> match_model2(const Scenario& s);

}  // namespace beablesim
