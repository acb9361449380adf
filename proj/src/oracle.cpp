#include "beablesim/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace beablesim {

namespace {

constexpr double kVertexTol = 1e-12;

bool near(double a, double b) { return std::abs(a - b) <= kVertexTol; }

}  // namespace

double model1_system_beable(const ModelParams& p, double t, Model1Probe site) {
    const double collapse_x2 = 2.0 * p.t1 - p.t2();
    switch (site) {
        case Model1Probe::SiteX1:
            if (t <= p.t1) return p.a_sq * p.mass;
            return p.outcome_branch == 1 ? p.mass : 0.0;
        case Model1Probe::SiteX2:
            if (t <= collapse_x2) return p.b_sq * p.mass;
            return p.outcome_branch == 1 ? 0.0 : p.mass;
        default:
            throw std::invalid_argument("model1_system_beable: not a site probe");
    }
}

double model1_photon_beable(const ModelParams& p, double t, Model1Probe ray) {
    switch (ray) {
        case Model1Probe::RayIncoming: {
            // The photon rides the incoming ray until its bounce: t1 in the
            // world where the system sits at x1, t2 in the other.
            const double bounce = p.outcome_branch == 1 ? p.t1 : p.t2();
            return t <= bounce ? p.energy : 0.0;
        }
        case Model1Probe::RayOutX1:
            // The deposit ending this ray is lightlike-separated from every
            // point of it and never conditions, so the ray carries the a^2
            // fraction under either outcome.
            if (near(t, p.t1)) return p.energy;
            return t > p.t1 ? p.a_sq * p.energy : 0.0;
        case Model1Probe::RayOutX2:
            if (p.outcome_branch == 1) return 0.0;
            if (near(t, p.t2())) return p.energy;
            return t > p.t2() ? p.energy : 0.0;
        default:
            throw std::invalid_argument("model1_photon_beable: not a ray probe");
    }
}

double model2_beable(const ModelParams& p, double t, Model2Probe probe) {
    const double tau = p.model2_collapse_time();
    const bool at_x1 = p.outcome_branch == 1;  // system ends up at x1
    switch (probe) {
        case Model2Probe::SiteX1:
            if (t <= tau) return p.a_sq * p.mass;
            return at_x1 ? p.mass : 0.0;
        case Model2Probe::SiteX2:
            if (t <= tau) return p.b_sq * p.mass;
            return at_x1 ? 0.0 : p.mass;

        case Model2Probe::RayLeftIncoming: {
            const double bounce = at_x1 ? p.t1 : p.t2();
            return t <= bounce ? p.energy : 0.0;
        }
        case Model2Probe::RayLeftOffX1:
            if (at_x1) {
                if (near(t, p.t1)) return p.energy;
                return t > p.t1 ? p.energy : 0.0;
            }
            // Counterfactual ray; the left photon still crosses its vertex.
            return near(t, p.t1) ? p.energy : 0.0;
        case Model2Probe::RayLeftOffX2:
            if (at_x1) return 0.0;
            if (near(t, p.t2())) return p.energy;
            return t > p.t2() ? p.energy : 0.0;

        case Model2Probe::RayRightIncoming: {
            const double bounce = at_x1 ? p.t2() : p.t1;
            return t <= bounce ? p.energy : 0.0;
        }
        case Model2Probe::RayRightOffX1:
            if (!at_x1) return 0.0;
            if (near(t, p.t2())) return p.energy;
            return t > p.t2() ? p.energy : 0.0;
        case Model2Probe::RayRightOffX2:
            if (!at_x1) {
                if (near(t, p.t1)) return p.energy;
                return t > p.t1 ? p.energy : 0.0;
            }
            // Counterfactual ray crossed by the right photon at its vertex.
            return near(t, p.t1) ? p.energy : 0.0;
    }
    throw std::invalid_argument("model2_beable: unknown probe");
}

double model1_probe_x(const ModelParams& p, double t, Model1Probe probe) {
    switch (probe) {
        case Model1Probe::SiteX1: return p.x1;
        case Model1Probe::SiteX2: return p.x2;
        case Model1Probe::RayIncoming: return p.x1 - p.t1 + t;
        case Model1Probe::RayOutX1: return p.x1 + p.t1 - t;
        case Model1Probe::RayOutX2: return p.x2 + p.t2() - t;
    }
    throw std::invalid_argument("model1_probe_x: unknown probe");
}

double model2_probe_x(const ModelParams& p, double t, Model2Probe probe) {
    switch (probe) {
        case Model2Probe::SiteX1: return p.x1;
        case Model2Probe::SiteX2: return p.x2;
        case Model2Probe::RayLeftIncoming: return p.x1 - p.t1 + t;
        case Model2Probe::RayLeftOffX1: return p.x1 + p.t1 - t;
        case Model2Probe::RayLeftOffX2: return p.x2 + p.t2() - t;
        case Model2Probe::RayRightIncoming: return p.x2 + p.t1 - t;
        case Model2Probe::RayRightOffX1: return p.x1 + t - p.t2();
        case Model2Probe::RayRightOffX2: return p.x2 + t - p.t1;
    }
    throw std::invalid_argument("model2_probe_x: unknown probe");
}

namespace {

// The single system must have exactly two components; returns indices of the
// lower and upper component by position.
bool two_component_system(const Scenario& s, int* lo, int* hi) {
    if (s.systems.size() != 1 || s.systems[0].components.size() != 2) return false;
    const auto& c = s.systems[0].components;
    *lo = c[0].x <= c[1].x ? 0 : 1;
    *hi = 1 - *lo;
    return true;
}

ModelParams base_params(const Scenario& s, int lo, int hi) {
    const auto& sys = s.systems[0];
    ModelParams p;
    p.x1 = sys.components[lo].x;
    p.x2 = sys.components[hi].x;
    p.a_sq = sys.components[lo].prob();
    p.b_sq = sys.components[hi].prob();
    p.mass = sys.mass;
    return p;
}

}  // namespace

std::optional<Model1Shape> match_model1(const Scenario& s) {
    int lo = 0;
    int hi = 0;
    if (!two_component_system(s, &lo, &hi)) return std::nullopt;
    if (s.photons.size() != 1) return std::nullopt;
    const Photon& ph = s.photons[0];
    if (ph.dir != +1) return std::nullopt;

    Model1Shape shape;
    shape.params = base_params(s, lo, hi);
    shape.params.t1 = shape.params.x1 - ph.x0;
    shape.params.energy = ph.energy;
    if (!(shape.params.t1 > 0.0)) return std::nullopt;
    shape.photon_id = 0;
    shape.branch_label_x1 = std::to_string(lo + 1);
    shape.branch_label_x2 = std::to_string(hi + 1);
    return shape;
}

std::optional<Model2Shape> match_model2(const Scenario& s) {
    int lo = 0;
    int hi = 0;
    if (!two_component_system(s, &lo, &hi)) return std::nullopt;
    if (s.photons.size() != 2) return std::nullopt;

    int left = -1;
    int right = -1;
    for (int j = 0; j < 2; ++j) {
        if (s.photons[j].dir == +1) left = j;
        if (s.photons[j].dir == -1) right = j;
    }
    if (left < 0 || right < 0) return std::nullopt;

    Model2Shape shape;
    shape.params = base_params(s, lo, hi);
    const double t_left = shape.params.x1 - s.photons[left].x0;
    const double t_right = s.photons[right].x0 - shape.params.x2;
    if (!(t_left > 0.0) || std::abs(t_left - t_right) > s.tol.pos) return std::nullopt;
    shape.params.t1 = t_left;
    shape.params.energy = s.photons[left].energy;
    shape.right_energy = s.photons[right].energy;
    shape.left_photon_id = left;
    shape.right_photon_id = right;
    shape.branch_label_x1 = std::to_string(lo + 1);
    shape.branch_label_x2 = std::to_string(hi + 1);
    return shape;
}

}  // namespace beablesim
