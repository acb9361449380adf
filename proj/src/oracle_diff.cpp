#include "beablesim/oracle_diff.hpp"

#include <cmath>
#include <stdexcept>

namespace beablesim {

namespace {

int outcome_branch_number(const std::string& outcome_label, const std::string& label_x1,
                          const std::string& label_x2) {
    if (outcome_label == label_x1) return 1;
    if (outcome_label == label_x2) return 2;
    throw std::invalid_argument("oracle_diff: outcome branch '" + outcome_label +
                                "' is not one of the model branches");
}

}  // namespace

OracleDiffReport oracle_diff(const Scenario& s, const FinalOutcome& outcome) {
    const BranchEnsemble ensemble = BranchEnsemble::build(s);
    OracleDiffReport report;
    report.outcome_label = outcome.branch.label;

    const int nsys = static_cast<int>(s.systems.size());

    auto run_probe = [&](const std::string& name, int source_index, auto&& probe_x,
                         auto&& probe_value) {
        double dev = 0.0;
        for (int i = 0; i < s.grid.nt; ++i) {
            const double t = s.grid.time_at(i);
            const Event y{t, probe_x(t)};
            const BeableSample sample = beable_at(y, outcome, ensemble, s);
            dev = std::max(dev, std::abs(sample.contributions[source_index] - probe_value(t)));
        }
        report.rows.push_back({name, dev});
        report.max_deviation = std::max(report.max_deviation, dev);
    };

    if (auto m1 = match_model1(s)) {
        report.model = 1;
        ModelParams p = m1->params;
        p.outcome_branch =
            outcome_branch_number(outcome.branch.label, m1->branch_label_x1, m1->branch_label_x2);
        const int photon_src = nsys + m1->photon_id;

        const auto site = [&](Model1Probe probe, const std::string& name) {
            run_probe(name, 0, [&, probe](double t) { return model1_probe_x(p, t, probe); },
                      [&, probe](double t) { return model1_system_beable(p, t, probe); });
        };
        const auto ray = [&](Model1Probe probe, const std::string& name) {
            run_probe(name, photon_src,
                      [&, probe](double t) { return model1_probe_x(p, t, probe); },
                      [&, probe](double t) { return model1_photon_beable(p, t, probe); });
        };
        site(Model1Probe::SiteX1, "site_x1");
        site(Model1Probe::SiteX2, "site_x2");
        ray(Model1Probe::RayIncoming, "ray_incoming");
        ray(Model1Probe::RayOutX1, "ray_out_x1");
        ray(Model1Probe::RayOutX2, "ray_out_x2");
        return report;
    }

    if (auto m2 = match_model2(s)) {
        report.model = 2;
        ModelParams p = m2->params;
        p.outcome_branch =
            outcome_branch_number(outcome.branch.label, m2->branch_label_x1, m2->branch_label_x2);
        ModelParams p_right = p;
        p_right.energy = m2->right_energy;

        const auto site = [&](Model2Probe probe, const std::string& name) {
            run_probe(name, 0, [&, probe](double t) { return model2_probe_x(p, t, probe); },
                      [&, probe](double t) { return model2_beable(p, t, probe); });
        };
        const auto ray = [&](Model2Probe probe, const ModelParams& params, int photon_id,
                             const std::string& name) {
            run_probe(name, nsys + photon_id,
                      [&, probe, params](double t) { return model2_probe_x(params, t, probe); },
                      [&, probe, params](double t) { return model2_beable(params, t, probe); });
        };
        site(Model2Probe::SiteX1, "site_x1");
        site(Model2Probe::SiteX2, "site_x2");
        ray(Model2Probe::RayLeftIncoming, p, m2->left_photon_id, "ray_left_incoming");
        ray(Model2Probe::RayLeftOffX1, p, m2->left_photon_id, "ray_left_off_x1");
        ray(Model2Probe::RayLeftOffX2, p, m2->left_photon_id, "ray_left_off_x2");
        ray(Model2Probe::RayRightIncoming, p_right, m2->right_photon_id, "ray_right_incoming");
        ray(Model2Probe::RayRightOffX1, p_right, m2->right_photon_id, "ray_right_off_x1");
        ray(Model2Probe::RayRightOffX2, p_right, m2->right_photon_id, "ray_right_off_x2");
        return report;
    }

    throw std::invalid_argument(
        "oracle_diff: scenario matches neither closed-form model shape");
}

}  // namespace beablesim
