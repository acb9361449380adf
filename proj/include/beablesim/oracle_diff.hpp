#pragma once

#include <string>
#include <vector>

#include "beablesim/beables.hpp"
#include "beablesim/oracle.hpp"

namespace beablesim {

/// Engine-vs-closed-form comparison over every grid time at each probe
/// locus: both system sites and every photon ray of the recognized model.
struct OracleDiffReport {
    int model = 0;  // 1 or 2
    std::string outcome_label;
    struct Row {
        std::string probe;
        double max_deviation;
    };
    std::vector<Row> rows;
    double max_deviation = 0.0;
};

/// Throws std::invalid_argument when the scenario matches neither model
/// shape. Site probes compare the system contribution, ray probes the
/// respective photon contribution.
OracleDiffReport oracle_diff(const Scenario& s, const FinalOutcome& outcome);

}  // namespace beablesim
