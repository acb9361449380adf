#include "beablesim/scenario.hpp"

#include <stdexcept>

namespace beablesim {

std::string branch_label(const std::vector<int>& choice) {
    if (choice.empty()) {
        return "1";
    }
    std::string label;
    for (std::size_t i = 0; i < choice.size(); ++i) {
        if (i > 0) label += ',';
        label += std::to_string(choice[i] + 1);
    }
    return label;
}

std::vector<Branch> enumerate_branches(const Scenario& s) {
    std::vector<Branch> out;
    const std::size_t n = s.systems.size();
    std::vector<int> choice(n, 0);
    for (;;) {
        Branch b;
        b.choice = choice;
        b.weight = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            b.weight *= s.systems[i].components[choice[i]].prob();
        }
        b.label = branch_label(choice);
        out.push_back(std::move(b));
        // advance the odometer, last system fastest
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++choice[i] < static_cast<int>(s.systems[i].components.size())) break;
            choice[i] = 0;
            if (i == 0) return out;
        }
        if (n == 0) return out;
    }
}

double occupied_position(const Scenario& s, const Branch& b, int system_index) {
    const auto& sys = s.systems.at(system_index);
    return sys.components.at(b.choice.at(system_index)).x;
}

}  // namespace beablesim
