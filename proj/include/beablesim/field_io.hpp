#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "beablesim/beables.hpp"
#include "beablesim/raytrace.hpp"

namespace beablesim {

/// 17-significant-digit rendering; identical bytes for identical doubles.
std::string format_g17(double v);

/// Row-major field CSV: header `t,x,total,<source columns...>,nConsistent`,
/// one row per grid point, outer loop over time.
void write_field_csv(const BeableField& field, std::ostream& out);
void write_field_csv(const BeableField& field, const std::filesystem::path& path);

/// 16-bit binary portable graymap, min-max normalized over the channel.
/// Row i is time index i, column j is position index j.
void write_heatmap_pgm16(const Eigen::ArrayXXd& channel, const std::filesystem::path& path);

void write_trajectories_csv(const std::vector<Trajectory>& trajectories, std::ostream& out);

struct SampleRecord {
    std::uint64_t seed;
    std::string branch;
    double weight;
};

void write_samples_csv(const std::vector<SampleRecord>& samples, std::ostream& out);

}  // namespace beablesim
