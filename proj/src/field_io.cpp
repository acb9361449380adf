#include "beablesim/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace beablesim {

std::string format_g17(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

void write_field_csv(const BeableField& field, std::ostream& out) {
    out << "t,x,total";
    for (const std::string& name : field.source_names) out << ',' << name;
    out << ",nConsistent\n";
    for (int i = 0; i < field.grid.nt; ++i) {
        const std::string t = format_g17(field.grid.time_at(i));
        for (int j = 0; j < field.grid.nx; ++j) {
            out << t << ',' << format_g17(field.grid.x_at(j)) << ','
                << format_g17(field.total(i, j));
            for (const auto& channel : field.per_source) {
                out << ',' << format_g17(channel(i, j));
            }
            out << ',' << field.n_consistent(i, j) << '\n';
        }
    }
}

void write_field_csv(const BeableField& field, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_field_csv(field, out);
}

void write_heatmap_pgm16(const Eigen::ArrayXXd& channel, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());

    const double lo = channel.minCoeff();
    const double hi = channel.maxCoeff();
    const double scale = hi > lo ? 65535.0 / (hi - lo) : 0.0;

    out << "P5\n" << channel.cols() << ' ' << channel.rows() << "\n65535\n";
    for (Eigen::Index i = 0; i < channel.rows(); ++i) {
        for (Eigen::Index j = 0; j < channel.cols(); ++j) {
            const auto v = static_cast<std::uint16_t>(std::lround((channel(i, j) - lo) * scale));
            const char bytes[2] = {static_cast<char>(v >> 8), static_cast<char>(v & 0xff)};
            out.write(bytes, 2);
        }
    }
}

void write_trajectories_csv(const std::vector<Trajectory>& trajectories, std::ostream& out) {
    out << "photon,branch,tStart,xStart,dir\n";
    for (const Trajectory& traj : trajectories) {
        for (const Segment& seg : traj.segments) {
            out << traj.photon_id << ',' << traj.branch_label << ',' << format_g17(seg.t_start)
                << ',' << format_g17(seg.x_start) << ',' << seg.dir << '\n';
        }
    }
}

void write_samples_csv(const std::vector<SampleRecord>& samples, std::ostream& out) {
    out << "seed,branch,weight\n";
    for (const SampleRecord& rec : samples) {
        out << rec.seed << ',' << rec.branch << ',' << format_g17(rec.weight) << '\n';
    }
}

}  // namespace beablesim
