#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "beablesim/beables.hpp"
#include "beablesim/boundary.hpp"
#include "beablesim/field_io.hpp"
#include "beablesim/oracle_diff.hpp"
#include "beablesim/scenario_io.hpp"
#include "beablesim/version.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace beablesim;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct CommonOptions {
    std::string scenario_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed_override;
    std::vector<int> grid_override;  // empty or {nt, nx}
    std::vector<std::string> emit = {"csv", "heatmap"};
    std::string branch;
};

void add_scenario_options(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("scenario-file", opt.scenario_path, "Scenario file (positional)");
    cmd->add_option("--scenario", opt.scenario_path, "Scenario file");
    cmd->add_option("--out", opt.out_dir, "Output directory")->envname("BEABLESIM_OUT");
}

Scenario load_and_validate(const CommonOptions& opt, bool quiet = false) {
    if (opt.scenario_path.empty()) {
        throw ScenarioParseError("no scenario file given (positional or --scenario)");
    }
    Scenario s = load_scenario(opt.scenario_path);
    if (!opt.grid_override.empty()) {
        if (opt.grid_override.size() != 2) {
            throw std::invalid_argument("--grid-override expects nt,nx");
        }
        s.grid.nt = opt.grid_override[0];
        s.grid.nx = opt.grid_override[1];
    }
    const ValidationReport report = validate(s);
    for (const std::string& w : report.warnings) {
        std::cerr << "warning: " << w << '\n';
    }
    if (!report.ok()) {
        for (const std::string& v : report.violations) {
            std::cerr << "violation: " << v << '\n';
        }
        throw ScenarioParseError("scenario failed validation");
    }
    if (!quiet) {
        std::cerr << "loaded " << opt.scenario_path << ": " << s.systems.size()
                  << " system(s), " << s.photons.size() << " photon(s), T=" << s.final_time
                  << '\n';
    }
    return s;
}

fs::path ensure_out_dir(const CommonOptions& opt) {
    const fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    return dir;
}

bool emit_enabled(const CommonOptions& opt, const std::string& kind) {
    for (const std::string& e : opt.emit) {
        if (e == kind) return true;
    }
    return false;
}

json grid_json(const GridSpec& g) {
    return json{{"tMin", g.t_min}, {"tMax", g.t_max}, {"nt", g.nt},
                {"xMin", g.x_min}, {"xMax", g.x_max}, {"nx", g.nx}};
}

int cmd_validate(const CommonOptions& opt) {
    if (opt.scenario_path.empty()) {
        throw ScenarioParseError("no scenario file given (positional or --scenario)");
    }
    const Scenario s = load_scenario(opt.scenario_path);
    const ValidationReport report = validate(s);
    for (const std::string& w : report.warnings) std::cout << "warning: " << w << '\n';
    for (const std::string& v : report.violations) std::cout << "violation: " << v << '\n';
    if (report.ok()) {
        std::cout << "ok\n";
        return kExitOk;
    }
    return kExitValidation;
}

int cmd_run(const CommonOptions& opt) {
    const Scenario s = load_and_validate(opt);
    const std::uint64_t seed = opt.seed_override.value_or(s.seed);
    const FinalOutcome outcome = sample_outcome(s, seed);
    const BeableField field = compute_field(s, outcome);
    const fs::path dir = ensure_out_dir(opt);

    std::vector<std::string> emitted;
    if (emit_enabled(opt, "csv")) {
        write_field_csv(field, dir / "field.csv");
        emitted.push_back("field.csv");
    }
    if (emit_enabled(opt, "heatmap")) {
        write_heatmap_pgm16(field.total, dir / "heatmap_total.pgm");
        emitted.push_back("heatmap_total.pgm");
        for (std::size_t k = 0; k < field.per_source.size(); ++k) {
            const std::string name = "heatmap_" + field.source_names[k] + ".pgm";
            write_heatmap_pgm16(field.per_source[k], dir / name);
            emitted.push_back(name);
        }
    }

    json branches = json::array();
    for (const Branch& b : enumerate_branches(s)) {
        branches.push_back({{"label", b.label}, {"weight", b.weight}});
    }
    const auto n = field.n_consistent;
    json metadata{
        {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
        {"scenario", opt.scenario_path},
        {"seed", seed},
        {"T", s.final_time},
        {"grid", grid_json(s.grid)},
        {"outcome", {{"branch", outcome.branch.label}, {"weight", outcome.weight}}},
        {"branches", branches},
        {"sources", field.source_names},
        {"consistentSet",
         {{"min", n.minCoeff()},
          {"max", n.maxCoeff()},
          {"mean", n.cast<double>().mean()}}},
        {"emitted", emitted},
        {"conventions",
         {{"lightlikeBoundary", "final data at exactly lightlike separation is excluded"},
          {"rayDiscontinuity",
           "rays whose endpoint datum is lightlike-separated can carry a fractional "
           "photon energy; reported as computed"}}},
    };
    std::ofstream meta(dir / "metadata.json", std::ios::binary);
    meta << metadata.dump(2) << '\n';

    std::cout << "sampled branch " << outcome.branch.label << " (weight "
              << outcome.weight << "), field " << s.grid.nt << "x" << s.grid.nx
              << " written to " << dir.string() << '\n';
    return kExitOk;
}

int cmd_sample(const CommonOptions& opt, int count) {
    const Scenario s = load_and_validate(opt, true);
    const std::uint64_t base = opt.seed_override.value_or(s.seed);

    std::vector<SampleRecord> records;
    records.reserve(count);
    std::map<std::string, int> counts;
    std::map<std::string, double> weights;
    for (int i = 0; i < count; ++i) {
        const std::uint64_t seed = base + static_cast<std::uint64_t>(i);
        const FinalOutcome outcome = sample_outcome(s, seed);
        records.push_back({seed, outcome.branch.label, outcome.weight});
        counts[outcome.branch.label] += 1;
        weights[outcome.branch.label] = outcome.weight;
    }

    const fs::path dir = ensure_out_dir(opt);
    {
        std::ofstream out(dir / "samples.csv", std::ios::binary);
        write_samples_csv(records, out);
    }
    {
        std::ofstream out(dir / "sample_frequencies.csv", std::ios::binary);
        out << "branch,count,frequency,weight\n";
        for (const auto& [label, c] : counts) {
            out << label << ',' << c << ',' << format_g17(static_cast<double>(c) / count)
                << ',' << format_g17(weights[label]) << '\n';
        }
    }
    std::cout << "branch,count,frequency,weight\n";
    for (const auto& [label, c] : counts) {
        std::cout << label << ',' << c << ',' << static_cast<double>(c) / count << ','
                  << weights[label] << '\n';
    }
    return kExitOk;
}

int cmd_sweep(const CommonOptions& opt, const std::vector<double>& final_times) {
    const Scenario s = load_and_validate(opt, true);
    if (opt.branch.empty()) {
        throw std::invalid_argument("sweep-T requires --branch (sampling is bypassed)");
    }
    const SweepReport report = sweep_final_time(s, opt.branch, final_times, s.grid);

    const fs::path dir = ensure_out_dir(opt);
    std::ofstream out(dir / "sweep.csv", std::ios::binary);
    out << "Ta,Tb,maxAbsDeviation\n";
    for (const auto& pair : report.pairs) {
        out << format_g17(pair.t_a) << ',' << format_g17(pair.t_b) << ','
            << format_g17(pair.deviation) << '\n';
    }
    std::cout << "max field deviation over subgrid (t <= " << s.grid.t_max
              << "): " << report.max_deviation << '\n';
    return kExitOk;
}

int cmd_oracle_diff(const CommonOptions& opt) {
    const Scenario s = load_and_validate(opt, true);
    const FinalOutcome outcome = opt.branch.empty()
                                     ? sample_outcome(s, opt.seed_override.value_or(s.seed))
                                     : forced_outcome(s, opt.branch);
    const OracleDiffReport report = oracle_diff(s, outcome);

    const fs::path dir = ensure_out_dir(opt);
    std::ofstream out(dir / "oracle_diff.csv", std::ios::binary);
    out << "probe,maxAbsDeviation\n";
    for (const auto& row : report.rows) {
        out << row.probe << ',' << format_g17(row.max_deviation) << '\n';
    }
    out << "total," << format_g17(report.max_deviation) << '\n';

    std::cout << "model " << report.model << ", outcome branch " << report.outcome_label
              << ": max engine-vs-closed-form deviation " << report.max_deviation << '\n';
    return kExitOk;
}

int cmd_trajectories(const CommonOptions& opt) {
    const Scenario s = load_and_validate(opt, true);
    std::vector<Trajectory> all;
    for (const Branch& b : enumerate_branches(s)) {
        for (std::size_t j = 0; j < s.photons.size(); ++j) {
            all.push_back(trace(s.photons[j], static_cast<int>(j), b, s));
        }
    }
    const fs::path dir = ensure_out_dir(opt);
    std::ofstream out(dir / "trajectories.csv", std::ios::binary);
    write_trajectories_csv(all, out);
    std::cout << "wrote " << all.size() << " trajectories\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"beable-field simulator for 1+1-dimensional bounce models"};
    app.require_subcommand(1);

    CommonOptions opt;

    auto add_common = [&](CLI::App* cmd, bool with_emit) {
        add_scenario_options(cmd, opt);
        cmd->add_option("--seed", opt.seed_override, "Seed override");
        cmd->add_option("--grid-override", opt.grid_override,
                        "Override grid resolution: nt,nx")
            ->delimiter(',');
        if (with_emit) {
            cmd->add_option("--emit", opt.emit, "Outputs to produce (csv, heatmap)")
                ->delimiter(',');
        }
    };

    CLI::App* validate_cmd = app.add_subcommand("validate", "Check a scenario file");
    add_scenario_options(validate_cmd, opt);

    CLI::App* run_cmd =
        app.add_subcommand("run", "Sample an outcome and compute the beable field");
    add_common(run_cmd, true);

    int sample_count = 0;
    CLI::App* sample_cmd =
        app.add_subcommand("sample", "Outcome frequencies over consecutive seeds");
    sample_cmd->add_option("count", sample_count, "Number of seeds")->required();
    add_common(sample_cmd, false);

    std::vector<double> final_times;
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep-T", "Field deviation between runs with different final times");
    sweep_cmd->add_option("--T", final_times, "Final times to compare")
        ->delimiter(',')
        ->required();
    sweep_cmd->add_option("--branch", opt.branch, "Outcome branch label (required)");
    add_common(sweep_cmd, false);

    CLI::App* diff_cmd = app.add_subcommand(
        "oracle-diff", "Compare the engine against the closed-form model values");
    diff_cmd->add_option("--branch", opt.branch, "Outcome branch label (default: sample)");
    add_common(diff_cmd, false);

    CLI::App* traj_cmd =
        app.add_subcommand("trajectories", "Dump per-branch photon trajectories as CSV");
    add_common(traj_cmd, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) return cmd_validate(opt);
        if (run_cmd->parsed()) return cmd_run(opt);
        if (sample_cmd->parsed()) return cmd_sample(opt, sample_count);
        if (sweep_cmd->parsed()) return cmd_sweep(opt, final_times);
        if (diff_cmd->parsed()) return cmd_oracle_diff(opt);
        if (traj_cmd->parsed()) return cmd_trajectories(opt);
    } catch (const ScenarioParseError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitValidation;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& err) {
        std::cerr << "runtime error: " << err.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}
