#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "beablesim/beables.hpp"
#include "beablesim/field_io.hpp"
#include "beablesim/scenario_io.hpp"
#include "support/helpers.hpp"

using namespace beablesim;
using testsupport::load_canonical;

TEST_CASE("canonical scenario files carry the expected parameterization") {
    const Scenario m1 = load_canonical("model1");
    REQUIRE(m1.systems.size() == 1);
    REQUIRE(m1.systems[0].components.size() == 2);
    CHECK(m1.systems[0].components[0].x == 0.0);
    CHECK(m1.systems[0].components[1].x == 4.0);
    CHECK(m1.systems[0].components[0].prob() == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(m1.systems[0].components[1].prob() == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(m1.final_time == 30.0);
    CHECK(m1.grid.nt == 241);
    CHECK(m1.grid.nx == 241);
    CHECK(m1.tol.pos == 1e-9);

    const Scenario m2 = load_canonical("model2");
    REQUIRE(m2.photons.size() == 2);
    CHECK(m2.photons[0].x0 == -5.0);
    CHECK(m2.photons[1].x0 == 9.0);
    CHECK(m2.photons[1].dir == -1);
}

TEST_CASE("unknown keys are rejected with their path") {
    const std::string text = R"({
        "T": 30.0,
        "grid": {"tMin": 0, "tMax": 1, "nt": 2, "xMin": 0, "xMax": 1, "nx": 2},
        "systems": [{"mass": 1.0, "components": [{"x": 0, "re": 1, "amp": 2}]}]
    })";
    CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains("unknown key 'amp'"),
                         ScenarioParseError);

    const std::string top = R"({"T": 1.0, "grid": {"tMin": 0, "tMax": 1, "nt": 2,
        "xMin": 0, "xMax": 1, "nx": 2}, "extra": true})";
    CHECK_THROWS_WITH_AS(parse_scenario(top), doctest::Contains("unknown key 'extra'"),
                         ScenarioParseError);
}

TEST_CASE("missing keys and malformed documents fail with context") {
    CHECK_THROWS_WITH_AS(parse_scenario("{\"T\": 1.0}"), doctest::Contains("grid"),
                         ScenarioParseError);
    CHECK_THROWS_WITH_AS(parse_scenario("{nope"), doctest::Contains("parse error"),
                         ScenarioParseError);
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"T": "thirty",
            "grid": {"tMin": 0, "tMax": 1, "nt": 2, "xMin": 0, "xMax": 1, "nx": 2}})"),
        doctest::Contains("expected a number"), ScenarioParseError);
}

TEST_CASE("field CSV layout and determinism") {
    Scenario s;
    s.final_time = 10.0;
    s.grid = GridSpec{0.0, 1.0, 3, -1.0, 1.0, 3};
    MassiveSystem sys;
    sys.components.push_back(Component{0.0, {1.0, 0.0}});
    s.systems.push_back(sys);
    s.photons.push_back(Photon{-6.0, +1, 1.0});

    const FinalOutcome outcome = sample_outcome(s, 0);
    const BeableField field = compute_field(s, outcome);

    std::ostringstream first;
    write_field_csv(field, first);
    std::ostringstream second;
    write_field_csv(field, second);
    CHECK(first.str() == second.str());

    std::istringstream lines(first.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "t,x,total,system0,photon0,nConsistent");
    int rows = 0;
    std::string line;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == s.grid.nt * s.grid.nx);
}

TEST_CASE("17-digit rendering round-trips exactly") {
    for (double v : {0.3, 0.1 + 0.2, -25.0, 1.0 / 3.0, 5e-9, 0.0}) {
        const std::string text = format_g17(v);
        CHECK(std::strtod(text.c_str(), nullptr) == v);
    }
}

TEST_CASE("heatmaps are 16-bit graymaps normalized over the channel") {
    Eigen::ArrayXXd channel(2, 3);
    channel << 0.0, 0.5, 1.0, 0.25, 0.75, 1.0;
    const auto path = std::filesystem::temp_directory_path() / "beablesim_test.pgm";
    write_heatmap_pgm16(channel, path);

    std::ifstream in(path, std::ios::binary);
    std::string magic;
    int w = 0;
    int h = 0;
    int maxval = 0;
    in >> magic >> w >> h >> maxval;
    CHECK(magic == "P5");
    CHECK(w == 3);
    CHECK(h == 2);
    CHECK(maxval == 65535);
    in.get();  // single whitespace after the header
    std::vector<unsigned char> bytes(static_cast<std::size_t>(w) * h * 2);
    in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    CHECK(in.gcount() == static_cast<std::streamsize>(bytes.size()));
    const auto pixel = [&](int i, int j) {
        const std::size_t off = 2 * (static_cast<std::size_t>(i) * w + j);
        return (bytes[off] << 8) | bytes[off + 1];
    };
    CHECK(pixel(0, 0) == 0);      // min maps to 0
    CHECK(pixel(0, 2) == 65535);  // max maps to full scale
    CHECK(pixel(0, 1) == 32768);  // midpoint, rounded

    // A constant channel degenerates to all-zero pixels.
    write_heatmap_pgm16(Eigen::ArrayXXd::Constant(2, 2, 3.5), path);
    std::ifstream flat(path, std::ios::binary);
    flat >> magic >> w >> h >> maxval;
    flat.get();
    std::vector<unsigned char> flat_bytes(8);
    flat.read(reinterpret_cast<char*>(flat_bytes.data()), flat_bytes.size());
    for (unsigned char b : flat_bytes) CHECK(b == 0);

    std::filesystem::remove(path);
}

TEST_CASE("trajectory and sample CSV rows") {
    const Scenario s = load_canonical("model1");
    const auto branches = enumerate_branches(s);
    std::vector<Trajectory> trajs{trace(s.photons[0], 0, branches[0], s)};
    std::ostringstream out;
    write_trajectories_csv(trajs, out);
    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "photon,branch,tStart,xStart,dir");
    std::string row;
    std::getline(lines, row);
    CHECK(row == "0,1,0,-5,1");
    std::getline(lines, row);
    CHECK(row == "0,1,5,0,-1");

    std::ostringstream samples;
    write_samples_csv({{7, "1", 0.3}}, samples);
    CHECK(samples.str() == "seed,branch,weight\n7,1,0.29999999999999999\n");
}
