#include "beablesim/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace beablesim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& msg) {
    throw ScenarioParseError(origin + ": " + msg);
}

void check_keys(const json& obj, const std::string& origin, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) fail(origin, path + ": unknown key '" + item.key() + "'");
    }
}

const json* find(const json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double require_number(const json& obj, const std::string& origin, const std::string& path,
                      const char* key) {
    const json* v = find(obj, key);
    if (v == nullptr) fail(origin, path + ": missing key '" + key + "'");
    if (!v->is_number()) fail(origin, path + "." + key + ": expected a number");
    return v->get<double>();
}

double optional_number(const json& obj, const std::string& origin, const std::string& path,
                       const char* key, double fallback) {
    const json* v = find(obj, key);
    if (v == nullptr) return fallback;
    if (!v->is_number()) fail(origin, path + "." + key + ": expected a number");
    return v->get<double>();
}

int require_int(const json& obj, const std::string& origin, const std::string& path,
                const char* key) {
    const json* v = find(obj, key);
    if (v == nullptr) fail(origin, path + ": missing key '" + key + "'");
    if (!v->is_number_integer()) fail(origin, path + "." + key + ": expected an integer");
    return v->get<int>();
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        fail(origin, std::string("parse error: ") + err.what());
    }
    if (!doc.is_object()) fail(origin, "top level must be an object");
    check_keys(doc, origin, "$", {"systems", "photons", "T", "grid", "seed", "tolerances"});

    Scenario s;
    s.final_time = require_number(doc, origin, "$", "T");

    if (const json* seed = find(doc, "seed")) {
        if (!seed->is_number_unsigned()) fail(origin, "$.seed: expected an unsigned integer");
        s.seed = seed->get<std::uint64_t>();
    }

    if (const json* tol = find(doc, "tolerances")) {
        if (!tol->is_object()) fail(origin, "$.tolerances: expected an object");
        check_keys(*tol, origin, "$.tolerances", {"tol_pos", "tol_norm", "tol_causal"});
        s.tol.pos = optional_number(*tol, origin, "$.tolerances", "tol_pos", s.tol.pos);
        s.tol.norm = optional_number(*tol, origin, "$.tolerances", "tol_norm", s.tol.norm);
        s.tol.causal = optional_number(*tol, origin, "$.tolerances", "tol_causal", s.tol.causal);
    }

    {
        const json* grid = find(doc, "grid");
        if (grid == nullptr) fail(origin, "$: missing key 'grid'");
        if (!grid->is_object()) fail(origin, "$.grid: expected an object");
        check_keys(*grid, origin, "$.grid", {"tMin", "tMax", "nt", "xMin", "xMax", "nx"});
        s.grid.t_min = require_number(*grid, origin, "$.grid", "tMin");
        s.grid.t_max = require_number(*grid, origin, "$.grid", "tMax");
        s.grid.nt = require_int(*grid, origin, "$.grid", "nt");
        s.grid.x_min = require_number(*grid, origin, "$.grid", "xMin");
        s.grid.x_max = require_number(*grid, origin, "$.grid", "xMax");
        s.grid.nx = require_int(*grid, origin, "$.grid", "nx");
    }

    if (const json* systems = find(doc, "systems")) {
        if (!systems->is_array()) fail(origin, "$.systems: expected an array");
        for (std::size_t i = 0; i < systems->size(); ++i) {
            const json& sysj = (*systems)[i];
            const std::string path = "$.systems[" + std::to_string(i) + "]";
            if (!sysj.is_object()) fail(origin, path + ": expected an object");
            check_keys(sysj, origin, path, {"mass", "sigma", "components"});
            MassiveSystem sys;
            sys.mass = require_number(sysj, origin, path, "mass");
            sys.sigma = optional_number(sysj, origin, path, "sigma", 0.0);
            const json* comps = find(sysj, "components");
            if (comps == nullptr) fail(origin, path + ": missing key 'components'");
            if (!comps->is_array()) fail(origin, path + ".components: expected an array");
            for (std::size_t c = 0; c < comps->size(); ++c) {
                const json& compj = (*comps)[c];
                const std::string cpath = path + ".components[" + std::to_string(c) + "]";
                if (!compj.is_object()) fail(origin, cpath + ": expected an object");
                check_keys(compj, origin, cpath, {"x", "re", "im"});
                Component comp;
                comp.x = require_number(compj, origin, cpath, "x");
                comp.amplitude = {require_number(compj, origin, cpath, "re"),
                                  optional_number(compj, origin, cpath, "im", 0.0)};
                sys.components.push_back(comp);
            }
            s.systems.push_back(std::move(sys));
        }
    }

    if (const json* photons = find(doc, "photons")) {
        if (!photons->is_array()) fail(origin, "$.photons: expected an array");
        for (std::size_t j = 0; j < photons->size(); ++j) {
            const json& phj = (*photons)[j];
            const std::string path = "$.photons[" + std::to_string(j) + "]";
            if (!phj.is_object()) fail(origin, path + ": expected an object");
            check_keys(phj, origin, path, {"x0", "dir", "energy"});
            Photon ph;
            ph.x0 = require_number(phj, origin, path, "x0");
            ph.dir = require_int(phj, origin, path, "dir");
            ph.energy = optional_number(phj, origin, path, "energy", 1.0);
            s.photons.push_back(ph);
        }
    }

    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioParseError("cannot open scenario file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), path.filename().string());
}

}  // namespace beablesim
