// barytree: conformal barycenter extensions of rational maps on hyperbolic
// 3-space, with bound certification, degeneration experiments, and finite
// metric-tree models. Subcommands wrap the library operations; outputs are
// CSV/JSON with the parsed config echoed into every artifact so runs are
// reproducible byte for byte.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "barytree/barycentric.hpp"
#include "barytree/csv.hpp"
#include "barytree/degeneration.hpp"
#include "barytree/errors.hpp"
#include "barytree/metric_tree.hpp"
#include "barytree/parallel.hpp"
#include "barytree/planar_balance.hpp"

using nlohmann::json;
using namespace barytree;

namespace {

int log_level() {
    const char* v = std::getenv("BARYTREE_LOG");
    return v ? std::atoi(v) : 0;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[barytree] " << msg << "\n";
}

// ---------------------------------------------------------------------------
// config handling

struct RunConfig {
    std::string command;
    json raw;           // full parsed config, echoed into outputs
    int quadrature_order = 30;
    uint64_t seed = 0;
    int workers = 1;
    std::string out;
    SolverOptions solver;
};

const std::map<std::string, std::set<std::string>>& allowed_keys() {
    static const std::set<std::string> common = {
        "command", "quadrature_order", "seed", "workers", "out", "tolerance"};
    static std::map<std::string, std::set<std::string>> m = [] {
        std::map<std::string, std::set<std::string>> mm;
        auto with = [&](const std::string& cmd, std::set<std::string> extra) {
            extra.insert(common.begin(), common.end());
            mm[cmd] = std::move(extra);
        };
        with("extend", {"map", "point"});
        with("lipscan", {"map", "samples", "max_depth"});
        with("belt", {"map", "azimuths", "recenter"});
        with("delta", {"grid"});
        with("preimages", {"map", "search"});
        with("family", {"family", "analysis", "period", "depth_grid", "search"});
        with("naturality", {"map", "family", "power", "point"});
        with("treecheck", {"tree_map", "interior_samples"});
        with("fit-tree", {"snapshot_csv", "points", "scale", "fit_tolerance"});
        with("snapshot", {"map", "scale", "marked_points", "marked_directions"});
        return mm;
    }();
    return m;
}

void validate_schema(const std::string& command, const json& cfg) {
    auto it = allowed_keys().find(command);
    if (it == allowed_keys().end()) throw ConfigError("unknown command: " + command);
    for (const auto& [key, val] : cfg.items()) {
        if (!it->second.count(key))
            throw ConfigError("unknown config field '" + key + "' for command " + command);
    }
    if (cfg.contains("command") && cfg["command"].get<std::string>() != command)
        throw ConfigError("config names command '" + cfg["command"].get<std::string>() +
                          "' but '" + command + "' was invoked");
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string config_hash(const json& cfg) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(cfg.dump())));
    return buf;
}

Complex parse_complex(const json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2)
        return Complex(j[0].get<double>(), j[1].get<double>());
    throw ConfigError("expected a number or [re, im] pair");
}

std::vector<Complex> parse_coeffs(const json& j) {
    std::vector<Complex> out;
    for (const auto& c : j) out.push_back(parse_complex(c));
    return out;
}

RationalMap parse_map(const json& j) {
    if (j.is_string()) {
        std::ifstream in(j.get<std::string>());
        if (!in) throw ConfigError("cannot open map file " + j.get<std::string>());
        json file_json = json::parse(in);
        return parse_map(file_json);
    }
    if (j.contains("power")) return RationalMap::power(j["power"].get<int>());
    if (j.contains("polynomial"))
        return RationalMap::polynomial(parse_coeffs(j["polynomial"]));
    if (j.contains("P") && j.contains("Q"))
        return RationalMap(parse_coeffs(j["P"]), parse_coeffs(j["Q"]));
    throw ConfigError("map needs either {P, Q}, {polynomial}, or {power}");
}

json map_to_json(const RationalMap& f) {
    json j;
    j["P"] = json::array();
    j["Q"] = json::array();
    for (const Complex& c : f.P()) j["P"].push_back({c.real(), c.imag()});
    for (const Complex& c : f.Q()) j["Q"].push_back({c.real(), c.imag()});
    return j;
}

BallPoint parse_point(const json& j) {
    if (j.is_array() && j.size() == 3)
        return BallPoint(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
    if (j.is_object() && j.contains("cylindrical")) {
        const auto& c = j["cylindrical"];
        return from_cylindrical(c[0].get<double>(), c[1].get<double>(), c[2].get<double>());
    }
    throw ConfigError("point needs [x,y,z] ball coordinates or {cylindrical: [r,theta,h]}");
}

FamilySpec parse_family(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    std::vector<Complex> params;
    for (const auto& p : j.at("parameters")) params.push_back(parse_complex(p));
    int degree = j.value("degree", 2);
    if (kind == "offset_power") return FamilySpec::offset_power(degree, params);
    if (kind == "scaled_power") return FamilySpec::scaled_power(degree, params);
    if (kind == "mobius_scale") return FamilySpec::mobius_scale(params);
    throw ConfigError("unknown family kind: " + kind);
}

PreimageSearchSpec parse_search(const json& cfg, uint64_t seed) {
    PreimageSearchSpec s;
    s.seed = seed ^ 0x5eedULL;
    if (!cfg.contains("search")) return s;
    const json& j = cfg["search"];
    for (const auto& [key, val] : j.items()) {
        if (key == "ray_depths") {
            s.ray_depths.clear();
            for (const auto& d : val) s.ray_depths.push_back(d.get<double>());
        } else if (key == "random_seeds")
            s.random_seeds = val.get<int>();
        else if (key == "depth_max")
            s.random_depth_max = val.get<double>();
        else if (key == "dedupe_radius")
            s.dedupe_radius = val.get<double>();
        else
            throw ConfigError("unknown search field '" + key + "'");
    }
    return s;
}

RunConfig load_config(const std::string& command, const std::string& config_path,
                      int order_flag, long long seed_flag, const std::string& out_flag,
                      int workers_flag) {
    RunConfig rc;
    rc.command = command;
    rc.raw = json::object();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("cannot open config " + config_path);
        try {
            rc.raw = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("config is not valid json: ") + e.what());
        }
    }
    if (!rc.raw.is_object()) throw ConfigError("config must be a json object");
    if (order_flag > 0) rc.raw["quadrature_order"] = order_flag;
    if (seed_flag >= 0) rc.raw["seed"] = seed_flag;
    if (!out_flag.empty()) rc.raw["out"] = out_flag;
    if (workers_flag > 0) rc.raw["workers"] = workers_flag;
    validate_schema(command, rc.raw);

    rc.quadrature_order = rc.raw.value("quadrature_order", 30);
    rc.seed = rc.raw.value("seed", 0ULL);
    rc.workers = rc.raw.value("workers", 1);
    rc.out = rc.raw.value("out", "");
    if (rc.raw.contains("tolerance")) {
        const json& t = rc.raw["tolerance"];
        for (const auto& [key, val] : t.items()) {
            if (key == "solver") rc.solver.tolerance = val.get<double>();
            else if (key == "max_iterations") rc.solver.max_iterations = val.get<int>();
            else throw ConfigError("unknown tolerance field '" + key + "'");
        }
    }
    return rc;
}

void write_text(const RunConfig& rc, const std::string& text) {
    if (rc.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(rc.out, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file " + rc.out);
    out << text;
}

void emit_json(const RunConfig& rc, json result) {
    json doc;
    doc["config"] = rc.raw;
    doc["config_hash"] = config_hash(rc.raw);
    doc["result"] = std::move(result);
    write_text(rc, doc.dump(2) + "\n");
}

CsvWriter make_csv(const RunConfig& rc, std::vector<std::string> columns) {
    CsvWriter csv(std::move(columns));
    csv.set_meta("config", rc.raw.dump());
    csv.set_meta("config_hash", config_hash(rc.raw));
    csv.set_meta("quadrature_order", std::to_string(rc.quadrature_order));
    csv.set_meta("seed", std::to_string(rc.seed));
    return csv;
}

std::string fd(double v) { return format_double(v); }

// ---------------------------------------------------------------------------
// commands

int cmd_extend(const RunConfig& rc) {
    RationalMap f = parse_map(rc.raw.at("map"));
    BallPoint x = rc.raw.contains("point") ? parse_point(rc.raw["point"]) : BallPoint();
    QuadratureRule rule = make_quadrature(rc.quadrature_order);
    ExtensionResult r = extend(f, x, rule, rc.solver);
    BallPoint p = r.point();
    json out;
    out["point"] = {p.vec().x, p.vec().y, p.vec().z};
    CylindricalPoint c = to_cylindrical(p);
    out["cylindrical"] = {c.r, c.theta, c.h};
    out["residual"] = r.residual;
    out["iterations"] = r.iterations;
    emit_json(rc, out);
    return 0;
}

int cmd_lipscan(const RunConfig& rc) {
    RationalMap f = parse_map(rc.raw.at("map"));
    int samples = rc.raw.value("samples", 10000);
    double max_depth = rc.raw.value("max_depth", 20.0);
    QuadratureRule rule = make_quadrature(rc.quadrature_order);
    LipschitzScanResult s =
        lipschitz_scan(f, samples, rc.seed, rule, max_depth, rc.workers, rc.solver);

    CsvWriter csv = make_csv(rc, {"index", "depth", "dir_x", "dir_y", "dir_z",
                                  "on_critical_ray", "norm", "failed"});
    csv.set_meta("degree", std::to_string(f.degree()));
    csv.set_meta("bound", fd(s.bound));
    csv.set_meta("max_norm", fd(s.max_norm));
    csv.set_meta("max_over_degree", fd(s.max_over_degree));
    csv.set_meta("bound_ok", s.bound_ok ? "true" : "false");
    csv.set_meta("errors", std::to_string(s.error_count));
    for (int i = 0; i < s.sample_count; i++) {
        const auto& smp = s.samples[i];
        csv.add_row({std::to_string(i), fd(smp.depth), fd(smp.direction.x),
                     fd(smp.direction.y), fd(smp.direction.z),
                     smp.on_critical_ray ? "1" : "0", fd(smp.norm),
                     smp.failed ? "1" : "0"});
    }
    write_text(rc, csv.to_string());
    if (!s.bound_ok) {
        std::cerr << "lipscan: certified bound exceeded (max " << s.max_norm << " > "
                  << s.bound << ")\n";
        return 2;
    }
    return 0;
}

int cmd_belt(const RunConfig& rc) {
    RationalMap f = parse_map(rc.raw.at("map"));
    QuadratureRule rule = make_quadrature(rc.quadrature_order);
    bool recenter_first = rc.raw.value("recenter", true);
    RationalMap g = recenter_first ? recenter(f, rule, rc.solver) : f;
    BeltVolume v = belt_volume(g, rule, 1e-6, rc.raw.value("azimuths", 0));
    json out;
    out["V"] = v.belt;
    out["V1"] = v.cap_inner;
    out["V2"] = v.cap_outer;
    out["lower_bound"] = v.lower_bound;
    out["bound_ok"] = v.belt >= v.lower_bound - 1e-3;
    out["recentered"] = recenter_first;
    emit_json(rc, out);
    return out["bound_ok"].get<bool>() ? 0 : 2;
}

int cmd_delta(const RunConfig& rc) {
    std::vector<double> grid = {0.5, 1.0, 2.0, 4.0, 8.0};
    if (rc.raw.contains("grid")) {
        grid.clear();
        for (const auto& g : rc.raw["grid"]) grid.push_back(g.get<double>());
    }
    std::vector<DeltaPoint> pts = delta_curve(grid);
    CsvWriter csv = make_csv(rc, {"r", "delta", "radial_image"});
    for (const auto& p : pts) csv.add_row({fd(p.r), fd(p.delta), fd(p.radial_image)});
    write_text(rc, csv.to_string());
    return 0;
}

int cmd_preimages(const RunConfig& rc) {
    RationalMap f = parse_map(rc.raw.at("map"));
    QuadratureRule rule = make_quadrature(rc.quadrature_order);
    PreimageSearchSpec search = parse_search(rc.raw, rc.seed);
    PreimageSet p = preimages_of_origin(f, rule, search, rc.solver);
    json out;
    out["count"] = p.solutions.size();
    out["rescale_radius_lower_bound"] = rescale_radius(p);
    out["seeds_tried"] = p.seeds_tried;
    out["solutions"] = json::array();
    for (const auto& s : p.solutions) {
        json sol;
        sol["depth"] = s.depth;
        sol["residual"] = s.residual;
        if (s.depth < 30.0) {
            BallPoint b = s.point_or_throw();
            sol["point"] = {b.vec().x, b.vec().y, b.vec().z};
        }
        out["solutions"].push_back(sol);
    }
    emit_json(rc, out);
    return 0;
}

int cmd_family(const RunConfig& rc) {
    FamilySpec fam = parse_family(rc.raw.at("family"));
    QuadratureRule rule = make_quadrature(rc.quadrature_order);
    PreimageSearchSpec search = parse_search(rc.raw, rc.seed);
    std::string analysis = rc.raw.value("analysis", "indicator");
    bool any_failed = false;
    if (analysis == "indicator") {
        auto rows = degeneration_indicator(fam, rule, search, rc.solver);
        CsvWriter csv = make_csv(rc, {"parameter_re", "parameter_im", "radius", "resultant"});
        csv.set_meta("family", fam.label);
        for (const auto& r : rows) {
            if (r.failed) {
                csv.add_comment("parameter " + fd(r.parameter.real()) + " failed: " + r.error);
                any_failed = true;
                continue;
            }
            csv.add_row({fd(r.parameter.real()), fd(r.parameter.imag()), fd(r.radius),
                         fd(r.resultant)});
        }
        write_text(rc, csv.to_string());
    } else if (analysis == "translation") {
        int q = rc.raw.value("period", 1);
        std::vector<double> grid = {0.25, 0.5, 0.75, 1.0};
        if (rc.raw.contains("depth_grid")) {
            grid.clear();
            for (const auto& g : rc.raw["depth_grid"]) grid.push_back(g.get<double>());
        }
        auto recs = translation_estimate(fam, q, rule, grid, search, rc.solver);
        CsvWriter csv = make_csv(rc, {"parameter_re", "parameter_im", "r", "L", "L_over_r",
                                      "displacement_ratio", "gap"});
        csv.set_meta("family", fam.label);
        csv.set_meta("period", std::to_string(q));
        for (const auto& r : recs) {
            if (r.failed) {
                csv.add_comment("parameter " + fd(r.parameter.real()) + " failed: " + r.error);
                any_failed = true;
                continue;
            }
            csv.add_row({fd(r.parameter.real()), fd(r.parameter.imag()), fd(r.radius),
                         fd(r.cycle_len), fd(r.multiplier_ratio), fd(r.displacement_ratio),
                         fd(r.gap)});
        }
        write_text(rc, csv.to_string());
    } else {
        throw ConfigError("analysis must be 'indicator' or 'translation'");
    }
    return any_failed ? 2 : 0;
}

int cmd_naturality(const RunConfig& rc) {
    QuadratureRule rule = make_quadrature(rc.quadrature_order);
    int power = rc.raw.value("power", 2);
    BallPoint x = rc.raw.contains("point") ? parse_point(rc.raw["point"]) : BallPoint();
    if (rc.raw.contains("map")) {
        RationalMap f = parse_map(rc.raw["map"]);
        double gap = naturality_gap(f, power, x, rule, rc.solver);
        json out;
        out["gap"] = gap;
        out["power"] = power;
        emit_json(rc, out);
        return 0;
    }
    FamilySpec fam = parse_family(rc.raw.at("family"));
    PreimageSearchSpec search = parse_search(rc.raw, rc.seed);
    CsvWriter csv = make_csv(rc, {"parameter_re", "parameter_im", "radius", "gap",
                                  "gap_over_radius"});
    bool any_failed = false;
    for (Complex p : fam.parameters) {
        try {
            RationalMap f = fam.generator(p);
            double gap = naturality_gap(f, power, x, rule, rc.solver);
            double radius = rescale_radius(preimages_of_origin(f, rule, search, rc.solver));
            csv.add_row({fd(p.real()), fd(p.imag()), fd(radius), fd(gap), fd(gap / radius)});
        } catch (const std::exception& e) {
            csv.add_comment("parameter " + fd(p.real()) + " failed: " + e.what());
            any_failed = true;
        }
    }
    write_text(rc, csv.to_string());
    return any_failed ? 2 : 0;
}

int cmd_treecheck(const RunConfig& rc) {
    json tm = rc.raw.at("tree_map");
    std::string text;
    if (tm.is_string()) {
        std::ifstream in(tm.get<std::string>());
        if (!in) throw ConfigError("cannot open tree map file " + tm.get<std::string>());
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else {
        text = tm.dump();
    }
    TreeMap m = tree_map_from_json(text);
    ValidationReport rep = validate_branched_cover(m, rc.raw.value("interior_samples", 7));
    json out;
    out["valid"] = rep.valid;
    out["degree"] = rep.declared_degree;
    out["witnesses"] = rep.witnesses;
    emit_json(rc, out);
    return rep.valid ? 0 : 2;
}

int cmd_snapshot(const RunConfig& rc) {
    RationalMap f = parse_map(rc.raw.at("map"));
    double scale = rc.raw.at("scale").get<double>();
    QuadratureRule rule = make_quadrature(rc.quadrature_order);
    std::vector<BallPoint> marks;
    if (rc.raw.contains("marked_points"))
        for (const auto& p : rc.raw["marked_points"]) marks.push_back(parse_point(p));
    std::vector<PlanePoint> dirs;
    if (rc.raw.contains("marked_directions"))
        for (const auto& d : rc.raw["marked_directions"])
            dirs.push_back(PlanePoint(parse_complex(d)));
    auto recs = snapshot(f, scale, marks, dirs, rule, rc.solver);
    CsvWriter csv = make_csv(rc, {"label", "x", "y", "z"});
    csv.set_meta("scale", fd(scale));
    for (const auto& r : recs)
        csv.add_row({r.label, fd(r.rescaled.x), fd(r.rescaled.y), fd(r.rescaled.z)});
    write_text(rc, csv.to_string());
    return 0;
}

int cmd_fit_tree(const RunConfig& rc) {
    double tol = rc.raw.value("fit_tolerance", 1e-6);
    std::vector<std::string> labels;
    std::vector<Vec3> rescaled;
    double scale = rc.raw.value("scale", 1.0);

    if (rc.raw.contains("snapshot_csv")) {
        std::ifstream in(rc.raw["snapshot_csv"].get<std::string>());
        if (!in) throw ConfigError("cannot open snapshot csv");
        std::string line;
        bool header_seen = false;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (line[0] == '#') {
                auto pos = line.find("scale:");
                if (pos != std::string::npos)
                    scale = std::atof(line.substr(pos + 6).c_str());
                continue;
            }
            if (!header_seen) {
                header_seen = true; // column header row
                continue;
            }
            std::istringstream ss(line);
            std::string cell;
            std::vector<std::string> cells;
            while (std::getline(ss, cell, ',')) cells.push_back(cell);
            if (cells.size() != 4) throw ConfigError("snapshot csv row needs 4 cells");
            labels.push_back(cells[0]);
            rescaled.push_back(Vec3{std::atof(cells[1].c_str()), std::atof(cells[2].c_str()),
                                    std::atof(cells[3].c_str())});
        }
    } else if (rc.raw.contains("points")) {
        for (const auto& p : rc.raw["points"]) {
            labels.push_back(p.at("label").get<std::string>());
            rescaled.push_back(Vec3{p.at("x").get<double>(), p.at("y").get<double>(),
                                    p.at("z").get<double>()});
        }
    } else {
        throw ConfigError("fit-tree needs snapshot_csv or points");
    }
    if (labels.size() < 2) throw ConfigError("fit-tree needs at least 2 points");

    // reconstruct rescaled hyperbolic distances from (direction, depth)
    const std::size_t n = labels.size();
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; i++)
        for (std::size_t j = i + 1; j < n; j++) {
            double di = rescaled[i].norm() * scale, dj = rescaled[j].norm() * scale;
            Vec3 ui = di > 0 ? rescaled[i].normalized() : Vec3{0, 0, 1};
            Vec3 uj = dj > 0 ? rescaled[j].normalized() : Vec3{0, 0, 1};
            double d = hyp_dist_polar(di, ui, dj, uj) / scale;
            dist[i][j] = dist[j][i] = d;
        }
    TreeFit fit = fit_tree(labels, dist, tol);
    json out;
    out["ok"] = fit.ok;
    out["max_distortion"] = fit.max_distortion;
    out["tree"] = json::parse(tree_to_json(fit.tree));
    if (!fit.ok) {
        out["worst_quadruple"] = {labels[fit.worst_quadruple[0]], labels[fit.worst_quadruple[1]],
                                  labels[fit.worst_quadruple[2]], labels[fit.worst_quadruple[3]]};
        out["worst_defect"] = fit.worst_defect;
    }
    emit_json(rc, out);
    return fit.ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"conformal barycenter extensions of rational maps on H^3"};
    app.require_subcommand(1);

    std::string config_path, out_flag;
    int order_flag = 0, workers_flag = 0;
    long long seed_flag = -1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--seed", seed_flag, "RNG seed (overrides config)");
        cmd->add_option("--quadrature-order", order_flag, "quadrature order (overrides config)");
        cmd->add_option("--out", out_flag, "output path (default stdout)");
        cmd->add_option("--workers", workers_flag, "worker thread count");
    };

    std::map<std::string, int (*)(const RunConfig&)> handlers = {
        {"extend", cmd_extend},       {"lipscan", cmd_lipscan},
        {"belt", cmd_belt},           {"delta", cmd_delta},
        {"preimages", cmd_preimages}, {"family", cmd_family},
        {"naturality", cmd_naturality}, {"treecheck", cmd_treecheck},
        {"fit-tree", cmd_fit_tree},   {"snapshot", cmd_snapshot},
    };
    std::map<std::string, std::string> help = {
        {"extend", "barycentric extension of a map at a point"},
        {"lipscan", "stratified scan of the extension's derivative norm"},
        {"belt", "belt and cap measures of a recentered map"},
        {"delta", "radial defect curve of the z^2 extension"},
        {"preimages", "origin preimages of the extension and the rescaling radius"},
        {"family", "degeneration indicators or translation estimates for a family"},
        {"naturality", "gap between iterate extension and extension iterate"},
        {"treecheck", "validate a branched tree cover"},
        {"fit-tree", "fit a tree metric to a rescaled snapshot"},
        {"snapshot", "rescaled positions of marked points and their images"},
    };
    for (auto& [name, fn] : handlers) add_common(app.add_subcommand(name, help[name]));

    CLI11_PARSE(app, argc, argv);
    std::string command = app.get_subcommands().front()->get_name();

    try {
        RunConfig rc = load_config(command, config_path, order_flag, seed_flag, out_flag,
                                   workers_flag);
        log_info("running " + command + " (config hash " + config_hash(rc.raw) + ")");
        return handlers.at(command)(rc);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    }
}
