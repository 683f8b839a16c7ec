#include "pathgauge/scenario.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "pathgauge/classical.hpp"
#include "pathgauge/flux.hpp"
#include "pathgauge/oned.hpp"
#include "pathgauge/potential.hpp"
#include "pathgauge/quantization.hpp"

namespace pathgauge {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

const Json& need(const Json& j, const char* key, const std::string& ctx) {
    if (!j.is_object() || !j.contains(key)) {
        throw validation_error(ctx + ": missing key '" + key + "'");
    }
    return j.at(key);
}

double need_num(const Json& j, const char* key, const std::string& ctx) {
    const Json& v = need(j, key, ctx);
    if (!v.is_number()) throw validation_error(ctx + ": '" + std::string(key) + "' must be a number");
    return v.get<double>();
}

std::string need_str(const Json& j, const char* key, const std::string& ctx) {
    const Json& v = need(j, key, ctx);
    if (!v.is_string()) throw validation_error(ctx + ": '" + std::string(key) + "' must be a string");
    return v.get<std::string>();
}

double opt_num(const Json& j, const char* key, double fallback) {
    if (j.is_object() && j.contains(key)) {
        const Json& v = j.at(key);
        if (!v.is_number()) throw validation_error(std::string("'") + key + "' must be a number");
        return v.get<double>();
    }
    return fallback;
}

Vector3 as_three(const Json& v, const std::string& ctx) {
    if (!v.is_array() || v.size() != 3) throw validation_error(ctx + ": expected 3 numbers");
    Vector3 out;
    for (int i = 0; i < 3; ++i) out[i] = v.at(i).get<double>();
    return out;
}

FourVector as_four(const Json& v, const std::string& ctx) {
    if (!v.is_array() || v.size() != 4) throw validation_error(ctx + ": expected 4 numbers");
    FourVector out;
    for (int i = 0; i < 4; ++i) out[i] = v.at(i).get<double>();
    return out;
}

std::vector<double> as_numbers(const Json& v, const std::string& ctx) {
    if (!v.is_array() || v.empty()) throw validation_error(ctx + ": expected a nonempty array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) throw validation_error(ctx + ": expected numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

Constants parse_constants(const Json& cfg) {
    Constants k;
    if (cfg.contains("constants")) {
        const Json& c = cfg.at("constants");
        k.hbar = opt_num(c, "hbar", k.hbar);
        k.c = opt_num(c, "c", k.c);
        k.e = opt_num(c, "e", k.e);
    }
    if (!(k.hbar > 0.0) || !(k.c > 0.0)) {
        throw validation_error("constants: hbar and c must be positive");
    }
    return k;
}

FieldConfig parse_field(const Json& cfg, const Constants& k) {
    const Json& spec = need(cfg, "field", "config");
    const std::string type = need_str(spec, "type", "field");
    if (type == "uniform_e") return uniform_electric(as_three(need(spec, "E0", "field"), "field.E0"));
    if (type == "uniform_b") return uniform_magnetic(as_three(need(spec, "B0", "field"), "field.B0"));
    if (type == "uniform_eb") {
        return uniform_field(as_three(need(spec, "E0", "field"), "field.E0"),
                             as_three(need(spec, "B0", "field"), "field.B0"));
    }
    if (type == "monopole") return monopole(need_num(spec, "g", "field"));
    if (type == "disk") return magnetic_disk(need_num(spec, "B0", "field"), need_num(spec, "r0", "field"));
    if (type == "eblock") {
        return electric_block(need_num(spec, "E0", "field"), need_num(spec, "dt", "field"),
                              need_num(spec, "dx", "field"), k.c);
    }
    throw validation_error("field: unknown type '" + type +
                           "' (known: uniform_e, uniform_b, uniform_eb, monopole, disk, eblock)");
}

PathFamily parse_path(const Json& cfg, const std::string& alias) {
    if (!cfg.contains("paths") || !cfg.at("paths").is_object() || !cfg.at("paths").contains(alias)) {
        throw validation_error("paths: no entry named '" + alias + "'");
    }
    const Json& spec = cfg.at("paths").at(alias);
    const std::string ctx = "paths." + alias;
    if (spec.contains("builtin")) {
        BuiltinPathOptions opt;
        opt.far_radius = opt_num(spec, "far_radius", opt.far_radius);
        opt.axis_clearance = opt_num(spec, "axis_clearance", opt.axis_clearance);
        opt.detour_half_ct = opt_num(spec, "detour_half_ct", opt.detour_half_ct);
        opt.detour_half_x = opt_num(spec, "detour_half_x", opt.detour_half_x);
        opt.detour_half_y = opt_num(spec, "detour_half_y", opt.detour_half_y);
        if (spec.contains("origin")) opt.origin = as_four(spec.at("origin"), ctx + ".origin");
        return builtin_path(need_str(spec, "builtin", ctx), opt);
    }
    if (spec.contains("waypoints")) {
        const Json& w = spec.at("waypoints");
        if (!w.is_array() || w.size() < 1) throw validation_error(ctx + ": waypoints must be a nonempty array");
        std::vector<FourVector> pts;
        for (const auto& p : w) pts.push_back(as_four(p, ctx + ".waypoints"));
        return waypoint_path(alias, pts.front(), {pts.begin() + 1, pts.end()});
    }
    throw validation_error(ctx + ": need either 'builtin' or 'waypoints'");
}

PotentialField parse_reference(const Json& spec, const Constants& k) {
    const std::string type = need_str(spec, "type", "reference");
    if (type == "velocity_gauge") return reference::velocity_gauge(as_three(need(spec, "E0", "reference"), "reference.E0"));
    if (type == "length_gauge") return reference::length_gauge(as_three(need(spec, "E0", "reference"), "reference.E0"));
    if (type == "fock_schwinger") {
        return reference::fock_schwinger(tensor_from_EB(
            as_three(need(spec, "E0", "reference"), "reference.E0"),
            as_three(need(spec, "B0", "reference"), "reference.B0")));
    }
    if (type == "monopole_north") return reference::monopole_north(need_num(spec, "g", "reference"));
    if (type == "monopole_south") return reference::monopole_south(need_num(spec, "g", "reference"));
    if (type == "disk") return reference::disk(need_num(spec, "B0", "reference"), need_num(spec, "r0", "reference"));
    if (type == "eblock") {
        return reference::eblock(need_num(spec, "E0", "reference"), need_num(spec, "dt", "reference"),
                                 need_num(spec, "dx", "reference"), k.c);
    }
    throw validation_error("reference: unknown type '" + type + "'");
}

std::vector<FourVector> parse_grid(const Json& g) {
    std::vector<FourVector> pts;
    if (g.contains("list")) {
        for (const auto& p : g.at("list")) pts.push_back(as_four(p, "grid.list"));
        if (pts.empty()) throw validation_error("grid.list: empty");
        return pts;
    }
    const double ct = need_num(g, "ct", "grid");
    const Vector3 lo = as_three(need(g, "min", "grid"), "grid.min");
    const Vector3 hi = as_three(need(g, "max", "grid"), "grid.max");
    const Json& pj = need(g, "points", "grid");
    if (!pj.is_array() || pj.size() != 3) throw validation_error("grid.points: expected 3 integers");
    int n[3];
    for (int i = 0; i < 3; ++i) {
        n[i] = pj.at(i).get<int>();
        if (n[i] < 1 || n[i] > 512) throw validation_error("grid.points: entries must be in [1, 512]");
    }
    auto coord = [&](int axis, int idx) {
        return n[axis] == 1 ? lo[axis] : lo[axis] + (hi[axis] - lo[axis]) * idx / double(n[axis] - 1);
    };
    for (int i = 0; i < n[0]; ++i) {
        for (int j = 0; j < n[1]; ++j) {
            for (int kk = 0; kk < n[2]; ++kk) {
                pts.push_back(event(ct, {coord(0, i), coord(1, j), coord(2, kk)}));
            }
        }
    }
    return pts;
}

// Index-addressed parallel map; worker count from PATHGAUGE_THREADS. Results
// land in caller-owned slots, so ordering and output bytes never depend on
// the thread count.
void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
    const int workers = scenario_threads();
    if (workers <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_lock;
    auto drain = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::scoped_lock guard(error_lock);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const size_t count = std::min<size_t>(static_cast<size_t>(workers), n);
    pool.reserve(count);
    for (size_t t = 0; t < count; ++t) pool.emplace_back(drain);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

struct TaskOutput {
    std::string filename;
    std::string csv;
    std::vector<std::string> notes;  // task-specific summary lines
};

constexpr const char* kPotentialHeader = "x0,x1,x2,x3,A_0,A_1,A_2,A_3,err\n";
constexpr const char* kFluxHeader = "phi,flux,err\n";
constexpr const char* kQuantizeHeader = "phase,n,residual,quantized\n";

std::string potential_row(const FourVector& x, const FourVector& a, double err) {
    std::string line;
    for (int i = 0; i < 4; ++i) line += fmt17(x[i]) + ",";
    for (int i = 0; i < 4; ++i) line += fmt17(a[i]) + ",";
    line += fmt17(err);
    line += "\n";
    return line;
}

std::string quantize_rows(const std::vector<ChargeScanRow>& rows) {
    std::string csv = kQuantizeHeader;
    for (const auto& r : rows) {
        csv += fmt17(r.report.phase) + "," + std::to_string(r.report.n_nearest) + "," +
               fmt17(r.report.residual) + "," + (r.report.quantized ? "1" : "0") + "\n";
    }
    return csv;
}

struct RunSettings {
    PotentialOptions pot;
    SurfaceQuadratureOptions surf;
    double quantize_tol = 1e-6;
};

RunSettings parse_settings(const Json& cfg, const ScenarioOverrides& ov) {
    RunSettings s;
    if (cfg.contains("tolerances")) {
        const Json& t = cfg.at("tolerances");
        s.pot.quad.tol = opt_num(t, "quad", s.pot.quad.tol);
        s.surf.tol = opt_num(t, "surface", s.surf.tol);
        s.quantize_tol = opt_num(t, "quantize", s.quantize_tol);
    }
    if (ov.tol > 0.0) {
        s.pot.quad.tol = ov.tol;
        s.surf.tol = ov.tol;
    }
    if (ov.quad_order > 1) {
        s.pot.quad.order = ov.quad_order;
        s.surf.order = ov.quad_order;
    }
    // Keep the failure tripwire above the requested resolution.
    s.pot.quad.fail_threshold = std::max(1e-6, 1e4 * s.pot.quad.tol);
    return s;
}

TaskOutput run_potential_task(const Json& cfg, const Json& task, const Constants& k,
                              const RunSettings& s) {
    const FieldConfig field = parse_field(cfg, k);
    const PathFamily path = parse_path(cfg, need_str(task, "path", "task"));
    const std::vector<FourVector> grid = parse_grid(need(task, "grid", "task"));

    std::vector<PotentialSample> samples(grid.size());
    parallel_for(grid.size(), [&](size_t i) { samples[i] = potential_at(field, path, grid[i], s.pot); });

    TaskOutput out;
    out.csv = kPotentialHeader;
    double max_err = 0.0;
    for (const auto& smp : samples) {
        out.csv += potential_row(smp.x, smp.a, smp.err);
        max_err = std::max(max_err, smp.err);
    }
    out.notes.push_back("rows " + std::to_string(samples.size()) + "  max_err " + fmt3(max_err));
    return out;
}

TaskOutput run_gauge_compare_task(const Json& cfg, const Json& task, const Constants& k,
                                  const RunSettings& s) {
    const FieldConfig field = parse_field(cfg, k);
    const PathFamily path = parse_path(cfg, need_str(task, "path", "task"));
    const PotentialField ref = parse_reference(need(task, "reference", "task"), k);
    const std::vector<FourVector> grid = parse_grid(need(task, "grid", "task"));

    std::vector<PotentialSample> samples(grid.size());
    parallel_for(grid.size(), [&](size_t i) { samples[i] = potential_at(field, path, grid[i], s.pot); });

    TaskOutput out;
    out.csv = kPotentialHeader;
    double max_diff = 0.0, sum_diff = 0.0, max_err = 0.0;
    for (const auto& smp : samples) {
        out.csv += potential_row(smp.x, smp.a, smp.err);
        const double d = (smp.a - ref(smp.x)).lpNorm<Eigen::Infinity>();
        max_diff = std::max(max_diff, d);
        sum_diff += d;
        max_err = std::max(max_err, smp.err);
    }
    out.notes.push_back("rows " + std::to_string(samples.size()));
    out.notes.push_back("reference max_diff " + fmt3(max_diff) + "  mean_diff " +
                        fmt3(sum_diff / double(samples.size())) + "  max_err " + fmt3(max_err));
    return out;
}

TaskOutput run_flux_task(const Json& cfg, const Json& task, const Constants& k,
                         const RunSettings& s) {
    const FieldConfig field = parse_field(cfg, k);
    const std::string route = need_str(task, "route", "task");
    TaskOutput out;
    out.csv = kFluxHeader;

    if (route == "open") {
        const PathFamily path_a = parse_path(cfg, need_str(task, "path_a", "task"));
        const PathFamily path_b = parse_path(cfg, need_str(task, "path_b", "task"));
        const FourVector base = as_four(need(task, "x", "task"), "task.x");
        const Json& sweep = need(task, "sweep", "task");
        const int component = static_cast<int>(need_num(sweep, "component", "task.sweep"));
        if (component < 0 || component > 3) throw validation_error("task.sweep.component: must be 0..3");
        const std::vector<double> values = as_numbers(need(sweep, "values", "task.sweep"), "task.sweep.values");

        std::vector<FluxResult> rows(values.size());
        parallel_for(values.size(), [&](size_t i) {
            FourVector x = base;
            x[component] = values[i];
            rows[i] = flux_open(field, path_a, path_b, x, s.pot);
        });
        double max_err = 0.0;
        for (size_t i = 0; i < rows.size(); ++i) {
            out.csv += fmt17(values[i]) + "," + fmt17(rows[i].value) + "," + fmt17(rows[i].err) + "\n";
            max_err = std::max(max_err, rows[i].err);
        }
        out.notes.push_back("route open  rows " + std::to_string(rows.size()) + "  max_err " + fmt3(max_err));
        if (!rows.empty() && rows.front().confined_warning) {
            out.notes.push_back("warning: open route on a confined field");
        }
        return out;
    }

    if (route == "slice") {
        const double radius = need_num(task, "radius", "task");
        const std::vector<double> values = as_numbers(need(task, "values", "task"), "task.values");
        constexpr double two_pi = 2.0 * std::numbers::pi;

        std::vector<FluxResult> rows(values.size());
        parallel_for(values.size(), [&](size_t i) {
            rows[i] = std::abs(values[i] - two_pi) <= 1e-12
                          ? full_sphere_flux(field, radius, s.surf)
                          : flux_surface(field, sphere_slice(radius, values[i]), s.surf);
        });
        double max_err = 0.0;
        for (size_t i = 0; i < rows.size(); ++i) {
            out.csv += fmt17(values[i]) + "," + fmt17(rows[i].value) + "," + fmt17(rows[i].err) + "\n";
            max_err = std::max(max_err, rows[i].err);
        }
        out.notes.push_back("route surface (sphere slice)  rows " + std::to_string(rows.size()) +
                            "  max_err " + fmt3(max_err));
        return out;
    }

    throw validation_error("task.route: unknown '" + route + "' (known: open, slice)");
}

TaskOutput run_quantize_task(const Json& cfg, const Json& task, const Constants& k,
                             const RunSettings& s) {
    const Json& source = need(task, "source", "task");
    const std::string kind = need_str(source, "kind", "task.source");

    FluxResult flux;
    if (kind == "value") {
        flux.value = need_num(source, "flux", "task.source");
        flux.route = "given";
    } else if (kind == "loop") {
        const FieldConfig field = parse_field(cfg, k);
        LoopSpec loop;
        loop.path_a = parse_path(cfg, need_str(source, "path_a", "task.source"));
        loop.path_b = parse_path(cfg, need_str(source, "path_b", "task.source"));
        loop.winding = static_cast<int>(opt_num(source, "winding", 1.0));
        const PathFamily pot_path = parse_path(cfg, need_str(source, "potential_path", "task.source"));
        const FourVector x = as_four(need(source, "x", "task.source"), "task.source.x");
        const PotentialOptions popt = s.pot;
        PotentialField a = [field, pot_path, popt](const FourVector& y) {
            return potential_at(field, pot_path, y, popt).a;
        };
        flux = flux_loop(a, loop, x, s.pot.quad);
    } else if (kind == "rectangle") {
        const FieldConfig field = parse_field(cfg, k);
        std::vector<double> us, vs;
        if (source.contains("u_splits")) us = as_numbers(source.at("u_splits"), "task.source.u_splits");
        if (source.contains("v_splits")) vs = as_numbers(source.at("v_splits"), "task.source.v_splits");
        const SurfaceSpec rect = coordinate_rectangle(
            as_four(need(source, "corner", "task.source"), "task.source.corner"),
            as_four(need(source, "edge_u", "task.source"), "task.source.edge_u"),
            as_four(need(source, "edge_v", "task.source"), "task.source.edge_v"), us, vs);
        flux = flux_surface(field, rect, s.surf);
    } else {
        throw validation_error("task.source.kind: unknown '" + kind + "' (known: value, loop, rectangle)");
    }

    const Json& scan = need(task, "scan", "task");
    const auto rows = scan_charges(flux.value, k, need_num(scan, "e_min", "task.scan"),
                                   need_num(scan, "e_max", "task.scan"),
                                   static_cast<int>(need_num(scan, "count", "task.scan")),
                                   s.quantize_tol);

    TaskOutput out;
    out.csv = quantize_rows(rows);
    out.notes.push_back("flux " + fmt17(flux.value) + "  err " + fmt3(flux.err) + "  route " + flux.route);
    out.notes.push_back("scan rows " + std::to_string(rows.size()));
    return out;
}

TaskOutput run_classical_task(const Json& cfg, const Json& task, const Constants& k,
                              const RunSettings& s) {
    (void)s;
    const FieldConfig field = parse_field(cfg, k);
    const FourVector x0 = as_four(need(task, "x0", "task"), "task.x0");
    const std::vector<FourVector> grid = parse_grid(need(task, "grid", "task"));
    const double bvp_tol = opt_num(task, "bvp_tol", 1e-10);
    const double fd_step = opt_num(task, "fd_step", 1e-4);

    std::vector<PotentialSample> samples(grid.size());
    parallel_for(grid.size(), [&](size_t i) {
        samples[i] = classical_potential(field, x0, grid[i], k, bvp_tol, fd_step);
    });

    TaskOutput out;
    out.csv = kPotentialHeader;
    double max_err = 0.0;
    for (const auto& smp : samples) {
        out.csv += potential_row(smp.x, smp.a, smp.err);
        max_err = std::max(max_err, smp.err);
    }
    out.notes.push_back("rows " + std::to_string(samples.size()) + "  max_err " + fmt3(max_err));
    return out;
}

WorldLine1D parse_line_1d(const Json& v, const std::string& ctx) {
    if (!v.is_array() || v.size() < 2) throw validation_error(ctx + ": expected >= 2 vertices");
    WorldLine1D line;
    for (const auto& p : v) {
        if (!p.is_array() || p.size() != 2) throw validation_error(ctx + ": vertices are [ct, x] pairs");
        line.vertices.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    }
    return line;
}

TaskOutput run_oned_task(const Json& task, const Constants& k, const RunSettings& s) {
    PairGeometry pair;
    pair.positron = parse_line_1d(need(task, "positron", "task"), "task.positron");
    pair.electron = parse_line_1d(need(task, "electron", "task"), "task.electron");
    pair.q = opt_num(task, "q", 1.0);
    const std::vector<double> alphas = as_numbers(need(task, "alpha_values", "task"), "task.alpha_values");

    const PairFluxResult flux = pair_flux(pair);
    const double rel_gap = std::abs(flux.field_flux - flux.polygon_flux) /
                           std::max(1e-300, std::abs(flux.polygon_flux));

    TaskOutput out;
    out.csv = kQuantizeHeader;
    for (double alpha : alphas) {
        const QuantizationReport rep = check_1d_quantization(flux.area, alpha, k, s.quantize_tol);
        out.csv += fmt17(rep.phase) + "," + std::to_string(rep.n_nearest) + "," + fmt17(rep.residual) +
                   "," + (rep.quantized ? "1" : "0") + "\n";
    }
    out.notes.push_back("area " + fmt17(flux.area) + "  polygon_flux " + fmt17(flux.polygon_flux) +
                        "  field_flux " + fmt17(flux.field_flux) + "  route_gap " + fmt3(rel_gap));
    out.notes.push_back("scan rows " + std::to_string(alphas.size()));
    return out;
}

Json preset_body(const std::string& name) {
    const double pi = std::numbers::pi;
    Json cfg;
    cfg["schema_version"] = 1;
    cfg["name"] = name;
    cfg["constants"] = Json{{"hbar", 1.0}, {"c", 1.0}, {"e", 1.0}};

    const Json gauge_grid = Json{{"ct", 1.5},
                                 {"min", Json::array({-2.0, -2.0, -2.0})},
                                 {"max", Json::array({2.0, 2.0, 2.0})},
                                 {"points", Json::array({5, 5, 5})}};
    const Json e0 = Json::array({0.3, -0.2, 0.5});
    const Json b0 = Json::array({0.4, 0.1, -0.6});

    if (name == "velocity-gauge" || name == "length-gauge") {
        const bool velocity = name == "velocity-gauge";
        cfg["field"] = Json{{"type", "uniform_e"}, {"E0", e0}};
        cfg["paths"] = Json{{"main", Json{{"builtin", velocity ? "velocity" : "length"}}}};
        cfg["task"] = Json{{"type", "gauge_compare"},
                           {"path", "main"},
                           {"reference", Json{{"type", velocity ? "velocity_gauge" : "length_gauge"}, {"E0", e0}}},
                           {"grid", gauge_grid},
                           {"output", name + ".csv"}};
        return cfg;
    }
    if (name == "fock-schwinger") {
        cfg["field"] = Json{{"type", "uniform_eb"}, {"E0", e0}, {"B0", b0}};
        cfg["paths"] = Json{{"main", Json{{"builtin", "straight_line"}}}};
        cfg["task"] = Json{{"type", "gauge_compare"},
                           {"path", "main"},
                           {"reference", Json{{"type", "fock_schwinger"}, {"E0", e0}, {"B0", b0}}},
                           {"grid", gauge_grid},
                           {"output", name + ".csv"}};
        return cfg;
    }
    if (name == "gauge-flux-links") {
        cfg["field"] = Json{{"type", "uniform_e"}, {"E0", e0}};
        cfg["paths"] = Json{{"a", Json{{"builtin", "velocity"}}}, {"b", Json{{"builtin", "length"}}}};
        Json values = Json::array();
        for (int i = 1; i <= 8; ++i) values.push_back(0.25 * i);
        cfg["task"] = Json{{"type", "flux"},
                           {"route", "open"},
                           {"path_a", "a"},
                           {"path_b", "b"},
                           {"x", Json::array({0.0, 1.0, 0.7, -0.4})},
                           {"sweep", Json{{"component", 0}, {"values", values}}},
                           {"output", name + ".csv"}};
        return cfg;
    }
    if (name == "dirac-monopole") {
        cfg["field"] = Json{{"type", "monopole"}, {"g", 1.0}};
        Json values = Json::array();
        for (int i = 1; i <= 8; ++i) values.push_back(i * pi / 4.0);
        cfg["task"] = Json{{"type", "flux"},
                           {"route", "slice"},
                           {"radius", 3.0},
                           {"values", values},
                           {"output", name + ".csv"}};
        return cfg;
    }
    if (name == "disk-flux") {
        cfg["field"] = Json{{"type", "disk"}, {"B0", 2.0}, {"r0", 1.0}};
        cfg["paths"] = Json{{"p1", Json{{"builtin", "disk_p1"}}}, {"p2", Json{{"builtin", "disk_p2"}}}};
        cfg["task"] = Json{{"type", "quantize"},
                           {"source", Json{{"kind", "loop"},
                                           {"path_a", "p1"},
                                           {"path_b", "p2"},
                                           {"potential_path", "p1"},
                                           {"x", Json::array({0.0, 2.5, 0.0, 0.0})},
                                           {"winding", 1}}},
                           {"scan", Json{{"e_min", 0.5}, {"e_max", 4.0}, {"count", 8}}},
                           {"output", name + ".csv"}};
        return cfg;
    }
    if (name == "eblock-flux") {
        cfg["field"] = Json{{"type", "eblock"}, {"E0", 2.0 * pi}, {"dt", 1.0}, {"dx", 1.0}};
        cfg["task"] = Json{{"type", "quantize"},
                           {"source", Json{{"kind", "rectangle"},
                                           {"corner", Json::array({-0.5, -0.5, 0.0, 0.0})},
                                           {"edge_u", Json::array({2.0, 0.0, 0.0, 0.0})},
                                           {"edge_v", Json::array({0.0, 2.0, 0.0, 0.0})},
                                           {"u_splits", Json::array({0.25, 0.75})},
                                           {"v_splits", Json::array({0.25, 0.75})}}},
                           {"scan", Json{{"e_min", 0.5}, {"e_max", 4.0}, {"count", 8}}},
                           {"output", name + ".csv"}};
        return cfg;
    }
    if (name == "classical-uniform-B") {
        cfg["field"] = Json{{"type", "uniform_b"}, {"B0", Json::array({0.0, 0.0, 1.0})}};
        cfg["task"] = Json{{"type", "classical"},
                           {"x0", Json::array({0.0, 0.0, 0.0, 0.0})},
                           {"grid", Json{{"ct", 2.0},
                                         {"min", Json::array({-0.8, -0.8, -0.8})},
                                         {"max", Json::array({0.8, 0.8, 0.8})},
                                         {"points", Json::array({3, 3, 3})}}},
                           {"output", name + ".csv"}};
        return cfg;
    }
    if (name == "oned-pair") {
        Json positron = Json::array({Json::array({0.0, 0.0}), Json::array({1.0, -0.75}),
                                     Json::array({2.0, -0.75}), Json::array({3.0, 0.0})});
        Json electron = Json::array({Json::array({0.0, 0.0}), Json::array({1.0, 0.75}),
                                     Json::array({2.0, 0.75}), Json::array({3.0, 0.0})});
        Json alphas = Json::array();
        for (int i = 1; i <= 8; ++i) alphas.push_back(i * pi / 6.0);
        cfg["task"] = Json{{"type", "oned"},
                           {"positron", positron},
                           {"electron", electron},
                           {"q", 1.0},
                           {"alpha_values", alphas},
                           {"output", name + ".csv"}};
        return cfg;
    }
    std::string msg = "unknown preset '" + name + "'. Known presets:";
    for (const auto& p : preset_names()) msg += " " + p;
    throw validation_error(msg);
}

}  // namespace

ScenarioResult run_scenario(const std::string& config_text, const ScenarioOverrides& ov) {
    Json cfg;
    try {
        cfg = Json::parse(config_text);
    } catch (const Json::exception& e) {
        throw validation_error(std::string("config: ") + e.what());
    }

    ScenarioResult result;
    TaskOutput task_out;
    std::string task_type;
    try {
        if (!cfg.is_object()) throw validation_error("config: expected an object");
        const int version = static_cast<int>(need_num(cfg, "schema_version", "config"));
        if (version != 1) throw validation_error("config: unsupported schema_version");
        result.name = cfg.contains("name") ? need_str(cfg, "name", "config") : "scenario";

        const Constants k = parse_constants(cfg);
        const RunSettings settings = parse_settings(cfg, ov);
        const Json& task = need(cfg, "task", "config");
        task_type = need_str(task, "type", "task");

        if (task_type == "potential") {
            task_out = run_potential_task(cfg, task, k, settings);
        } else if (task_type == "gauge_compare") {
            task_out = run_gauge_compare_task(cfg, task, k, settings);
        } else if (task_type == "flux") {
            task_out = run_flux_task(cfg, task, k, settings);
        } else if (task_type == "quantize") {
            task_out = run_quantize_task(cfg, task, k, settings);
        } else if (task_type == "classical") {
            task_out = run_classical_task(cfg, task, k, settings);
        } else if (task_type == "oned") {
            task_out = run_oned_task(task, k, settings);
        } else {
            throw validation_error("task.type: unknown '" + task_type +
                                   "' (known: potential, gauge_compare, flux, quantize, classical, oned)");
        }
        task_out.filename = task.contains("output") ? need_str(task, "output", "task")
                                                    : result.name + ".csv";
    } catch (const Json::exception& e) {
        throw validation_error(std::string("config: ") + e.what());
    }

    const std::string out_path = ov.out_dir + "/" + task_out.filename;
    {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw validation_error("cannot open output file " + out_path);
        f << task_out.csv;
        f.flush();
        if (!f) throw validation_error("write failed for " + out_path);
    }
    result.output_files.push_back(out_path);

    std::ostringstream summary;
    summary << "scenario " << result.name << "\n";
    if (ov.has_seed) summary << "seed " << ov.seed << "\n";
    summary << "task " << task_type << "\n";
    for (const auto& line : task_out.notes) summary << line << "\n";
    summary << "wrote " << out_path << "\n";
    result.summary = summary.str();
    return result;
}

ScenarioResult run_scenario_file(const std::string& path, const ScenarioOverrides& ov) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw validation_error("cannot read config file " + path);
    std::ostringstream text;
    text << f.rdbuf();
    return run_scenario(text.str(), ov);
}

std::vector<std::string> preset_names() {
    return {"velocity-gauge", "length-gauge",  "fock-schwinger",      "gauge-flux-links",
            "dirac-monopole", "disk-flux",     "eblock-flux",         "classical-uniform-B",
            "oned-pair"};
}

std::string preset_config(const std::string& name) { return preset_body(name).dump(2) + "\n"; }

int scenario_threads() {
    const char* env = std::getenv("PATHGAUGE_THREADS");
    if (!env || !*env) return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) return 1;
    return static_cast<int>(std::min<long>(v, 64));
}

}  // namespace pathgauge
