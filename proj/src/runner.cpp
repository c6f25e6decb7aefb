#include "gspec/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gspec/corpus.hpp"
#include "gspec/csvio.hpp"
#include "gspec/deform.hpp"
#include "gspec/gabor.hpp"
#include "gspec/modspace.hpp"
#include "gspec/svgplot.hpp"
#include "gspec/tfcore.hpp"
#include "gspec/weyl.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace gspec {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& why) {
    throw ConfigError("config field '" + field + "': " + why);
}

const json* find(const json& j, const std::string& key) {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

double get_num(const json& j, const std::string& field, std::optional<double> dflt = {}) {
    const json* v = find(j, field);
    if (!v) {
        if (dflt) return *dflt;
        bad(field, "missing");
    }
    if (!v->is_number()) bad(field, "must be a number");
    return v->get<double>();
}

int get_int(const json& j, const std::string& field, std::optional<int> dflt = {}) {
    const json* v = find(j, field);
    if (!v) {
        if (dflt) return *dflt;
        bad(field, "missing");
    }
    if (!v->is_number_integer()) bad(field, "must be an integer");
    return v->get<int>();
}

std::string get_str(const json& j, const std::string& field,
                    std::optional<std::string> dflt = {}) {
    const json* v = find(j, field);
    if (!v) {
        if (dflt) return *dflt;
        bad(field, "missing");
    }
    if (!v->is_string()) bad(field, "must be a string");
    return v->get<std::string>();
}

std::vector<double> get_num_list(const json& j, const std::string& field) {
    const json* v = find(j, field);
    if (!v) bad(field, "missing");
    if (!v->is_array() || v->empty()) bad(field, "must be a non-empty array");
    std::vector<double> out;
    for (const auto& e : *v) {
        if (!e.is_number()) bad(field, "must contain numbers only");
        out.push_back(e.get<double>());
    }
    return out;
}

int parse_pq(const json& j, const std::string& field) {
    const json* v = find(j, field);
    if (!v) bad(field, "missing");
    if (v->is_number_integer()) {
        const int p = v->get<int>();
        if (p == 1 || p == 2) return p;
        bad(field, "must be 1, 2 or \"inf\"");
    }
    if (v->is_string() && v->get<std::string>() == "inf") return kPInf;
    bad(field, "must be 1, 2 or \"inf\"");
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

GridSpec parse_grid(const json& cfg) {
    const json* g = find(cfg, "grid");
    int L = 1024;
    double dt = 1.0 / 32.0, t0 = -16.0;
    if (g) {
        if (!g->is_object()) bad("grid", "must be an object");
        L = get_int(*g, "L", L);
        dt = get_num(*g, "dt", dt);
        t0 = get_num(*g, "t0", -0.5 * L * dt);
    }
    try {
        return GridSpec(L, dt, t0);
    } catch (const std::exception& e) {
        bad("grid", e.what());
    }
}

SampledSignal parse_window(const json& cfg, const GridSpec& grid) {
    const json* w = find(cfg, "window");
    if (!w) return make_window(WindowSpec::gaussian(), grid);
    if (!w->is_object()) bad("window", "must be an object");
    const std::string kind = get_str(*w, "kind", std::string("gaussian"));
    try {
        if (kind == "gaussian") return make_window(WindowSpec::gaussian(), grid);
        if (kind == "hermite")
            return make_window(WindowSpec::hermite(get_int(*w, "hermite_n", 1)), grid);
        if (kind == "raised_cosine")
            return make_window(WindowSpec::raised_cosine(get_num(*w, "rc_width", 2.0)),
                               grid);
        if (kind == "class") return class_window(grid, get_num(*w, "s"));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        bad("window", e.what());
    }
    bad("window.kind", "unknown kind '" + kind + "'");
}

PhaseSpaceGrid parse_psgrid(const json& cfg, int dflt_n, double dflt_half) {
    const json* p = find(cfg, "psgrid");
    int n = dflt_n;
    double half = dflt_half;
    if (p) {
        if (!p->is_object()) bad("psgrid", "must be an object");
        n = get_int(*p, "n", n);
        half = get_num(*p, "halfwidth", half);
    }
    if (n < 2 || half <= 0.0) bad("psgrid", "n must be >= 2 and halfwidth positive");
    return default_psgrid(n, half);
}

SampledSignal parse_signal(const json& cfg, const GridSpec& grid, int seed) {
    const json* in = find(cfg, "inputs");
    if (in && find(*in, "signal_csv")) {
        const std::string path = get_str(*in, "signal_csv");
        SampledSignal f = read_signal_csv(path);
        if (!(f.grid == grid)) bad("inputs.signal_csv", "grid mismatch with config grid");
        return f;
    }
    return random_signal(grid, static_cast<unsigned>(seed));
}

struct Artifacts {
    fs::path stage;
    std::vector<std::string> names;

    explicit Artifacts(const fs::path& out_dir) {
        stage = out_dir;
        stage += ".stage";
        fs::remove_all(stage);
        fs::create_directories(stage);
    }
    fs::path file(const std::string& name) {
        names.push_back(name);
        return stage / name;
    }
    void commit(const fs::path& out_dir) {
        fs::create_directories(out_dir);
        for (const auto& n : names) fs::rename(stage / n, out_dir / n);
        fs::remove_all(stage);
    }
    ~Artifacts() {
        std::error_code ec;
        fs::remove_all(stage, ec);
    }
};

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << j.dump(2) << '\n';
}

json params_of(const json& cfg) {
    const json* p = find(cfg, "params");
    if (!p) return json::object();
    if (!p->is_object()) bad("params", "must be an object");
    return *p;
}

// --- command handlers; each returns the exit code -------------------------

int cmd_stft(const json& cfg, Artifacts& art, int seed, bool wig) {
    const GridSpec grid = parse_grid(cfg);
    const SampledSignal g = parse_window(cfg, grid);
    const SampledSignal f = parse_signal(cfg, grid, seed);
    const PhaseSpaceGrid ps = parse_psgrid(cfg, 256, 8.0);
    if (wig && !grid.symmetric()) bad("grid.t0", "wigner requires a symmetric grid");
    const PhaseSpaceFunction V = wig ? wigner(f, g, ps) : stft(f, g, ps);
    write_psfun_csv(art.file(wig ? "wigner.csv" : "stft.csv").string(), V);
    return 0;
}

int cmd_modnorm(const json& cfg, Artifacts& art, int seed) {
    const GridSpec grid = parse_grid(cfg);
    const json prm = params_of(cfg);
    MixedNormParams mp;
    mp.p = parse_pq(prm, "p");
    mp.q = parse_pq(prm, "q");
    mp.s = get_num(prm, "s", 0.0);
    mp.t = get_num(prm, "t", 0.0);
    const SampledSignal f = parse_signal(cfg, grid, seed);
    const PhaseSpaceGrid ps = parse_psgrid(cfg, 256, 12.0);
    const double nrm = mixed_norm_signal(f, mp, ps);
    json out;
    out["p"] = mp.p == kPInf ? json("inf") : json(mp.p);
    out["q"] = mp.q == kPInf ? json("inf") : json(mp.q);
    out["s"] = mp.s;
    out["t"] = mp.t;
    out["norm"] = nrm;
    write_json(art.file("modnorm.json"), out);
    return 0;
}

int cmd_framebounds(const json& cfg, Artifacts& art) {
    const GridSpec grid = parse_grid(cfg);
    const SampledSignal g = parse_window(cfg, grid);
    const json prm = params_of(cfg);
    const json* in = find(cfg, "inputs");
    AtomSet atoms;
    if (in && find(*in, "atoms_csv")) {
        atoms = read_atoms_csv(get_str(*in, "atoms_csv"));
        atoms.periodic_box = PhaseSpaceBox::natural(grid);
    } else {
        const double alpha = get_num(prm, "alpha");
        if (!(alpha > 0.0)) bad("params.alpha", "must be positive");
        atoms = lattice_patch(alpha, PhaseSpaceBox::natural(grid));
    }
    const FrameBounds fb = frame_bounds(g, atoms, grid);
    json out;
    out["A"] = fb.A;
    out["B"] = fb.B;
    out["method"] = fb.method;
    out["L"] = grid.L;
    out["dt"] = grid.dt;
    out["rel"] = rel_separation(atoms);
    write_json(art.file("framebounds.json"), out);
    if (prm.value("write_operator", false)) {
        const OperatorMatrix S = frame_operator(g, g, atoms, grid);
        write_opmatrix_csv(art.file("operator.csv").string(), S);
    }
    return 0;
}

int cmd_sweep(const json& cfg, Artifacts& art) {
    const GridSpec grid = parse_grid(cfg);
    const json prm = params_of(cfg);
    SweepConfig sc{parse_window(cfg, grid), grid, get_num_list(prm, "alphas")};
    const std::string method = get_str(prm, "method", std::string("dense"));
    if (method == "dense")
        sc.method = SweepMethod::dense;
    else if (method == "zak-snap" || method == "zak")
        sc.method = SweepMethod::zak_snap;
    else
        bad("params.method", "must be 'dense' or 'zak-snap'");
    sc.zak_res = get_int(prm, "zak_res", 12);
    sc.zak_qmax = get_int(prm, "zak_qmax", 64);
    const double s = get_num(prm, "s", 2.0);
    const SweepResult res = sweep(sc);
    write_sweep_csv(art.file("sweep.csv").string(), res);
    const HolderFit fit = holder_fit(res);
    const BoundCheckReport chk = bound_check(res, s, 1.0);
    json out;
    out["exponent_A"] = fit.exponent_A;
    out["exponent_B"] = fit.exponent_B;
    out["constant"] = fit.constant;
    out["r2"] = fit.r2;
    out["pass"] = chk.pass;
    out["fit_window"] = json::array({fit.fit_lo, fit.fit_hi});
    out["gamma"] = gamma_exponent(s);
    out["rel"] = res.rel;
    out["ratio_spread"] = chk.spread;
    write_json(art.file("report.json"), out);
    PlotSeries pa{"|A(a)-A(1)|", {}}, pb{"|B(a)-B(1)|", {}};
    const auto& base = *std::min_element(
        res.rows.begin(), res.rows.end(), [](const SweepRow& a, const SweepRow& b) {
            return std::abs(a.alpha - 1.0) < std::abs(b.alpha - 1.0);
        });
    for (const auto& r : res.rows) {
        const double x = std::abs(1.0 - r.alpha_used);
        if (x <= 0.0) continue;
        pa.points.emplace_back(x, std::abs(r.A - base.A));
        pb.points.emplace_back(x, std::abs(r.B - base.B));
    }
    write_loglog_svg(art.file("plot.svg").string(), "frame-bound increments vs |1-alpha|",
                     "|1-alpha|", "increment", {pa, pb},
                     {PlotFitLine{"fit A", fit.exponent_A, fit.constant}});
    return chk.pass ? 0 : 2;
}

int cmd_tradeoff(const json& cfg, Artifacts& art) {
    const GridSpec grid = parse_grid(cfg);
    const SampledSignal g = parse_window(cfg, grid);
    const json prm = params_of(cfg);
    const double a = get_num(prm, "a"), b = get_num(prm, "b"), c = get_num(prm, "c");
    const std::vector<double> eps = get_num_list(prm, "eps_list");
    const PhaseSpaceGrid ps = default_truncation_grid(grid);
    const TradeoffTable tbl = tradeoff_table(g, a, b, c, eps, ps);
    write_tradeoff_csv(art.file("tradeoff.csv").string(), tbl);
    const bool pass = tbl.slope_err_band >= (b - a) - 0.15 &&
                      tbl.slope_growth_band >= -(c - b) - 0.15 &&
                      tbl.slope_err_ball >= (b - a) - 0.15 &&
                      tbl.slope_growth_ball >= -2.0 * (c - b) - 0.15;
    json out;
    out["slope_err_band"] = tbl.slope_err_band;
    out["slope_growth_band"] = tbl.slope_growth_band;
    out["slope_err_ball"] = tbl.slope_err_ball;
    out["slope_growth_ball"] = tbl.slope_growth_ball;
    out["a"] = a;
    out["b"] = b;
    out["c"] = c;
    out["pass"] = pass;
    write_json(art.file("report.json"), out);
    PlotSeries se{"err (band)", {}}, sg{"growth (band)", {}};
    PlotSeries se2{"err (ball)", {}}, sg2{"growth (ball)", {}};
    for (const auto& r : tbl.rows) {
        auto& e = r.region == Region::frequency_band ? se : se2;
        auto& gr = r.region == Region::frequency_band ? sg : sg2;
        e.points.emplace_back(r.epsilon, r.err_norm_a);
        gr.points.emplace_back(r.epsilon, r.h_norm_c);
    }
    write_loglog_svg(art.file("plot.svg").string(),
                     "truncation tradeoff: error and growth vs epsilon", "epsilon",
                     "norm", {se, sg, se2, sg2});
    return pass ? 0 : 2;
}

int cmd_saturation(const json& cfg, Artifacts& art) {
    const GridSpec grid = parse_grid(cfg);
    const json prm = params_of(cfg);
    std::vector<int> levels;
    for (double v : get_num_list(prm, "res_levels")) {
        if (v < 2 || v != std::floor(v)) bad("params.res_levels", "must be integers >= 2");
        levels.push_back(static_cast<int>(v));
    }
    const SaturationReport rep = saturation_experiment(grid, levels);
    json out;
    out["levels"] = json::array();
    for (const auto& lv : rep.levels) {
        json l;
        l["res"] = lv.res;
        l["exponent_A"] = lv.exponent_A;
        l["r2"] = lv.r2;
        l["right_max_A"] = lv.right_max_A;
        l["B_at_1"] = lv.b_ref;
        out["levels"].push_back(l);
    }
    out["left_slope"] = rep.left_slope;
    out["exponent_in_band"] = rep.exponent_in_band;
    out["exponent_stable"] = rep.exponent_stable;
    out["right_side_flat"] = rep.right_side_flat;
    out["pass"] = rep.pass;
    write_json(art.file("saturation.json"), out);
    return rep.pass ? 0 : 2;
}

int cmd_verify(const json& cfg, Artifacts& art, int seed) {
    (void)cfg;
    json checks = json::array();
    bool all = true;
    auto push = [&](const std::string& name, double value, double tol) {
        const bool ok = value <= tol;
        json c;
        c["name"] = name;
        c["value"] = value;
        c["tol"] = tol;
        c["pass"] = ok;
        checks.push_back(c);
        all = all && ok;
    };
    const GridSpec grid(256, 1.0 / 16.0, -8.0);
    const SampledSignal phi = make_window(WindowSpec::gaussian(), grid);
    const SampledSignal f = random_signal(grid, static_cast<unsigned>(seed));
    const PhaseSpaceGrid ps = default_psgrid(256, 8.0);

    // STFT isometry.
    {
        const PhaseSpaceFunction V = stft(f, phi, ps);
        double e = 0.0;
        for (const auto& v : V.values) e += std::norm(v);
        e *= ps.cell();
        push("stft_isometry", std::abs(std::sqrt(e) - norm2(f)) / norm2(f), 1e-6);
    }
    // Inversion.
    {
        const IstftResult rec = istft(stft(f, phi, ps), phi);
        push("stft_inversion", norm2(add(f, rec.signal, 1.0, -1.0)) / norm2(f), 1e-4);
    }
    // Covariance of the STFT under a time-frequency shift.
    {
        const TFPoint z1{0.375, -1.25}, z2{-0.5, 0.75};
        const cdouble lhs = stft_point(tf_shift(f, z1), phi, z2);
        const cdouble phase =
            std::polar(1.0, -kTwoPi * z1.x * (z2.omega - z1.omega));
        const cdouble rhs =
            phase * stft_point(f, phi, TFPoint{z2.x - z1.x, z2.omega - z1.omega});
        push("stft_covariance", std::abs(lhs - rhs), 1e-8);
    }
    // Constant symbol quantizes to the identity.
    {
        const PhaseSpaceGrid qg = quantization_grid(grid);
        PhaseSpaceFunction one = PhaseSpaceFunction::zero(qg);
        for (auto& v : one.values) v = 1.0;
        const OperatorMatrix I = weyl_quantize(one, grid);
        double dev = 0.0;
        for (int i = 0; i < grid.L; ++i)
            for (int j = 0; j < grid.L; ++j)
                dev = std::max(dev, std::abs(I.entries(i, j) - (i == j ? 1.0 : 0.0)));
        push("weyl_identity", dev, 1e-8);
    }
    // Cross-route identity: direct frame operator vs quantized frame symbol.
    {
        const AtomSet atoms = lattice_patch(2.0, PhaseSpaceBox::natural(grid));
        const OperatorMatrix S = frame_operator(phi, phi, atoms, grid);
        const PhaseSpaceFunction sym =
            frame_symbol(phi, phi, atoms, 0.0, quantization_grid(grid));
        const OperatorMatrix S2 = weyl_quantize(sym, grid);
        const double rel =
            operator_norm(Eigen::MatrixXcd(S.entries - S2.entries)) / operator_norm(S);
        push("cross_route_identity", rel, 1e-2);
    }
    json out;
    out["checks"] = checks;
    out["pass"] = all;
    write_json(art.file("verify.json"), out);
    return all ? 0 : 2;
}

}  // namespace

int run_config_text(const std::string& json_text, const std::string& out_override,
                    int seed_override, const std::string& expected_command) {
    json cfg;
    try {
        cfg = json::parse(json_text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!cfg.is_object()) throw ConfigError("config root must be a JSON object");
    static const std::vector<std::string> kKnown = {
        "command", "seed", "out_dir", "grid", "window", "psgrid", "inputs", "params"};
    for (auto it = cfg.begin(); it != cfg.end(); ++it)
        if (std::find(kKnown.begin(), kKnown.end(), it.key()) == kKnown.end())
            bad(it.key(), "unknown field");
    const std::string command = get_str(cfg, "command");
    if (!expected_command.empty() && command != expected_command)
        bad("command", "config says '" + command + "' but the CLI subcommand is '" +
                           expected_command + "'");
    int seed = get_int(cfg, "seed", 42);
    if (seed_override >= 0) seed = seed_override;
    if (seed < 0) bad("seed", "must be >= 0");
    std::string out_dir = get_str(cfg, "out_dir", std::string("out"));
    if (!out_override.empty()) out_dir = out_override;

    const auto t_start = std::chrono::steady_clock::now();
    Artifacts art{fs::path(out_dir)};
    int code;
    if (command == "stft")
        code = cmd_stft(cfg, art, seed, false);
    else if (command == "wigner")
        code = cmd_stft(cfg, art, seed, true);
    else if (command == "modnorm")
        code = cmd_modnorm(cfg, art, seed);
    else if (command == "framebounds")
        code = cmd_framebounds(cfg, art);
    else if (command == "sweep")
        code = cmd_sweep(cfg, art);
    else if (command == "tradeoff")
        code = cmd_tradeoff(cfg, art);
    else if (command == "saturation")
        code = cmd_saturation(cfg, art);
    else if (command == "verify")
        code = cmd_verify(cfg, art, seed);
    else
        bad("command", "unknown command '" + command + "'");

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    json cfg_canon = cfg;
    cfg_canon["seed"] = seed;
    char hash[24];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  (unsigned long long)fnv1a(cfg_canon.dump()));
    json manifest;
    manifest["tool"] = "gabor-spectra";
    manifest["version"] = "1.0.0";
    manifest["command"] = command;
    manifest["config_hash"] = hash;
    manifest["runtimes"] = json::object({{"total_seconds", secs}});
    write_json(art.file("manifest.json"), manifest);
    art.commit(fs::path(out_dir));
    return code;
}

int run_config_file(const std::string& config_path, const std::string& out_override,
                    int seed_override, const std::string& expected_command) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file: " + config_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return run_config_text(ss.str(), out_override, seed_override, expected_command);
}

}  // namespace gspec
