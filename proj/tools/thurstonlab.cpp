// Command-line front end: stretch flows on crowned annuli and the
// once-punctured torus, Thurston distance and norm reports, back-time and
// length-extraction experiments, and the exact convex-body analyses.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "thurston/annulus.hpp"
#include "thurston/fricke.hpp"
#include "thurston/polytope.hpp"
#include "thurston/poset.hpp"
#include "thurston/report.hpp"
#include "thurston/sphere.hpp"
#include "thurston/surface.hpp"

namespace {

using namespace thurston;
using torus::ChartPoint;
using torus::FrickeTriple;
using torus::Slope;
using hyp::SpiralPattern;
using convex::Rational;
using convex::RatVec;

constexpr int kExitFlagged = 2;
constexpr int kExitInputError = 3;
constexpr const char* kVersion = "1";

struct FlaggedResult : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_time(const std::string& text) {
    if (text == "ln2" || text == "log2") return std::log(2.0);
    size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("bad time value: " + text);
    return v;
}

SpiralPattern parse_pattern(const std::string& text, int* parallel_sign = nullptr) {
    if (parallel_sign) *parallel_sign = 1;
    if (text == "parallel" || text == "parallel+") return SpiralPattern::Parallel;
    if (text == "parallel-") {
        if (parallel_sign) *parallel_sign = -1;
        return SpiralPattern::Parallel;
    }
    if (text == "opposite+") return SpiralPattern::OppositePlus;
    if (text == "opposite-") return SpiralPattern::OppositeMinus;
    throw std::invalid_argument("unknown pattern: " + text);
}

std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("expected key=value: " + item);
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) out.push_back(std::stod(item));
    return out;
}

std::vector<Slope> parse_slopes(const std::string& text) {
    std::vector<Slope> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(torus::parse_slope(item));
    return out;
}

/// Surface specs: "markov333", "fricke:a,b,c", "chart:ell,twist", or a JSON
/// file with {"fricke":[a,b,c]} or {"chart":{"ell":..,"twist":..}}.
struct SurfaceSpec {
    std::optional<FrickeTriple> fricke;
    std::optional<ChartPoint> chart;
    std::string source;
};

SurfaceSpec parse_surface(const std::string& text) {
    SurfaceSpec spec;
    spec.source = text;
    if (text == "markov333") {
        spec.fricke = FrickeTriple{3.0, 3.0, 3.0};
        return spec;
    }
    if (text.rfind("fricke:", 0) == 0) {
        double a, b, c;
        if (std::sscanf(text.c_str() + 7, "%lf,%lf,%lf", &a, &b, &c) != 3)
            throw std::invalid_argument("bad fricke spec: " + text);
        spec.fricke = FrickeTriple{a, b, c};
        return spec;
    }
    if (text.rfind("chart:", 0) == 0) {
        double l, t;
        if (std::sscanf(text.c_str() + 6, "%lf,%lf", &l, &t) != 2)
            throw std::invalid_argument("bad chart spec: " + text);
        spec.chart = ChartPoint{l, t};
        return spec;
    }
    std::ifstream file(text);
    if (!file) throw std::invalid_argument("cannot open surface spec: " + text);
    const Json doc = Json::parse(file);
    if (doc.contains("fricke")) {
        const auto& f = doc.at("fricke");
        spec.fricke = FrickeTriple{f.at(0).get<double>(), f.at(1).get<double>(), f.at(2).get<double>()};
    } else if (doc.contains("chart")) {
        const auto& c = doc.at("chart");
        spec.chart = ChartPoint{c.at("ell").get<double>(), c.at("twist").get<double>()};
    } else {
        throw std::invalid_argument("surface spec needs \"fricke\" or \"chart\": " + text);
    }
    return spec;
}

FrickeTriple surface_triple(const SurfaceSpec& spec) {
    if (spec.fricke) {
        torus::check_triple(*spec.fricke);
        return *spec.fricke;
    }
    return torus::fn_to_fricke(*spec.chart);
}

ChartPoint surface_chart(const SurfaceSpec& spec, const Slope& slope) {
    if (spec.chart) return *spec.chart; // already the chart of the distinguished slope
    torus::check_triple(*spec.fricke);
    return torus::chart_from_fricke(*spec.fricke, slope);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + out_path);
    file << text;
}

std::string slope_str(const Slope& s) { return torus::to_string(s); }

// ---------------------------------------------------------------- polytopes

std::vector<RatVec> builtin_polytope(const std::string& name) {
    auto q = [](long long v) { return Rational(v); };
    if (name == "square")
        return {{q(0), q(0)}, {q(2), q(0)}, {q(0), q(2)}, {q(2), q(2)}};
    if (name == "square-centered")
        return {{q(-1), q(-1)}, {q(1), q(-1)}, {q(-1), q(1)}, {q(1), q(1)}};
    if (name == "cube-centered") {
        std::vector<RatVec> pts;
        for (int i = 0; i < 8; ++i)
            pts.push_back({q(i & 1 ? 1 : -1), q(i & 2 ? 1 : -1), q(i & 4 ? 1 : -1)});
        return pts;
    }
    if (name == "cross3")
        return {{q(1), q(0), q(0)}, {q(-1), q(0), q(0)}, {q(0), q(1), q(0)},
                {q(0), q(-1), q(0)}, {q(0), q(0), q(1)}, {q(0), q(0), q(-1)}};
    if (name.rfind("simplex", 0) == 0) {
        const int n = std::stoi(name.substr(7));
        if (n < 1 || n > 4) throw std::invalid_argument("simplex dimension must be 1..4");
        std::vector<RatVec> pts;
        pts.emplace_back(n, Rational(0));
        for (int i = 0; i < n; ++i) {
            RatVec v(n, Rational(0));
            v[i] = 1;
            pts.push_back(v);
        }
        return pts;
    }
    throw std::invalid_argument("unknown builtin polytope: " + name);
}

std::vector<RatVec> load_polytope(const std::string& text) {
    if (text.rfind("builtin:", 0) == 0) return builtin_polytope(text.substr(8));
    std::ifstream file(text);
    if (!file) throw std::invalid_argument("cannot open polytope file: " + text);
    const Json doc = Json::parse(file);
    std::vector<RatVec> pts;
    for (const auto& row : doc.at("vertices")) {
        RatVec v;
        for (const auto& cell : row)
            v.push_back(cell.is_string() ? convex::parse_rational(cell.get<std::string>())
                                         : Rational(cell.get<long long>()));
        pts.push_back(std::move(v));
    }
    return pts;
}

convex::FacePoset load_poset(const std::string& text) {
    if (text == "builtin:stadium") return convex::stadium_poset();
    if (text == "builtin:square") return convex::square_poset();
    std::ifstream file(text);
    if (!file) throw std::invalid_argument("cannot open poset file: " + text);
    std::stringstream buf;
    buf << file.rdbuf();
    return convex::poset_from_json(buf.str());
}

/// Random exact invertible map: a product of integer shears and rational
/// diagonal scalings, drawn from the run's seed only.
std::vector<RatVec> random_invertible(int n, std::mt19937_64& rng) {
    std::vector<RatVec> m(n, RatVec(n, Rational(0)));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    auto apply_shear = [&](int i, int j, const Rational& f) {
        for (int k = 0; k < n; ++k) m[i][k] += f * m[j][k];
    };
    std::uniform_int_distribution<int> coin(0, 1), idx(0, n - 1), val(-3, 3), den(1, 3);
    const int ops = 2 + static_cast<int>(rng() % 3);
    for (int op = 0; op < ops; ++op) {
        if (coin(rng) == 0) {
            int i = idx(rng), j = idx(rng);
            if (i == j) j = (j + 1) % n;
            apply_shear(i, j, Rational(val(rng)));
        } else {
            const int i = idx(rng);
            int v = val(rng);
            if (v == 0) v = 2;
            const Rational f(v, den(rng));
            for (int k = 0; k < n; ++k) m[i][k] *= f;
        }
    }
    return m;
}

Json lattice_report(const convex::RationalPolytope& poly) {
    const convex::FacePoset& lat = poly.face_lattice();
    Json faces = Json::array();
    const bool interior = poly.origin_interior();
    for (int i = 0; i < lat.size(); ++i) {
        Json f;
        f["id"] = lat.face(i).name;
        f["dim"] = lat.face(i).dim;
        Json verts = Json::array();
        for (size_t b = 0; b < poly.vertices().size(); ++b)
            if (lat.face(i).verts >> b & 1) verts.push_back(static_cast<int>(b));
        f["vertices"] = verts;
        f["adherence_closure"] = lat.face(lat.adherence_closure(i)).name;
        f["fdim"] = lat.fdim(i);
        f["adherence_height"] = lat.adherence_height(i);
        f["adherence_depth"] = lat.adherence_depth(i);
        f["adim"] = lat.adim(i);
        if (lat.is_adherence_closed(i)) {
            Json core = Json::array();
            for (int g : lat.adherence_core(i)) core.push_back(lat.face(g).name);
            f["adherence_core"] = core;
            f["adherence_complete"] = lat.is_adherence_complete(i);
        }
        f["exposed"] = poly.is_exposed(i);
        if (interior) f["codim"] = poly.face_codim(i);
        faces.push_back(f);
    }
    Json rep;
    rep["vertex_count"] = static_cast<int>(poly.vertices().size());
    Json vlist = Json::array();
    for (const RatVec& v : poly.vertices()) {
        Json row = Json::array();
        for (const Rational& r : v) row.push_back(convex::to_string(r));
        vlist.push_back(row);
    }
    rep["vertices"] = vlist;
    rep["origin_interior"] = interior;
    rep["faces"] = faces;
    return rep;
}

Json poset_report(const convex::FacePoset& poset) {
    Json faces = Json::array();
    for (int i = 0; i < poset.size(); ++i) {
        Json f;
        f["id"] = poset.face(i).name;
        f["dim"] = poset.face(i).dim;
        f["adherence_closure"] = poset.face(poset.adherence_closure(i)).name;
        f["fdim"] = poset.fdim(i);
        f["adherence_height"] = poset.adherence_height(i);
        f["adherence_depth"] = poset.adherence_depth(i);
        f["adim"] = poset.adim(i);
        if (poset.is_adherence_closed(i)) {
            Json core = Json::array();
            for (int g : poset.adherence_core(i)) core.push_back(poset.face(g).name);
            f["adherence_core"] = core;
            f["adherence_complete"] = poset.is_adherence_complete(i);
        }
        faces.push_back(f);
    }
    Json rep;
    rep["faces"] = faces;
    return rep;
}

// ------------------------------------------------------------- subcommands

struct StretchOpts {
    std::string annulus, crowned, surface, slope = "1/0", pattern = "opposite+";
    std::string t = "1", out;
    int steps = 20, depth = 7;
};

int run_stretch(const StretchOpts& opt) {
    const double t_final = parse_time(opt.t);
    int parallel_sign = 1;
    const SpiralPattern pat = parse_pattern(opt.pattern, &parallel_sign);
    const std::vector<std::pair<std::string, std::string>> base_params = {
        {"version", kVersion}, {"pattern", opt.pattern}, {"t", fmt(t_final)},
        {"steps", std::to_string(opt.steps)}};

    if (!opt.annulus.empty()) {
        const auto kv = parse_kv(opt.annulus);
        const annulus::AnnulusMetric11 m0{std::stod(kv.at("l")), std::stod(kv.at("tau"))};
        auto params = base_params;
        params.push_back({"l0", fmt(m0.ell)});
        params.push_back({"tau0", fmt(m0.twist)});
        CsvWriter csv("stretch-annulus/1", params, {"t", "ell", "twist"});
        for (int k = 0; k <= opt.steps; ++k) {
            const double t = t_final * k / opt.steps;
            const auto m = annulus::stretch11(m0, pat, t);
            csv.row({fmt(t), fmt(m.ell), fmt(m.twist)});
        }
        emit(csv.text(), opt.out);
        return 0;
    }
    if (!opt.crowned.empty()) {
        const auto kv = parse_kv(opt.crowned);
        annulus::CrownedAnnulusMetric m0;
        m0.n_left = std::stoi(kv.at("nl"));
        m0.n_right = std::stoi(kv.at("nr"));
        m0.ell = std::stod(kv.at("l"));
        m0.twist = std::stod(kv.at("tau"));
        m0.shears_left = parse_list(kv.count("sl") ? kv.at("sl") : "");
        m0.shears_right = parse_list(kv.count("sr") ? kv.at("sr") : "");
        annulus::check(m0);
        std::vector<std::string> cols = {"t", "ell", "twist"};
        for (size_t i = 0; i < m0.shears_left.size(); ++i) cols.push_back("sl" + std::to_string(i + 1));
        for (size_t i = 0; i < m0.shears_right.size(); ++i) cols.push_back("sr" + std::to_string(i + 1));
        auto params = base_params;
        params.push_back({"crowned", opt.crowned});
        CsvWriter csv("stretch-crowned/1", params, cols);
        for (int k = 0; k <= opt.steps; ++k) {
            const double t = t_final * k / opt.steps;
            const auto m = pat == SpiralPattern::Parallel
                               ? annulus::stretch_parallel(m0, parallel_sign, t)
                               : annulus::stretch_opposite(
                                     m0, pat == SpiralPattern::OppositePlus ? 1 : -1, t);
            std::vector<std::string> row = {fmt(t), fmt(m.ell), fmt(m.twist)};
            for (double s : m.shears_left) row.push_back(fmt(s));
            for (double s : m.shears_right) row.push_back(fmt(s));
            csv.row(row);
        }
        emit(csv.text(), opt.out);
        return 0;
    }
    if (!opt.surface.empty()) {
        const Slope gamma = torus::parse_slope(opt.slope);
        const ChartPoint x = surface_chart(parse_surface(opt.surface), gamma);
        auto params = base_params;
        params.push_back({"surface", opt.surface});
        params.push_back({"slope", slope_str(gamma)});
        params.push_back({"depth", std::to_string(opt.depth)});
        CsvWriter csv("stretch-surface/1", params,
                      {"t", "ell", "twist", "max_log_ratio", "deviation", "argmax"});
        bool flagged = false;
        for (int k = 0; k <= opt.steps; ++k) {
            const double t = t_final * k / opt.steps;
            const auto res = torus::stretch_flow(x, pat, gamma, t, opt.depth);
            flagged = flagged || res.validation.flagged;
            csv.row({fmt(t), fmt(res.point.ell), fmt(res.point.twist),
                     fmt(res.validation.max_log_ratio), fmt(res.validation.deviation),
                     slope_str(res.validation.argmax)});
        }
        emit(csv.text(), opt.out);
        if (flagged) throw FlaggedResult("stretch-flow validation deviation exceeded 1e-2");
        return 0;
    }
    throw std::invalid_argument("stretch: provide --annulus, --crowned, or --surface");
}

struct BacktimeOpts {
    std::string surface = "chart:1,0.3", slope = "1/0", pattern = "opposite+", probes = "0/1,1/2,1/3";
    double smax = 25.0;
    int steps = 50;
    std::string out;
};

int run_backtime(const BacktimeOpts& opt) {
    const Slope gamma = torus::parse_slope(opt.slope);
    const ChartPoint x = surface_chart(parse_surface(opt.surface), gamma);
    const SpiralPattern pat = parse_pattern(opt.pattern);
    const std::vector<Slope> probes = parse_slopes(opt.probes);
    const auto trace = torus::backtime_experiment(x, pat, gamma, opt.smax, opt.steps, probes);

    std::vector<std::string> cols = {"s", "ell", "twist", "twist_over_s"};
    for (const Slope& p : probes) cols.push_back("probe_" + std::to_string(p.p) + "_" + std::to_string(p.q));
    CsvWriter csv("backtime/1",
                  {{"version", kVersion}, {"surface", opt.surface}, {"slope", slope_str(gamma)},
                   {"pattern", opt.pattern}, {"smax", fmt(opt.smax)}, {"steps", std::to_string(opt.steps)},
                   {"probes", opt.probes}},
                  cols);
    for (size_t k = 0; k < trace.times.size(); ++k) {
        const double s = trace.times[k];
        std::vector<std::string> row = {fmt(s), fmt(trace.states[k].ell), fmt(trace.states[k].twist),
                                        fmt(s > 0 ? trace.states[k].twist / s : 0.0)};
        for (double v : trace.probe_norm[k]) row.push_back(fmt(v));
        csv.row(row);
    }
    if (!opt.out.empty()) csv.save(opt.out);

    Json summary;
    summary["schema_version"] = kVersion;
    summary["command"] = "backtime";
    summary["pattern"] = opt.pattern;
    summary["slope"] = slope_str(gamma);
    summary["smax"] = opt.smax;
    summary["truncated"] = trace.truncated;
    const size_t last = trace.times.size() - 1;
    summary["final_twist_over_s"] = trace.states[last].twist / trace.times[last];
    Json probes_json = Json::array();
    for (size_t j = 0; j < probes.size(); ++j) {
        Json p;
        p["slope"] = slope_str(probes[j]);
        p["intersection"] = torus::intersection_number(probes[j], gamma);
        p["final_normalized_length"] = trace.probe_norm[last][j];
        probes_json.push_back(p);
    }
    summary["probes"] = probes_json;
    std::cout << summary.dump(2) << "\n";
    if (trace.truncated) throw FlaggedResult("backtime: trace recursion overflowed, table truncated");
    return 0;
}

int run_distance(const std::string& xs, const std::string& ys, int depth, const std::string& out) {
    const FrickeTriple x = surface_triple(parse_surface(xs));
    const FrickeTriple y = surface_triple(parse_surface(ys));
    const auto fwd = torus::thurston_distance(x, y, depth);
    const auto rev = torus::thurston_distance(y, x, depth);
    Json rep;
    rep["schema_version"] = kVersion;
    rep["command"] = "distance";
    rep["x"] = xs;
    rep["y"] = ys;
    rep["depth"] = depth;
    rep["value"] = fwd.value;
    rep["argmax"] = slope_str(fwd.argmax);
    rep["increments"] = {fwd.increment_prev, fwd.increment_last};
    rep["reverse_value"] = rev.value;
    rep["reverse_argmax"] = slope_str(rev.argmax);
    emit(rep.dump(2) + "\n", out);
    return 0;
}

int run_norm(const std::string& surface, const std::string& slope, const std::string& v,
             int depth, double fd_step, const std::string& out) {
    const Slope gamma = torus::parse_slope(slope);
    const ChartPoint x = surface_chart(parse_surface(surface), gamma);
    double dl, dt;
    if (std::sscanf(v.c_str(), "%lf,%lf", &dl, &dt) != 2)
        throw std::invalid_argument("norm: expected --v dl,dt");
    const auto rep = torus::finsler_norm(x, {dl, dt}, depth, fd_step);
    Json doc;
    doc["schema_version"] = kVersion;
    doc["command"] = "norm";
    doc["surface"] = surface;
    doc["slope"] = slope;
    doc["v"] = {dl, dt};
    doc["depth"] = depth;
    doc["fd_step"] = fd_step;
    doc["value"] = rep.value;
    doc["argmax"] = slope_str(rep.argmax);
    doc["increments"] = {rep.increment_prev, rep.increment_last};
    emit(doc.dump(2) + "\n", out);
    return 0;
}

int run_extract(const std::string& surface, const std::string& gamma_s, const std::string& alpha_s,
                int m_max, int depth, double fd_step, const std::string& out) {
    const FrickeTriple x = surface_triple(parse_surface(surface));
    const Slope gamma = torus::parse_slope(gamma_s);
    const Slope alpha0 = torus::parse_slope(alpha_s);
    const auto res = torus::length_extraction(x, gamma, alpha0, m_max, depth, fd_step);
    CsvWriter csv("extract-length/1",
                  {{"version", kVersion}, {"surface", surface}, {"gamma", gamma_s},
                   {"alpha0", alpha_s}, {"mmax", std::to_string(m_max)},
                   {"depth", std::to_string(depth)}, {"fd_step", fmt(fd_step)}},
                  {"m", "ell_alpha_m", "norm_diff", "estimate", "estimate_step"});
    for (const auto& row : res.rows)
        csv.row({std::to_string(row.m), fmt(row.ell_m), fmt(row.norm_diff), fmt(row.estimate),
                 fmt(row.estimate_step)});
    emit(csv.text(), out);
    Json summary;
    summary["schema_version"] = kVersion;
    summary["command"] = "extract-length";
    summary["intersection"] = res.intersection;
    summary["rows"] = static_cast<int>(res.rows.size());
    summary["truncated"] = res.truncated;
    if (!res.rows.empty()) summary["final_estimate"] = res.rows.back().estimate;
    std::cout << summary.dump(2) << "\n";
    if (res.truncated) throw FlaggedResult("extract-length: stopped early on overflow");
    return 0;
}

int run_twist_width(double la, const std::string& left, const std::string& right,
                    const std::string& decay, const std::string& out) {
    double bl, gl, br, gr;
    if (std::sscanf(left.c_str(), "%lf,%lf", &bl, &gl) != 2 ||
        std::sscanf(right.c_str(), "%lf,%lf", &br, &gr) != 2)
        throw std::invalid_argument("twist-width: expected --left b,g and --right b,g");
    Json doc;
    doc["schema_version"] = kVersion;
    doc["command"] = "twist-width";
    doc["ell_alpha"] = la;
    doc["left"] = {bl, gl};
    doc["right"] = {br, gr};
    doc["value"] = annulus::twist_width({la, bl, gl, br, gr});
    std::cout << doc.dump(2) << "\n";
    if (!decay.empty()) {
        double la0, la1;
        int n;
        if (std::sscanf(decay.c_str(), "%lf:%lf:%d", &la0, &la1, &n) != 3 || n < 2)
            throw std::invalid_argument("twist-width: expected --decay la0:la1:n");
        CsvWriter csv("twist-width-decay/1",
                      {{"version", kVersion}, {"left", left}, {"right", right}, {"decay", decay}},
                      {"ell_alpha", "width"});
        for (int k = 0; k < n; ++k) {
            const double l = la0 + (la1 - la0) * k / (n - 1);
            csv.row({fmt(l), fmt(annulus::twist_width({l, bl, gl, br, gr}))});
        }
        emit(csv.text(), out);
    }
    return 0;
}

int run_convex_analyze(const std::string& polytope, const std::string& poset, int maps,
                       std::uint64_t seed, const std::string& out) {
    Json doc;
    doc["schema_version"] = kVersion;
    doc["command"] = "convex-analyze";
    if (!polytope.empty()) {
        const convex::RationalPolytope poly(load_polytope(polytope));
        doc["polytope"] = polytope;
        doc["report"] = lattice_report(poly);
        if (maps > 0) {
            std::mt19937_64 rng(seed);
            int passed = 0;
            for (int k = 0; k < maps; ++k) {
                const auto m = random_invertible(poly.dim(), rng);
                if (linear_invariance_check(poly, m).all()) ++passed;
            }
            doc["linear_invariance"] = {{"maps", maps}, {"seed", seed}, {"passed", passed}};
        }
    } else if (!poset.empty()) {
        doc["poset"] = poset;
        doc["report"] = poset_report(load_poset(poset));
    } else {
        throw std::invalid_argument("convex analyze: provide --polytope or --poset");
    }
    emit(doc.dump(2) + "\n", out);
    return 0;
}

int run_convex_dual(const std::string& polytope, const std::string& out) {
    const convex::RationalPolytope poly(load_polytope(polytope));
    const convex::RationalPolytope dual = poly.dual_body();
    std::vector<std::string> cols;
    for (int i = 0; i < dual.dim(); ++i) cols.push_back("x" + std::to_string(i));
    CsvWriter csv("convex-dual/1", {{"version", kVersion}, {"polytope", polytope}}, cols);
    for (const RatVec& v : dual.vertices()) {
        std::vector<std::string> row;
        for (const Rational& r : v) row.push_back(convex::to_string(r));
        csv.row(row);
    }
    emit(csv.text(), out);
    return 0;
}

int run_dual_sphere(const std::string& surface, int depth, double fd_step, long long den,
                    const std::string& out, const std::string& hull_csv) {
    const FrickeTriple x = surface_triple(parse_surface(surface));
    const ChartPoint chart = torus::chart_from_fricke(x, Slope{1, 0});
    std::vector<convex::TaggedCovector> samples;
    for (const Slope& s : torus::enumerate_slopes(depth)) {
        const torus::Covector w = torus::covector_sample(chart, s, fd_step);
        samples.push_back({s, w.cell, w.ctwist});
    }
    const auto rep = convex::dual_sphere_experiment(samples, den);
    if (!hull_csv.empty()) {
        CsvWriter csv("dual-sphere-hull/1",
                      {{"version", kVersion}, {"surface", surface},
                       {"depth", std::to_string(depth)}, {"fd_step", fmt(fd_step)},
                       {"denominator_bound", std::to_string(den)}},
                      {"slope", "cell", "ctwist"});
        for (size_t i = 0; i < rep.hull_order.size(); ++i) {
            const convex::RatVec& v = rep.hull_vertices[i];
            csv.row({slope_str(rep.hull_order[i]), convex::to_string(v[0]),
                     convex::to_string(v[1])});
        }
        csv.save(hull_csv);
    }
    Json doc;
    doc["schema_version"] = kVersion;
    doc["command"] = "dual-sphere";
    doc["surface"] = surface;
    doc["depth"] = depth;
    doc["fd_step"] = fd_step;
    doc["denominator_bound"] = den;
    doc["samples"] = rep.sample_count;
    doc["hull_vertices"] = rep.hull_vertex_count;
    doc["all_tags_are_vertices"] = rep.all_tags_are_vertices;
    doc["origin_interior"] = rep.origin_interior;
    Json missing = Json::array();
    for (const Slope& s : rep.missing) missing.push_back(slope_str(s));
    doc["missing"] = missing;
    emit(doc.dump(2) + "\n", out);
    return 0;
}

int run_primal_sphere(const std::string& surface, int depth, int samples, double fd_step,
                      double tol, const std::string& out) {
    const ChartPoint x = surface_chart(parse_surface(surface), Slope{1, 0});
    const auto rep = convex::primal_sphere_experiment(x, depth, samples, fd_step);
    CsvWriter csv("primal-sphere/1",
                  {{"version", kVersion}, {"surface", surface}, {"depth", std::to_string(depth)},
                   {"samples", std::to_string(samples)}, {"fd_step", fmt(fd_step)}},
                  {"angle", "x", "y", "argmax"});
    for (const auto& s : rep.samples)
        csv.row({fmt(s.angle), fmt(s.x), fmt(s.y), slope_str(s.argmax)});
    if (!out.empty()) csv.save(out);
    Json doc;
    doc["schema_version"] = kVersion;
    doc["command"] = "primal-sphere";
    doc["collinearity_tol"] = tol;
    Json runs = Json::array();
    for (const auto& r : rep.runs) {
        Json j;
        j["slope"] = slope_str(r.slope);
        j["count"] = r.count;
        j["max_chord_deviation"] = r.max_chord_deviation;
        j["flat"] = r.count >= 3 && r.max_chord_deviation <= tol;
        runs.push_back(j);
    }
    doc["runs"] = runs;
    std::cout << doc.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thurston-metric experiments on crowned annuli, the once-punctured torus, "
                 "and exact convex bodies"};
    app.require_subcommand(1);

    StretchOpts stretch;
    auto* cmd_stretch = app.add_subcommand("stretch", "stretch/antistretch flow trajectory to CSV");
    cmd_stretch->add_option("--annulus", stretch.annulus, "(1,1)-annulus, e.g. l=1,tau=0");
    cmd_stretch->add_option("--crowned", stretch.crowned,
                            "crowned annulus, e.g. nl=2,nr=1,l=1,tau=0,sl=1");
    cmd_stretch->add_option("--surface", stretch.surface, "surface spec (see README)");
    cmd_stretch->add_option("--slope", stretch.slope, "distinguished slope for surface flows");
    cmd_stretch->add_option("--pattern", stretch.pattern, "parallel|parallel-|opposite+|opposite-");
    cmd_stretch->add_option("--t", stretch.t, "total flow time (number or ln2)");
    cmd_stretch->add_option("--steps", stretch.steps, "trajectory rows");
    cmd_stretch->add_option("--depth", stretch.depth, "validation depth (surface flows)");
    cmd_stretch->add_option("--out", stretch.out, "output CSV path (default stdout)");

    BacktimeOpts backtime;
    auto* cmd_back = app.add_subcommand("backtime", "antistretch run with probe-length table");
    cmd_back->add_option("--surface", backtime.surface);
    cmd_back->add_option("--slope", backtime.slope);
    cmd_back->add_option("--pattern", backtime.pattern);
    cmd_back->add_option("--smax", backtime.smax);
    cmd_back->add_option("--steps", backtime.steps);
    cmd_back->add_option("--probes", backtime.probes, "comma-separated probe slopes");
    cmd_back->add_option("--out", backtime.out);

    std::string dx, dy, dout;
    int ddepth = 7;
    auto* cmd_dist = app.add_subcommand("distance", "truncated Thurston distance with report");
    cmd_dist->add_option("--x", dx)->required();
    cmd_dist->add_option("--y", dy)->required();
    cmd_dist->add_option("--depth", ddepth);
    cmd_dist->add_option("--out", dout);

    std::string nsurface, nslope = "1/0", nv = "1,0", nout;
    int ndepth = 7;
    double nstep = 1e-4;
    auto* cmd_norm = app.add_subcommand("norm", "truncated Finsler norm of a tangent vector");
    cmd_norm->add_option("--surface", nsurface)->required();
    cmd_norm->add_option("--slope", nslope);
    cmd_norm->add_option("--v", nv, "tangent vector dl,dt in the chart");
    cmd_norm->add_option("--depth", ndepth);
    cmd_norm->add_option("--fd-step", nstep);
    cmd_norm->add_option("--out", nout);

    std::string esurface = "markov333", egamma = "0/1", ealpha = "1/0", eout;
    int emmax = 25, edepth = 7;
    double estep = 1e-4;
    auto* cmd_ext = app.add_subcommand("extract-length", "length extraction estimate sequence");
    cmd_ext->add_option("--surface", esurface);
    cmd_ext->add_option("--gamma", egamma);
    cmd_ext->add_option("--alpha0", ealpha);
    cmd_ext->add_option("--mmax", emmax);
    cmd_ext->add_option("--depth", edepth);
    cmd_ext->add_option("--fd-step", estep);
    cmd_ext->add_option("--out", eout);

    double wla = 3.0;
    std::string wleft = "1,1", wright = "1,1", wdecay, wout;
    auto* cmd_width = app.add_subcommand("twist-width", "twist width and its decay table");
    cmd_width->add_option("--la", wla, "length of the twisted curve");
    cmd_width->add_option("--left", wleft, "left pants lengths b,g");
    cmd_width->add_option("--right", wright, "right pants lengths b,g");
    cmd_width->add_option("--decay", wdecay, "decay table range la0:la1:n");
    cmd_width->add_option("--out", wout);

    auto* cmd_convex = app.add_subcommand("convex", "exact convex-body analyses");
    cmd_convex->require_subcommand(1);
    std::string cpoly, cposet, cout_path;
    int cmaps = 0;
    std::uint64_t cseed = 1;
    auto* cmd_analyze = cmd_convex->add_subcommand("analyze", "face lattice and adherence data");
    cmd_analyze->add_option("--polytope", cpoly, "vertex JSON file or builtin:<name>");
    cmd_analyze->add_option("--poset", cposet, "face-poset JSON file or builtin:<name>");
    cmd_analyze->add_option("--maps", cmaps, "random linear-invariance checks");
    cmd_analyze->add_option("--seed", cseed);
    cmd_analyze->add_option("--out", cout_path);
    std::string dpoly, dpout;
    auto* cmd_dual = cmd_convex->add_subcommand("dual", "exact polar dual vertices as CSV");
    cmd_dual->add_option("--polytope", dpoly)->required();
    cmd_dual->add_option("--out", dpout);

    std::string ssurface = "markov333", sout, shull;
    int sdepth = 5;
    double sstep = 1e-4;
    long long sden = 1000000000LL;
    auto* cmd_sphere = app.add_subcommand("dual-sphere", "exact hull of sampled slope covectors");
    cmd_sphere->add_option("--surface", ssurface);
    cmd_sphere->add_option("--depth", sdepth);
    cmd_sphere->add_option("--fd-step", sstep);
    cmd_sphere->add_option("--denominator-bound", sden);
    cmd_sphere->add_option("--out", sout);
    cmd_sphere->add_option("--hull-csv", shull, "export hull vertices as exact CSV");

    std::string psurface = "markov333", pout;
    int pdepth = 5, psamples = 720;
    double pstep = 1e-4, ptol = 1e-4;
    auto* cmd_primal =
        app.add_subcommand("primal-sphere", "sampled Thurston unit sphere with flat-edge report");
    cmd_primal->add_option("--surface", psurface);
    cmd_primal->add_option("--depth", pdepth);
    cmd_primal->add_option("--samples", psamples);
    cmd_primal->add_option("--fd-step", pstep);
    cmd_primal->add_option("--collinearity-tol", ptol);
    cmd_primal->add_option("--out", pout);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        Json err;
        err["error"] = "parse";
        err["detail"] = e.what();
        std::cerr << err.dump() << "\n";
        return kExitInputError;
    }

    try {
        if (cmd_stretch->parsed()) return run_stretch(stretch);
        if (cmd_back->parsed()) return run_backtime(backtime);
        if (cmd_dist->parsed()) return run_distance(dx, dy, ddepth, dout);
        if (cmd_norm->parsed()) return run_norm(nsurface, nslope, nv, ndepth, nstep, nout);
        if (cmd_ext->parsed()) return run_extract(esurface, egamma, ealpha, emmax, edepth, estep, eout);
        if (cmd_width->parsed()) return run_twist_width(wla, wleft, wright, wdecay, wout);
        if (cmd_convex->parsed()) {
            if (cmd_analyze->parsed()) return run_convex_analyze(cpoly, cposet, cmaps, cseed, cout_path);
            if (cmd_dual->parsed()) return run_convex_dual(dpoly, dpout);
        }
        if (cmd_sphere->parsed()) return run_dual_sphere(ssurface, sdepth, sstep, sden, sout, shull);
        if (cmd_primal->parsed())
            return run_primal_sphere(psurface, pdepth, psamples, pstep, ptol, pout);
    } catch (const FlaggedResult& e) {
        Json err;
        err["error"] = "flagged";
        err["detail"] = e.what();
        std::cerr << err.dump() << "\n";
        return kExitFlagged;
    } catch (const std::exception& e) {
        Json err;
        err["error"] = "input";
        err["detail"] = e.what();
        std::cerr << err.dump() << "\n";
        return kExitInputError;
    }
    return 0;
}
