#include "geoscan/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "geoscan/error.hpp"
#include "geoscan/geodesiccheck.hpp"
#include "geoscan/limitset.hpp"
#include "json.hpp"

#ifndef GEOSCAN_VERSION
#define GEOSCAN_VERSION "0.0.0"
#endif

namespace geoscan {

namespace {

using json = nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json config_json(const RunConfig& c) {
    json j;
    j["threshold_im"] = c.threshold_im;
    j["surface_timeout_s"] = c.surface_timeout_s;
    j["euler_bound_override"] = c.euler_bound_override ? json(*c.euler_bound_override) : json(nullptr);
    j["num_points"] = c.num_points;
    j["max_word"] = c.max_word;
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["strict"] = c.strict;
    j["exact"] = c.exact;
    return j;
}

json header(const std::string& command, const RunConfig& config,
            const std::vector<std::pair<std::string, std::string>>& inputs) {
    json j;
    j["tool"] = "geoscan";
    j["version"] = tool_version();
    j["command"] = command;
    j["config"] = config_json(config);
    j["inputs"] = json::array();
    for (const auto& [path, bytes] : inputs) j["inputs"].push_back({{"path", path}, {"sha256", sha256_hex(bytes)}});
    return j;
}

CheckConfig check_config(const RunConfig& c) {
    if (!(c.threshold_im > 0)) throw InputError("--threshold must be positive");
    if (!(c.surface_timeout_s > 0)) throw InputError("--timeout must be positive");
    CheckConfig cc;
    cc.threshold = c.threshold_im;
    cc.timeout_s = c.surface_timeout_s;
    cc.euler_bound_override = c.euler_bound_override;
    cc.threads = c.threads;
    return cc;
}

LimitSetConfig limit_config(const RunConfig& c) {
    LimitSetConfig lc;
    lc.num_points = c.num_points;
    lc.max_word = c.max_word;
    lc.seed = c.seed;
    lc.threads = c.threads;
    return lc;
}

json fit_json(const CircleFit& fit, const LimitSetSample& s) {
    json j;
    j["kind"] = to_string(fit.kind);
    if (fit.kind == CircleFit::Kind::Circle) {
        j["center"] = complex_json(fit.center);
        j["radius"] = fit.radius;
    } else {
        j["point"] = complex_json(fit.point);
        j["direction"] = complex_json(fit.direction);
    }
    j["max_residual"] = fit.max_residual;
    j["rms_residual"] = fit.rms_residual;
    j["circle_like"] = fit.max_residual < kCircleResidualThreshold;
    j["points"] = s.points.size();
    j["infinite_points"] = s.infinite_points;
    j["max_word"] = s.max_word;
    j["seed"] = s.seed;
    return j;
}

/// Samples, fits and, with --out, writes <stem>.svg and <stem>.csv.
json limit_set_report(const std::vector<MobiusMatrix>& gens, const RunConfig& config, const std::string& stem) {
    const auto sample = sample_limit_set(gens, limit_config(config));
    const auto fit = fit_circle(sample.points);
    json j = fit_json(fit, sample);
    if (!config.out_dir.empty()) {
        std::filesystem::create_directories(config.out_dir);
        const auto base = std::filesystem::path(config.out_dir) / stem;
        std::ofstream(base.string() + ".svg", std::ios::binary) << limit_set_svg(sample, fit);
        std::ofstream(base.string() + ".csv", std::ios::binary) << limit_set_csv(sample);
        j["svg"] = base.string() + ".svg";
        j["csv"] = base.string() + ".csv";
    }
    return j;
}

std::string coord_string(const NormalCoordinates& x) {
    std::string s;
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "_" : "") + std::to_string(x[i]);
    return s;
}

json verdict_json(const GeodesicVerdict& v) {
    json j;
    j["verdict"] = to_string(v.kind);
    j["mode"] = to_string(v.mode);
    j["euler_characteristic"] = v.euler_characteristic;
    j["input_orientable"] = v.input_orientable;
    j["tested_coordinates"] = v.tested;
    j["surface_generators"] = v.surface_generators;
    j["presentation_check"] = {{"is_surface", v.presentation.is_surface}, {"diagnostic", v.presentation.diagnostic}};
    j["reducible"] = v.reducible;
    if (v.mode == RealnessMode::CertifiedNegative) j["inconclusive"] = v.inconclusive;
    if (v.kind == VerdictKind::NotFuchsian)
        j["witness"] = {{"indices", v.witness_indices}, {"trace", complex_json(v.witness_trace)}, {"imag", v.witness_imag}};
    else
        j["witness"] = nullptr;
    if (v.half) j["half_coordinates"] = *v.half;
    j["traces"] = json::array();
    for (const auto& e : v.traces) j["traces"].push_back({{"indices", e.indices}, {"trace", complex_json(e.trace)}});
    return j;
}

bool is_candidate(VerdictKind k) {
    return k == VerdictKind::TotallyGeodesicCandidate || k == VerdictKind::NonOrientableTotallyGeodesicCandidate ||
           k == VerdictKind::FuchsianDoubleCover;
}

/// Surface group matrices under the manifold representation.
std::vector<MobiusMatrix> surface_matrices(const IdealTriangulation& t, const ManifoldPresentation& mp,
                                           const Representation& rep, const NormalCoordinates& x) {
    std::vector<MobiusMatrix> out;
    for (const auto& w : surface_group(t, mp, x).generator_words) out.push_back(evaluate_word(rep, w));
    return out;
}

void require_exact(const IdealTriangulation& t, const RunConfig& config) {
    if (config.exact && !t.exact_shapes()) throw InputError("--exact needs exact shape data in the triangulation file");
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const IncompleteEnumeration& e) {
        err << "incomplete: " << e.what() << "\n";
        return kExitIncomplete;
    } catch (const SurfaceTimeout& e) {
        err << "incomplete: " << e.what() << "\n";
        return kExitIncomplete;
    } catch (const InconsistencyError& e) {
        err << "inconsistent: " << e.what() << "\n";
        return kExitInconsistent;
    }
}

void emit(const json& report, const RunConfig& config, const std::string& name, std::ostream& out) {
    const std::string text = report.dump(2) + "\n";
    out << text;
    if (!config.out_dir.empty()) {
        std::filesystem::create_directories(config.out_dir);
        std::ofstream((std::filesystem::path(config.out_dir) / name).string(), std::ios::binary) << text;
    }
}

}  // namespace

const char* tool_version() { return GEOSCAN_VERSION; }

int resolve_threads(std::optional<int> flag) {
    if (flag) return std::max(1, *flag);
    if (const char* env = std::getenv("GEOSCAN_THREADS")) {
        int n = 0;
        const auto [p, ec] = std::from_chars(env, env + std::char_traits<char>::length(env), n);
        if (ec == std::errc() && n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

NormalCoordinates parse_coordinates(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) throw InputError("empty coordinate vector");
    if (text[first] == '[' || text[first] == '{') {
        json doc;
        try {
            doc = json::parse(text.begin(), text.end());
            if (doc.is_object()) doc = doc.at("coordinates");
            return doc.get<NormalCoordinates>();
        } catch (const json::exception& e) {
            throw InputError(std::string("malformed coordinate vector: ") + e.what());
        }
    }
    NormalCoordinates x;
    const bool separated = text.find_first_of(", \t\r\n", first) < text.find_last_not_of(" \t\r\n");
    std::size_t i = first;
    while (i < text.size()) {
        const char c = text[i];
        if (c == ',' || c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            ++i;
            continue;
        }
        if (c < '0' || c > '9') throw InputError(std::string("unexpected character '") + c + "' in coordinate vector");
        if (!separated) {
            x.push_back(c - '0');
            ++i;
            continue;
        }
        std::int64_t v = 0;
        const auto [p, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
        if (ec != std::errc()) throw InputError("coordinate out of range");
        x.push_back(v);
        i = static_cast<std::size_t>(p - text.data());
    }
    return x;
}

int cmd_validate(const std::string& tri_file, const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const std::string bytes = read_file(tri_file);
        const auto t = parse_triangulation(bytes);
        const auto g = validate_gluing_equations(t, 1e-9);
        json report = header("validate", config, {{tri_file, bytes}});
        report["num_tetrahedra"] = t.num_tetrahedra();
        report["oriented"] = t.is_oriented();
        report["edge_residuals"] = g.edge_residuals;
        report["max_edge_residual"] = g.max_edge_residual;
        report["cusps_checked"] = g.cusps_checked;
        report["cusps"] = json::array();
        for (const auto& c : g.cusps)
            report["cusps"].push_back({{"cusp", c.cusp}, {"link_triangles", c.link_triangles}, {"residuals", c.residuals}});
        report["max_cusp_residual"] = g.max_cusp_residual;
        report["cusp_basis"] = kCuspBasisDescription;
        report["volume"] = compute_volume(t);
        report["passes"] = g.passes;
        report["warnings"] = json::array();
        for (int i = 0; i < t.num_tetrahedra(); ++i)
            if (is_flat_shape(t.shape(i)))
                report["warnings"].push_back("tetrahedron " + std::to_string(i) + " is flat (volume 0)");
        for (const auto& w : report["warnings"]) err << "warning: " << w.get<std::string>() << "\n";
        emit(report, config, "validate.json", out);
        if (!g.passes) {
            err << "gluing equations fail (max edge residual " << g.max_edge_residual << ", max cusp residual "
                << g.max_cusp_residual << ")\n";
            return static_cast<int>(kExitInput);
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_check(const std::string& tri_file, const std::string& surface_file, const RunConfig& config, std::ostream& out,
              std::ostream& err) {
    return guarded(err, [&] {
        const std::string tri_bytes = read_file(tri_file), surface_bytes = read_file(surface_file);
        const auto t = parse_triangulation(tri_bytes);
        require_exact(t, config);
        const auto x = parse_coordinates(surface_bytes);
        const CheckConfig cc = check_config(config);
        const auto mp = manifold_presentation(t);
        const auto rep = make_representation(t, mp);
        std::optional<ExactRepresentation> exact;
        if (t.exact_shapes() && rep.source == RepresentationSource::FromShapes)
            exact = exact_representation_from_shapes(t, mp);

        const auto v = check_surface(t, mp, rep, x, cc, exact ? &*exact : nullptr);
        json report = header("check", config, {{tri_file, tri_bytes}, {surface_file, surface_bytes}});
        report["representation"] = to_string(rep.source);
        report["max_relator_error"] = rep.max_relator_error;
        report["coordinates"] = x;
        report["letscher_edges"] = letscher_tube_check(t, x);
        report.update(verdict_json(v));
        if (is_candidate(v.kind))
            report["limit_set"] = limit_set_report(surface_matrices(t, mp, rep, v.tested), config,
                                                   "limitset_" + coord_string(x));
        emit(report, config, "check.json", out);
        return config.strict && !is_candidate(v.kind) ? static_cast<int>(kExitNegative) : static_cast<int>(kExitOk);
    });
}

int cmd_scan(const std::string& tri_file, const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const std::string bytes = read_file(tri_file);
        const auto t = parse_triangulation(bytes);
        require_exact(t, config);
        const CheckConfig cc = check_config(config);
        json report = header("scan", config, {{tri_file, bytes}});
        ScanReport r;
        try {
            r = scan_manifold(t, cc);
        } catch (const IncompleteEnumeration& e) {
            report["incomplete"] = true;
            report["error"] = e.what();
            emit(report, config, "scan.json", out);
            throw;
        }
        report["volume"] = r.volume;
        report["euler_bound"] = r.euler_bound;
        report["volume_too_small"] = r.volume_too_small;
        if (r.volume_too_small) report["verdict"] = to_string(VerdictKind::VolumeTooSmall);
        report["representation"] = to_string(r.source);
        report["mode"] = to_string(r.mode);
        report["timings"] = {{"enumeration_s", r.enumeration_s}, {"check_s", r.check_s}};
        report["surfaces"] = json::array();

        std::optional<ManifoldPresentation> mp;
        std::optional<Representation> rep;
        int candidates = 0, timed_out = 0;
        for (const auto& s : r.surfaces) {
            json j;
            j["coordinates"] = s.coordinates;
            j["status"] = to_string(s.status);
            j["letscher_edges"] = s.letscher_edges;
            if (s.verdict) {
                j.update(verdict_json(*s.verdict));
                if (is_candidate(s.verdict->kind)) {
                    ++candidates;
                    if (!mp) {
                        mp = manifold_presentation(t);
                        rep = make_representation(t, *mp);
                    }
                    j["limit_set"] = limit_set_report(surface_matrices(t, *mp, *rep, s.verdict->tested), config,
                                                      "limitset_" + coord_string(s.coordinates));
                }
            } else {
                j["verdict"] = nullptr;
                j["witness"] = nullptr;
                j["traces"] = json::array();
            }
            if (s.status == SurfaceStatus::TimedOut) ++timed_out;
            j["timings"] = {{"enumeration_s", r.enumeration_s}, {"check_s", s.check_s}};
            report["surfaces"].push_back(j);
        }
        report["candidates"] = candidates;
        report["timed_out"] = timed_out;
        emit(report, config, "scan.json", out);
        if (timed_out > 0) {
            err << "incomplete: " << timed_out << " surface check(s) timed out\n";
            return static_cast<int>(kExitIncomplete);
        }
        return config.strict && candidates == 0 ? static_cast<int>(kExitNegative) : static_cast<int>(kExitOk);
    });
}

int cmd_limitset(const std::string& file, const std::optional<std::string>& surface_file, const RunConfig& config,
                 std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const std::string bytes = read_file(file);
        std::vector<std::pair<std::string, std::string>> inputs{{file, bytes}};
        std::vector<MobiusMatrix> gens;
        std::string stem = "limitset";
        if (surface_file) {
            const std::string surface_bytes = read_file(*surface_file);
            inputs.emplace_back(*surface_file, surface_bytes);
            const auto t = parse_triangulation(bytes);
            const auto x = parse_coordinates(surface_bytes);
            const auto mp = manifold_presentation(t);
            const auto rep = make_representation(t, mp);
            const auto probe = build_surface_complex(t, x);
            NormalCoordinates tested = x;
            if (!probe.orientable)
                for (auto& v : tested) v *= 2;
            gens = surface_matrices(t, mp, rep, tested);
            stem += "_" + coord_string(x);
        } else {
            gens = parse_generator_set(bytes).generators;
        }
        json report = header("limitset", config, inputs);
        RunConfig with_out = config;
        if (with_out.out_dir.empty()) with_out.out_dir = ".";
        report["limit_set"] = limit_set_report(gens, with_out, stem);
        emit(report, config, "limitset.json", out);
        const bool circle = report["limit_set"]["circle_like"].get<bool>();
        return config.strict && !circle ? static_cast<int>(kExitNegative) : static_cast<int>(kExitOk);
    });
}

}  // namespace geoscan
