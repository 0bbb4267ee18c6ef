#include "geoscan/limitset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <Eigen/Dense>

#include "geoscan/error.hpp"
#include "json.hpp"

namespace geoscan {

namespace {

using json = nlohmann::json;

std::uint64_t splitmix(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t bounded(std::uint64_t& state, std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(splitmix(state)) * n) >> 64);
}

Complex json_complex(const json& v) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw InputError("complex number must be [re, im]");
    return {v[0].get<double>(), v[1].get<double>()};
}

std::string fmt(const char* spec, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

}  // namespace

GeneratorSet parse_generator_set(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed generator file: ") + e.what());
    }
    GeneratorSet out;
    try {
        if (!doc.is_object() || !doc.contains("version") || doc["version"] != 1)
            throw InputError("generator file needs version 1");
        if (!doc.contains("generators") || !doc["generators"].is_array() || doc["generators"].empty())
            throw InputError("generator file needs a non-empty generators array");
        for (const auto& m : doc["generators"]) {
            if (!m.is_array() || m.size() != 4) throw InputError("generator matrix must be [[re,im] x 4]");
            MobiusMatrix g{json_complex(m[0]), json_complex(m[1]), json_complex(m[2]), json_complex(m[3])};
            if (std::abs(g.det()) < 1e-12 * std::max(1.0, g.norm() * g.norm()))
                throw InputError("singular generator matrix");
            out.generators.push_back(g);
        }
        if (doc.contains("relators")) {
            for (const auto& r : doc["relators"]) {
                if (!r.is_string()) throw InputError("relators must be strings");
                out.relators.push_back(parse_word(r.get<std::string>()));
            }
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed generator file: ") + e.what());
    }
    const Representation rep{out.generators, RepresentationSource::FromFile, 0};
    for (const auto& r : out.relators) {
        const double err = evaluate_word_quad(rep, r).to_double().normalized().distance_to_pm_identity();
        if (err > kRelatorTolerance)
            throw InconsistencyError("relator " + format_word(r) + " misses +-I by " + std::to_string(err));
    }
    return out;
}

GeneratorSet load_generator_set(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_generator_set(buffer.str());
}

std::string serialize_generator_set(const GeneratorSet& g) {
    json doc;
    doc["version"] = 1;
    doc["generators"] = json::array();
    for (const auto& m : g.generators) {
        json e = json::array();
        for (Complex z : m.entries()) e.push_back(json::array({z.real(), z.imag()}));
        doc["generators"].push_back(e);
    }
    if (!g.relators.empty()) {
        doc["relators"] = json::array();
        for (const auto& r : g.relators) doc["relators"].push_back(format_word(r));
    }
    return doc.dump(1) + "\n";
}

LimitSetSample sample_limit_set(const std::vector<MobiusMatrix>& generators, const LimitSetConfig& config) {
    if (generators.empty()) throw InputError("limit set needs at least one generator");
    if (config.num_points < 1 || config.max_word < 1) throw InputError("num_points and max_word must be positive");
    // Products in long double.
    using Wide = std::complex<long double>;
    struct WideMatrix {
        Wide a{1}, b{0}, c{0}, d{1};
    };
    std::vector<WideMatrix> letters;
    for (const auto& g : generators) {
        const MobiusMatrix n = g.normalized(), i = n.inverse();
        letters.push_back({Wide(n.a), Wide(n.b), Wide(n.c), Wide(n.d)});
        letters.push_back({Wide(i.a), Wide(i.b), Wide(i.c), Wide(i.d)});
    }
    const auto count = static_cast<std::size_t>(config.num_points);
    const int every = std::max(1, config.renormalize_every);
    std::vector<Complex> raw(count);
    std::vector<char> finite(count, 0);

    const auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            std::uint64_t state = config.seed ^ (0xD1B54A32D192ED03ULL * (i + 1));
            splitmix(state);
            const auto length = 1 + bounded(state, static_cast<std::uint64_t>(config.max_word));
            WideMatrix m;
            for (std::uint64_t k = 1; k <= length; ++k) {
                const WideMatrix& l = letters[bounded(state, letters.size())];
                m = {m.a * l.a + m.b * l.c, m.a * l.b + m.b * l.d, m.c * l.a + m.d * l.c, m.c * l.b + m.d * l.d};
                if (k % static_cast<std::uint64_t>(every) == 0) {
                    const long double s = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
                    m.a /= s;
                    m.b /= s;
                    m.c /= s;
                    m.d /= s;
                }
            }
            const Wide den = m.c + m.d;
            const Complex z(static_cast<Complex>((m.a + m.b) / den));
            if (std::abs(den) > 0 && std::isfinite(z.real()) && std::isfinite(z.imag())) {
                raw[i] = z;
                finite[i] = 1;
            }
        }
    };
    const int threads = std::max(1, std::min(config.threads, config.num_points));
    if (threads == 1) {
        work(0, count);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (count + static_cast<std::size_t>(threads) - 1) / static_cast<std::size_t>(threads);
        for (std::size_t b = 0; b < count; b += chunk) pool.emplace_back(work, b, std::min(count, b + chunk));
        for (auto& t : pool) t.join();
    }

    LimitSetSample s;
    s.seed = config.seed;
    s.max_word = config.max_word;
    s.num_points = config.num_points;
    for (std::size_t i = 0; i < count; ++i) {
        if (finite[i]) s.points.push_back(raw[i]);
        else ++s.infinite_points;
    }
    std::sort(s.points.begin(), s.points.end(), [](Complex x, Complex y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return s;
}

const char* to_string(CircleFit::Kind k) { return k == CircleFit::Kind::Circle ? "circle" : "line"; }

double residual(const CircleFit& fit, Complex p) {
    if (fit.kind == CircleFit::Kind::Circle) return std::abs(std::abs(p - fit.center) - fit.radius);
    const Complex rel = (p - fit.point) * std::conj(fit.direction);
    return std::abs(rel.imag());
}

CircleFit fit_circle(const std::vector<Complex>& points) {
    std::vector<Complex> distinct = points;
    std::sort(distinct.begin(), distinct.end(), [](Complex x, Complex y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3) throw InputError("circle fit needs at least three distinct points");

    Complex mean{};
    for (Complex p : points) mean += p;
    mean /= static_cast<double>(points.size());
    double scale = 0;
    for (Complex p : points) scale += std::norm(p - mean);
    scale = std::sqrt(scale / static_cast<double>(points.size()));

    Eigen::MatrixXd a(static_cast<Eigen::Index>(points.size()), 4);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Complex q = (points[i] - mean) / scale;
        const auto r = static_cast<Eigen::Index>(i);
        a(r, 0) = std::norm(q);
        a(r, 1) = q.real();
        a(r, 2) = q.imag();
        a(r, 3) = 1;
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinV);
    const Eigen::Vector4d v = svd.matrixV().col(3);
    const double qa = v(0), qb = v(1), qc = v(2), qd = v(3);
    const double lin = std::hypot(qb, qc);

    CircleFit fit;
    // Radius above 1e8 in scaled units is treated as a line.
    if (std::abs(qa) * 1e8 <= lin) {
        fit.kind = CircleFit::Kind::Line;
        const Complex normal{qb / lin, qc / lin};
        fit.point = mean + scale * (-qd / lin) * normal;
        fit.direction = normal * Complex{0, 1};
    } else {
        const Complex c{-qb / (2 * qa), -qc / (2 * qa)};
        fit.center = mean + scale * c;
        fit.radius = scale * std::sqrt(std::max(0.0, std::norm(c) - qd / qa));
    }
    double sum = 0;
    for (Complex p : points) {
        const double r = residual(fit, p);
        fit.max_residual = std::max(fit.max_residual, r);
        sum += r * r;
    }
    fit.rms_residual = std::sqrt(sum / static_cast<double>(points.size()));
    return fit;
}

std::string limit_set_csv(const LimitSetSample& sample) {
    std::string out;
    for (Complex p : sample.points) out += fmt("%.17g", p.real()) + "," + fmt("%.17g", p.imag()) + "\n";
    return out;
}

std::string limit_set_svg(const LimitSetSample& sample, const CircleFit& fit, int canvas) {
    double lo_x, hi_x, lo_y, hi_y;
    if (fit.kind == CircleFit::Kind::Circle) {
        lo_x = fit.center.real() - 1.2 * fit.radius;
        hi_x = fit.center.real() + 1.2 * fit.radius;
        lo_y = fit.center.imag() - 1.2 * fit.radius;
        hi_y = fit.center.imag() + 1.2 * fit.radius;
    } else {
        std::vector<double> mod;
        for (Complex p : sample.points) mod.push_back(std::abs(p - fit.point));
        std::sort(mod.begin(), mod.end());
        const double half = mod.empty() ? 1.0 : std::max(1e-9, 2 * mod[mod.size() / 2]);
        lo_x = fit.point.real() - half;
        hi_x = fit.point.real() + half;
        lo_y = fit.point.imag() - half;
        hi_y = fit.point.imag() + half;
    }
    const double span = std::max(hi_x - lo_x, hi_y - lo_y);
    const double px = canvas / span;
    const auto sx = [&](double x) { return (x - lo_x) * px; };
    const auto sy = [&](double y) { return canvas - (y - lo_y) * px; };

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(canvas) + "\" height=\"" +
                      std::to_string(canvas) + "\" viewBox=\"0 0 " + std::to_string(canvas) + " " +
                      std::to_string(canvas) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g fill=\"black\">\n";
    for (Complex p : sample.points) {
        const double x = sx(p.real()), y = sy(p.imag());
        if (x < 0 || y < 0 || x > canvas || y > canvas) continue;
        out += "<circle cx=\"" + fmt("%.2f", x) + "\" cy=\"" + fmt("%.2f", y) + "\" r=\"0.8\"/>\n";
    }
    out += "</g>\n";
    if (fit.kind == CircleFit::Kind::Circle) {
        out += "<circle cx=\"" + fmt("%.2f", sx(fit.center.real())) + "\" cy=\"" + fmt("%.2f", sy(fit.center.imag())) +
               "\" r=\"" + fmt("%.2f", fit.radius * px) + "\" fill=\"none\" stroke=\"red\" stroke-width=\"0.6\"/>\n";
    } else {
        const Complex p = fit.point - 2 * span * fit.direction, q = fit.point + 2 * span * fit.direction;
        out += "<line x1=\"" + fmt("%.2f", sx(p.real())) + "\" y1=\"" + fmt("%.2f", sy(p.imag())) + "\" x2=\"" +
               fmt("%.2f", sx(q.real())) + "\" y2=\"" + fmt("%.2f", sy(q.imag())) +
               "\" stroke=\"red\" stroke-width=\"0.6\"/>\n";
    }
    out += "<text x=\"10\" y=\"20\" font-family=\"monospace\" font-size=\"12\">" + std::string(to_string(fit.kind)) +
           " max_residual=" + fmt("%.3e", fit.max_residual) + " rms=" + fmt("%.3e", fit.rms_residual) +
           " points=" + std::to_string(sample.points.size()) + " seed=" + std::to_string(sample.seed) + "</text>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace geoscan
