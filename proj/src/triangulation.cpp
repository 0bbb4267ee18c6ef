#include "geoscan/triangulation.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "geoscan/error.hpp"
#include "geoscan/union_find.hpp"

namespace geoscan {

using json = nlohmann::json;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kShapeImagSlack = 1e-12;
constexpr double kDegenerateTol = 1e-14;

int slot(int tet, int index, int per) { return tet * per + index; }

Complex corner_log(const IdealTriangulation& t, int tet, int edge) { return std::log(t.edge_shape(tet, edge)); }

void require_nondegenerate(const IdealTriangulation& t) {
    for (int i = 0; i < t.num_tetrahedra(); ++i)
        if (is_degenerate_shape(t.shape(i)))
            throw InputError("degenerate shape in tetrahedron " + std::to_string(i));
}

double reduce_mod_two_pi_i(Complex s) {
    const double turns = std::round(s.imag() / kTwoPi);
    return std::abs(s - Complex(0, kTwoPi * turns));
}

}  // namespace

bool is_degenerate_shape(Complex z) { return std::abs(z) < kDegenerateTol || std::abs(z - 1.0) < kDegenerateTol; }

bool is_flat_shape(Complex z) { return std::abs(z.imag()) <= kShapeImagSlack; }

IdealTriangulation::IdealTriangulation(std::vector<std::array<FaceGluing, 4>> gluings, std::vector<Complex> shapes,
                                       std::optional<ExactShapes> exact, std::map<int, Matrix2> generator_matrices)
    : gluings_(std::move(gluings)),
      shapes_(std::move(shapes)),
      exact_(std::move(exact)),
      generators_(std::move(generator_matrices)) {
    const int t = num_tetrahedra();
    if (t <= 0) throw InputError("triangulation needs at least one tetrahedron");
    if (static_cast<int>(shapes_.size()) != t) throw InputError("shape count does not match tetrahedron count");
    for (int tet = 0; tet < t; ++tet) {
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = gluing(tet, f);
            if (g.neighbor < 0 || g.neighbor >= t)
                throw InputError("gluing of tetrahedron " + std::to_string(tet) + " refers to a missing tetrahedron");
            if (!g.perm.is_bijection()) throw InputError("gluing permutation is not a permutation of {0,1,2,3}");
            if (g.neighbor == tet && g.perm[f] == f) throw InputError("face glued to itself");
            const FaceGluing& back = gluing(g.neighbor, g.perm[f]);
            if (back.neighbor != tet || !(back.perm == g.perm.inverse())) throw InputError("non-involutive gluing");
        }
    }
    for (int tet = 0; tet < t; ++tet) {
        const Complex z = shapes_[static_cast<std::size_t>(tet)];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw InputError("non-finite shape");
        if (z.imag() < -kShapeImagSlack) throw InputError("shape outside closed upper half-plane");
    }
    if (exact_) {
        if (!exact_->field) throw InputError("exact shapes require a field");
        if (static_cast<int>(exact_->shapes.size()) != t) throw InputError("exact shape count mismatch");
        for (int tet = 0; tet < t; ++tet) {
            const Complex v = exact_->shapes[static_cast<std::size_t>(tet)].approx();
            if (std::abs(v - shapes_[static_cast<std::size_t>(tet)]) > 1e-6)
                throw InputError("exact shape of tetrahedron " + std::to_string(tet) + " disagrees with numeric shape");
        }
    }
}

Complex IdealTriangulation::edge_shape(int tet, int edge) const {
    const Complex z = shape(tet);
    switch (edge_shape_type(edge)) {
        case 0: return z;
        case 1: return 1.0 / (1.0 - z);
        default: return (z - 1.0) / z;
    }
}

bool IdealTriangulation::is_oriented() const {
    for (const auto& row : gluings_)
        for (const auto& g : row)
            if (g.perm.sign() != -1) return false;
    return true;
}

std::vector<int> IdealTriangulation::component_labels() const {
    UnionFind uf(num_tetrahedra());
    for (int tet = 0; tet < num_tetrahedra(); ++tet)
        for (int f = 0; f < 4; ++f) uf.unite(tet, gluing(tet, f).neighbor);
    return uf.labels();
}

int IdealTriangulation::num_components() const {
    const auto labels = component_labels();
    return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Rational json_rational(const json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(mpz_class(std::to_string(v.get<long long>())));
    throw InputError("expected a rational as a string or integer");
}

std::vector<Rational> json_rationals(const json& v) {
    if (!v.is_array()) throw InputError("expected an array of rationals");
    std::vector<Rational> out;
    for (const auto& x : v) out.push_back(json_rational(x));
    return out;
}

double json_number(const json& v, const char* what) {
    if (!v.is_number()) throw InputError(std::string("expected a number for ") + what);
    return v.get<double>();
}

Complex json_complex_pair(const json& v) {
    if (!v.is_array() || v.size() != 2) throw InputError("expected [re, im]");
    return {json_number(v[0], "re"), json_number(v[1], "im")};
}

Matrix2 json_matrix(const json& v) {
    if (!v.is_array() || v.size() != 4) throw InputError("generator matrix must be [[re,im] x 4]");
    Matrix2 m;
    for (std::size_t i = 0; i < 4; ++i) m[i] = json_complex_pair(v[i]);
    return m;
}

json complex_pair_json(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

IdealTriangulation parse_triangulation(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed triangulation file: ") + e.what());
    }
    try {
        if (!doc.is_object()) throw InputError("triangulation file must be a JSON object");
        if (!doc.contains("version") || doc["version"] != 1) throw InputError("unsupported or missing version (need 1)");
        if (!doc.contains("num_tetrahedra") || !doc["num_tetrahedra"].is_number_integer())
            throw InputError("missing num_tetrahedra");
        const long long t = doc["num_tetrahedra"].get<long long>();
        if (t <= 0) throw InputError("num_tetrahedra must be positive");
        const json& gl = doc.at("gluings");
        if (!gl.is_array() || static_cast<long long>(gl.size()) != t) throw InputError("face count mismatch");
        std::vector<std::array<FaceGluing, 4>> gluings(static_cast<std::size_t>(t));
        for (std::size_t tet = 0; tet < gl.size(); ++tet) {
            if (!gl[tet].is_array() || gl[tet].size() != 4) throw InputError("face count mismatch");
            for (std::size_t f = 0; f < 4; ++f) {
                const json& entry = gl[tet][f];
                if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer() || !entry[1].is_array() ||
                    entry[1].size() != 4)
                    throw InputError("gluing entries must be [neighbor, [p0,p1,p2,p3]]");
                std::array<int, 4> images{};
                for (std::size_t i = 0; i < 4; ++i) {
                    if (!entry[1][i].is_number_integer()) throw InputError("permutation entries must be integers");
                    images[i] = entry[1][i].get<int>();
                }
                gluings[tet][f] = FaceGluing{entry[0].get<int>(), Perm4(images)};
            }
        }
        const json& sh = doc.at("shapes");
        if (!sh.is_array()) throw InputError("shapes must be an array");
        std::vector<Complex> shapes;
        for (const auto& s : sh) {
            if (!s.is_object()) throw InputError("shape entries must be {\"re\":..,\"im\":..}");
            shapes.emplace_back(json_number(s.at("re"), "re"), json_number(s.at("im"), "im"));
        }
        std::optional<ExactShapes> exact;
        if (doc.contains("exact_shapes")) {
            if (!doc.contains("field")) throw InputError("exact_shapes requires a field");
            const json& fd = doc["field"];
            const RationalPolynomial p(json_rationals(fd.at("min_poly")));
            const json& root = fd.at("root");
            const FieldPtr field = NumberField::create(
                p, {json_number(root.at("re"), "re"), json_number(root.at("im"), "im")},
                json_number(root.at("radius"), "radius"));
            ExactShapes ex{field, {}};
            for (const auto& s : doc["exact_shapes"]) ex.shapes.emplace_back(field, json_rationals(s));
            exact = std::move(ex);
        }
        std::map<int, Matrix2> generators;
        if (doc.contains("generators")) {
            const json& g = doc["generators"];
            if (g.is_array()) {
                for (std::size_t i = 0; i < g.size(); ++i) generators[static_cast<int>(i) + 1] = json_matrix(g[i]);
            } else if (g.is_object()) {
                for (const auto& [key, value] : g.items()) {
                    int index = 0;
                    try {
                        std::size_t used = 0;
                        index = std::stoi(key, &used);
                        if (used != key.size()) throw std::invalid_argument(key);
                    } catch (const std::exception&) {
                        throw InputError("generator key '" + key + "' is not an index");
                    }
                    if (index < 1) throw InputError("generator indices start at 1");
                    generators[index] = json_matrix(value);
                }
            } else {
                throw InputError("generators must be an array or an object");
            }
        }
        return IdealTriangulation(std::move(gluings), std::move(shapes), std::move(exact), std::move(generators));
    } catch (const json::exception& e) {
        throw InputError(std::string("invalid triangulation file: ") + e.what());
    }
}

IdealTriangulation load_triangulation(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_triangulation(buffer.str());
}

std::string serialize_triangulation(const IdealTriangulation& t) {
    json doc;
    doc["version"] = 1;
    doc["num_tetrahedra"] = t.num_tetrahedra();
    json gl = json::array();
    for (const auto& row : t.gluings()) {
        json r = json::array();
        for (const auto& g : row) r.push_back(json::array({g.neighbor, g.perm.images()}));
        gl.push_back(r);
    }
    doc["gluings"] = gl;
    json sh = json::array();
    for (const auto& z : t.shapes()) sh.push_back({{"re", z.real()}, {"im", z.imag()}});
    doc["shapes"] = sh;
    if (const auto& ex = t.exact_shapes()) {
        json poly = json::array();
        for (const auto& c : ex->field->min_poly().coefficients()) poly.push_back(format_rational(c));
        const auto root = ex->field->input_root();
        doc["field"] = {{"min_poly", poly},
                        {"root", {{"re", root.real()}, {"im", root.imag()}, {"radius", ex->field->input_radius()}}}};
        json shapes = json::array();
        for (const auto& e : ex->shapes) {
            json c = json::array();
            for (const auto& q : e.coefficients()) c.push_back(format_rational(q));
            shapes.push_back(c);
        }
        doc["exact_shapes"] = shapes;
    }
    if (!t.generator_matrices().empty()) {
        json g = json::object();
        for (const auto& [index, m] : t.generator_matrices()) {
            json mj = json::array();
            for (const auto& z : m) mj.push_back(complex_pair_json(z));
            g[std::to_string(index)] = mj;
        }
        doc["generators"] = g;
    }
    return doc.dump(2) + "\n";
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < length; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return os.str();
}

IdealTriangulation relabel_tetrahedra(const IdealTriangulation& t, const std::vector<int>& new_index) {
    const int n = t.num_tetrahedra();
    if (static_cast<int>(new_index.size()) != n) throw InputError("relabeling has the wrong length");
    std::vector<std::array<FaceGluing, 4>> gluings(static_cast<std::size_t>(n));
    std::vector<Complex> shapes(static_cast<std::size_t>(n));
    std::optional<ExactShapes> exact;
    if (t.exact_shapes()) exact = ExactShapes{t.exact_shapes()->field, {}};
    std::vector<int> inverse(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) inverse.at(static_cast<std::size_t>(new_index[static_cast<std::size_t>(i)])) = i;
    for (int j = 0; j < n; ++j) {
        const int i = inverse[static_cast<std::size_t>(j)];
        if (i < 0) throw InputError("relabeling is not a permutation");
        shapes[static_cast<std::size_t>(j)] = t.shape(i);
        for (int f = 0; f < 4; ++f) {
            FaceGluing g = t.gluing(i, f);
            g.neighbor = new_index[static_cast<std::size_t>(g.neighbor)];
            gluings[static_cast<std::size_t>(j)][static_cast<std::size_t>(f)] = g;
        }
        if (exact) exact->shapes.push_back(t.exact_shapes()->shapes[static_cast<std::size_t>(i)]);
    }
    return IdealTriangulation(std::move(gluings), std::move(shapes), std::move(exact));
}

IdealTriangulation disjoint_union(const IdealTriangulation& a, const IdealTriangulation& b) {
    auto gluings = a.gluings();
    auto shapes = a.shapes();
    const int offset = a.num_tetrahedra();
    for (auto row : b.gluings()) {
        for (auto& g : row) g.neighbor += offset;
        gluings.push_back(row);
    }
    shapes.insert(shapes.end(), b.shapes().begin(), b.shapes().end());
    return IdealTriangulation(std::move(gluings), std::move(shapes));
}

// ---------------------------------------------------------------------------
// Edges and cusps

std::vector<EdgeClass> compute_edge_classes(const IdealTriangulation& t) {
    const int n = t.num_tetrahedra();
    UnionFind uf(6 * n);
    for (int tet = 0; tet < n; ++tet) {
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = t.gluing(tet, f);
            for (const auto& [a, b] : kEdgeVertices) {
                if (a == f || b == f) continue;
                uf.unite(slot(tet, edge_index(a, b), 6), slot(g.neighbor, edge_index(g.perm[a], g.perm[b]), 6));
            }
        }
    }
    const auto labels = uf.labels();
    const int count = *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<EdgeClass> classes(static_cast<std::size_t>(count));
    for (int tet = 0; tet < n; ++tet) {
        for (int e = 0; e < 6; ++e) {
            EdgeClass& c = classes[static_cast<std::size_t>(labels[static_cast<std::size_t>(slot(tet, e, 6))])];
            c.members.emplace_back(tet, e);
            c.total_log_sum += corner_log(t, tet, e);
        }
    }
    return classes;
}

std::vector<std::vector<EdgeCycleStep>> edge_cycles(const IdealTriangulation& t) {
    const auto classes = compute_edge_classes(t);
    std::vector<std::vector<EdgeCycleStep>> cycles;
    for (const auto& cls : classes) {
        const auto [tet0, e0] = cls.members.front();
        int a = kEdgeVertices[static_cast<std::size_t>(e0)][0];
        int b = kEdgeVertices[static_cast<std::size_t>(e0)][1];
        int others[2], k = 0;
        for (int v = 0; v < 4; ++v)
            if (v != a && v != b) others[k++] = v;
        int tet = tet0, exit = others[0], other = others[1];
        std::vector<EdgeCycleStep> cycle;
        do {
            cycle.push_back({tet, edge_index(a, b), exit});
            if (cycle.size() > cls.members.size())
                throw InputError("edge identified with itself in reverse");
            const FaceGluing& g = t.gluing(tet, exit);
            tet = g.neighbor;
            a = g.perm[a];
            b = g.perm[b];
            const int entered = g.perm[exit];
            exit = g.perm[other];
            other = entered;
        } while (!(tet == tet0 && edge_index(a, b) == e0 && exit == others[0]));
        const int start_a = kEdgeVertices[static_cast<std::size_t>(e0)][0];
        if (a != start_a || cycle.size() != cls.members.size())
            throw InputError("edge identified with itself in reverse");
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

std::vector<std::array<int, 4>> cusp_labels(const IdealTriangulation& t) {
    const int n = t.num_tetrahedra();
    UnionFind uf(4 * n);
    for (int tet = 0; tet < n; ++tet)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = t.gluing(tet, f);
            for (int v = 0; v < 4; ++v)
                if (v != f) uf.unite(slot(tet, v, 4), slot(g.neighbor, g.perm[v], 4));
        }
    const auto labels = uf.labels();
    std::vector<std::array<int, 4>> out(static_cast<std::size_t>(n));
    for (int tet = 0; tet < n; ++tet)
        for (int v = 0; v < 4; ++v)
            out[static_cast<std::size_t>(tet)][static_cast<std::size_t>(v)] = labels[static_cast<std::size_t>(slot(tet, v, 4))];
    return out;
}

namespace {

struct LinkCrossing {
    int from;       // link triangle slot 4*tet+v
    int from_side;  // face of the tetrahedron
    int to;
    int to_side;
};

/// Signed corner log for passing through link triangle (tet, v) from side
/// `in` to side `out`.
Complex corner_term(const IdealTriangulation& t, int tri, int in, int out) {
    if (in == out) return 0;
    const int tet = tri / 4, v = tri % 4;
    const int w = 6 - v - in - out;
    const Complex term = corner_log(t, tet, edge_index(v, w));
    return permutation_sign(w, v, in, out) == 1 ? term : -term;
}

std::vector<CuspReport> cusp_residuals(const IdealTriangulation& t) {
    const int n = t.num_tetrahedra();
    const auto labels = cusp_labels(t);
    int num_cusps = 0;
    for (const auto& row : labels)
        for (int c : row) num_cusps = std::max(num_cusps, c + 1);
    std::vector<CuspReport> reports(static_cast<std::size_t>(num_cusps));
    std::vector<int> parent(static_cast<std::size_t>(4 * n), -2);
    std::vector<int> parent_side(static_cast<std::size_t>(4 * n), -1);  // side leading to the parent
    std::vector<int> depth(static_cast<std::size_t>(4 * n), 0);

    for (int root = 0; root < 4 * n; ++root) {
        if (parent[static_cast<std::size_t>(root)] != -2) continue;
        const int cusp = labels[static_cast<std::size_t>(root / 4)][static_cast<std::size_t>(root % 4)];
        CuspReport& report = reports[static_cast<std::size_t>(cusp)];
        report.cusp = cusp;
        std::vector<int> order;
        std::deque<int> queue{root};
        parent[static_cast<std::size_t>(root)] = -1;
        std::vector<LinkCrossing> non_tree;
        while (!queue.empty()) {
            const int cur = queue.front();
            queue.pop_front();
            order.push_back(cur);
            const int tet = cur / 4, v = cur % 4;
            for (int f = 0; f < 4; ++f) {
                if (f == v) continue;
                const FaceGluing& g = t.gluing(tet, f);
                const int nb = 4 * g.neighbor + g.perm[v];
                const int nb_side = g.perm[f];
                if (parent[static_cast<std::size_t>(nb)] == -2) {
                    parent[static_cast<std::size_t>(nb)] = cur;
                    parent_side[static_cast<std::size_t>(nb)] = nb_side;
                    depth[static_cast<std::size_t>(nb)] = depth[static_cast<std::size_t>(cur)] + 1;
                    queue.push_back(nb);
                } else {
                    const bool tree_down = parent[static_cast<std::size_t>(nb)] == cur && parent_side[static_cast<std::size_t>(nb)] == nb_side;
                    const bool tree_up = parent[static_cast<std::size_t>(cur)] == nb && parent_side[static_cast<std::size_t>(cur)] == f;
                    if (tree_down || tree_up) continue;
                    // Record each non-tree side pair once, from its smaller end.
                    if (std::make_pair(cur, f) < std::make_pair(nb, nb_side)) non_tree.push_back({cur, f, nb, nb_side});
                }
            }
        }
        report.link_triangles = static_cast<int>(order.size());
        for (const auto& edge : non_tree) {
            // Closed walk: root -> edge.from, cross, edge.to -> root.
            std::vector<LinkCrossing> walk;
            for (int x = edge.from; x != root; x = parent[static_cast<std::size_t>(x)]) {
                const int p = parent[static_cast<std::size_t>(x)];
                const int side = parent_side[static_cast<std::size_t>(x)];
                const FaceGluing& g = t.gluing(x / 4, side);
                walk.push_back({p, g.perm[side], x, side});
            }
            std::reverse(walk.begin(), walk.end());
            walk.push_back(edge);
            for (int x = edge.to; x != root; x = parent[static_cast<std::size_t>(x)]) {
                const int side = parent_side[static_cast<std::size_t>(x)];
                const FaceGluing& g = t.gluing(x / 4, side);
                walk.push_back({x, side, parent[static_cast<std::size_t>(x)], g.perm[side]});
            }
            // Cancel back-and-forth crossings where the two tree paths share a prefix.
            std::vector<LinkCrossing> reduced;
            const auto inverse_of = [](const LinkCrossing& a, const LinkCrossing& b) {
                return a.from == b.to && a.from_side == b.to_side && a.to == b.from && a.to_side == b.from_side;
            };
            for (const auto& c : walk) {
                if (!reduced.empty() && inverse_of(reduced.back(), c)) reduced.pop_back();
                else reduced.push_back(c);
            }
            std::size_t head = 0;
            while (reduced.size() - head >= 2 && inverse_of(reduced[head], reduced.back())) {
                ++head;
                reduced.pop_back();
            }
            walk.assign(reduced.begin() + static_cast<std::ptrdiff_t>(head), reduced.end());
            Complex sum = 0;
            for (std::size_t i = 0; i < walk.size(); ++i) {
                const LinkCrossing& arrive = walk[i];
                const LinkCrossing& leave = walk[(i + 1) % walk.size()];
                sum += corner_term(t, arrive.to, arrive.to_side, leave.from_side);
            }
            report.residuals.push_back(reduce_mod_two_pi_i(sum));
        }
    }
    return reports;
}

}  // namespace

GluingReport validate_gluing_equations(const IdealTriangulation& t, double tol) {
    require_nondegenerate(t);
    GluingReport report;
    for (const auto& cls : compute_edge_classes(t)) {
        const double r = std::abs(cls.total_log_sum - Complex(0, kTwoPi));
        report.edge_residuals.push_back(r);
        report.max_edge_residual = std::max(report.max_edge_residual, r);
    }
    report.cusps_checked = t.is_oriented();
    if (report.cusps_checked) {
        report.cusps = cusp_residuals(t);
        for (const auto& c : report.cusps)
            for (double r : c.residuals) report.max_cusp_residual = std::max(report.max_cusp_residual, r);
    }
    report.passes = report.max_edge_residual < tol && report.max_cusp_residual < tol;
    return report;
}

// ---------------------------------------------------------------------------
// Volume

namespace {

constexpr int kClausenTerms = 40;

/// zeta(2k) for k = 1..kClausenTerms.
const std::array<double, kClausenTerms + 1>& even_zeta() {
    static const auto table = [] {
        std::array<double, kClausenTerms + 1> z{};
        constexpr double pi = std::numbers::pi;
        z[1] = pi * pi / 6;
        z[2] = std::pow(pi, 4) / 90;
        z[3] = std::pow(pi, 6) / 945;
        z[4] = std::pow(pi, 8) / 9450;
        for (int k = 5; k <= kClausenTerms; ++k) {
            double sum = 0;
            for (int m = 200; m >= 1; --m) sum += std::pow(static_cast<double>(m), -2.0 * k);
            z[static_cast<std::size_t>(k)] = sum;
        }
        return z;
    }();
    return table;
}

}  // namespace

double lobachevsky(double theta) {
    // L(theta) = Cl2(2 theta) / 2, with Cl2 expanded around 0 after reducing
    // its argument to [-pi, pi]:
    //   Cl2(x) = x - x log|x| + sum_k zeta(2k) / (k (2k+1)) * x (x / 2pi)^(2k).
    // For |x| <= pi the k-th term is below 4^-k, so 40 terms leave < 1e-24.
    const double x = std::remainder(2 * theta, kTwoPi);
    if (x == 0) return 0;
    const double ratio = (x / kTwoPi) * (x / kTwoPi);
    const auto& zeta = even_zeta();
    double sum = x - x * std::log(std::abs(x));
    double power = x;
    for (int k = 1; k <= kClausenTerms; ++k) {
        power *= ratio;
        sum += zeta[static_cast<std::size_t>(k)] / (k * (2.0 * k + 1.0)) * power;
    }
    return 0.5 * sum;
}

double compute_volume(const IdealTriangulation& t) {
    require_nondegenerate(t);
    double volume = 0;
    for (int tet = 0; tet < t.num_tetrahedra(); ++tet) {
        if (is_flat_shape(t.shape(tet))) continue;
        for (int e = 0; e < 3; ++e) volume += lobachevsky(std::arg(t.edge_shape(tet, e)));
    }
    return volume;
}

}  // namespace geoscan
