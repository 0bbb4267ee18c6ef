#include "geoscan/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geoscan/error.hpp"

namespace geoscan {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

template <class S>
struct Point {
    S z;
    bool infinite;
};

template <class S>
struct Mat {
    S a, b, c, d;

    Mat operator*(const Mat& y) const {
        return {a * y.a + b * y.c, a * y.b + b * y.d, c * y.a + d * y.c, c * y.b + d * y.d};
    }
    Mat adjugate() const { return {d, -b, -c, a}; }
};

/// Sends (p1, p2, p3) to (0, 1, inf).
template <class S>
Mat<S> to_standard(const std::array<Point<S>, 3>& p, const S& zero, const S& one) {
    const auto& [p1, p2, p3] = p;
    if (p1.infinite) return {zero, p2.z - p3.z, one, -p3.z};
    if (p2.infinite) return {one, -p1.z, one, -p3.z};
    if (p3.infinite) return {one, -p1.z, zero, p2.z - p1.z};
    return {p2.z - p3.z, -(p1.z * (p2.z - p3.z)), p2.z - p1.z, -(p3.z * (p2.z - p1.z))};
}

template <class S, class Same>
void require_distinct(const std::array<Point<S>, 3>& p, Same same) {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const auto& x = p[idx(i)];
            const auto& y = p[idx(j)];
            const bool coincide = x.infinite || y.infinite ? x.infinite && y.infinite : same(x.z, y.z);
            if (coincide) throw InputError("degenerate placement: coincident ideal points");
        }
}

template <class S, class Same>
Mat<S> triples_map(const std::array<Point<S>, 3>& from, const std::array<Point<S>, 3>& to, const S& zero,
                   const S& one, Same same) {
    require_distinct(from, same);
    require_distinct(to, same);
    return to_standard(to, zero, one).adjugate() * to_standard(from, zero, one);
}

template <class S>
std::array<Point<S>, 4> placement(const S& z, const S& zero, const S& one) {
    return {Point<S>{zero, false}, Point<S>{zero, true}, Point<S>{z, false}, Point<S>{one, false}};
}

/// Map from std(neighbour)[sigma v] to std(tet)[v] for the three v != face.
template <class S, class Same>
Mat<S> pairing(const IdealTriangulation& t, int tet, int face, const std::vector<S>& shapes, const S& zero,
               const S& one, Same same) {
    const auto& g = t.gluing(tet, face);
    const auto here = placement(shapes[idx(tet)], zero, one);
    const auto there = placement(shapes[idx(g.neighbor)], zero, one);
    std::array<Point<S>, 3> from{here[0], here[0], here[0]};
    std::array<Point<S>, 3> to = from;
    int k = 0;
    for (int v = 0; v < 4; ++v) {
        if (v == face) continue;
        from[idx(k)] = there[idx(g.perm[v])];
        to[idx(k)] = here[idx(v)];
        ++k;
    }
    return triples_map(from, to, zero, one, same);
}

bool close_points(Complex x, Complex y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(x) + std::abs(y)); }

MobiusMatrix from_mat(const Mat<Complex>& m) { return MobiusMatrix{m.a, m.b, m.c, m.d}.normalized(); }

void require_developable(const IdealTriangulation& t) {
    if (!t.is_oriented()) throw InputError("holonomy development needs an oriented triangulation");
    for (const auto& z : t.shapes())
        if (is_degenerate_shape(z)) throw InputError("degenerate shape");
}

double check_relators(const Representation& r, const ManifoldPresentation& p, double tolerance) {
    double worst = 0;
    for (std::size_t i = 0; i < p.presentation.relators.size(); ++i) {
        const double err = evaluate_word(r, p.presentation.relators[i]).distance_to_pm_identity();
        worst = std::max(worst, err);
        if (!(err <= tolerance))
            throw InconsistencyError("inconsistent development: relator " + std::to_string(i) + " is " +
                                     std::to_string(err) + " away from +-I");
    }
    return worst;
}

}  // namespace

MobiusMatrix MobiusMatrix::inverse() const {
    const Complex det_ = det();
    return {d / det_, -b / det_, -c / det_, a / det_};
}

MobiusMatrix MobiusMatrix::normalized() const {
    const Complex det_ = det();
    if (std::abs(det_) == 0.0) throw InputError("singular Mobius matrix");
    const Complex s = std::sqrt(det_);
    MobiusMatrix m{a / s, b / s, c / s, d / s};
    const double scale = m.norm();
    for (const Complex& e : {m.a, m.b, m.c, m.d}) {
        if (std::abs(e) <= 1e-12 * scale) continue;
        if (!(e.real() > 0 || (e.real() == 0 && e.imag() > 0))) m = {-m.a, -m.b, -m.c, -m.d};
        break;
    }
    return m;
}

IdealPoint MobiusMatrix::apply(IdealPoint p) const {
    if (p.infinite) return c == Complex{} ? IdealPoint::infinity() : IdealPoint::at(a / c);
    const Complex den = c * p.z + d;
    if (den == Complex{}) return IdealPoint::infinity();
    return IdealPoint::at((a * p.z + b) / den);
}

double MobiusMatrix::norm() const {
    return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

double MobiusMatrix::distance_to_pm_identity() const {
    const MobiusMatrix minus{a - 1.0, b, c, d - 1.0};
    const MobiusMatrix plus{a + 1.0, b, c, d + 1.0};
    return std::min(minus.norm(), plus.norm());
}

MobiusMatrix operator*(const MobiusMatrix& x, const MobiusMatrix& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

MobiusMatrix mobius_from_triples(const std::array<IdealPoint, 3>& from, const std::array<IdealPoint, 3>& to) {
    const auto conv = [](const std::array<IdealPoint, 3>& p) {
        return std::array<Point<Complex>, 3>{Point<Complex>{p[0].z, p[0].infinite}, Point<Complex>{p[1].z, p[1].infinite},
                                             Point<Complex>{p[2].z, p[2].infinite}};
    };
    return from_mat(triples_map(conv(from), conv(to), Complex{0.0}, Complex{1.0}, close_points));
}

std::array<IdealPoint, 4> standard_placement(Complex z) {
    return {IdealPoint::at(0.0), IdealPoint::infinity(), IdealPoint::at(z), IdealPoint::at(1.0)};
}

MobiusMatrix face_pairing_matrix(const IdealTriangulation& t, int tet, int face) {
    return from_mat(pairing(t, tet, face, t.shapes(), Complex{0.0}, Complex{1.0}, close_points));
}

const char* to_string(RepresentationSource s) {
    return s == RepresentationSource::FromShapes ? "from_shapes" : "from_file";
}

std::vector<MobiusMatrix> developed_placements(const IdealTriangulation& t, const DualSkeleton& skeleton) {
    std::vector<MobiusMatrix> out(idx(t.num_tetrahedra()));
    for (int node = 0; node < t.num_tetrahedra(); ++node) {
        MobiusMatrix m;
        for (const auto& c : skeleton.tree_path(node)) m = m * face_pairing_matrix(t, c.node, c.slot);
        out[idx(node)] = m.normalized();
    }
    return out;
}

Representation representation_from_shapes(const IdealTriangulation& t, const ManifoldPresentation& p,
                                          double tolerance) {
    require_developable(t);
    const auto& sk = p.skeleton;
    const auto placements = developed_placements(t, sk);
    Representation r;
    r.source = RepresentationSource::FromShapes;
    for (int g = 1; g <= sk.num_generators(); ++g) {
        const auto& e = sk.edges()[idx(sk.edge_of_generator(g))];
        const MobiusMatrix m = placements[idx(e.from.node)] * face_pairing_matrix(t, e.from.node, e.from.slot) *
                               placements[idx(e.to.node)].inverse();
        r.generators.push_back(m.normalized());
    }
    r.max_relator_error = check_relators(r, p, tolerance);
    return r;
}

Representation representation_from_file(const IdealTriangulation& t, const ManifoldPresentation& p,
                                        double tolerance) {
    const auto& given = t.generator_matrices();
    const int n = p.skeleton.num_generators();
    if (static_cast<int>(given.size()) != n)
        throw InputError("expected " + std::to_string(n) + " generator matrices, found " + std::to_string(given.size()));
    Representation r;
    r.source = RepresentationSource::FromFile;
    for (int g = 1; g <= n; ++g) {
        const auto it = given.find(g);
        if (it == given.end()) throw InputError("missing matrix for generator " + std::to_string(g));
        r.generators.push_back(MobiusMatrix::from_entries(it->second).normalized());
    }
    r.max_relator_error = check_relators(r, p, tolerance);
    return r;
}

Representation make_representation(const IdealTriangulation& t, const ManifoldPresentation& p, double tolerance) {
    return t.generator_matrices().empty() ? representation_from_shapes(t, p, tolerance)
                                          : representation_from_file(t, p, tolerance);
}

MobiusMatrix evaluate_word(const Representation& r, const Word& w) {
    MobiusMatrix m;
    const int n = static_cast<int>(r.generators.size());
    for (int l : w) {
        const int g = std::abs(l);
        if (l == 0 || g > n) throw InputError("word letter out of range");
        const MobiusMatrix& x = r.generators[idx(g - 1)];
        m = m * (l > 0 ? x : x.inverse());
    }
    return m;
}

QuadMobius QuadMobius::from(const MobiusMatrix& m) {
    const auto q = [](Complex z) { return QuadComplex(z.real(), z.imag()); };
    return QuadMobius{q(m.a), q(m.b), q(m.c), q(m.d)}.normalized();
}

MobiusMatrix QuadMobius::to_double() const {
    const auto z = [](const QuadComplex& w) { return Complex(static_cast<double>(w.real()), static_cast<double>(w.imag())); };
    return {z(a), z(b), z(c), z(d)};
}

QuadMobius QuadMobius::normalized() const {
    const QuadComplex s = sqrt(det());
    return {a / s, b / s, c / s, d / s};
}

QuadMobius operator*(const QuadMobius& x, const QuadMobius& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

QuadMobius evaluate_word_quad(const Representation& r, const Word& w) {
    std::vector<QuadMobius> gens;
    for (const auto& g : r.generators) gens.push_back(QuadMobius::from(g));
    QuadMobius m;
    const int n = static_cast<int>(gens.size());
    for (int l : w) {
        const int g = std::abs(l);
        if (l == 0 || g > n) throw InputError("word letter out of range");
        const QuadMobius& x = gens[idx(g - 1)];
        m = m * (l > 0 ? x : x.adjugate());
    }
    return m;
}

ExactMatrix ExactMatrix::identity(const FieldPtr& field) {
    const auto zero = FieldElement::zero(field);
    const auto one = FieldElement::one(field);
    return {one, zero, zero, one};
}

FieldElement ExactMatrix::trace_squared_over_det() const {
    const FieldElement tr = trace();
    return tr * tr / det();
}

ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

ExactRepresentation exact_representation_from_shapes(const IdealTriangulation& t, const ManifoldPresentation& p) {
    if (!t.exact_shapes()) throw InputError("exact mode needs exact shapes");
    require_developable(t);
    const auto& exact = *t.exact_shapes();
    const auto zero = FieldElement::zero(exact.field);
    const auto one = FieldElement::one(exact.field);
    const auto same = [](const FieldElement& x, const FieldElement& y) { return x == y; };
    const auto to_exact = [](const Mat<FieldElement>& m) { return ExactMatrix{m.a, m.b, m.c, m.d}; };
    const auto& sk = p.skeleton;

    std::vector<ExactMatrix> placements;
    for (int node = 0; node < t.num_tetrahedra(); ++node) {
        ExactMatrix m = ExactMatrix::identity(exact.field);
        for (const auto& c : sk.tree_path(node)) m = m * to_exact(pairing(t, c.node, c.slot, exact.shapes, zero, one, same));
        placements.push_back(m);
    }
    ExactRepresentation r{exact.field, {}};
    for (int g = 1; g <= sk.num_generators(); ++g) {
        const auto& e = sk.edges()[idx(sk.edge_of_generator(g))];
        r.generators.push_back(placements[idx(e.from.node)] *
                               to_exact(pairing(t, e.from.node, e.from.slot, exact.shapes, zero, one, same)) *
                               placements[idx(e.to.node)].adjugate());
    }
    for (std::size_t i = 0; i < p.presentation.relators.size(); ++i)
        if (!evaluate_word(r, p.presentation.relators[i]).is_scalar())
            throw InconsistencyError("inconsistent development: relator " + std::to_string(i) + " is not scalar");
    return r;
}

ExactMatrix evaluate_word(const ExactRepresentation& r, const Word& w) {
    ExactMatrix m = ExactMatrix::identity(r.field);
    const int n = static_cast<int>(r.generators.size());
    for (int l : w) {
        const int g = std::abs(l);
        if (l == 0 || g > n) throw InputError("word letter out of range");
        const ExactMatrix& x = r.generators[idx(g - 1)];
        m = m * (l > 0 ? x : x.adjugate());
    }
    return m;
}

}  // namespace geoscan
