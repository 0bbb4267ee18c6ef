#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "geoscan/error.hpp"
#include "geoscan/holonomy.hpp"

using namespace geoscan;

namespace {

const char* kOrientedFixtures[] = {"figure8", "figure8_sister", "onesided3", "genus2_3tet"};

/// Chordal distance on the Riemann sphere.
double chordal(IdealPoint p, IdealPoint q) {
    if (p.infinite && q.infinite) return 0;
    if (p.infinite) std::swap(p, q);
    if (q.infinite) return 1 / std::sqrt(1 + std::norm(p.z));
    return std::abs(p.z - q.z) / std::sqrt((1 + std::norm(p.z)) * (1 + std::norm(q.z)));
}

bool same_point(IdealPoint p, IdealPoint q, double tol = 1e-9) { return chordal(p, q) < tol; }

double pm_distance(Complex x, Complex y) { return std::min(std::abs(x - y), std::abs(x + y)); }

Word random_word(std::mt19937& rng, int generators, int max_len) {
    Word w(rng() % static_cast<unsigned>(max_len + 1));
    for (auto& l : w) l = static_cast<int>(rng() % static_cast<unsigned>(generators) + 1) * ((rng() & 1) ? 1 : -1);
    return w;
}

IdealPoint random_point(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-3, 3);
    if (rng() % 6 == 0) return IdealPoint::infinity();
    return IdealPoint::at({u(rng), u(rng)});
}

MobiusMatrix commutator(const MobiusMatrix& x, const MobiusMatrix& y) { return x * y * x.inverse() * y.inverse(); }

}  // namespace

TEST_CASE("three-point maps") {
    const IdealPoint zero = IdealPoint::at(0.0), one = IdealPoint::at(1.0), inf = IdealPoint::infinity();
    const auto m = mobius_from_triples({zero, one, inf}, {inf, zero, one});
    CHECK(same_point(m.apply(zero), inf));
    CHECK(same_point(m.apply(one), zero));
    CHECK(same_point(m.apply(inf), one));
    // (z - 1) / z
    CHECK(std::abs(m.a - 1.0) < 1e-12);
    CHECK(std::abs(m.b + 1.0) < 1e-12);
    CHECK(std::abs(m.c - 1.0) < 1e-12);
    CHECK(std::abs(m.d) < 1e-12);
    // The inverse map sends (inf, 0, 1) back to (0, 1, inf).
    const MobiusMatrix back{0.0, -1.0, 1.0, -1.0};
    CHECK(same_point(back.apply(inf), zero));
    CHECK(same_point(back.apply(zero), one));
    CHECK(same_point(back.apply(one), inf));
    CHECK((m * back).distance_to_pm_identity() < 1e-12);

    CHECK(mobius_from_triples({zero, one, inf}, {zero, one, inf}).distance_to_pm_identity() < 1e-15);
    CHECK_THROWS_AS(mobius_from_triples({zero, zero, inf}, {zero, one, inf}), InputError);
    CHECK_THROWS_AS(mobius_from_triples({zero, one, inf}, {inf, one, inf}), InputError);

    std::mt19937 rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        std::array<IdealPoint, 3> from{random_point(rng), random_point(rng), random_point(rng)};
        std::array<IdealPoint, 3> to{random_point(rng), random_point(rng), random_point(rng)};
        if (from[0].infinite + from[1].infinite + from[2].infinite > 1) continue;
        if (to[0].infinite + to[1].infinite + to[2].infinite > 1) continue;
        const auto map = mobius_from_triples(from, to);
        CHECK(std::abs(map.det() - 1.0) < 1e-9);
        for (int i = 0; i < 3; ++i) CHECK(same_point(map.apply(from[i]), to[i], 1e-7));
        const Complex lead = std::abs(map.a) > 1e-12 * map.norm() ? map.a : map.b;
        CHECK((lead.real() > 0 || (lead.real() == 0 && lead.imag() > 0)));
    }
}

TEST_CASE("face pairings") {
    for (const char* name : kOrientedFixtures) {
        CAPTURE(name);
        const auto t = load_fixture(name);
        for (int tet = 0; tet < t.num_tetrahedra(); ++tet)
            for (int f = 0; f < 4; ++f) {
                const auto& g = t.gluing(tet, f);
                const auto m = face_pairing_matrix(t, tet, f);
                const auto here = standard_placement(t.shape(tet));
                const auto there = standard_placement(t.shape(g.neighbor));
                for (int v = 0; v < 4; ++v)
                    if (v != f) CHECK(same_point(m.apply(there[static_cast<std::size_t>(g.perm[v])]), here[static_cast<std::size_t>(v)]));
                const auto back = face_pairing_matrix(t, g.neighbor, g.perm[f]);
                CHECK((m * back).distance_to_pm_identity() < 1e-12);
                CHECK(std::abs(m.det() - 1.0) < 1e-12);
            }
    }
}

TEST_CASE("representations from shapes") {
    const auto f8 = load_fixture("figure8");
    const auto mp = manifold_presentation(f8);
    const auto rep = representation_from_shapes(f8, mp);
    CHECK(rep.source == RepresentationSource::FromShapes);
    CHECK(rep.max_relator_error < 1e-6);
    bool nonreal = false;
    for (const auto& g : rep.generators) nonreal = nonreal || std::abs(g.trace().imag()) > 0.01;
    CHECK(nonreal);

    CHECK_THROWS_AS(representation_from_shapes(load_fixture("gieseking"), manifold_presentation(load_fixture("gieseking"))),
                    InputError);
    const auto one = load_fixture("one_tet");
    CHECK_THROWS_AS(representation_from_shapes(one, manifold_presentation(one)), InconsistencyError);
}

TEST_CASE("word evaluation") {
    std::mt19937 rng(17);
    for (const char* name : kOrientedFixtures) {
        CAPTURE(name);
        const auto t = load_fixture(name);
        const auto mp = manifold_presentation(t);
        const auto rep = representation_from_shapes(t, mp);
        const int n = static_cast<int>(rep.generators.size());
        CHECK(evaluate_word(rep, {}).distance_to_pm_identity() == 0.0);
        CHECK_THROWS_AS(evaluate_word(rep, {n + 1}), InputError);
        CHECK_THROWS_AS(evaluate_word(rep, {0}), InputError);

        std::uniform_real_distribution<double> u(-1, 1);
        const MobiusMatrix conj = MobiusMatrix{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng) + 2, u(rng)}}.normalized();
        Representation conjugated = rep;
        for (auto& g : conjugated.generators) g = conj * g * conj.inverse();

        for (int trial = 0; trial < 200; ++trial) {
            const Word w = random_word(rng, n, 64);
            const Word v = random_word(rng, n, 8);
            const auto m = evaluate_word(rep, w);
            CHECK(std::abs(m.det() - 1.0) < 1e-12 * std::max(1.0, m.norm() * m.norm()));
            const auto q = evaluate_word_quad(rep, w);
            CHECK(static_cast<double>(abs(q.det() - QuadComplex(1))) < 1e-9);
            const auto qd = q.to_double();
            const double gap = std::min(MobiusMatrix{qd.a - m.a, qd.b - m.b, qd.c - m.c, qd.d - m.d}.norm(),
                                        MobiusMatrix{qd.a + m.a, qd.b + m.b, qd.c + m.c, qd.d + m.d}.norm());
            CHECK(gap < 1e-12 * std::max(1.0, m.norm() * m.norm()));
            CHECK(evaluate_word(rep, concat(w, inverse_word(w))).distance_to_pm_identity() < 1e-9 * std::max(1.0, m.norm() * m.norm()));
            const auto wv = evaluate_word(rep, concat(v, w)).trace();
            const auto vw = evaluate_word(rep, concat(w, v)).trace();
            CHECK(std::abs(wv - vw) < 1e-9 * std::max(1.0, std::abs(wv)));
            const Word s = random_word(rng, n, 12);
            const auto direct = evaluate_word(rep, s).trace();
            CHECK(std::abs(direct - evaluate_word(conjugated, s).trace()) < 1e-9 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("traces do not depend on the spanning tree") {
    for (const char* name : kOrientedFixtures) {
        CAPTURE(name);
        const auto t = load_fixture(name);
        const auto base = manifold_presentation(t, 0);
        const auto rep0 = representation_from_shapes(t, base);
        for (int root = 1; root < t.num_tetrahedra(); ++root) {
            const auto other = manifold_presentation(t, root);
            const auto rep = representation_from_shapes(t, other);
            for (int g = 1; g <= base.skeleton.num_generators(); ++g) {
                const auto loop = base.skeleton.generator_loop(g);
                const Complex expected = rep0.generators[static_cast<std::size_t>(g - 1)].trace();
                CHECK(pm_distance(evaluate_word(rep, other.skeleton.word(loop)).trace(), expected) < 1e-9);
            }
        }
    }
}

TEST_CASE("cusp subgroups are abelian") {
    for (const char* name : kOrientedFixtures) {
        CAPTURE(name);
        const auto t = load_fixture(name);
        const auto mp = manifold_presentation(t);
        const auto rep = representation_from_shapes(t, mp);
        const auto s = build_surface_complex(t, vertex_link_coordinates(t, 0));
        const auto surface = dual_skeleton_surface(s);
        const auto words = embed_surface_generators(mp.skeleton, s, surface);
        std::vector<MobiusMatrix> images;
        for (const auto& w : words) images.push_back(evaluate_word(rep, w));
        for (const auto& x : images) {
            CHECK(pm_distance(x.trace(), 2.0) < 1e-9);
            for (const auto& y : images) CHECK(commutator(x, y).distance_to_pm_identity() < 1e-9);
        }
    }
}

TEST_CASE("surface relators map to the identity") {
    for (const char* name : kOrientedFixtures) {
        CAPTURE(name);
        const auto t = load_fixture(name);
        const auto mp = manifold_presentation(t);
        const auto rep = representation_from_shapes(t, mp);
        auto surfaces = enumerate_admissible(t, 4);
        surfaces.push_back(vertex_link_coordinates(t, 0));
        for (const auto& x : surfaces) {
            const auto s = build_surface_complex(t, x);
            const auto sp = surface_presentation(t, s);
            const auto words = embed_surface_generators(mp.skeleton, s, sp.skeleton);
            for (const auto& r : sp.presentation.relators)
                CHECK(evaluate_word(rep, embed_word(words, r)).distance_to_pm_identity() < 1e-6);
            const auto simplified = simplify_presentation(sp.presentation);
            std::vector<Word> kept;
            for (int g : simplified.surviving) kept.push_back(words[static_cast<std::size_t>(g - 1)]);
            for (const auto& r : simplified.presentation.relators)
                CHECK(evaluate_word(rep, embed_word(kept, r)).distance_to_pm_identity() < 1e-6);
        }
    }
}

TEST_CASE("generator matrices from a file") {
    const auto t = load_fixture("figure8");
    const auto mp = manifold_presentation(t);
    const auto rep = representation_from_shapes(t, mp);
    std::map<int, Matrix2> given;
    for (std::size_t i = 0; i < rep.generators.size(); ++i) given[static_cast<int>(i + 1)] = rep.generators[i].entries();
    const IdealTriangulation with(t.gluings(), t.shapes(), t.exact_shapes(), given);
    const auto from_file = make_representation(with, mp);
    CHECK(from_file.source == RepresentationSource::FromFile);
    for (std::size_t i = 0; i < rep.generators.size(); ++i)
        CHECK((from_file.generators[i] * rep.generators[i].inverse()).distance_to_pm_identity() < 1e-12);

    auto bent = given;
    bent[1][1] += 0.5;
    CHECK_THROWS_AS(make_representation(IdealTriangulation(t.gluings(), t.shapes(), std::nullopt, bent), mp), InconsistencyError);
    auto short_list = given;
    short_list.erase(short_list.begin());
    CHECK_THROWS_AS(make_representation(IdealTriangulation(t.gluings(), t.shapes(), std::nullopt, short_list), mp), InputError);
}

TEST_CASE("exact development agrees with the numeric one") {
    std::mt19937 rng(23);
    for (const char* name : {"figure8", "onesided3", "genus2_3tet"}) {
        CAPTURE(name);
        const auto t = load_fixture(name);
        REQUIRE(t.exact_shapes());
        const auto mp = manifold_presentation(t);
        const auto rep = representation_from_shapes(t, mp);
        const auto exact = exact_representation_from_shapes(t, mp);
        REQUIRE(exact.generators.size() == rep.generators.size());
        for (const auto& r : mp.presentation.relators) CHECK(evaluate_word(exact, r).is_scalar());
        for (int trial = 0; trial < 40; ++trial) {
            const Word w = random_word(rng, static_cast<int>(rep.generators.size()), 6);
            const Complex tr = evaluate_word(rep, w).trace();
            const Complex approx = evaluate_word(exact, w).trace_squared_over_det().approx();
            CHECK(std::abs(approx - tr * tr) < 1e-9 * std::max(1.0, std::abs(tr * tr)));
        }
    }
    CHECK_THROWS_AS(exact_representation_from_shapes(load_fixture("figure8_sister"), manifold_presentation(load_fixture("figure8_sister"))),
                    InputError);
}
