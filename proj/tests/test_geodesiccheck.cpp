#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "geoscan/error.hpp"
#include "geoscan/geodesiccheck.hpp"
#include "geoscan/limitset.hpp"

using namespace geoscan;

namespace {

using Raw = std::array<Complex, 4>;

Raw raw_mul(const Raw& x, const Raw& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3]};
}

Raw raw(const MobiusMatrix& m) { return {m.a, m.b, m.c, m.d}; }

/// Trace of g_{i1} g_{i2} ... computed without the library's matrix type.
Complex oracle_trace(const std::vector<MobiusMatrix>& gens, const std::vector<int>& indices) {
    Raw m = raw(gens[static_cast<std::size_t>(indices[0] - 1)]);
    for (std::size_t k = 1; k < indices.size(); ++k) m = raw_mul(m, raw(gens[static_cast<std::size_t>(indices[k] - 1)]));
    return m[0] + m[3];
}

NormalCoordinates coords(const std::string& s) {
    NormalCoordinates x;
    for (char c : s) x.push_back(c - '0');
    return x;
}

MobiusMatrix random_conjugator(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1, 1);
    while (true) {
        MobiusMatrix c{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
        if (std::abs(c.det()) > 0.5) return c.normalized();
    }
}

std::vector<MobiusMatrix> conjugate(const std::vector<MobiusMatrix>& gens, const MobiusMatrix& c) {
    std::vector<MobiusMatrix> out;
    const MobiusMatrix ci = c.inverse();
    for (const auto& g : gens) out.push_back(c * g * ci);
    return out;
}

NormalCoordinates vertex_link(const IdealTriangulation& t, int cusp) {
    NormalCoordinates x(static_cast<std::size_t>(7 * t.num_tetrahedra()), 0);
    const auto labels = cusp_labels(t);
    for (int tet = 0; tet < t.num_tetrahedra(); ++tet)
        for (int v = 0; v < 4; ++v)
            if (labels[static_cast<std::size_t>(tet)][static_cast<std::size_t>(v)] == cusp)
                x[static_cast<std::size_t>(7 * tet + v)] = 1;
    return x;
}

const char* const kOneSided = "000000100000100000001";
const char* const kOneSidedDouble = "000000200000200000002";
const char* const kOddOrientable = "001110010010010000020";

}  // namespace

TEST_CASE("trace test set size and contents") {
    CHECK(trace_test_size(1) == 3);
    CHECK(trace_test_size(4) == 34);
    for (int n = 1; n <= 8; ++n) {
        std::size_t brute = 0;
        for (int i = 1; i <= n; ++i) {
            ++brute;
            for (int j = i; j <= n; ++j) {
                ++brute;
                for (int k = j; k <= n; ++k) ++brute;
            }
        }
        CHECK(trace_test_size(n) == brute);
        const auto ix = trace_test_indices(n);
        CHECK(ix.size() == brute);
        for (const auto& e : ix) {
            CHECK(std::is_sorted(e.begin(), e.end()));
            CHECK(e.front() >= 1);
            CHECK(e.back() <= n);
        }
        CHECK(std::set<std::vector<int>>(ix.begin(), ix.end()).size() == ix.size());
    }

    const auto one = trace_test_indices(1);
    CHECK(one == std::vector<std::vector<int>>{{1}, {1, 1}, {1, 1, 1}});

    const auto g = load_generator_set(fixture_path("genus2_bent")).generators;
    const auto set = trace_test_set(g);
    REQUIRE(set.size() == 34);
    for (const auto& e : set) CHECK(std::abs(e.trace - oracle_trace(g, e.indices)) < 1e-12 * (1 + std::abs(e.trace)));
}

TEST_CASE("real generators give exactly real traces") {
    const auto g = load_generator_set(fixture_path("genus2_fuchsian")).generators;
    for (const auto& m : g)
        for (Complex z : m.entries()) REQUIRE(z.imag() == 0.0);
    const auto v = classify_generators(g, kDefaultRealThreshold);
    CHECK(v.kind != VerdictKind::NotFuchsian);
    for (const auto& e : v.traces) CHECK(e.trace.imag() == 0.0);

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<MobiusMatrix> gens;
        const int n = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < n; ++i) gens.push_back(MobiusMatrix{u(rng), u(rng), u(rng), u(rng)});
        const auto w = classify_generators(gens, 1e-300);
        CHECK(w.kind != VerdictKind::NotFuchsian);
    }
}

TEST_CASE("bent generators are not Fuchsian and the witness reproduces") {
    const auto set = load_generator_set(fixture_path("genus2_bent"));
    CHECK(set.relators.size() == 1);
    const auto v = classify_generators(set.generators, kDefaultRealThreshold);
    REQUIRE(v.kind == VerdictKind::NotFuchsian);
    CHECK(v.witness_imag > 0.01);
    const Complex again = oracle_trace(set.generators, v.witness_indices);
    CHECK(std::abs(again.imag()) > 0.01);
    CHECK(std::abs(again - v.witness_trace) < 1e-12 * (1 + std::abs(again)));
    for (const auto& e : v.traces) CHECK(std::abs(e.trace.imag()) <= v.witness_imag);
    CHECK_FALSE(v.reducible);
}

TEST_CASE("verdicts and traces are conjugation invariant") {
    std::mt19937 rng(2024);
    for (const char* name : {"genus2_fuchsian", "genus2_bent"}) {
        const auto g = load_generator_set(fixture_path(name)).generators;
        const auto base = classify_generators(g, kDefaultRealThreshold);
        for (int trial = 0; trial < 50; ++trial) {
            const auto c = random_conjugator(rng);
            const auto v = classify_generators(conjugate(g, c), kDefaultRealThreshold);
            CHECK(v.kind == base.kind);
            REQUIRE(v.traces.size() == base.traces.size());
            double worst = 0;
            for (std::size_t i = 0; i < v.traces.size(); ++i)
                worst = std::max(worst, std::abs(v.traces[i].trace - base.traces[i].trace));
            CHECK(worst < 1e-9);
        }
    }
}

TEST_CASE("verdict is invariant under permuting generators") {
    std::mt19937 rng(5);
    for (const char* name : {"genus2_fuchsian", "genus2_bent"}) {
        auto g = load_generator_set(fixture_path(name)).generators;
        const auto base = classify_generators(g, kDefaultRealThreshold).kind;
        for (int trial = 0; trial < 24; ++trial) {
            std::shuffle(g.begin(), g.end(), rng);
            CHECK(classify_generators(g, kDefaultRealThreshold).kind == base);
        }
    }
}

TEST_CASE("reducibility diagnostic") {
    const MobiusMatrix a{2.0, 1.0, 0.0, 0.5}, b{1.0, 3.0, 0.0, 1.0}, c{1.0, 0.0, 1.0, 1.0};
    CHECK(share_fixed_point({a, b}));
    CHECK_FALSE(share_fixed_point({a, c}));
    CHECK(share_fixed_point({MobiusMatrix::identity()}));
}

TEST_CASE("double-cover logic on a real representation") {
    const auto t = load_fixture("onesided3_real");
    const auto mp = manifold_presentation(t);
    const auto rep = make_representation(t, mp);
    REQUIRE(rep.source == RepresentationSource::FromFile);
    const CheckConfig config;

    const auto f = check_surface(t, mp, rep, coords(kOneSided), config);
    CHECK(f.kind == VerdictKind::NonOrientableTotallyGeodesicCandidate);
    CHECK_FALSE(f.input_orientable);
    CHECK(f.euler_characteristic == -1);
    CHECK(f.tested == coords(kOneSidedDouble));
    CHECK(f.reducible);

    const auto s = check_surface(t, mp, rep, coords(kOneSidedDouble), config);
    REQUIRE(s.kind == VerdictKind::FuchsianDoubleCover);
    REQUIRE(s.half);
    CHECK(*s.half == coords(kOneSided));
    CHECK(s.euler_characteristic == -2);
    CHECK(s.surface_generators == 4);
    CHECK(trace_test_size(s.surface_generators) == s.traces.size());

    const auto odd = check_surface(t, mp, rep, coords(kOddOrientable), config);
    CHECK(odd.kind == VerdictKind::TotallyGeodesicCandidate);
    CHECK_FALSE(odd.half);
    CHECK(odd.input_orientable);
}

TEST_CASE("true holonomy of the small fixtures is never Fuchsian") {
    const auto t = load_fixture("onesided3");
    const auto mp = manifold_presentation(t);
    const auto rep = make_representation(t, mp);
    const auto exact = exact_representation_from_shapes(t, mp);
    CheckConfig config;
    for (const char* x : {kOneSided, kOneSidedDouble, kOddOrientable}) {
        const auto v = check_surface(t, mp, rep, coords(x), config);
        REQUIRE(v.kind == VerdictKind::NotFuchsian);
        CHECK(v.mode == RealnessMode::NumericThreshold);
        CHECK(v.witness_imag > config.threshold);
        // The witness reproduces from the surface generator words.
        const auto group = surface_group(t, mp, v.tested);
        std::vector<MobiusMatrix> gens;
        for (const auto& w : group.generator_words) gens.push_back(evaluate_word(rep, w));
        CHECK(std::abs(oracle_trace(gens, v.witness_indices).imag()) > config.threshold);

        const auto c = check_surface(t, mp, rep, coords(x), config, &exact);
        CHECK(c.kind == VerdictKind::NotFuchsian);
        CHECK(c.mode == RealnessMode::CertifiedNegative);
        CHECK_FALSE(c.witness_indices.empty());
    }
}

TEST_CASE("check_surface input errors and timeout") {
    const auto t = load_fixture("onesided3_real");
    const auto mp = manifold_presentation(t);
    const auto rep = make_representation(t, mp);
    CheckConfig config;
    NormalCoordinates two = coords(kOneSided);
    const auto link = vertex_link(t, 0);
    for (std::size_t i = 0; i < two.size(); ++i) two[i] += link[i];
    CHECK_THROWS_AS(check_surface(t, mp, rep, two, config), InputError);
    CHECK_THROWS_AS(check_surface(t, mp, rep, NormalCoordinates(21, 0), config), InputError);

    config.timeout_s = 0;
    CHECK_THROWS_AS(check_surface(t, mp, rep, coords(kOneSided), config), SurfaceTimeout);
}

TEST_CASE("scan gates on volume") {
    const auto r = scan_manifold(load_fixture("figure8"), {});
    CHECK(r.volume_too_small);
    CHECK(r.volume < kNonOrientableVolumeThreshold);
    CHECK(r.surfaces.empty());
    for (const char* name : {"figure8_sister", "onesided3", "genus2_3tet"})
        CHECK(scan_manifold(load_fixture(name), {}).volume_too_small);
}

TEST_CASE("scan of a fourfold cover of the figure-8 complement") {
    const auto t = load_fixture("figure8_cover4");
    CHECK(std::abs(compute_volume(t) - 4 * 2.0298832128193) < 1e-8);

    CheckConfig config;
    const auto r = scan_manifold(t, config);
    CHECK_FALSE(r.volume_too_small);
    CHECK(r.euler_bound == 2);
    CHECK(r.mode == RealnessMode::CertifiedNegative);
    CHECK(r.enumeration_s >= 0);
    CHECK(r.check_s >= 0);
    REQUIRE(r.surfaces.size() == 8);
    std::set<NormalCoordinates> seen;
    for (const auto& s : r.surfaces) {
        CHECK(seen.insert(s.coordinates).second);
        if (s.status == SurfaceStatus::LetscherSkipped) {
            CHECK_FALSE(s.letscher_edges.empty());
            CHECK_FALSE(s.verdict);
        } else {
            REQUIRE(s.status == SurfaceStatus::Checked);
            REQUIRE(s.verdict);
            CHECK(s.verdict->kind == VerdictKind::NotFuchsian);
            CHECK(s.verdict->euler_characteristic >= -2);
        }
    }

    config.threads = 4;
    const auto again = scan_manifold(t, config);
    REQUIRE(again.surfaces.size() == r.surfaces.size());
    for (std::size_t i = 0; i < r.surfaces.size(); ++i) {
        CHECK(again.surfaces[i].coordinates == r.surfaces[i].coordinates);
        CHECK(again.surfaces[i].status == r.surfaces[i].status);
        CHECK((again.surfaces[i].verdict ? again.surfaces[i].verdict->kind : VerdictKind::VolumeTooSmall) ==
              (r.surfaces[i].verdict ? r.surfaces[i].verdict->kind : VerdictKind::VolumeTooSmall));
    }

    config.euler_bound_override = 0;
    CHECK(scan_manifold(t, config).surfaces.empty());

    config.euler_bound_override.reset();
    config.timeout_s = 0;
    for (const auto& s : scan_manifold(t, config).surfaces)
        CHECK(s.status != SurfaceStatus::Checked);
}
