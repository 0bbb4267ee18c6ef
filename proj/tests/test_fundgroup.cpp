#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "geoscan/error.hpp"
#include "geoscan/fundgroup.hpp"
#include "geoscan/normalsurface.hpp"

using namespace geoscan;

namespace {

const char* kCuspedFixtures[] = {"figure8", "figure8_sister", "gieseking", "gieseking_flat", "onesided3", "genus2_3tet"};

/// Rank over Q of the exponent-sum matrix, by fraction-free elimination.
int exponent_rank(const GroupPresentation& p) {
    std::vector<std::vector<long long>> m;
    for (const auto& r : p.relators) {
        std::vector<long long> row(static_cast<std::size_t>(p.num_generators), 0);
        for (int l : r) row[static_cast<std::size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
        m.push_back(row);
    }
    int rank = 0;
    for (int col = 0; col < p.num_generators && rank < static_cast<int>(m.size()); ++col) {
        auto pivot = std::find_if(m.begin() + rank, m.end(), [&](const auto& row) { return row[static_cast<std::size_t>(col)] != 0; });
        if (pivot == m.end()) continue;
        std::iter_swap(m.begin() + rank, pivot);
        const auto& pr = m[static_cast<std::size_t>(rank)];
        for (std::size_t i = static_cast<std::size_t>(rank) + 1; i < m.size(); ++i) {
            const long long f = m[i][static_cast<std::size_t>(col)];
            if (f == 0) continue;
            const long long pv = pr[static_cast<std::size_t>(col)];
            long long g = 0;
            for (std::size_t j = 0; j < m[i].size(); ++j) {
                m[i][j] = m[i][j] * pv - pr[j] * f;
                g = std::gcd(g, m[i][j]);
            }
            if (g > 1)
                for (auto& v : m[i]) v /= g;
        }
        ++rank;
    }
    return rank;
}

int betti_one(const GroupPresentation& p) { return p.num_generators - exponent_rank(p); }

/// Face-pair lookup written independently of DualSkeleton: pairs sorted, letter
/// index = position among non-tree pairs.
struct PairTable {
    std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> pairs;

    explicit PairTable(const IdealTriangulation& t) {
        for (int a = 0; a < t.num_tetrahedra(); ++a)
            for (int f = 0; f < 4; ++f) {
                const auto& g = t.gluing(a, f);
                const std::pair<int, int> here{a, f}, there{g.neighbor, g.perm[f]};
                if (here < there) pairs.push_back({here, there});
            }
        std::sort(pairs.begin(), pairs.end());
    }
};

std::vector<NormalCoordinates> small_surfaces(const IdealTriangulation& t, int b) {
    return enumerate_admissible(t, b);
}

GroupPresentation canonical_orientable(int genus) {
    GroupPresentation p{2 * genus, {{}}};
    for (int i = 0; i < genus; ++i) {
        const int a = 2 * i + 1, b = 2 * i + 2;
        p.relators[0].insert(p.relators[0].end(), {a, b, -a, -b});
    }
    return p;
}

GroupPresentation canonical_nonorientable(int genus) {
    GroupPresentation p{genus, {{}}};
    for (int i = 1; i <= genus; ++i) p.relators[0].insert(p.relators[0].end(), {i, i});
    return p;
}

/// Rotate, invert and relabel generators (with random signs).
GroupPresentation scramble(GroupPresentation p, std::mt19937& rng) {
    std::vector<int> perm(static_cast<std::size_t>(p.num_generators));
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> sign(perm.size());
    for (auto& s : sign) s = (rng() & 1) ? 1 : -1;
    for (auto& r : p.relators) {
        for (auto& l : r) {
            const auto k = static_cast<std::size_t>(std::abs(l) - 1);
            l = (l > 0 ? 1 : -1) * sign[k] * perm[k];
        }
        std::rotate(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(rng() % r.size()), r.end());
        if (rng() & 1) r = inverse_word(r);
    }
    return p;
}

IdealTriangulation doubled_tetrahedron() {
    std::vector<std::array<FaceGluing, 4>> gluings(2);
    for (int tet = 0; tet < 2; ++tet)
        for (int f = 0; f < 4; ++f) gluings[static_cast<std::size_t>(tet)][static_cast<std::size_t>(f)] = {1 - tet, Perm4()};
    return IdealTriangulation(gluings, {Complex(0.5, 0.8660254037844386), Complex(0.5, 0.8660254037844386)});
}

}  // namespace

TEST_CASE("word reduction") {
    CHECK(free_reduce(parse_word("abBc")) == parse_word("ac"));
    CHECK(cyclic_reduce(parse_word("Aba")) == parse_word("b"));
    CHECK(parse_word("ab^-1") == Word{1, -2});
    CHECK(parse_word("a⁻¹b") == Word{-1, 2});
    CHECK(format_word({1, -2}) == "ab^-1");
    CHECK(format_word({}) == "1");
    CHECK_THROWS_AS(free_reduce({1, 0}), InputError);
    CHECK_THROWS_AS(parse_word("a1"), InputError);

    std::mt19937 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        Word w(rng() % 20);
        for (auto& l : w) l = static_cast<int>(rng() % 3 + 1) * ((rng() & 1) ? 1 : -1);
        const Word r = free_reduce(w);
        for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i] != -r[i - 1]);
        CHECK(free_reduce(r) == r);
        CHECK(free_reduce(concat(w, inverse_word(w))).empty());
        const Word c = cyclic_reduce(w);
        if (c.size() >= 2) CHECK(c.front() != -c.back());
        CHECK(inverse_word(inverse_word(w)) == w);
    }
}

TEST_CASE("manifold dual skeleton") {
    const auto f8 = load_fixture("figure8");
    const auto d = dual_skeleton_manifold(f8);
    CHECK(d.num_nodes() == 2);
    CHECK(d.edges().size() == PairTable(f8).pairs.size());
    CHECK(d.edges().size() == 4);
    CHECK(d.basepoint() == 0);

    const auto one = dual_skeleton_manifold(load_fixture("one_tet"));
    CHECK(one.num_nodes() == 1);
    CHECK(one.edges().size() == 2);
    CHECK(one.num_generators() == 2);

    for (const char* name : kCuspedFixtures) {
        CAPTURE(name);
        const auto t = load_fixture(name);
        for (int root = 0; root < t.num_tetrahedra(); ++root) {
            const auto s = dual_skeleton_manifold(t, root);
            CHECK(s.num_nodes() == t.num_tetrahedra());
            CHECK(s.num_generators() == static_cast<int>(s.edges().size()) - t.num_tetrahedra() + 1);
            for (int node = 0; node < t.num_tetrahedra(); ++node) CHECK(s.word(s.tree_path(node)).empty());
            for (int g = 1; g <= s.num_generators(); ++g) CHECK(s.word(s.generator_loop(g)) == Word{g});
        }
    }

    const auto both = disjoint_union(f8, f8);
    CHECK_THROWS_AS(dual_skeleton_manifold(both), InputError);
}

TEST_CASE("manifold presentations") {
    // First Betti numbers: one cusp each, rational homology of rank one.
    for (const char* name : {"figure8", "figure8_sister", "gieseking"}) {
        CAPTURE(name);
        const auto t = load_fixture(name);
        for (int root = 0; root < t.num_tetrahedra(); ++root) {
            const auto mp = manifold_presentation(t, root);
            CHECK(mp.presentation.relators.size() == compute_edge_classes(t).size());
            CHECK(betti_one(mp.presentation) == 1);
        }
    }
}

TEST_CASE("presentation verdicts") {
    CHECK(verify_surface_presentation({2, {parse_word("aba^-1b^-1")}}, true).is_surface);
    CHECK_FALSE(verify_surface_presentation({2, {parse_word("ab^-1ab")}}, true).is_surface);
    CHECK(verify_surface_presentation({2, {parse_word("ab^-1ab")}}, false).is_surface);
    CHECK_FALSE(verify_surface_presentation({2, {parse_word("aba^-1b^-1ab")}}, true).is_surface);
    CHECK_FALSE(verify_surface_presentation({2, {parse_word("aba^-1b^-1ab")}}, false).is_surface);
    // Collapses to a free group.
    CHECK_FALSE(verify_surface_presentation({2, {parse_word("abAB"), parse_word("ab")}}, true).is_surface);
    CHECK_FALSE(verify_surface_presentation({2, {parse_word("aAbB")}}, true).is_surface);
    CHECK_FALSE(verify_surface_presentation({0, {}}, true).is_surface);

    std::mt19937 rng(11);
    for (int genus = 1; genus <= 6; ++genus) {
        CAPTURE(genus);
        CHECK(verify_surface_presentation(canonical_orientable(genus), true).is_surface);
        CHECK(verify_surface_presentation(canonical_nonorientable(genus), false).is_surface);
        CHECK_FALSE(verify_surface_presentation(canonical_nonorientable(genus), true).is_surface);
        for (int trial = 0; trial < 20; ++trial) {
            CHECK(verify_surface_presentation(scramble(canonical_orientable(genus), rng), true).is_surface);
            CHECK(verify_surface_presentation(scramble(canonical_nonorientable(genus), rng), false).is_surface);
        }
    }
}

TEST_CASE("simplification keeps the abelianization") {
    // c occurs once overall and is eliminated through a = bc.
    const GroupPresentation p{3, {parse_word("aCB"), parse_word("abAB")}};
    const auto s = simplify_presentation(p);
    CHECK(s.presentation.relators.size() == 1);
    CHECK(s.presentation.num_generators == 2);
    CHECK(betti_one(s.presentation) == betti_one(p));
    CHECK(s.surviving == std::vector<int>{1, 2});

    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        // Add a redundant generator defined by a random word, then a relator using it.
        auto base = scramble(canonical_orientable(2), rng);
        Word def(rng() % 6 + 1);
        for (auto& l : def) l = static_cast<int>(rng() % 4 + 1) * ((rng() & 1) ? 1 : -1);
        Word extra = def;
        extra.push_back(-5);
        base.num_generators = 5;
        base.relators.push_back(extra);
        std::shuffle(base.relators.begin(), base.relators.end(), rng);
        const auto v = verify_surface_presentation(base, true);
        CHECK(v.is_surface);
        CHECK(v.simplified.num_generators == 4);
    }
}

TEST_CASE("vertex link presentations") {
    for (const char* name : {"figure8", "figure8_sister", "gieseking", "onesided3", "genus2_3tet"}) {
        CAPTURE(name);
        const auto t = load_fixture(name);
        const auto s = build_surface_complex(t, vertex_link_coordinates(t, 0));
        const auto sp = surface_presentation(t, s);
        CHECK(static_cast<int>(sp.presentation.relators.size()) == s.num_vertices);
        CHECK(1 - sp.presentation.num_generators + s.num_vertices == s.euler_characteristic);
        const int expected_betti = s.orientable ? 2 : 1;
        CHECK(betti_one(sp.presentation) == expected_betti);
        const auto v = verify_surface_presentation(sp.presentation, s.orientable);
        CHECK_MESSAGE(v.is_surface, v.diagnostic);
        REQUIRE(v.simplified.relators.size() == 1);
        CHECK(v.simplified.num_generators == 2);
        int exponent_sum = 0;
        for (int l : v.simplified.relators[0]) exponent_sum += l > 0 ? 1 : -1;
        if (s.orientable) CHECK(exponent_sum == 0);
    }
}

TEST_CASE("sphere links are simply connected") {
    const auto t = doubled_tetrahedron();
    for (int cusp = 0; cusp < 4; ++cusp) {
        const auto s = build_surface_complex(t, vertex_link_coordinates(t, cusp));
        CHECK(s.euler_characteristic == 2);
        const auto sp = surface_presentation(t, s);
        const auto simplified = simplify_presentation(sp.presentation);
        CHECK(simplified.presentation.num_generators == 0);
        CHECK(simplified.presentation.relators.empty());
    }
}

TEST_CASE("enumerated surfaces have surface group presentations") {
    for (const char* name : kCuspedFixtures) {
        CAPTURE(name);
        const auto t = load_fixture(name);
        for (const auto& x : small_surfaces(t, 4)) {
            const auto s = build_surface_complex(t, x);
            const auto sp = surface_presentation(t, s);
            CHECK(static_cast<int>(sp.presentation.relators.size()) == s.num_vertices);
            CHECK(1 - sp.presentation.num_generators + s.num_vertices == s.euler_characteristic);
            CHECK(betti_one(sp.presentation) == (s.orientable ? 2 : 1) - s.euler_characteristic);
            const auto v = verify_surface_presentation(sp.presentation, s.orientable);
            CHECK_MESSAGE(v.is_surface, v.diagnostic);
            CHECK(v.simplified.num_generators == 2 - s.euler_characteristic);
        }
    }
}

TEST_CASE("genus-2 surface in the three-tetrahedron fixture") {
    const auto t = load_fixture("genus2_3tet");
    const auto found = enumerate_admissible(t, 2);
    REQUIRE(found.size() == 1);
    const auto s = build_surface_complex(t, found[0]);
    CHECK(s.orientable);
    CHECK(s.euler_characteristic == -2);
    const auto v = verify_surface_presentation(surface_presentation(t, s).presentation, true);
    CHECK(v.is_surface);
    REQUIRE(v.simplified.relators.size() == 1);
    CHECK(v.simplified.num_generators == 4);
    std::map<int, std::pair<int, int>> signs;
    for (int l : v.simplified.relators[0]) (l > 0 ? signs[l].first : signs[-l].second)++;
    CHECK(signs.size() == 4);
    for (const auto& [g, pm] : signs) CHECK(pm == std::pair(1, 1));
}

TEST_CASE("surface generator embedding") {
    for (const char* name : kCuspedFixtures) {
        CAPTURE(name);
        const auto t = load_fixture(name);
        const auto manifold = dual_skeleton_manifold(t);
        const PairTable table(t);
        std::vector<NormalCoordinates> surfaces = small_surfaces(t, 2);
        surfaces.push_back(vertex_link_coordinates(t, 0));
        for (const auto& x : surfaces) {
            const auto s = build_surface_complex(t, x);
            const auto surface = dual_skeleton_surface(s);
            const auto words = embed_surface_generators(manifold, s, surface);
            REQUIRE(static_cast<int>(words.size()) == surface.num_generators());
            for (int g = 1; g <= surface.num_generators(); ++g) {
                // Independent translation: each disk crossing becomes its face pair.
                Word oracle;
                for (const auto& c : surface.generator_loop(g)) {
                    const int tet = s.disks[static_cast<std::size_t>(c.node)].tet;
                    const auto& gl = t.gluing(tet, c.slot);
                    const std::pair<int, int> here{tet, c.slot}, there{gl.neighbor, gl.perm[c.slot]};
                    const auto key = std::min(here, there);
                    const auto it = std::find_if(table.pairs.begin(), table.pairs.end(), [&](const auto& p) { return p.first == key; });
                    REQUIRE(it != table.pairs.end());
                    const int e = static_cast<int>(it - table.pairs.begin());
                    const int gen = manifold.generator_of_edge(e);
                    if (gen != 0) oracle.push_back(here == key ? gen : -gen);
                }
                CHECK(words[static_cast<std::size_t>(g - 1)] == free_reduce(oracle));
            }
        }
    }
    CHECK(embed_word({{}, {1, 2}}, {1, -2, 1}) == Word{-2, -1});
}
