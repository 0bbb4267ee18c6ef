#include "geoscan/normalsurface.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <set>
#include <thread>

#include "geoscan/error.hpp"
#include "geoscan/union_find.hpp"

namespace geoscan {

namespace {

using Index = std::size_t;

Index at(int i) { return static_cast<Index>(i); }

void require_length(const IdealTriangulation& t, const NormalCoordinates& x) {
    if (x.size() != at(kDiskTypes * t.num_tetrahedra()))
        throw InputError("coordinate vector has length " + std::to_string(x.size()) + ", expected " +
                         std::to_string(kDiskTypes * t.num_tetrahedra()));
    for (auto v : x)
        if (v < 0) throw InputError("negative normal coordinate");
}

/// The nonzero quad type of a tetrahedron, or -1.
int active_quad(const NormalCoordinates& x, int tet) {
    for (int q = 0; q < 3; ++q)
        if (x[at(quad_index(tet, q))] != 0) return q;
    return -1;
}

/// Partner of vertex a in the partition of quad type q.
int quad_partner(int q, int a) {
    for (int b = 0; b < 4; ++b)
        if (b != a && quad_type_separating(a, b) == q) return b;
    return -1;
}

bool on_zero_side(int q, int v) { return v == 0 || quad_partner(q, 0) == v; }

/// Intersection points of the surface with edge (a, b) inside a tetrahedron.
std::int64_t points_on_edge(const NormalCoordinates& x, int tet, int a, int b) {
    std::int64_t n = x[at(tri_index(tet, a))] + x[at(tri_index(tet, b))];
    const int sep = quad_type_separating(a, b);
    for (int q = 0; q < 3; ++q)
        if (q != sep) n += x[at(quad_index(tet, q))];
    return n;
}

struct DiskLayout {
    const NormalCoordinates& x;
    const SurfaceComplex& s;

    /// Disk through the point at position p (counted from a) on edge (a, b), a < b.
    int disk_at_point(int tet, int a, int b, std::int64_t p) const {
        const std::int64_t ta = x[at(tri_index(tet, a))];
        const std::int64_t n = points_on_edge(x, tet, a, b);
        const std::int64_t tb = x[at(tri_index(tet, b))];
        if (p < ta) return s.disk_index(tet, a, static_cast<int>(p));
        if (p >= n - tb) return s.disk_index(tet, b, static_cast<int>(n - 1 - p));
        const int q = active_quad(x, tet);
        const std::int64_t nq = x[at(quad_index(tet, q))];
        const std::int64_t kk = p - ta;
        return s.disk_index(tet, 4 + q, static_cast<int>(on_zero_side(q, a) ? kk : nq - 1 - kk));
    }

    /// Disk owning the arc at position p (counted from corner v) on face f.
    int disk_at_arc(int tet, int f, int v, std::int64_t p) const {
        const std::int64_t tv = x[at(tri_index(tet, v))];
        if (p < tv) return s.disk_index(tet, v, static_cast<int>(p));
        const int q = quad_type_separating(v, f);
        const std::int64_t nq = x[at(quad_index(tet, q))];
        const std::int64_t kk = p - tv;
        return s.disk_index(tet, 4 + q, static_cast<int>((v == 0 || f == 0) ? kk : nq - 1 - kk));
    }

    /// Position of disk d's arc on face f, counted from the corner it cuts off.
    std::pair<int, std::int64_t> arc_position(int d, int f) const {
        const Disk& disk = s.disks[at(d)];
        if (disk.type < 4) return {disk.type, disk.copy};
        const int q = disk.type - 4;
        const int v = quad_partner(q, f);
        const std::int64_t nq = x[at(quad_index(disk.tet, q))];
        const std::int64_t tv = x[at(tri_index(disk.tet, v))];
        return {v, tv + ((v == 0 || f == 0) ? disk.copy : nq - 1 - disk.copy)};
    }
};

bool disk_has_arc(int type, int face) { return type >= 4 || type != face; }

bool disk_has_corner(int type, int a, int b) {
    if (type < 4) return type == a || type == b;
    return quad_type_separating(a, b) != type - 4;
}

/// Transverse sign of disk d's arc on face f: +1 if the disk normal points away
/// from the corner the arc cuts off.
int transverse_sign(const SurfaceComplex& s, int d, int f) {
    const Disk& disk = s.disks[at(d)];
    if (disk.type < 4) return 1;
    const int v = quad_partner(disk.type - 4, f);
    return (v == 0 || f == 0) ? 1 : -1;
}

}  // namespace

MatchingSystem matching_equations(const IdealTriangulation& t) {
    MatchingSystem sys;
    sys.num_variables = kDiskTypes * t.num_tetrahedra();
    for (int a = 0; a < t.num_tetrahedra(); ++a) {
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = t.gluing(a, f);
            const int b = g.neighbor, bf = g.perm[f];
            if (std::make_pair(b, bf) < std::make_pair(a, f)) continue;
            for (int v = 0; v < 4; ++v) {
                if (v == f) continue;
                const int w = g.perm[v];
                sys.equations.push_back({{tri_index(a, v), quad_index(a, quad_type_separating(v, f))},
                                         {tri_index(b, w), quad_index(b, quad_type_separating(w, bf))}});
            }
        }
    }
    return sys;
}

bool satisfies_quad_condition(const NormalCoordinates& x) {
    for (Index tet = 0; tet * kDiskTypes < x.size(); ++tet) {
        int nonzero = 0;
        for (int q = 0; q < 3; ++q) nonzero += x[tet * kDiskTypes + 4 + at(q)] != 0;
        if (nonzero > 1) return false;
    }
    return true;
}

bool is_admissible(const IdealTriangulation& t, const NormalCoordinates& x) {
    require_length(t, x);
    if (!satisfies_quad_condition(x)) return false;
    for (const auto& eq : matching_equations(t).equations)
        if (x[at(eq.lhs[0])] + x[at(eq.lhs[1])] != x[at(eq.rhs[0])] + x[at(eq.rhs[1])]) return false;
    return true;
}

int SurfaceComplex::disk_index(int tet, int type, int copy) const { return first_disk[at(kDiskTypes * tet + type)] + copy; }

SurfaceComplex build_surface_complex(const IdealTriangulation& t, const NormalCoordinates& x) {
    if (!is_admissible(t, x)) throw InputError("coordinate vector is not admissible");
    SurfaceComplex s;
    const int n = t.num_tetrahedra();
    s.first_disk.resize(at(kDiskTypes * n));
    for (int tet = 0; tet < n; ++tet) {
        for (int type = 0; type < kDiskTypes; ++type) {
            s.first_disk[at(kDiskTypes * tet + type)] = static_cast<int>(s.disks.size());
            for (std::int64_t c = 0; c < x[at(kDiskTypes * tet + type)]; ++c)
                s.disks.push_back({tet, type, static_cast<int>(c)});
        }
    }
    const int num_disks = static_cast<int>(s.disks.size());
    const DiskLayout layout{x, s};

    s.partner.assign(at(num_disks), {});
    int arcs = 0;
    for (int d = 0; d < num_disks; ++d) {
        const Disk& disk = s.disks[at(d)];
        for (int f = 0; f < 4; ++f) {
            if (!disk_has_arc(disk.type, f)) {
                s.partner[at(d)][at(f)] = {-1, -1};
                continue;
            }
            ++arcs;
            const auto [v, p] = layout.arc_position(d, f);
            const FaceGluing& g = t.gluing(disk.tet, f);
            s.partner[at(d)][at(f)] = {layout.disk_at_arc(g.neighbor, g.perm[f], g.perm[v], p), g.perm[f]};
        }
    }
    s.num_edges = arcs / 2;

    // Surface vertices: corners identified across faces.
    UnionFind corners(num_disks * 6);
    for (int tet = 0; tet < n; ++tet) {
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = t.gluing(tet, f);
            for (int e = 0; e < 6; ++e) {
                const auto [a, b] = kEdgeVertices[at(e)];
                if (a == f || b == f) continue;
                const int ga = g.perm[a], gb = g.perm[b];
                const int e2 = edge_index(ga, gb);
                const std::int64_t count = points_on_edge(x, tet, a, b);
                for (std::int64_t p = 0; p < count; ++p) {
                    const int d1 = layout.disk_at_point(tet, a, b, p);
                    const int d2 = ga < gb ? layout.disk_at_point(g.neighbor, ga, gb, p)
                                           : layout.disk_at_point(g.neighbor, gb, ga, count - 1 - p);
                    corners.unite(d1 * 6 + e, d2 * 6 + e2);
                }
            }
        }
    }
    s.corner_vertex.assign(at(num_disks), {});
    std::map<int, int> vertex_id;
    for (int d = 0; d < num_disks; ++d) {
        for (int e = 0; e < 6; ++e) {
            const auto [a, b] = kEdgeVertices[at(e)];
            if (!disk_has_corner(s.disks[at(d)].type, a, b)) {
                s.corner_vertex[at(d)][at(e)] = -1;
                continue;
            }
            const int root = corners.find(d * 6 + e);
            const auto [it, inserted] = vertex_id.emplace(root, static_cast<int>(vertex_id.size()));
            s.corner_vertex[at(d)][at(e)] = it->second;
        }
    }
    s.num_vertices = static_cast<int>(vertex_id.size());
    s.euler_characteristic = s.num_vertices - s.num_edges + num_disks;

    // Components, and orientation signs with parity propagation.
    UnionFind comps(std::max(num_disks, 1));
    std::vector<int> sign(at(num_disks), 0);
    for (int start = 0; start < num_disks; ++start) {
        if (sign[at(start)] != 0) continue;
        sign[at(start)] = 1;
        std::deque<int> queue{start};
        while (!queue.empty()) {
            const int d = queue.front();
            queue.pop_front();
            const Disk& disk = s.disks[at(d)];
            for (int f = 0; f < 4; ++f) {
                const ArcRef other = s.partner[at(d)][at(f)];
                if (other.disk < 0) continue;
                comps.unite(d, other.disk);
                const int eps = t.gluing(disk.tet, f).perm.sign() < 0 ? 1 : -1;
                const int want = sign[at(d)] * transverse_sign(s, d, f) * transverse_sign(s, other.disk, other.face) * eps;
                if (sign[at(other.disk)] == 0) {
                    sign[at(other.disk)] = want;
                    queue.push_back(other.disk);
                } else if (sign[at(other.disk)] != want) {
                    s.orientable = false;
                }
            }
        }
    }
    if (num_disks > 0) {
        s.component = comps.labels();
        s.component.resize(at(num_disks));
        s.num_components = *std::max_element(s.component.begin(), s.component.end()) + 1;
    }
    return s;
}

std::vector<std::vector<int>> edge_weight_terms(const IdealTriangulation& t) {
    std::vector<std::vector<int>> terms;
    for (const auto& cls : compute_edge_classes(t)) {
        const auto [tet, e] = cls.members.front();
        const auto [a, b] = kEdgeVertices[at(e)];
        std::vector<int> idx{tri_index(tet, a), tri_index(tet, b)};
        for (int q = 0; q < 3; ++q)
            if (q != quad_type_separating(a, b)) idx.push_back(quad_index(tet, q));
        terms.push_back(std::move(idx));
    }
    return terms;
}

namespace {

/// 2 * chi as an integer linear form: 2F - (3 T + 4 Q) + 2V.
std::vector<std::int64_t> twice_euler_form(const IdealTriangulation& t) {
    std::vector<std::int64_t> form(at(kDiskTypes * t.num_tetrahedra()), 0);
    for (int tet = 0; tet < t.num_tetrahedra(); ++tet) {
        for (int v = 0; v < 4; ++v) form[at(tri_index(tet, v))] += 2 - 3;
        for (int q = 0; q < 3; ++q) form[at(quad_index(tet, q))] += 2 - 4;
    }
    for (const auto& terms : edge_weight_terms(t))
        for (int i : terms) form[at(i)] += 2;
    return form;
}

std::int64_t apply_form(const std::vector<std::int64_t>& form, const NormalCoordinates& x) {
    std::int64_t s = 0;
    for (Index i = 0; i < x.size(); ++i) s += form[i] * x[i];
    return s;
}

}  // namespace

std::int64_t euler_characteristic(const IdealTriangulation& t, const NormalCoordinates& x) {
    require_length(t, x);
    return apply_form(twice_euler_form(t), x) / 2;
}

double volume_threshold(int euler_abs) { return 4 * std::numbers::pi * kMiyamotoMu * euler_abs; }

int euler_bound(double volume, bool orientable_only) {
    int bound = static_cast<int>(std::floor(volume / volume_threshold(1)));
    if (orientable_only) bound -= bound % 2;
    return std::max(bound, 0);
}

std::vector<int> letscher_tube_check(const IdealTriangulation& t, const NormalCoordinates& x) {
    require_length(t, x);
    std::vector<int> flagged;
    const auto classes = compute_edge_classes(t);
    for (Index c = 0; c < classes.size(); ++c) {
        bool tube = true;
        for (const auto& [tet, e] : classes[c].members) {
            if (x[at(quad_index(tet, edge_shape_type(e)))] == 0) {
                tube = false;
                break;
            }
        }
        if (tube) flagged.push_back(static_cast<int>(c));
    }
    return flagged;
}

std::optional<NormalCoordinates> halve_if_double(const IdealTriangulation& t, const NormalCoordinates& x) {
    require_length(t, x);
    NormalCoordinates half(x.size());
    for (Index i = 0; i < x.size(); ++i) {
        if (x[i] % 2 != 0) return std::nullopt;
        half[i] = x[i] / 2;
    }
    if (!is_admissible(t, half)) return std::nullopt;
    const SurfaceComplex s = build_surface_complex(t, half);
    if (s.num_components != 1 || s.orientable) return std::nullopt;
    return half;
}

NormalCoordinates vertex_link_coordinates(const IdealTriangulation& t, int cusp) {
    NormalCoordinates x(at(kDiskTypes * t.num_tetrahedra()), 0);
    const auto labels = cusp_labels(t);
    bool found = false;
    for (int tet = 0; tet < t.num_tetrahedra(); ++tet)
        for (int v = 0; v < 4; ++v)
            if (labels[at(tet)][at(v)] == cusp) {
                x[at(tri_index(tet, v))] = 1;
                found = true;
            }
    if (!found) throw InputError("no cusp with index " + std::to_string(cusp));
    return x;
}

// ---------------------------------------------------------------------------
// Double description over the admissible region.

namespace {

struct Ray {
    std::vector<std::int64_t> v;
    std::vector<std::uint64_t> zeros;  // bitset of zero coordinates
};

std::vector<std::uint64_t> zero_set(const std::vector<std::int64_t>& v) {
    std::vector<std::uint64_t> z((v.size() + 63) / 64, 0);
    for (Index i = 0; i < v.size(); ++i)
        if (v[i] == 0) z[i / 64] |= std::uint64_t{1} << (i % 64);
    return z;
}

bool compatible_quads(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    for (Index tet = 0; tet * kDiskTypes < a.size(); ++tet) {
        int types = 0;
        for (Index q = 0; q < 3; ++q) {
            const Index i = tet * kDiskTypes + 4 + q;
            types += (a[i] != 0 || b[i] != 0);
        }
        if (types > 1) return false;
    }
    return true;
}

std::int64_t checked(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw IncompleteEnumeration("incomplete enumeration: coordinate overflow during vertex enumeration");
    return static_cast<std::int64_t>(v);
}

}  // namespace

std::vector<NormalCoordinates> admissible_vertex_rays(const IdealTriangulation& t, const EnumerationLimits& limits) {
    const int n = kDiskTypes * t.num_tetrahedra();
    std::vector<Ray> rays;
    for (int i = 0; i < n; ++i) {
        std::vector<std::int64_t> v(at(n), 0);
        v[at(i)] = 1;
        rays.push_back({v, zero_set(v)});
    }
    for (const auto& eq : matching_equations(t).equations) {
        std::vector<std::int64_t> h(at(n), 0);
        h[at(eq.lhs[0])] += 1;
        h[at(eq.lhs[1])] += 1;
        h[at(eq.rhs[0])] -= 1;
        h[at(eq.rhs[1])] -= 1;
        if (std::all_of(h.begin(), h.end(), [](std::int64_t c) { return c == 0; })) continue;
        std::vector<std::int64_t> value(rays.size());
        for (Index r = 0; r < rays.size(); ++r) {
            __int128 s = 0;
            for (Index i = 0; i < at(n); ++i) s += static_cast<__int128>(h[i]) * rays[r].v[i];
            value[r] = checked(s);
        }
        std::vector<Ray> next;
        std::vector<Index> pos, neg;
        for (Index r = 0; r < rays.size(); ++r) {
            if (value[r] == 0) next.push_back(rays[r]);
            else (value[r] > 0 ? pos : neg).push_back(r);
        }
        const Index words = rays.empty() ? 0 : rays.front().zeros.size();
        std::vector<std::uint64_t> common(words);
        for (Index p : pos) {
            for (Index m : neg) {
                if (!compatible_quads(rays[p].v, rays[m].v)) continue;
                for (Index w = 0; w < words; ++w) common[w] = rays[p].zeros[w] & rays[m].zeros[w];
                bool adjacent = true;
                for (Index r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == m) continue;
                    bool contains = true;
                    for (Index w = 0; w < words && contains; ++w) contains = (rays[r].zeros[w] & common[w]) == common[w];
                    if (contains) adjacent = false;
                }
                if (!adjacent) continue;
                std::vector<std::int64_t> v(at(n));
                std::int64_t g = 0;
                for (Index i = 0; i < at(n); ++i) {
                    v[i] = checked(static_cast<__int128>(value[p]) * rays[m].v[i] -
                                   static_cast<__int128>(value[m]) * rays[p].v[i]);
                    g = std::gcd(g, v[i]);
                }
                for (auto& c : v) c /= g;
                next.push_back({v, zero_set(v)});
                if (next.size() > limits.max_rays)
                    throw IncompleteEnumeration("incomplete enumeration: more than " + std::to_string(limits.max_rays) +
                                                " vertex rays");
            }
        }
        rays = std::move(next);
    }
    std::vector<NormalCoordinates> out;
    out.reserve(rays.size());
    for (auto& r : rays) out.push_back(std::move(r.v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Bounded search over quad assignments.

namespace {

using LinearForm = std::map<int, std::int64_t>;  // coordinate index -> coefficient

void add_to(LinearForm& form, int index, std::int64_t c) {
    if ((form[index] += c) == 0) form.erase(index);
}

struct CuspSystem {
    std::vector<std::pair<int, int>> triangles;  // (tet, v)
    std::vector<LinearForm> offset;              // tri = tri(root) + offset(quads)
};

struct Constraint {
    LinearForm form;
    int last_tet;
};

class QuadSearch {
public:
    QuadSearch(const IdealTriangulation& t, int bound, std::vector<std::int64_t> caps, const EnumerationLimits& limits)
        : t_(t), n_(t.num_tetrahedra()), bound_(bound), caps_(std::move(caps)), limits_(limits),
          chi_form_(twice_euler_form(t)) {
        build_cusp_systems();
        setup_angles();
    }

    std::vector<NormalCoordinates> run() {
        // Top-level branches: choices for tetrahedron 0.
        std::vector<std::pair<int, std::int64_t>> branches{{-1, 0}};
        for (int q = 0; q < 3; ++q)
            for (std::int64_t v = 1; v <= caps_[at(quad_index(0, q))]; ++v) branches.emplace_back(q, v);
        std::atomic<Index> next{0};
        std::mutex mutex;
        std::set<NormalCoordinates> found;
        std::exception_ptr failure;
        auto worker = [&] {
            std::vector<std::int64_t> quads(at(3 * n_), 0);
            std::set<NormalCoordinates> local;
            try {
                for (Index b = next++; b < branches.size(); b = next++) {
                    {
                        std::lock_guard lock(mutex);
                        if (failure) return;
                    }
                    std::fill(quads.begin(), quads.end(), 0);
                    const auto [q, v] = branches[b];
                    if (q >= 0) quads[at(q)] = v;
                    if (!consistent(quads, 0) || !within_area(quads, 0)) continue;
                    search(quads, 1, local);
                }
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!failure) failure = std::current_exception();
            }
            std::lock_guard lock(mutex);
            found.insert(local.begin(), local.end());
        };
        const int threads = std::max(1, limits_.threads);
        std::vector<std::thread> pool;
        for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
        return {found.begin(), found.end()};
    }

private:
    void build_cusp_systems() {
        const auto labels = cusp_labels(t_);
        int num_cusps = 0;
        for (const auto& row : labels)
            for (int c : row) num_cusps = std::max(num_cusps, c + 1);
        cusps_.resize(at(num_cusps));
        std::vector<int> slot_of(at(4 * n_), -1);
        for (int tet = 0; tet < n_; ++tet)
            for (int v = 0; v < 4; ++v) {
                auto& c = cusps_[at(labels[at(tet)][at(v)])];
                slot_of[at(4 * tet + v)] = static_cast<int>(c.triangles.size());
                c.triangles.emplace_back(tet, v);
            }
        std::set<std::pair<LinearForm, int>> seen;
        for (auto& c : cusps_) {
            c.offset.assign(c.triangles.size(), {});
            std::vector<bool> done(c.triangles.size(), false);
            done[0] = true;
            std::deque<int> queue{0};
            std::vector<std::pair<int, int>> order;
            while (!queue.empty()) {
                const int i = queue.front();
                queue.pop_front();
                const auto [tet, v] = c.triangles[at(i)];
                for (int f = 0; f < 4; ++f) {
                    if (f == v) continue;
                    const FaceGluing& g = t_.gluing(tet, f);
                    const int w = g.perm[v];
                    const int j = slot_of[at(4 * g.neighbor + w)];
                    // tri(j) = tri(i) + quad(tet, sep(v, f)) - quad(nbr, sep(w, g.perm[f]))
                    LinearForm step = c.offset[at(i)];
                    add_to(step, quad_index(tet, quad_type_separating(v, f)), 1);
                    add_to(step, quad_index(g.neighbor, quad_type_separating(w, g.perm[f])), -1);
                    if (!done[at(j)]) {
                        done[at(j)] = true;
                        c.offset[at(j)] = step;
                        queue.push_back(j);
                    } else {
                        for (const auto& [k, coeff] : c.offset[at(j)]) add_to(step, k, -coeff);
                        if (step.empty()) continue;
                        if (step.begin()->second < 0)
                            for (auto& [k, coeff] : step) coeff = -coeff;
                        int last = 0;
                        for (const auto& [k, coeff] : step) last = std::max(last, k / kDiskTypes);
                        if (seen.insert({step, last}).second) constraints_.push_back({step, last});
                    }
                }
            }
        }
    }

    void setup_angles() {
        // A strict angle structure from the shapes gives -chi = sum x_q theta_q / pi.
        for (int tet = 0; tet < n_; ++tet)
            if (t_.shape(tet).imag() <= 1e-9) return;
        const GluingReport report = validate_gluing_equations(t_, 1e-9);
        for (double r : report.edge_residuals)
            if (r >= 1e-9) return;
        angles_.assign(at(3 * n_), 0);
        for (int tet = 0; tet < n_; ++tet)
            for (int q = 0; q < 3; ++q)
                angles_[at(3 * tet + q)] = std::arg(t_.edge_shape(tet, edge_index(0, q + 1))) / std::numbers::pi;
    }

    std::int64_t quad_value(const std::vector<std::int64_t>& quads, int coord) const {
        const int tet = coord / kDiskTypes, type = coord % kDiskTypes;
        return quads[at(3 * tet + type - 4)];
    }

    bool consistent(const std::vector<std::int64_t>& quads, int tet) const {
        for (const auto& c : constraints_) {
            if (c.last_tet != tet) continue;
            std::int64_t s = 0;
            for (const auto& [k, coeff] : c.form) s += coeff * quad_value(quads, k);
            if (s != 0) return false;
        }
        return true;
    }

    bool within_area(const std::vector<std::int64_t>& quads, int tet) const {
        if (angles_.empty()) return true;
        double area = 0;
        for (int i = 0; i < 3 * (tet + 1); ++i) area += static_cast<double>(quads[at(i)]) * angles_[at(i)];
        return area <= bound_ + 1e-6;
    }

    void count_node() {
        if (++nodes_ > limits_.max_nodes)
            throw IncompleteEnumeration("incomplete enumeration: search exceeded " + std::to_string(limits_.max_nodes) +
                                        " nodes");
    }

    void search(std::vector<std::int64_t>& quads, int tet, std::set<NormalCoordinates>& out) {
        count_node();
        if (tet == n_) {
            leaf(quads, out);
            return;
        }
        for (int q = -1; q < 3; ++q) {
            const std::int64_t top = q < 0 ? 0 : caps_[at(quad_index(tet, q))];
            for (std::int64_t v = q < 0 ? 0 : 1; v <= top; ++v) {
                if (q >= 0) quads[at(3 * tet + q)] = v;
                // Larger values of the same quad only increase the area.
                const bool fits = within_area(quads, tet);
                if (fits && consistent(quads, tet)) search(quads, tet + 1, out);
                if (q >= 0) quads[at(3 * tet + q)] = 0;
                if (!fits) break;
            }
        }
    }

    void leaf(const std::vector<std::int64_t>& quads, std::set<NormalCoordinates>& out) const {
        if (std::all_of(quads.begin(), quads.end(), [](std::int64_t v) { return v == 0; })) return;
        NormalCoordinates x(at(kDiskTypes * n_), 0);
        for (int tet = 0; tet < n_; ++tet)
            for (int q = 0; q < 3; ++q) x[at(quad_index(tet, q))] = quads[at(3 * tet + q)];
        for (const auto& c : cusps_) {
            std::vector<std::int64_t> tri(c.triangles.size());
            for (Index i = 0; i < tri.size(); ++i) {
                std::int64_t s = 0;
                for (const auto& [k, coeff] : c.offset[i]) s += coeff * x[at(k)];
                tri[i] = s;
            }
            const std::int64_t low = *std::min_element(tri.begin(), tri.end());
            for (Index i = 0; i < tri.size(); ++i) {
                const auto [tet, v] = c.triangles[i];
                x[at(tri_index(tet, v))] = tri[i] - low;
            }
        }
        const std::int64_t chi = apply_form(chi_form_, x) / 2;
        if (chi >= 0 || -chi > bound_) return;
        if (build_surface_complex(t_, x).num_components != 1) return;
        out.insert(std::move(x));
    }

    const IdealTriangulation& t_;
    int n_;
    int bound_;
    std::vector<std::int64_t> caps_;
    EnumerationLimits limits_;
    std::vector<std::int64_t> chi_form_;
    std::vector<CuspSystem> cusps_;
    std::vector<Constraint> constraints_;
    std::vector<double> angles_;
    std::atomic<std::uint64_t> nodes_{0};
};

}  // namespace

std::vector<NormalCoordinates> enumerate_admissible(const IdealTriangulation& t, int max_euler_abs,
                                                    const EnumerationLimits& limits) {
    if (max_euler_abs < 0) throw InputError("Euler characteristic bound must be non-negative");
    if (max_euler_abs == 0) return {};
    const auto rays = admissible_vertex_rays(t, limits);
    const auto chi2 = twice_euler_form(t);
    std::vector<std::int64_t> caps(at(kDiskTypes * t.num_tetrahedra()), 0);
    for (const auto& r : rays) {
        const std::int64_t c2 = apply_form(chi2, r);
        bool has_quad = false;
        for (int tet = 0; tet < t.num_tetrahedra(); ++tet) has_quad |= active_quad(r, tet) >= 0;
        if (!has_quad) {
            if (c2 != 0)
                throw IncompleteEnumeration("incomplete enumeration: a vertex link has nonzero Euler characteristic, "
                                            "so no bound on the number of summands exists");
            continue;
        }
        if (c2 >= 0)
            throw IncompleteEnumeration("incomplete enumeration: a quad-bearing vertex surface has chi >= 0, "
                                        "so the Euler characteristic does not bound the coordinates");
        // x = sum lambda_i r_i with sum lambda_i |chi_i| <= bound, hence
        // x_q <= bound * max_i r_i[q] / |chi_i|.
        for (int tet = 0; tet < t.num_tetrahedra(); ++tet)
            for (int q = 0; q < 3; ++q) {
                const int i = quad_index(tet, q);
                caps[at(i)] = std::max(caps[at(i)], (2 * max_euler_abs * r[at(i)]) / (-c2));
            }
    }
    QuadSearch search(t, max_euler_abs, std::move(caps), limits);
    return search.run();
}

}  // namespace geoscan
