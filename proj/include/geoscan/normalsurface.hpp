#ifndef GEOSCAN_NORMALSURFACE_HPP_
#define GEOSCAN_NORMALSURFACE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "geoscan/triangulation.hpp"

namespace geoscan {

/// Per tetrahedron: [tri0, tri1, tri2, tri3, quad 01|23, quad 02|13, quad 03|12].
using NormalCoordinates = std::vector<std::int64_t>;

inline constexpr int kDiskTypes = 7;

inline int tri_index(int tet, int v) { return kDiskTypes * tet + v; }
inline int quad_index(int tet, int q) { return kDiskTypes * tet + 4 + q; }

/// Quad type whose vertex partition is {a, b} | {c, d}.
constexpr int quad_type_separating(int a, int b) { return edge_shape_type(edge_index(a, b)); }

/// x_{lhs[0]} + x_{lhs[1]} = x_{rhs[0]} + x_{rhs[1]} (coordinate indices).
struct MatchingEquation {
    std::array<int, 2> lhs;
    std::array<int, 2> rhs;
};

struct MatchingSystem {
    int num_variables = 0;
    std::vector<MatchingEquation> equations;
};

MatchingSystem matching_equations(const IdealTriangulation& t);

/// Throws InputError on a length mismatch.
bool is_admissible(const IdealTriangulation& t, const NormalCoordinates& x);
bool satisfies_quad_condition(const NormalCoordinates& x);

struct Disk {
    int tet;
    int type;  // 0..3 triangle at that vertex, 4..6 quad
    int copy;
};

/// Boundary arc of a disk lying on a face of its tetrahedron.
struct ArcRef {
    int disk;
    int face;
    friend bool operator==(const ArcRef&, const ArcRef&) = default;
};

struct SurfaceComplex {
    std::vector<Disk> disks;
    /// partner[disk][face]: the arc glued to (disk, face), or disk = -1 if the
    /// disk has no arc on that face (a triangle's own vertex face).
    std::vector<std::array<ArcRef, 4>> partner;
    /// Corner (disk, edge) -> surface vertex index; -1 if the disk has no corner on that edge.
    std::vector<std::array<int, 6>> corner_vertex;
    int num_vertices = 0;
    int num_edges = 0;
    int euler_characteristic = 0;
    bool orientable = true;
    /// Component index per disk.
    std::vector<int> component;
    int num_components = 0;

    /// Disk index by (tet, type, copy).
    int disk_index(int tet, int type, int copy) const;
    std::vector<int> first_disk;  // per (7 * tet + type)
};

/// Throws InputError for non-admissible input.
SurfaceComplex build_surface_complex(const IdealTriangulation& t, const NormalCoordinates& x);

/// Euler characteristic from the edge-class count V = sum over edge classes of
/// intersection points, without building the complex.
std::int64_t euler_characteristic(const IdealTriangulation& t, const NormalCoordinates& x);

/// Per edge class: coordinate indices whose sum is the number of surface
/// points on that edge (read off the class's first member).
std::vector<std::vector<int>> edge_weight_terms(const IdealTriangulation& t);

/// Miyamoto's constant mu_3(0).
inline constexpr double kMiyamotoMu = 0.29156;

double volume_threshold(int euler_abs);
inline const double kOrientableVolumeThreshold = volume_threshold(2);
inline const double kNonOrientableVolumeThreshold = volume_threshold(1);

/// floor(volume / (4 pi mu_3(0))); rounded down to even when only orientable
/// surfaces are of interest.
int euler_bound(double volume, bool orientable_only = false);

/// Edge classes each of whose members sits in a tetrahedron carrying the quad
/// that separates it from its opposite edge.
std::vector<int> letscher_tube_check(const IdealTriangulation& t, const NormalCoordinates& x);

std::optional<NormalCoordinates> halve_if_double(const IdealTriangulation& t, const NormalCoordinates& x);

struct EnumerationLimits {
    std::size_t max_rays = 200000;
    std::uint64_t max_nodes = 50000000;
    int threads = 1;
};

/// Admissible vertex rays of the normal solution cone (standard coordinates),
/// as primitive integer vectors, sorted.
std::vector<NormalCoordinates> admissible_vertex_rays(const IdealTriangulation& t,
                                                      const EnumerationLimits& limits = {});

/// All connected admissible vectors with chi < 0 and |chi| <= max_euler_abs,
/// sorted. Throws IncompleteEnumeration when a budget is hit or the bound
/// cannot be certified.
std::vector<NormalCoordinates> enumerate_admissible(const IdealTriangulation& t, int max_euler_abs,
                                                    const EnumerationLimits& limits = {});

NormalCoordinates vertex_link_coordinates(const IdealTriangulation& t, int cusp);

}  // namespace geoscan

#endif  // GEOSCAN_NORMALSURFACE_HPP_
