#ifndef GEOSCAN_TRIANGULATION_HPP_
#define GEOSCAN_TRIANGULATION_HPP_

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "geoscan/numfield.hpp"
#include "geoscan/perm.hpp"

namespace geoscan {

using Complex = std::complex<double>;

/// Edges of a tetrahedron: 0:01 1:02 2:03 3:12 4:13 5:23. Edge e and 5-e are opposite.
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr int edge_index(int a, int b) {
    if (a > b) std::swap(a, b);
    return a == 0 ? b - 1 : a + b;
}

/// 0 for edges 01/23 (shape z), 1 for 02/13 (1/(1-z)), 2 for 03/12 ((z-1)/z).
constexpr int edge_shape_type(int edge) { return edge < 3 ? edge : 5 - edge; }

/// Face `face` of a tetrahedron (the face opposite vertex `face`) is glued to
/// face perm[face] of `neighbor`, vertex i going to perm[i].
struct FaceGluing {
    int neighbor = 0;
    Perm4 perm;
};

/// Exact shapes as elements of a number field under its chosen embedding.
struct ExactShapes {
    FieldPtr field;
    std::vector<FieldElement> shapes;
};

/// A 2x2 complex matrix as {a, b, c, d}.
using Matrix2 = std::array<Complex, 4>;

class IdealTriangulation {
public:
    /// Checks the structural invariants. Throws InputError.
    IdealTriangulation(std::vector<std::array<FaceGluing, 4>> gluings, std::vector<Complex> shapes,
                       std::optional<ExactShapes> exact = std::nullopt,
                       std::map<int, Matrix2> generator_matrices = {});

    int num_tetrahedra() const { return static_cast<int>(gluings_.size()); }
    const FaceGluing& gluing(int tet, int face) const {
        return gluings_[static_cast<std::size_t>(tet)][static_cast<std::size_t>(face)];
    }
    const std::vector<std::array<FaceGluing, 4>>& gluings() const { return gluings_; }
    const std::vector<Complex>& shapes() const { return shapes_; }
    Complex shape(int tet) const { return shapes_[static_cast<std::size_t>(tet)]; }
    /// Shape parameter on an edge of a tetrahedron.
    Complex edge_shape(int tet, int edge) const;
    const std::optional<ExactShapes>& exact_shapes() const { return exact_; }
    /// Externally supplied holonomy matrices keyed by 1-based generator index.
    const std::map<int, Matrix2>& generator_matrices() const { return generators_; }

    /// Every gluing permutation is odd, i.e. the vertex orderings induce a
    /// consistent orientation.
    bool is_oriented() const;
    /// Component index per tetrahedron, numbered by first appearance.
    std::vector<int> component_labels() const;
    int num_components() const;

private:
    std::vector<std::array<FaceGluing, 4>> gluings_;
    std::vector<Complex> shapes_;
    std::optional<ExactShapes> exact_;
    std::map<int, Matrix2> generators_;
};

IdealTriangulation parse_triangulation(std::string_view text);
IdealTriangulation load_triangulation(const std::string& path);
std::string serialize_triangulation(const IdealTriangulation& t);

/// Hex SHA-256 of arbitrary bytes (used for input checksums).
std::string sha256_hex(std::string_view bytes);

/// Tetrahedron i becomes new_index[i].
IdealTriangulation relabel_tetrahedra(const IdealTriangulation& t, const std::vector<int>& new_index);
IdealTriangulation disjoint_union(const IdealTriangulation& a, const IdealTriangulation& b);

struct EdgeClass {
    /// (tetrahedron, edge) sorted.
    std::vector<std::pair<int, int>> members;
    Complex total_log_sum;
};

std::vector<EdgeClass> compute_edge_classes(const IdealTriangulation& t);

/// One step of the walk around an edge: at (tet, edge), leave through face `exit_face`.
struct EdgeCycleStep {
    int tet;
    int edge;
    int exit_face;
};

/// For every edge class (same order as compute_edge_classes), the cyclic walk
/// around the edge starting from its least member. Throws InputError if an
/// edge is identified with itself in reverse.
std::vector<std::vector<EdgeCycleStep>> edge_cycles(const IdealTriangulation& t);

/// Vertex (tet, v) -> cusp index, numbered by first appearance.
std::vector<std::array<int, 4>> cusp_labels(const IdealTriangulation& t);

struct CuspReport {
    int cusp = 0;
    int link_triangles = 0;
    /// |sum of signed corner logs| (mod 2 pi i) along each basis cycle.
    std::vector<double> residuals;
};

struct GluingReport {
    std::vector<double> edge_residuals;
    std::vector<CuspReport> cusps;
    bool cusps_checked = false;  // false for triangulations that are not oriented
    double max_edge_residual = 0;
    double max_cusp_residual = 0;
    bool passes = false;
};

/// Description of the cycle basis used for cusp residuals.
inline constexpr const char* kCuspBasisDescription =
    "fundamental cycles of a breadth-first spanning tree of the dual graph of each cusp link triangulation; "
    "each cycle sums +log z at a corner passed on the left and -log z on the right, reduced mod 2*pi*i";

/// Throws InputError("degenerate shape") if any shape is 0 or 1.
GluingReport validate_gluing_equations(const IdealTriangulation& t, double tol);

/// Lobachevsky function L(theta) = -int_0^theta log|2 sin u| du.
double lobachevsky(double theta);

/// Sum of Lobachevsky values of the dihedral angles. Throws InputError on a
/// degenerate shape.
double compute_volume(const IdealTriangulation& t);

bool is_degenerate_shape(Complex z);
bool is_flat_shape(Complex z);

}  // namespace geoscan

#endif  // GEOSCAN_TRIANGULATION_HPP_
