#ifndef GEOSCAN_HOLONOMY_HPP_
#define GEOSCAN_HOLONOMY_HPP_

#include <array>
#include <complex>
#include <vector>

#include <boost/multiprecision/cpp_complex.hpp>

#include "geoscan/fundgroup.hpp"
#include "geoscan/numfield.hpp"
#include "geoscan/triangulation.hpp"

namespace geoscan {

/// A point of the Riemann sphere.
struct IdealPoint {
    Complex z{};
    bool infinite = false;

    static IdealPoint at(Complex w) { return {w, false}; }
    static IdealPoint infinity() { return {Complex{}, true}; }
};

/// Matrix [[a, b], [c, d]] acting by z -> (az + b) / (cz + d).
struct MobiusMatrix {
    Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

    static MobiusMatrix identity() { return {}; }
    static MobiusMatrix from_entries(const Matrix2& m) { return {m[0], m[1], m[2], m[3]}; }
    Matrix2 entries() const { return {a, b, c, d}; }

    Complex det() const { return a * d - b * c; }
    Complex trace() const { return a + d; }
    /// Adjugate divided by the determinant.
    MobiusMatrix inverse() const;
    /// Scaled to determinant 1; the first nonzero entry in row-major order gets
    /// argument in (-pi/2, pi/2].
    MobiusMatrix normalized() const;
    IdealPoint apply(IdealPoint p) const;

    /// Largest entry modulus.
    double norm() const;
    /// min(|M - I|, |M + I|) in the entry max-norm.
    double distance_to_pm_identity() const;

    friend MobiusMatrix operator*(const MobiusMatrix& x, const MobiusMatrix& y);
};

/// Unique Mobius map taking from[i] to to[i]. Throws InputError when either
/// triple has coincident points.
MobiusMatrix mobius_from_triples(const std::array<IdealPoint, 3>& from, const std::array<IdealPoint, 3>& to);

/// Vertices 0..3 of a tetrahedron with shape z (on edge 01) at 0, inf, z, 1.
std::array<IdealPoint, 4> standard_placement(Complex z);

/// Map from the standard placement of the neighbour across `face` to that of
/// `tet`, so that developing across the face multiplies on the right.
MobiusMatrix face_pairing_matrix(const IdealTriangulation& t, int tet, int face);

enum class RepresentationSource { FromShapes, FromFile };

const char* to_string(RepresentationSource s);

struct Representation {
    std::vector<MobiusMatrix> generators;  // generator k at index k - 1
    RepresentationSource source = RepresentationSource::FromShapes;
    /// Largest distance from +-I over the relators.
    double max_relator_error = 0;
};

inline constexpr double kRelatorTolerance = 1e-6;

/// Develops along the dual spanning tree. Throws InputError for triangulations
/// that are not oriented or have degenerate shapes, InconsistencyError
/// ("inconsistent development") when a relator misses +-I.
Representation representation_from_shapes(const IdealTriangulation& t, const ManifoldPresentation& p,
                                          double tolerance = kRelatorTolerance);

/// Uses the triangulation's supplied generator matrices after the relator
/// check. Throws InputError if they do not cover every generator.
Representation representation_from_file(const IdealTriangulation& t, const ManifoldPresentation& p,
                                        double tolerance = kRelatorTolerance);

/// FromFile when the triangulation carries matrices, FromShapes otherwise.
Representation make_representation(const IdealTriangulation& t, const ManifoldPresentation& p,
                                   double tolerance = kRelatorTolerance);

/// Ordered product; negative letters use inverses. Throws InputError for a
/// letter out of range.
MobiusMatrix evaluate_word(const Representation& r, const Word& w);

using QuadComplex = boost::multiprecision::cpp_complex_quad;

/// Mobius matrix with 113-bit mantissas, for long products.
struct QuadMobius {
    QuadComplex a{1}, b{0}, c{0}, d{1};

    /// Rescaled to determinant 1 at quad precision.
    static QuadMobius from(const MobiusMatrix& m);
    MobiusMatrix to_double() const;
    QuadComplex det() const { return a * d - b * c; }
    QuadComplex trace() const { return a + d; }
    /// Adjugate (the inverse when det = 1).
    QuadMobius adjugate() const { return {d, -b, -c, a}; }
    /// Divide by sqrt(det).
    QuadMobius normalized() const;

    friend QuadMobius operator*(const QuadMobius& x, const QuadMobius& y);
};

QuadMobius evaluate_word_quad(const Representation& r, const Word& w);

/// Placement matrix of every tetrahedron relative to the basepoint.
std::vector<MobiusMatrix> developed_placements(const IdealTriangulation& t, const DualSkeleton& skeleton);

/// 2x2 matrix over a number field, used projectively (GL2).
struct ExactMatrix {
    FieldElement a, b, c, d;

    static ExactMatrix identity(const FieldPtr& field);
    FieldElement det() const { return a * d - b * c; }
    FieldElement trace() const { return a + d; }
    /// Adjugate: inverse up to the scalar det.
    ExactMatrix adjugate() const { return {d, -b, -c, a}; }
    bool is_scalar() const { return b.is_zero() && c.is_zero() && a == d; }
    /// tr^2 / det, invariant under scaling.
    FieldElement trace_squared_over_det() const;

    friend ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y);
};

struct ExactRepresentation {
    FieldPtr field;
    std::vector<ExactMatrix> generators;
};

/// Same development as representation_from_shapes over the shape field; the
/// relator check is exact (scalar matrices). Throws InputError without exact
/// shapes, InconsistencyError on a relator failure.
ExactRepresentation exact_representation_from_shapes(const IdealTriangulation& t, const ManifoldPresentation& p);

ExactMatrix evaluate_word(const ExactRepresentation& r, const Word& w);

}  // namespace geoscan

#endif  // GEOSCAN_HOLONOMY_HPP_
