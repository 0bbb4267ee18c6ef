#ifndef GEOSCAN_GEODESICCHECK_HPP_
#define GEOSCAN_GEODESICCHECK_HPP_

#include <optional>
#include <string>
#include <vector>

#include "geoscan/fundgroup.hpp"
#include "geoscan/holonomy.hpp"
#include "geoscan/normalsurface.hpp"

namespace geoscan {

struct TraceEntry {
    /// 1-based generator indices i <= j <= k of the product.
    std::vector<int> indices;
    Complex trace;
};

/// Index tuples of the test set {g_i, g_i g_j, g_i g_j g_k : i <= j <= k}.
std::vector<std::vector<int>> trace_test_indices(int n);
std::size_t trace_test_size(int n);
std::vector<TraceEntry> trace_test_set(const std::vector<MobiusMatrix>& generators);

enum class VerdictKind {
    VolumeTooSmall,
    NotFuchsian,
    FuchsianDoubleCover,
    TotallyGeodesicCandidate,
    NonOrientableTotallyGeodesicCandidate,
};

enum class RealnessMode { NumericThreshold, CertifiedNegative };

const char* to_string(VerdictKind k);
const char* to_string(RealnessMode m);

struct GeodesicVerdict {
    VerdictKind kind = VerdictKind::TotallyGeodesicCandidate;
    RealnessMode mode = RealnessMode::NumericThreshold;
    /// NotFuchsian: the offending test-set element.
    std::vector<int> witness_indices;
    Complex witness_trace{};
    double witness_imag = 0;
    /// FuchsianDoubleCover: the halved vector.
    std::optional<NormalCoordinates> half;
    std::vector<TraceEntry> traces;
    /// Certified mode only: test-set elements whose realness stayed inconclusive.
    int inconclusive = 0;
    /// All generator images share a fixed point (reducible restriction).
    bool reducible = false;
    /// Vector actually tested (2x for a non-orientable input).
    NormalCoordinates tested;
    bool input_orientable = true;
    int euler_characteristic = 0;
    int surface_generators = 0;
    PresentationVerdict presentation;
};

struct CheckConfig {
    double threshold = kDefaultRealThreshold;
    double timeout_s = 5000;
    /// Forces the bound used by scan_manifold.
    std::optional<int> euler_bound_override;
    EnumerationLimits limits;
    /// Use the exact representation when the input carries exact shapes.
    bool certified = true;
    int threads = 1;
};

/// Surface group of a connected surface pushed into the manifold group.
struct SurfaceGroup {
    SurfaceComplex complex;
    SurfacePresentation presentation;
    SimplifiedPresentation simplified;
    PresentationVerdict verdict;
    /// Manifold word of each remaining generator.
    std::vector<Word> generator_words;
};

/// Throws InputError for disconnected or empty surfaces.
SurfaceGroup surface_group(const IdealTriangulation& t, const ManifoldPresentation& mp, const NormalCoordinates& x);

/// Steps (d)-(e) of the check on explicit surface generator matrices: a
/// NotFuchsian verdict or a candidate (kind TotallyGeodesicCandidate).
GeodesicVerdict classify_generators(const std::vector<MobiusMatrix>& generators, double threshold);

/// True when every matrix fixes a common point of the sphere (within tol).
bool share_fixed_point(const std::vector<MobiusMatrix>& generators, double tol = 1e-8);

/// Throws SurfaceTimeout past config.timeout_s, InputError for a
/// disconnected surface.
GeodesicVerdict check_surface(const IdealTriangulation& t, const ManifoldPresentation& mp, const Representation& rep,
                              const NormalCoordinates& x, const CheckConfig& config,
                              const ExactRepresentation* exact = nullptr);

enum class SurfaceStatus { Checked, LetscherSkipped, TimedOut };

const char* to_string(SurfaceStatus s);

struct SurfaceRecord {
    NormalCoordinates coordinates;
    SurfaceStatus status = SurfaceStatus::Checked;
    std::optional<GeodesicVerdict> verdict;
    std::vector<int> letscher_edges;
    double check_s = 0;
};

struct ScanReport {
    double volume = 0;
    int euler_bound = 0;
    bool volume_too_small = false;
    RepresentationSource source = RepresentationSource::FromShapes;
    RealnessMode mode = RealnessMode::NumericThreshold;
    std::vector<SurfaceRecord> surfaces;
    double enumeration_s = 0;
    double check_s = 0;
};

/// Volume gate, enumeration, Letscher pre-filter and per-surface checks.
/// IncompleteEnumeration propagates.
ScanReport scan_manifold(const IdealTriangulation& t, const CheckConfig& config);

}  // namespace geoscan

#endif  // GEOSCAN_GEODESICCHECK_HPP_
