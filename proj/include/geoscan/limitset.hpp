#ifndef GEOSCAN_LIMITSET_HPP_
#define GEOSCAN_LIMITSET_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "geoscan/fundgroup.hpp"
#include "geoscan/holonomy.hpp"

namespace geoscan {

/// Explicit generator matrices, e.g. a surface group given directly.
struct GeneratorSet {
    std::vector<MobiusMatrix> generators;
    /// Optional relators, checked to +-I on load.
    std::vector<Word> relators;
};

/// {"version": 1, "generators": [[[re,im] x 4], ...], "relators": ["abAB", ...]}.
/// Throws InputError on malformed input, InconsistencyError when a relator
/// misses +-I by more than kRelatorTolerance.
GeneratorSet parse_generator_set(std::string_view text);
GeneratorSet load_generator_set(const std::string& path);
std::string serialize_generator_set(const GeneratorSet& g);

struct LimitSetConfig {
    int num_points = 10000;
    int max_word = 2000;
    std::uint64_t seed = 1;
    /// Divide by the largest entry after this many multiplications.
    int renormalize_every = 32;
    int threads = 1;
};

struct LimitSetSample {
    /// Sorted by (re, im); images at infinity are left out.
    std::vector<Complex> points;
    int infinite_points = 0;
    std::uint64_t seed = 0;
    int max_word = 0;
    int num_points = 0;
};

/// Images of 1 under random words of uniform length in [1, max_word] with
/// i.i.d. uniform letters over generators and inverses. Point i depends only
/// on (seed, i), so the result does not depend on the thread count.
LimitSetSample sample_limit_set(const std::vector<MobiusMatrix>& generators, const LimitSetConfig& config = {});

struct CircleFit {
    enum class Kind { Circle, Line };
    Kind kind = Kind::Circle;
    Complex center{};
    double radius = 0;
    /// Line: a point on it and a unit direction.
    Complex point{};
    Complex direction{1.0};
    double max_residual = 0;
    double rms_residual = 0;
};

inline constexpr double kCircleResidualThreshold = 1e-3;

/// Algebraic fit of a(x^2+y^2) + bx + cy + d = 0 with |(a,b,c,d)| = 1 on
/// centred, scaled coordinates. Throws InputError for fewer than three
/// distinct points.
CircleFit fit_circle(const std::vector<Complex>& points);

/// Distance from p to the fitted locus.
double residual(const CircleFit& fit, Complex p);

const char* to_string(CircleFit::Kind k);

/// One "re,im" line per point.
std::string limit_set_csv(const LimitSetSample& sample);

/// Scatter plot with the fit overlaid; byte-identical for equal inputs.
std::string limit_set_svg(const LimitSetSample& sample, const CircleFit& fit, int canvas = 800);

}  // namespace geoscan

#endif  // GEOSCAN_LIMITSET_HPP_
