#ifndef GEOSCAN_NUMFIELD_HPP_
#define GEOSCAN_NUMFIELD_HPP_

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "geoscan/interval.hpp"
#include "geoscan/polynomial.hpp"

namespace geoscan {

/// Disc {|z - center| <= radius} in the complex plane.
struct RootDisc {
    BigFloat re;
    BigFloat im;
    BigFloat radius;

    /// Axis-aligned box containing the disc.
    ComplexInterval box() const;
    std::complex<double> approx() const { return {re.to_double(), im.to_double()}; }
};

/// Certified isolation of all roots of a squarefree polynomial: pairwise
/// disjoint discs, each containing exactly one root. Throws std::runtime_error
/// if certification fails at the maximum precision tried.
std::vector<RootDisc> isolate_roots(const RationalPolynomial& squarefree, mpfr_prec_t precision = kDefaultPrecision);

/// Number of isolated roots whose disc lies in the open upper half-plane.
int certified_nonreal_root_pairs(const RationalPolynomial& p);

/// Q(alpha) for a monic irreducible p together with a chosen complex root.
class NumberField {
public:
    /// Validates irreducibility and that `approx_root` (within `radius`)
    /// singles out exactly one root of p. Throws InputError.
    static std::shared_ptr<const NumberField> create(const RationalPolynomial& min_poly,
                                                     std::complex<double> approx_root, double radius);

    int degree() const { return min_poly_.degree(); }
    const RationalPolynomial& min_poly() const { return min_poly_; }
    /// Isolating disc of the chosen root at (at least) the requested precision.
    RootDisc enclosure(mpfr_prec_t precision = kDefaultPrecision) const;
    std::complex<double> root_approx() const { return root_.approx(); }
    /// The enclosure as supplied to create().
    std::complex<double> input_root() const { return input_root_; }
    double input_radius() const { return input_radius_; }

private:
    NumberField(RationalPolynomial p, RootDisc root, std::complex<double> input_root, double input_radius)
        : min_poly_(std::move(p)), root_(std::move(root)), input_root_(input_root), input_radius_(input_radius) {}

    RationalPolynomial min_poly_;
    RootDisc root_;  // certified isolating disc at the default precision
    std::complex<double> input_root_;
    double input_radius_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Element c0 + c1*alpha + ... + c_{n-1}*alpha^{n-1} of a NumberField.
class FieldElement {
public:
    /// Reduces `coeffs` modulo the defining polynomial.
    FieldElement(FieldPtr field, std::vector<Rational> coeffs);

    static FieldElement zero(FieldPtr field);
    static FieldElement one(FieldPtr field);
    static FieldElement rational(FieldPtr field, const Rational& q);
    static FieldElement generator(FieldPtr field);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    bool is_zero() const;
    bool is_rational() const;
    RationalPolynomial as_polynomial() const { return RationalPolynomial(coeffs_); }

    /// Throws std::domain_error for zero.
    FieldElement inverse() const;

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }
    friend bool operator==(const FieldElement& a, const FieldElement& b);

    /// Interval value under the field's chosen embedding.
    ComplexInterval evaluate(mpfr_prec_t precision = kDefaultPrecision) const;
    std::complex<double> approx() const;

private:
    FieldPtr field_;
    std::vector<Rational> coeffs_;
};

FieldElement field_add(const FieldElement& a, const FieldElement& b);
FieldElement field_mul(const FieldElement& a, const FieldElement& b);
FieldElement field_inv(const FieldElement& a);

/// Monic minimal polynomial over Q.
RationalPolynomial minimal_polynomial(const FieldElement& e);

/// Multiplication-by-e matrix in the power basis, row i = e * alpha^i.
std::vector<std::vector<Rational>> multiplication_matrix(const FieldElement& e);

/// Characteristic polynomial of a square rational matrix (Faddeev-LeVerrier).
RationalPolynomial characteristic_polynomial(const std::vector<std::vector<Rational>>& m);

enum class Realness { CertifiedNotReal, NumericallyReal, Inconclusive };

const char* to_string(Realness r);

inline constexpr double kDefaultRealThreshold = 0.01;

/// Decide whether e lies in R under the chosen embedding, refining the
/// enclosure up to `refine_limit` precision doublings.
Realness embedding_is_real(const FieldElement& e, int refine_limit = 6, double threshold = kDefaultRealThreshold);

}  // namespace geoscan

#endif  // GEOSCAN_NUMFIELD_HPP_
