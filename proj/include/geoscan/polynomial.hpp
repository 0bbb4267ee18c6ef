#ifndef GEOSCAN_POLYNOMIAL_HPP_
#define GEOSCAN_POLYNOMIAL_HPP_

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace geoscan {

using Rational = mpq_class;

/// Parse "p/q", "p" (arbitrary size integers). Throws InputError.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

/// Dense univariate polynomial over Q, ascending coefficients, no trailing zeros.
class RationalPolynomial {
public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(std::vector<Rational> ascending);

    static RationalPolynomial constant(const Rational& c);
    static RationalPolynomial monomial(const Rational& c, int degree);

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    Rational coeff(int i) const;
    const Rational& leading() const { return coeffs_.back(); }

    RationalPolynomial monic() const;
    RationalPolynomial derivative() const;
    Rational evaluate(const Rational& x) const;
    int sign_at(const Rational& x) const;

    /// Quotient and remainder; throws std::domain_error on a zero divisor.
    std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& divisor) const;

    friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b);
    friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b);
    friend RationalPolynomial operator-(const RationalPolynomial& a);
    friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
    friend RationalPolynomial operator*(const Rational& c, const RationalPolynomial& a);
    friend RationalPolynomial operator%(const RationalPolynomial& a, const RationalPolynomial& b) {
        return a.divmod(b).second;
    }
    friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }

    std::string to_string(std::string_view var = "x") const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Monic gcd (zero if both inputs are zero).
RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b);

/// p / gcd(p, p'), made monic. Throws std::domain_error on the zero polynomial.
RationalPolynomial squarefree_part(const RationalPolynomial& p);

/// Sturm chain of the squarefree part of p.
std::vector<RationalPolynomial> sturm_sequence(const RationalPolynomial& p);

struct OpenInterval {
    Rational lo;
    Rational hi;
};

/// Number of distinct real roots of p in (lo, hi), or on the whole line when
/// `interval` is empty. Throws InputError for the zero polynomial.
int sturm_real_root_count(const RationalPolynomial& p, const std::optional<OpenInterval>& interval = std::nullopt);

/// Irreducibility over Q. Factor degrees are first restricted by
/// distinct-degree factorization modulo small primes; what remains is settled
/// by a rational-root test or, up to degree 12, by checking every subset of
/// certified root enclosures for an integral factor. nullopt if undecided.
std::optional<bool> is_irreducible(const RationalPolynomial& p);

}  // namespace geoscan

#endif  // GEOSCAN_POLYNOMIAL_HPP_
