#ifndef GEOSCAN_INTERVAL_HPP_
#define GEOSCAN_INTERVAL_HPP_

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace geoscan {

inline constexpr mpfr_prec_t kDefaultPrecision = 128;

/// RAII owner of an mpfr_t. Arithmetic goes through the free functions below,
/// which take an explicit rounding mode.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t precision = kDefaultPrecision);
    BigFloat(double value, mpfr_prec_t precision);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
    std::string to_string(int digits = 20) const;

private:
    mpfr_t value_;
};

/// Closed real interval [lo, hi] with outward-rounded endpoints.
class Interval {
public:
    explicit Interval(mpfr_prec_t precision = kDefaultPrecision);
    Interval(BigFloat lo, BigFloat hi);

    static Interval point(const BigFloat& x);
    static Interval from_double(double x, mpfr_prec_t precision);
    static Interval from_rational(const mpq_class& q, mpfr_prec_t precision);
    /// [center - radius, center + radius], rounded outward.
    static Interval around(const BigFloat& center, const BigFloat& radius);

    const BigFloat& lo() const { return lo_; }
    const BigFloat& hi() const { return hi_; }
    mpfr_prec_t precision() const { return lo_.precision(); }

    bool contains_zero() const;
    bool strictly_positive() const;
    bool strictly_negative() const;
    double midpoint() const;
    /// Nearest-rounded midpoint at the interval's precision.
    BigFloat center() const;
    double width() const;
    /// Upper bound of max(|lo|, |hi|).
    BigFloat magnitude_upper() const;
    /// Lower bound of min |x| over the interval (0 when it straddles zero).
    BigFloat mignitude_lower() const;

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a);

private:
    BigFloat lo_;
    BigFloat hi_;
};

/// Rectangular complex interval.
struct ComplexInterval {
    Interval re;
    Interval im;

    explicit ComplexInterval(mpfr_prec_t precision = kDefaultPrecision) : re(precision), im(precision) {}
    ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

    friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b);
    friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b);
    friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b);
    friend ComplexInterval operator*(const Interval& a, const ComplexInterval& b);

    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    /// Upper bound on |z| over the box.
    BigFloat abs_upper() const;
    /// Lower bound on |z| over the box (0 if the box contains 0).
    BigFloat abs_lower() const;
};

}  // namespace geoscan

#endif  // GEOSCAN_INTERVAL_HPP_
