#include "geoscan/interval.hpp"

#include <algorithm>
#include <memory>
#include <utility>

namespace geoscan {

BigFloat::BigFloat(mpfr_prec_t precision) {
    mpfr_init2(value_, precision);
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double value, mpfr_prec_t precision) {
    mpfr_init2(value_, precision);
    mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    // mpfr_t is an array type; swap the limb pointers and leave `other` valid.
    mpfr_init2(value_, other.precision());
    mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    if (this != &other) mpfr_swap(value_, other.value_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

std::string BigFloat::to_string(int digits) const {
    char* buffer = nullptr;
    mpfr_asprintf(&buffer, "%.*Rg", digits, value_);
    std::string out(buffer);
    mpfr_free_str(buffer);
    return out;
}

namespace {

mpfr_prec_t joint_precision(const Interval& a, const Interval& b) {
    return std::max(a.precision(), b.precision());
}

}  // namespace

Interval::Interval(mpfr_prec_t precision) : lo_(precision), hi_(precision) {}

Interval::Interval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

Interval Interval::point(const BigFloat& x) { return Interval(x, x); }

Interval Interval::from_double(double x, mpfr_prec_t precision) {
    return Interval(BigFloat(x, precision), BigFloat(x, precision));
}

Interval Interval::from_rational(const mpq_class& q, mpfr_prec_t precision) {
    BigFloat lo(precision), hi(precision);
    mpfr_set_q(lo.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi.get(), q.get_mpq_t(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::around(const BigFloat& center, const BigFloat& radius) {
    const mpfr_prec_t p = center.precision();
    BigFloat lo(p), hi(p);
    mpfr_sub(lo.get(), center.get(), radius.get(), MPFR_RNDD);
    mpfr_add(hi.get(), center.get(), radius.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

bool Interval::contains_zero() const {
    return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

bool Interval::strictly_positive() const { return mpfr_sgn(lo_.get()) > 0; }

bool Interval::strictly_negative() const { return mpfr_sgn(hi_.get()) < 0; }

double Interval::midpoint() const {
    BigFloat mid(precision() + 1);
    mpfr_add(mid.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    return mid.to_double();
}

BigFloat Interval::center() const {
    BigFloat mid(precision());
    mpfr_add(mid.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    return mid;
}

double Interval::width() const {
    BigFloat w(precision());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return w.to_double(MPFR_RNDU);
}

BigFloat Interval::magnitude_upper() const {
    BigFloat a(precision()), b(precision());
    mpfr_abs(a.get(), lo_.get(), MPFR_RNDU);
    mpfr_abs(b.get(), hi_.get(), MPFR_RNDU);
    return mpfr_cmp(a.get(), b.get()) >= 0 ? a : b;
}

BigFloat Interval::mignitude_lower() const {
    BigFloat out(precision());
    if (contains_zero()) return out;
    if (strictly_positive()) {
        mpfr_set(out.get(), lo_.get(), MPFR_RNDD);
    } else {
        mpfr_neg(out.get(), hi_.get(), MPFR_RNDD);
    }
    return out;
}

Interval operator+(const Interval& a, const Interval& b) {
    const mpfr_prec_t p = joint_precision(a, b);
    BigFloat lo(p), hi(p);
    mpfr_add(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval operator-(const Interval& a, const Interval& b) {
    const mpfr_prec_t p = joint_precision(a, b);
    BigFloat lo(p), hi(p);
    mpfr_sub(lo.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_sub(hi.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval operator-(const Interval& a) {
    BigFloat lo(a.precision()), hi(a.precision());
    mpfr_neg(lo.get(), a.hi_.get(), MPFR_RNDD);
    mpfr_neg(hi.get(), a.lo_.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval operator*(const Interval& a, const Interval& b) {
    const mpfr_prec_t p = joint_precision(a, b);
    const BigFloat* xs[2] = {&a.lo_, &a.hi_};
    const BigFloat* ys[2] = {&b.lo_, &b.hi_};
    BigFloat lo(p), hi(p), tmp(p);
    bool first = true;
    for (const BigFloat* x : xs) {
        for (const BigFloat* y : ys) {
            mpfr_mul(tmp.get(), x->get(), y->get(), MPFR_RNDD);
            if (first || mpfr_cmp(tmp.get(), lo.get()) < 0) mpfr_set(lo.get(), tmp.get(), MPFR_RNDD);
            mpfr_mul(tmp.get(), x->get(), y->get(), MPFR_RNDU);
            if (first || mpfr_cmp(tmp.get(), hi.get()) > 0) mpfr_set(hi.get(), tmp.get(), MPFR_RNDU);
            first = false;
        }
    }
    return Interval(std::move(lo), std::move(hi));
}

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
    return ComplexInterval(a.re + b.re, a.im + b.im);
}

ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
    return ComplexInterval(a.re - b.re, a.im - b.im);
}

ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
    return ComplexInterval(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

ComplexInterval operator*(const Interval& a, const ComplexInterval& b) {
    return ComplexInterval(a * b.re, a * b.im);
}

BigFloat ComplexInterval::abs_upper() const {
    BigFloat x = re.magnitude_upper();
    BigFloat y = im.magnitude_upper();
    BigFloat out(x.precision());
    mpfr_hypot(out.get(), x.get(), y.get(), MPFR_RNDU);
    return out;
}

BigFloat ComplexInterval::abs_lower() const {
    BigFloat x = re.mignitude_lower();
    BigFloat y = im.mignitude_lower();
    BigFloat out(x.precision());
    mpfr_hypot(out.get(), x.get(), y.get(), MPFR_RNDD);
    return out;
}

}  // namespace geoscan
