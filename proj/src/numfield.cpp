#include "geoscan/numfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "geoscan/error.hpp"

namespace geoscan {

namespace {

constexpr mpfr_prec_t kMaxIsolationPrecision = 4096;

struct BigComplex {
    BigFloat re;
    BigFloat im;
};

BigComplex make_complex(mpfr_prec_t p) { return {BigFloat(p), BigFloat(p)}; }

BigComplex mul(const BigComplex& a, const BigComplex& b) {
    const mpfr_prec_t p = a.re.precision();
    BigComplex out = make_complex(p);
    BigFloat t(p);
    mpfr_mul(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(out.re.get(), out.re.get(), t.get(), MPFR_RNDN);
    mpfr_mul(out.im.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_mul(t.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(out.im.get(), out.im.get(), t.get(), MPFR_RNDN);
    return out;
}

BigComplex div(const BigComplex& a, const BigComplex& b) {
    const mpfr_prec_t p = a.re.precision();
    BigFloat den(p), t(p);
    mpfr_sqr(den.get(), b.re.get(), MPFR_RNDN);
    mpfr_sqr(t.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(den.get(), den.get(), t.get(), MPFR_RNDN);
    BigComplex conj{b.re, b.im};
    mpfr_neg(conj.im.get(), conj.im.get(), MPFR_RNDN);
    BigComplex out = mul(a, conj);
    mpfr_div(out.re.get(), out.re.get(), den.get(), MPFR_RNDN);
    mpfr_div(out.im.get(), out.im.get(), den.get(), MPFR_RNDN);
    return out;
}

/// Horner evaluation of p and p' at a point, nearest rounding.
std::pair<BigComplex, BigComplex> eval_with_derivative(const RationalPolynomial& p, const BigComplex& z) {
    const mpfr_prec_t prec = z.re.precision();
    BigComplex value = make_complex(prec);
    BigComplex deriv = make_complex(prec);
    BigFloat c(prec);
    for (int k = p.degree(); k >= 0; --k) {
        deriv = mul(deriv, z);
        mpfr_add(deriv.re.get(), deriv.re.get(), value.re.get(), MPFR_RNDN);
        mpfr_add(deriv.im.get(), deriv.im.get(), value.im.get(), MPFR_RNDN);
        value = mul(value, z);
        mpfr_set_q(c.get(), p.coeff(k).get_mpq_t(), MPFR_RNDN);
        mpfr_add(value.re.get(), value.re.get(), c.get(), MPFR_RNDN);
    }
    return {std::move(value), std::move(deriv)};
}

ComplexInterval eval_interval(const RationalPolynomial& p, const ComplexInterval& z, mpfr_prec_t prec) {
    ComplexInterval acc(prec);
    for (int k = p.degree(); k >= 0; --k) {
        acc = acc * z;
        acc.re = acc.re + Interval::from_rational(p.coeff(k), prec);
    }
    return acc;
}

ComplexInterval point_box(const BigFloat& re, const BigFloat& im) {
    return ComplexInterval(Interval::point(re), Interval::point(im));
}

std::vector<std::complex<long double>> aberth(const RationalPolynomial& p) {
    using C = std::complex<long double>;
    const int n = p.degree();
    std::vector<long double> a(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) a[static_cast<std::size_t>(k)] = static_cast<long double>(p.coeff(k).get_d());
    const auto eval = [&](C z) {
        C v = 0, d = 0;
        for (int k = n; k >= 0; --k) {
            d = d * z + v;
            v = v * z + a[static_cast<std::size_t>(k)];
        }
        return std::pair{v, d};
    };
    long double bound = 0;
    for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(a[static_cast<std::size_t>(k)] / a.back()));
    bound += 1;
    std::vector<C> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const long double angle = 2.0L * 3.14159265358979323846L * k / n + 0.4L;
        z[static_cast<std::size_t>(k)] = std::polar(bound * 0.5L, angle);
    }
    for (int iter = 0; iter < 1000; ++iter) {
        long double worst = 0;
        for (int k = 0; k < n; ++k) {
            auto& zk = z[static_cast<std::size_t>(k)];
            auto [v, d] = eval(zk);
            if (v == C(0)) continue;
            const C w = v / d;
            C s = 0;
            for (int j = 0; j < n; ++j)
                if (j != k) s += 1.0L / (zk - z[static_cast<std::size_t>(j)]);
            const C step = w / (1.0L - w * s);
            zk -= step;
            worst = std::max(worst, std::abs(step) / (1 + std::abs(zk)));
        }
        if (worst < 1e-17L) break;
    }
    return z;
}

std::optional<std::vector<RootDisc>> isolate_at(const RationalPolynomial& p,
                                                const std::vector<std::complex<long double>>& seeds,
                                                mpfr_prec_t prec) {
    const int n = p.degree();
    std::vector<RootDisc> discs;
    for (const auto& seed : seeds) {
        BigComplex z = make_complex(prec);
        mpfr_set_ld(z.re.get(), seed.real(), MPFR_RNDN);
        mpfr_set_ld(z.im.get(), seed.imag(), MPFR_RNDN);
        int steps = 4;
        for (mpfr_prec_t bits = 48; bits < prec; bits *= 2) ++steps;
        for (int s = 0; s < steps; ++s) {
            auto [v, d] = eval_with_derivative(p, z);
            if (mpfr_zero_p(d.re.get()) && mpfr_zero_p(d.im.get())) break;
            const BigComplex step = div(v, d);
            mpfr_sub(z.re.get(), z.re.get(), step.re.get(), MPFR_RNDN);
            mpfr_sub(z.im.get(), z.im.get(), step.im.get(), MPFR_RNDN);
        }
        if (mpfr_zero_p(z.im.get()) == 0) {
            // Snap negligible imaginary parts so real roots get real centers.
            BigFloat mag(prec), tol(prec);
            mpfr_abs(mag.get(), z.im.get(), MPFR_RNDN);
            mpfr_abs(tol.get(), z.re.get(), MPFR_RNDN);
            mpfr_add_ui(tol.get(), tol.get(), 1, MPFR_RNDN);
            mpfr_mul_2si(tol.get(), tol.get(), -static_cast<long>(prec) + 8, MPFR_RNDN);
            if (mpfr_cmp(mag.get(), tol.get()) < 0) mpfr_set_zero(z.im.get(), 1);
        }
        const ComplexInterval zb = point_box(z.re, z.im);
        const ComplexInterval pv = eval_interval(p, zb, prec);
        const ComplexInterval dv = eval_interval(p.derivative(), zb, prec);
        BigFloat num = pv.abs_upper();
        BigFloat den = dv.abs_lower();
        if (mpfr_sgn(den.get()) <= 0) return std::nullopt;
        BigFloat radius(prec);
        mpfr_div(radius.get(), num.get(), den.get(), MPFR_RNDU);
        mpfr_mul_si(radius.get(), radius.get(), n, MPFR_RNDU);
        discs.push_back({std::move(z.re), std::move(z.im), std::move(radius)});
    }
    for (std::size_t i = 0; i < discs.size(); ++i) {
        for (std::size_t j = i + 1; j < discs.size(); ++j) {
            const ComplexInterval diff = point_box(discs[i].re, discs[i].im) - point_box(discs[j].re, discs[j].im);
            BigFloat gap = diff.abs_lower();
            BigFloat reach(prec);
            mpfr_add(reach.get(), discs[i].radius.get(), discs[j].radius.get(), MPFR_RNDU);
            if (mpfr_cmp(gap.get(), reach.get()) <= 0) return std::nullopt;
        }
    }
    return discs;
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a == b) return true;
    return a && b && a->min_poly() == b->min_poly() && std::abs(a->root_approx() - b->root_approx()) < 1e-12;
}

void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (!same_field(a.field(), b.field())) throw std::invalid_argument("field mismatch");
}

}  // namespace

ComplexInterval RootDisc::box() const {
    return ComplexInterval(Interval::around(re, radius), Interval::around(im, radius));
}

std::vector<RootDisc> isolate_roots(const RationalPolynomial& squarefree, mpfr_prec_t precision) {
    if (squarefree.degree() < 1) return {};
    const auto seeds = aberth(squarefree);
    for (mpfr_prec_t prec = precision; prec <= kMaxIsolationPrecision; prec *= 2) {
        if (auto discs = isolate_at(squarefree, seeds, prec)) return *discs;
    }
    throw std::runtime_error("root isolation failed for " + squarefree.to_string());
}

int certified_nonreal_root_pairs(const RationalPolynomial& p) {
    const auto discs = isolate_roots(squarefree_part(p));
    int upper = 0;
    for (const auto& d : discs)
        if (d.box().im.strictly_positive()) ++upper;
    return upper;
}

std::shared_ptr<const NumberField> NumberField::create(const RationalPolynomial& min_poly,
                                                       std::complex<double> approx_root, double radius) {
    if (min_poly.degree() < 1) throw InputError("field polynomial must have degree >= 1");
    if (!(radius > 0) || !std::isfinite(radius)) throw InputError("root radius must be positive and finite");
    const RationalPolynomial p = min_poly.monic();
    const auto irreducible = is_irreducible(p);
    if (!irreducible) throw InputError("could not certify irreducibility of " + p.to_string());
    if (!*irreducible) throw InputError("field polynomial is reducible: " + p.to_string());

    const auto seeds = aberth(p);
    for (mpfr_prec_t prec = kDefaultPrecision; prec <= kMaxIsolationPrecision; prec *= 2) {
        auto discs = isolate_at(p, seeds, prec);
        if (!discs) continue;
        const ComplexInterval guess(Interval::from_double(approx_root.real(), prec),
                                    Interval::from_double(approx_root.imag(), prec));
        const BigFloat r(radius, prec);
        std::optional<std::size_t> inside;
        bool ambiguous = false;
        for (std::size_t i = 0; i < discs->size(); ++i) {
            const auto& d = (*discs)[i];
            const ComplexInterval diff = point_box(d.re, d.im) - guess;
            BigFloat far(prec), near(prec);
            mpfr_add(far.get(), diff.abs_upper().get(), d.radius.get(), MPFR_RNDU);
            mpfr_sub(near.get(), diff.abs_lower().get(), d.radius.get(), MPFR_RNDD);
            if (mpfr_cmp(far.get(), r.get()) <= 0) {
                if (inside) ambiguous = true;
                inside = i;
            } else if (mpfr_cmp(near.get(), r.get()) <= 0) {
                ambiguous = true;
            }
        }
        if (inside && !ambiguous) return std::shared_ptr<const NumberField>(new NumberField(p, (*discs)[*inside], approx_root, radius));
        if (!inside && !ambiguous) break;
    }
    throw InputError("root enclosure does not isolate exactly one root of " + p.to_string());
}

RootDisc NumberField::enclosure(mpfr_prec_t precision) const {
    if (precision <= root_.re.precision()) return root_;
    const std::vector<std::complex<long double>> seed{
        {static_cast<long double>(root_.re.to_double()), static_cast<long double>(root_.im.to_double())}};
    auto refined = isolate_at(min_poly_, seed, precision);
    if (!refined) return root_;
    const RootDisc& d = refined->front();
    const ComplexInterval diff = point_box(d.re, d.im) - point_box(root_.re, root_.im);
    BigFloat reach(precision);
    mpfr_add(reach.get(), diff.abs_upper().get(), d.radius.get(), MPFR_RNDU);
    if (mpfr_cmp(reach.get(), root_.radius.get()) > 0) return root_;
    return d;
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coeffs) : field_(std::move(field)) {
    if (!field_) throw std::invalid_argument("field element without a field");
    const int n = field_->degree();
    RationalPolynomial reduced = RationalPolynomial(std::move(coeffs)) % field_->min_poly();
    coeffs_.assign(static_cast<std::size_t>(n), Rational(0));
    for (int i = 0; i <= reduced.degree(); ++i) coeffs_[static_cast<std::size_t>(i)] = reduced.coeff(i);
}

FieldElement FieldElement::zero(FieldPtr field) { return FieldElement(std::move(field), {}); }
FieldElement FieldElement::one(FieldPtr field) { return rational(std::move(field), Rational(1)); }
FieldElement FieldElement::rational(FieldPtr field, const Rational& q) { return FieldElement(std::move(field), {q}); }
FieldElement FieldElement::generator(FieldPtr field) {
    return FieldElement(std::move(field), {Rational(0), Rational(1)});
}

bool FieldElement::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool FieldElement::is_rational() const {
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return c == 0; });
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw std::domain_error("inversion of zero field element");
    // Extended Euclid: track s with s*a = r (mod p).
    RationalPolynomial old_r = as_polynomial(), r = field_->min_poly();
    RationalPolynomial old_s = RationalPolynomial::constant(Rational(1)), s;
    while (!r.is_zero()) {
        auto [q, rem] = old_r.divmod(r);
        old_r = std::exchange(r, rem);
        old_s = std::exchange(s, old_s - q * s);
    }
    if (old_r.degree() != 0) throw std::domain_error("element is not invertible");
    const Rational scale = 1 / old_r.leading();
    return FieldElement(field_, (scale * old_s).coefficients());
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    std::vector<Rational> out = a.coeffs_;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.coeffs_[i];
    return FieldElement(a.field_, std::move(out));
}

FieldElement operator-(const FieldElement& a) {
    std::vector<Rational> out = a.coeffs_;
    for (auto& c : out) c = -c;
    return FieldElement(a.field_, std::move(out));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return FieldElement(a.field_, (a.as_polynomial() * b.as_polynomial()).coefficients());
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    return same_field(a.field_, b.field_) && a.coeffs_ == b.coeffs_;
}

ComplexInterval FieldElement::evaluate(mpfr_prec_t precision) const {
    const ComplexInterval alpha = field_->enclosure(precision).box();
    return eval_interval(as_polynomial(), alpha, precision);
}

std::complex<double> FieldElement::approx() const {
    const ComplexInterval v = evaluate();
    return {v.re.midpoint(), v.im.midpoint()};
}

FieldElement field_add(const FieldElement& a, const FieldElement& b) { return a + b; }
FieldElement field_mul(const FieldElement& a, const FieldElement& b) { return a * b; }
FieldElement field_inv(const FieldElement& a) { return a.inverse(); }

std::vector<std::vector<Rational>> multiplication_matrix(const FieldElement& e) {
    const int n = e.field()->degree();
    std::vector<std::vector<Rational>> m;
    FieldElement power = FieldElement::one(e.field());
    const FieldElement alpha = FieldElement::generator(e.field());
    for (int i = 0; i < n; ++i) {
        m.push_back((e * power).coefficients());
        power = power * alpha;
    }
    return m;
}

RationalPolynomial characteristic_polynomial(const std::vector<std::vector<Rational>>& a) {
    const std::size_t n = a.size();
    using Matrix = std::vector<std::vector<Rational>>;
    const auto product = [n](const Matrix& x, const Matrix& y) {
        Matrix out(n, std::vector<Rational>(n, Rational(0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                if (x[i][k] == 0) continue;
                for (std::size_t j = 0; j < n; ++j) out[i][j] += x[i][k] * y[k][j];
            }
        return out;
    };
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    Matrix m(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t i = 0; i < n; ++i) m[i][i] += c[n - k + 1];
        m = product(a, m);
        Rational trace(0);
        for (std::size_t i = 0; i < n; ++i) trace += m[i][i];
        c[n - k] = -trace / static_cast<long>(k);
    }
    return RationalPolynomial(std::move(c));
}

RationalPolynomial minimal_polynomial(const FieldElement& e) {
    // Over an irreducible field polynomial the characteristic polynomial is a
    // power of the minimal polynomial, so its squarefree part is the answer.
    return squarefree_part(characteristic_polynomial(multiplication_matrix(e)));
}

const char* to_string(Realness r) {
    switch (r) {
        case Realness::CertifiedNotReal: return "certified_not_real";
        case Realness::NumericallyReal: return "numerically_real";
        case Realness::Inconclusive: return "inconclusive";
    }
    return "?";
}

Realness embedding_is_real(const FieldElement& e, int refine_limit, double threshold) {
    if (e.is_rational()) return Realness::NumericallyReal;
    mpfr_prec_t prec = kDefaultPrecision;
    ComplexInterval value = e.evaluate(prec);
    for (int step = 0;; ++step) {
        if (!value.im.contains_zero()) return Realness::CertifiedNotReal;
        if (step >= refine_limit || value.im.width() < 1e-30) break;
        prec *= 2;
        value = e.evaluate(prec);
    }
    if (std::abs(value.im.midpoint()) < threshold) return Realness::NumericallyReal;
    return Realness::Inconclusive;
}

}  // namespace geoscan
