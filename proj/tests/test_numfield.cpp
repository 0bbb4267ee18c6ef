#include <random>

#include "doctest.h"
#include "geoscan/error.hpp"
#include "geoscan/numfield.hpp"

using namespace geoscan;

namespace {

RationalPolynomial poly(std::initializer_list<long> ascending) {
    std::vector<Rational> c;
    for (long v : ascending) c.emplace_back(v);
    return RationalPolynomial(c);
}

FieldPtr sqrt2() { return NumberField::create(poly({-2, 0, 1}), {1.414, 0.0}, 0.1); }
FieldPtr gaussian() { return NumberField::create(poly({1, 0, 1}), {0.0, 1.0}, 0.1); }

FieldElement elem(const FieldPtr& f, std::initializer_list<Rational> c) { return FieldElement(f, std::vector<Rational>(c)); }

FieldElement random_element(const FieldPtr& f, std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-20, 20);
    std::uniform_int_distribution<long> den(1, 9);
    std::vector<Rational> c;
    for (int i = 0; i < f->degree(); ++i) c.emplace_back(num(rng), den(rng));
    for (auto& q : c) q.canonicalize();
    return FieldElement(f, c);
}

}  // namespace

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(parse_rational("123456789012345678901234567890/1") == Rational(mpz_class("123456789012345678901234567890")));
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("x"), InputError);
    CHECK_THROWS_AS(parse_rational(""), InputError);
}

TEST_CASE("polynomial arithmetic") {
    const auto p = poly({-1, 0, 1});
    const auto [q, r] = p.divmod(poly({-1, 1}));
    CHECK(q == poly({1, 1}));
    CHECK(r.is_zero());
    CHECK(gcd(poly({-1, 0, 1}), poly({1, 2, 1})) == poly({1, 1}));
    CHECK(squarefree_part(poly({1, 2, 1})) == poly({1, 1}));
    CHECK(p.to_string() == "x^2 - 1");
    CHECK_THROWS_AS(p.divmod(RationalPolynomial()), std::domain_error);
}

TEST_CASE("Q(sqrt2) arithmetic") {
    const auto f = sqrt2();
    const auto one = FieldElement::one(f);
    const auto a = FieldElement::generator(f);
    CHECK((one + a) * (one - a) == FieldElement::rational(f, -1));
    CHECK(a * elem(f, {0, Rational(1, 2)}) == one);
    CHECK(field_inv(a) == elem(f, {0, Rational(1, 2)}));
    CHECK(field_mul(field_add(one, a), field_add(one, -a)) == FieldElement::rational(f, -1));
    CHECK_THROWS_AS(FieldElement::zero(f).inverse(), std::domain_error);
    CHECK_THROWS_AS(a + FieldElement::generator(gaussian()), std::invalid_argument);
}

TEST_CASE("field axioms on random elements") {
    std::mt19937 rng(7);
    const FieldPtr fields[] = {sqrt2(), gaussian(), NumberField::create(poly({1, -3, 0, 1}), {1.532, 0}, 0.05),
                               NumberField::create(poly({-2, 0, 0, 0, 1}), {0, 1.189}, 0.1)};
    for (const auto& f : fields) {
        const auto one = FieldElement::one(f);
        for (int trial = 0; trial < 40; ++trial) {
            const auto a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            if (!a.is_zero()) CHECK(a * a.inverse() == one);
        }
    }
}

TEST_CASE("Sturm counts") {
    CHECK(sturm_real_root_count(poly({1, 0, 1})) == 0);
    CHECK(sturm_real_root_count(poly({0, -1, 0, 1})) == 3);
    CHECK(sturm_real_root_count(poly({-2, 0, 1}), OpenInterval{0, 2}) == 1);
    // Endpoints are excluded.
    CHECK(sturm_real_root_count(poly({0, -1, 0, 1}), OpenInterval{-1, 1}) == 1);
    CHECK(sturm_real_root_count(poly({0, -1, 0, 1}), OpenInterval{Rational(-3, 2), 1}) == 2);
    // Repeated roots are counted once.
    CHECK(sturm_real_root_count(poly({1, -2, 1})) == 1);
    CHECK_THROWS_AS(sturm_real_root_count(RationalPolynomial()), InputError);
}

TEST_CASE("real roots plus certified complex pairs account for the degree") {
    const RationalPolynomial cases[] = {poly({1, 0, 1}),        poly({0, -1, 0, 1}),      poly({-2, 0, 0, 0, 1}),
                                        poly({1, 1, 1, 1, 1}),  poly({1, -1, 0, 0, 0, 1}), poly({3, 0, -4, 0, 1}),
                                        poly({1, 2, 1, 0, 1}),  poly({-1, 0, 1, 0, 0, 0, 1})};
    for (const auto& p : cases) {
        const int n = squarefree_part(p).degree();
        CHECK(sturm_real_root_count(p) + 2 * certified_nonreal_root_pairs(p) == n);
    }
}

TEST_CASE("irreducibility") {
    CHECK(is_irreducible(poly({-2, 0, 1})) == std::optional<bool>(true));
    CHECK(is_irreducible(poly({-1, 0, 1})) == std::optional<bool>(false));
    CHECK(is_irreducible(poly({1, 0, 0, 0, 1})) == std::optional<bool>(true));
    CHECK(is_irreducible(poly({1, 0, 2, 0, 1})) == std::optional<bool>(false));   // (x^2+1)^2
    CHECK(is_irreducible(poly({2, 0, 3, 0, 1})) == std::optional<bool>(false));   // (x^2+1)(x^2+2)
    CHECK(is_irreducible(poly({1, -1, 1})) == std::optional<bool>(true));
    CHECK(is_irreducible(poly({-1, 0, 1, 0, 0, 0, 1})) == std::optional<bool>(true));
    CHECK_THROWS_AS(NumberField::create(poly({-1, 0, 1}), {1, 0}, 0.1), InputError);
    // Enclosure containing both roots of x^2 + 1.
    CHECK_THROWS_AS(NumberField::create(poly({1, 0, 1}), {0, 0}, 5), InputError);
}

TEST_CASE("minimal polynomials") {
    const auto f = sqrt2();
    CHECK(minimal_polynomial(FieldElement::rational(f, 3)) == poly({-3, 1}));
    CHECK(minimal_polynomial(FieldElement::generator(f)) == poly({-2, 0, 1}));
    // Oracle: x^2 - tr(M) x + det(M) for M = [[1, 2], [1, 1]].
    const Rational tr = 1 + 1, det = 1 * 1 - 2 * 1;
    const RationalPolynomial oracle({det, -tr, Rational(1)});
    CHECK(minimal_polynomial(elem(f, {1, 1})) == oracle);
}

TEST_CASE("minimal polynomial vanishes on the interval embedding") {
    std::mt19937 rng(11);
    const FieldPtr fields[] = {sqrt2(), gaussian(), NumberField::create(poly({1, -3, 0, 1}), {-1.879, 0}, 0.05),
                               NumberField::create(poly({1, 1, 1, 1, 1}), {0.309, 0.951}, 0.05)};
    for (const auto& f : fields) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto e = random_element(f, rng);
            const auto m = minimal_polynomial(e);
            CHECK(f->degree() % m.degree() == 0);
            // Evaluate m at e inside the field: exactly zero.
            FieldElement acc = FieldElement::zero(f);
            for (int k = m.degree(); k >= 0; --k) acc = acc * e + FieldElement::rational(f, m.coeff(k));
            CHECK(acc.is_zero());
            // And at the interval enclosure of e.
            const ComplexInterval z = e.evaluate();
            ComplexInterval val(z.re.precision());
            for (int k = m.degree(); k >= 0; --k) {
                val = val * z;
                val.re = val.re + Interval::from_rational(m.coeff(k), z.re.precision());
            }
            CHECK(val.contains_zero());
        }
    }
}

TEST_CASE("realness of embeddings") {
    const auto qi = gaussian();
    const auto i = FieldElement::generator(qi);
    CHECK(embedding_is_real(i) == Realness::CertifiedNotReal);
    CHECK(embedding_is_real(i * i) == Realness::NumericallyReal);
    CHECK(embedding_is_real(FieldElement::generator(sqrt2())) == Realness::NumericallyReal);
    // All roots of x^3 - 3x + 1 are real: nothing in this field is certified non-real.
    std::mt19937 rng(3);
    const auto f = NumberField::create(poly({1, -3, 0, 1}), {0.347, 0}, 0.05);
    for (int trial = 0; trial < 20; ++trial) CHECK(embedding_is_real(random_element(f, rng)) != Realness::CertifiedNotReal);
    // A tiny but nonzero imaginary part is still certified.
    const auto small = FieldElement(qi, {Rational(1), Rational(1, 1000000)});
    CHECK(embedding_is_real(small) == Realness::CertifiedNotReal);
}

TEST_CASE("enclosure refinement keeps the chosen root") {
    const auto f = NumberField::create(poly({-2, 0, 1}), {-1.4, 0}, 0.1);
    const RootDisc fine = f->enclosure(512);
    CHECK(fine.re.precision() >= 512);
    CHECK(fine.re.to_double() == doctest::Approx(-1.4142135623730951));
    CHECK(mpfr_cmp_d(fine.radius.get(), 1e-100) < 0);
}
