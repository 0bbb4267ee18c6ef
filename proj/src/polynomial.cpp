#include "geoscan/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>

#include "geoscan/error.hpp"
#include "geoscan/numfield.hpp"

namespace geoscan {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) throw InputError("empty rational literal");
    const auto valid = [](const std::string& part) {
        if (part.empty()) return false;
        std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (start == part.size()) return false;
        return std::all_of(part.begin() + static_cast<std::ptrdiff_t>(start), part.end(),
                           [](unsigned char c) { return std::isdigit(c); });
    };
    const auto slash = s.find('/');
    const std::string num = s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid(num) || !valid(den)) throw InputError("malformed rational literal '" + std::string(text) + "'");
    mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
    mpz_class d(den[0] == '+' ? den.substr(1) : den, 10);
    if (d == 0) throw InputError("zero denominator in rational literal '" + std::string(text) + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational& q) { return q.get_str(); }

RationalPolynomial::RationalPolynomial(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) {
    for (auto& c : coeffs_) c.canonicalize();
    trim();
}

RationalPolynomial RationalPolynomial::constant(const Rational& c) { return RationalPolynomial({c}); }

RationalPolynomial RationalPolynomial::monomial(const Rational& c, int degree) {
    std::vector<Rational> v(static_cast<std::size_t>(degree) + 1, Rational(0));
    v.back() = c;
    return RationalPolynomial(std::move(v));
}

void RationalPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPolynomial::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Rational(0);
    return coeffs_[static_cast<std::size_t>(i)];
}

RationalPolynomial RationalPolynomial::monic() const {
    if (is_zero()) return *this;
    std::vector<Rational> out = coeffs_;
    const Rational lead = leading();
    for (auto& c : out) c /= lead;
    return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * static_cast<long>(i);
    return RationalPolynomial(std::move(out));
}

Rational RationalPolynomial::evaluate(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int RationalPolynomial::sign_at(const Rational& x) const { return sgn(evaluate(x)); }

std::pair<RationalPolynomial, RationalPolynomial> RationalPolynomial::divmod(const RationalPolynomial& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = coeffs_;
    const int dd = divisor.degree();
    if (degree() < dd) return {RationalPolynomial(), *this};
    std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd) + 1, Rational(0));
    for (int k = degree(); k >= dd; --k) {
        const Rational c = rem[static_cast<std::size_t>(k)] / divisor.leading();
        if (c == 0) continue;
        quot[static_cast<std::size_t>(k - dd)] = c;
        for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k - dd + j)] -= c * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
    return {RationalPolynomial(std::move(quot)), RationalPolynomial(std::move(rem))};
}

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
    std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return RationalPolynomial(std::move(out));
}

RationalPolynomial operator-(const RationalPolynomial& a) {
    std::vector<Rational> out = a.coeffs_;
    for (auto& c : out) c = -c;
    return RationalPolynomial(std::move(out));
}

RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) { return a + (-b); }

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return RationalPolynomial(std::move(out));
}

RationalPolynomial operator*(const Rational& c, const RationalPolynomial& a) {
    std::vector<Rational> out = a.coeffs_;
    for (auto& x : out) x *= c;
    return RationalPolynomial(std::move(out));
}

std::string RationalPolynomial::to_string(std::string_view var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeffs_[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        Rational mag = abs(c);
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        const bool unit = mag == 1 && k > 0;
        if (!unit) os << mag.get_str();
        if (k > 0) os << (unit ? "" : "*") << var;
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b) {
    while (!b.is_zero()) {
        RationalPolynomial r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

RationalPolynomial squarefree_part(const RationalPolynomial& p) {
    if (p.is_zero()) throw std::domain_error("squarefree part of the zero polynomial");
    if (p.degree() == 0) return RationalPolynomial::constant(Rational(1));
    const RationalPolynomial g = gcd(p, p.derivative());
    return p.divmod(g).first.monic();
}

std::vector<RationalPolynomial> sturm_sequence(const RationalPolynomial& p) {
    std::vector<RationalPolynomial> chain{squarefree_part(p)};
    chain.push_back(chain.front().derivative());
    while (!chain.back().is_zero()) {
        const auto& a = chain[chain.size() - 2];
        const auto& b = chain.back();
        chain.push_back(-(a % b));
    }
    chain.pop_back();
    return chain;
}

namespace {

int sign_variations(const std::vector<int>& signs) {
    int count = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

int variations_at(const std::vector<RationalPolynomial>& chain, const Rational& x) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& q : chain) signs.push_back(q.sign_at(x));
    return sign_variations(signs);
}

int variations_at_infinity(const std::vector<RationalPolynomial>& chain, bool positive) {
    std::vector<int> signs;
    for (const auto& q : chain) {
        int s = sgn(q.leading());
        if (!positive && q.degree() % 2 == 1) s = -s;
        signs.push_back(s);
    }
    return sign_variations(signs);
}

}  // namespace

int sturm_real_root_count(const RationalPolynomial& p, const std::optional<OpenInterval>& interval) {
    if (p.is_zero()) throw InputError("Sturm count of the zero polynomial");
    if (p.degree() == 0) return 0;
    const auto chain = sturm_sequence(p);
    if (!interval) return variations_at_infinity(chain, false) - variations_at_infinity(chain, true);
    if (interval->hi <= interval->lo) return 0;
    // For squarefree q, V(a) - V(b) counts roots in (a, b].
    int count = variations_at(chain, interval->lo) - variations_at(chain, interval->hi);
    if (chain.front().sign_at(interval->hi) == 0) --count;
    return count;
}

// ---------------------------------------------------------------------------
// Irreducibility via modular distinct-degree factorization.

namespace {

constexpr int kMaxSubsetDegree = 12;

using ModPoly = std::vector<std::int64_t>;

void mod_trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t m) {
    std::int64_t result = 1;
    base %= m;
    if (base < 0) base += m;
    while (exp > 0) {
        if (exp & 1) result = result * base % m;
        base = base * base % m;
        exp >>= 1;
    }
    return result;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) { return mod_pow(a, m - 2, m); }

ModPoly mod_rem(ModPoly a, const ModPoly& b, std::int64_t m) {
    const int db = static_cast<int>(b.size()) - 1;
    const std::int64_t inv = mod_inverse(b.back(), m);
    mod_trim(a);
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
        const int shift = static_cast<int>(a.size()) - 1 - db;
        const std::int64_t c = a.back() * inv % m;
        for (int j = 0; j <= db; ++j) {
            auto& slot = a[static_cast<std::size_t>(shift + j)];
            slot = ((slot - c * b[static_cast<std::size_t>(j)]) % m + m) % m;
        }
        mod_trim(a);
    }
    return a;
}

ModPoly mod_mul(const ModPoly& a, const ModPoly& b, const ModPoly& f, std::int64_t m) {
    if (a.empty() || b.empty()) return {};
    ModPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % m;
    return mod_rem(std::move(out), f, m);
}

ModPoly mod_gcd(ModPoly a, ModPoly b, std::int64_t m) {
    mod_trim(a);
    mod_trim(b);
    while (!b.empty()) {
        ModPoly r = mod_rem(a, b, m);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const std::int64_t inv = mod_inverse(a.back(), m);
        for (auto& c : a) c = c * inv % m;
    }
    return a;
}

ModPoly mod_div(ModPoly a, const ModPoly& b, std::int64_t m) {
    const int db = static_cast<int>(b.size()) - 1;
    const std::int64_t inv = mod_inverse(b.back(), m);
    mod_trim(a);
    if (static_cast<int>(a.size()) - 1 < db) return {};
    ModPoly q(a.size() - static_cast<std::size_t>(db), 0);
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
        const int shift = static_cast<int>(a.size()) - 1 - db;
        const std::int64_t c = a.back() * inv % m;
        q[static_cast<std::size_t>(shift)] = c;
        for (int j = 0; j <= db; ++j) {
            auto& slot = a[static_cast<std::size_t>(shift + j)];
            slot = ((slot - c * b[static_cast<std::size_t>(j)]) % m + m) % m;
        }
        mod_trim(a);
    }
    return q;
}

/// Degrees of the irreducible factors of squarefree f over F_m.
std::vector<int> distinct_degree_pattern(ModPoly f, std::int64_t m) {
    std::vector<int> degrees;
    ModPoly h{0, 1};  // x
    int i = 0;
    while (static_cast<int>(f.size()) - 1 >= 2 * (i + 1)) {
        ++i;
        // h <- h^m mod f
        ModPoly result{1};
        ModPoly base = mod_rem(h, f, m);
        std::int64_t e = m;
        while (e > 0) {
            if (e & 1) result = mod_mul(result, base, f, m);
            base = mod_mul(base, base, f, m);
            e >>= 1;
        }
        h = result;
        ModPoly diff = h;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] - 1 + m) % m;
        mod_trim(diff);
        ModPoly g = mod_gcd(f, diff, m);
        const int dg = static_cast<int>(g.size()) - 1;
        if (dg > 0) {
            for (int k = 0; k < dg / i; ++k) degrees.push_back(i);
            f = mod_div(f, g, m);
            h = mod_rem(h, f, m);
        }
    }
    if (static_cast<int>(f.size()) - 1 > 0) degrees.push_back(static_cast<int>(f.size()) - 1);
    return degrees;
}

std::set<int> subset_sums(const std::vector<int>& parts) {
    std::set<int> sums{0};
    for (int p : parts) {
        std::set<int> next = sums;
        for (int s : sums) next.insert(s + p);
        sums = std::move(next);
    }
    return sums;
}

std::vector<mpz_class> integer_primitive(const RationalPolynomial& p) {
    mpz_class lcm_den = 1;
    for (const auto& c : p.coefficients()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> ints;
    mpz_class content = 0;
    for (const auto& c : p.coefficients()) {
        mpz_class v = c.get_num() * (lcm_den / c.get_den());
        ints.push_back(v);
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    }
    for (auto& v : ints) v /= content;
    return ints;
}

std::vector<mpz_class> small_divisors(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> out;
    if (n == 0 || n > mpz_class("1000000000000")) return out;
    for (mpz_class d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    return out;
}

/// nullopt when the coefficients are too large to enumerate candidates.
std::optional<bool> has_rational_root(const RationalPolynomial& p, const std::vector<mpz_class>& ints) {
    if (ints.front() == 0) return true;
    const auto ps = small_divisors(ints.front());
    const auto qs = small_divisors(ints.back());
    if (ps.empty() || qs.empty()) return std::nullopt;
    for (const auto& a : ps)
        for (const auto& b : qs)
            for (int s : {1, -1}) {
                Rational cand(a * s, b);
                cand.canonicalize();
                if (p.evaluate(cand) == 0) return true;
            }
    return false;
}

/// Monic integer transform a_n^{n-1} p(x / a_n), then test every subset of
/// roots with a feasible size: a factor must have integer coefficients.
std::optional<bool> no_factor_from_root_subsets(const std::vector<mpz_class>& ints, const std::set<int>& feasible) {
    const int n = static_cast<int>(ints.size()) - 1;
    std::vector<Rational> monic_coeffs(ints.size());
    mpz_class scale = 1;
    for (int k = n - 1; k >= 0; --k) {
        monic_coeffs[static_cast<std::size_t>(k)] = Rational(ints[static_cast<std::size_t>(k)] * scale);
        scale *= ints.back();
    }
    monic_coeffs.back() = 1;
    const RationalPolynomial q(monic_coeffs);
    std::vector<RootDisc> roots;
    try {
        roots = isolate_roots(q, 256);
    } catch (const std::runtime_error&) {
        return std::nullopt;
    }
    const mpfr_prec_t prec = roots.front().re.precision();
    for (int d : feasible) {
        if (2 * d > n) continue;
        std::vector<int> pick(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) pick[static_cast<std::size_t>(i)] = i;
        while (true) {
            // Coefficients of prod (x - r) over the picked roots.
            std::vector<ComplexInterval> coeffs{ComplexInterval(Interval::from_double(1, prec), Interval(prec))};
            for (int idx : pick) {
                const ComplexInterval r = roots[static_cast<std::size_t>(idx)].box();
                std::vector<ComplexInterval> next(coeffs.size() + 1, ComplexInterval(prec));
                for (std::size_t k = 0; k < coeffs.size(); ++k) {
                    next[k + 1] = next[k + 1] + coeffs[k];
                    next[k] = next[k] - r * coeffs[k];
                }
                coeffs = std::move(next);
            }
            bool integral = true;
            std::vector<Rational> candidate;
            for (const auto& c : coeffs) {
                if (!c.im.contains_zero()) { integral = false; break; }
                mpz_class lo, hi;
                mpfr_get_z(lo.get_mpz_t(), c.re.lo().get(), MPFR_RNDU);
                mpfr_get_z(hi.get_mpz_t(), c.re.hi().get(), MPFR_RNDD);
                if (lo > hi) { integral = false; break; }
                if (lo != hi) return std::nullopt;
                candidate.emplace_back(lo);
            }
            if (integral && (q % RationalPolynomial(candidate)).is_zero()) return false;
            int i = d - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - d + i) --i;
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < d; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return true;
}

}  // namespace

std::optional<bool> is_irreducible(const RationalPolynomial& p) {
    if (p.degree() <= 0) return false;
    if (p.degree() == 1) return true;
    if (squarefree_part(p).degree() != p.degree()) return false;
    const auto ints = integer_primitive(p);
    const int n = p.degree();

    std::set<int> feasible;
    for (int d = 1; d < n; ++d) feasible.insert(d);
    static constexpr std::int64_t kPrimes[] = {3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
                                               47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103,
                                               107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173};
    for (std::int64_t m : kPrimes) {
        mpz_class lead_mod = ints.back() % m;
        if (lead_mod == 0) continue;
        ModPoly f;
        for (const auto& c : ints) {
            mpz_class r = c % m;
            if (r < 0) r += m;
            f.push_back(r.get_si());
        }
        ModPoly df;
        for (std::size_t i = 1; i < f.size(); ++i) df.push_back(f[i] * static_cast<std::int64_t>(i) % m);
        mod_trim(df);
        if (mod_gcd(f, df, m).size() != 1) continue;  // not squarefree mod m
        const auto pattern = distinct_degree_pattern(f, m);
        const auto sums = subset_sums(pattern);
        std::set<int> next;
        for (int d : feasible)
            if (sums.count(d)) next.insert(d);
        feasible = std::move(next);
        if (feasible.empty()) return true;
    }
    // Only linear factors remain possible: decide exactly with rational roots.
    const bool only_linear = std::all_of(feasible.begin(), feasible.end(), [n](int d) { return d == 1 || d == n - 1; });
    if (only_linear || n <= 3) {
        auto root = has_rational_root(p, ints);
        if (root) return !*root;
    }
    if (n <= kMaxSubsetDegree) return no_factor_from_root_subsets(ints, feasible);
    return std::nullopt;
}

}  // namespace geoscan
