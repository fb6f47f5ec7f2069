#include "sesh/numfield.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <sstream>

#include "sesh/errors.hpp"
#include "sesh/upoly.hpp"

namespace sesh {

// ---------------------------------------------------------------- elements

NfElement::NfElement(NumberFieldPtr field, std::vector<Rational> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) != field_->degree())
        throw DimensionMismatch("element coordinate length != field degree");
}

bool NfElement::is_zero() const {
    for (const auto& q : c_)
        if (sgn(q) != 0) return false;
    return true;
}

bool NfElement::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) return false;
    return true;
}

const Rational& NfElement::rational_value() const {
    if (!is_rational()) throw Error("element is not rational: " + str());
    return c_[0];
}

static void check_same_field(const NfElement& a, const NfElement& b) {
    if (a.field().get() != b.field().get() && !a.field()->same(*b.field()))
        throw DimensionMismatch("elements of different number fields");
}

NfElement operator+(const NfElement& a, const NfElement& b) {
    check_same_field(a, b);
    std::vector<Rational> c(a.coeffs());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs()[i];
    return NfElement(a.field(), std::move(c));
}

NfElement operator-(const NfElement& a, const NfElement& b) {
    check_same_field(a, b);
    std::vector<Rational> c(a.coeffs());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coeffs()[i];
    return NfElement(a.field(), std::move(c));
}

NfElement NfElement::operator-() const {
    std::vector<Rational> c(c_);
    for (auto& q : c) q = -q;
    return NfElement(field_, std::move(c));
}

NfElement operator*(const NfElement& a, const NfElement& b) {
    check_same_field(a, b);
    const int n = a.field()->degree();
    std::vector<Rational> conv(2 * n - 1, Rational(0));
    for (int i = 0; i < n; ++i) {
        if (sgn(a.coeffs()[i]) == 0) continue;
        for (int j = 0; j < n; ++j) conv[i + j] += a.coeffs()[i] * b.coeffs()[j];
    }
    const auto& red = a.field()->power_reductions();
    std::vector<Rational> c(conv.begin(), conv.begin() + n);
    for (int k = n; k <= 2 * n - 2; ++k) {
        if (sgn(conv[k]) == 0) continue;
        const auto& row = red[k - n];
        for (int i = 0; i < n; ++i) c[i] += conv[k] * row[i];
    }
    return NfElement(a.field(), std::move(c));
}

NfElement operator*(const NfElement& a, const Rational& s) {
    std::vector<Rational> c(a.coeffs());
    for (auto& q : c) q *= s;
    return NfElement(a.field(), std::move(c));
}

NfElement operator*(const Rational& s, const NfElement& a) { return a * s; }

bool NfElement::operator==(const NfElement& o) const {
    return (field_.get() == o.field_.get() || field_->same(*o.field_)) && c_ == o.c_;
}

NfElement NfElement::inv() const {
    if (is_zero()) throw DivisionByZero("inverse of zero field element");
    UPoly<Rational> rep(c_);
    up_trim(rep);
    UPoly<Rational> f(field_->min_poly());
    auto [g, s, t] = up_xgcd(rep, f, FieldTraits<Rational>::Ctx{});
    if (up_deg(g) != 0)
        throw Error("nontrivial gcd with the minimal polynomial; field corrupted");
    // g is monic hence 1; s*rep = 1 mod f
    auto [q, r] = up_divmod(s, f, FieldTraits<Rational>::Ctx{});
    std::vector<Rational> c(field_->degree(), Rational(0));
    for (std::size_t i = 0; i < r.size(); ++i) c[i] = r[i];
    return NfElement(field_, std::move(c));
}

std::string NfElement::str(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const Rational& q = c_[i];
        if (sgn(q) == 0) {
            if (i == 0) break;
            continue;
        }
        Rational a = rat_abs(q);
        if (first) {
            if (sgn(q) < 0) os << "-";
            first = false;
        } else {
            os << (sgn(q) < 0 ? " - " : " + ");
        }
        if (i == 0) {
            os << rat_str(a);
        } else {
            if (a != 1) os << rat_str(a) << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        if (i == 0) break;
    }
    if (first) os << "0";
    return os.str();
}

void FieldTraits<NfElement>::normalize_span(std::vector<NfElement>& v) {
    for (const auto& x : v) {
        if (!x.is_zero()) {
            NfElement s = x.inv();
            for (auto& y : v) y = y * s;
            return;
        }
    }
}

// ------------------------------------------------------------ number field

namespace {

// Tiny F_p polynomial layer for the degree-pattern certification. p < 1000,
// degrees <= 63, dense uint32 coefficients.
struct FpCtx {
    std::uint32_t p;
};

using FpPoly = std::vector<std::uint32_t>;

void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p) {
    std::uint64_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<std::uint32_t>(
                (c[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    fp_trim(c);
    return c;
}

// remainder of a by monic b
FpPoly fp_rem(FpPoly a, const FpPoly& b, std::uint32_t p) {
    fp_trim(a);
    while (a.size() >= b.size()) {
        std::uint32_t f = a.back();
        if (f != 0) {
            std::size_t off = a.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j) {
                std::uint64_t t = static_cast<std::uint64_t>(f) * b[j] % p;
                std::uint32_t& dst = a[off + j];
                dst = static_cast<std::uint32_t>((dst + p - t) % p);
            }
        }
        a.pop_back();
        fp_trim(a);
    }
    return a;
}

FpPoly fp_monic(FpPoly a, std::uint32_t p) {
    fp_trim(a);
    if (a.empty() || a.back() == 1) return a;
    std::uint64_t s = fp_inv(a.back(), p);
    for (auto& x : a) x = static_cast<std::uint32_t>(x * s % p);
    return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint32_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_rem(a, fp_monic(b, p), p);
        a = std::move(b);
        b = std::move(r);
    }
    return fp_monic(a, p);
}

FpPoly fp_derivative(const FpPoly& a, std::uint32_t p) {
    FpPoly d;
    for (std::size_t i = 1; i < a.size(); ++i)
        d.push_back(static_cast<std::uint32_t>(static_cast<std::uint64_t>(a[i]) * (i % p) % p));
    fp_trim(d);
    return d;
}

FpPoly fp_powmod(const FpPoly& base, std::uint64_t e, const FpPoly& mod, std::uint32_t p) {
    FpPoly r{1};
    FpPoly b = fp_rem(base, mod, p);
    while (e) {
        if (e & 1) r = fp_rem(fp_mul(r, b, p), mod, p);
        b = fp_rem(fp_mul(b, b, p), mod, p);
        e >>= 1;
    }
    return r;
}

FpPoly fp_divexact(const FpPoly& a, const FpPoly& b, std::uint32_t p) {
    // a = q*b with b monic
    FpPoly rem = a;
    FpPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    fp_trim(rem);
    while (rem.size() >= b.size()) {
        std::uint32_t f = rem.back();
        std::size_t off = rem.size() - b.size();
        q[off] = f;
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t t = static_cast<std::uint64_t>(f) * b[j] % p;
            rem[off + j] = static_cast<std::uint32_t>((rem[off + j] + p - t) % p);
        }
        fp_trim(rem);
    }
    fp_trim(q);
    return q;
}

// Multiset of irreducible factor degrees of monic squarefree f over F_p
// (distinct-degree factorization; only degrees are needed).
std::vector<int> fp_factor_degrees(FpPoly f, std::uint32_t p) {
    std::vector<int> degs;
    FpPoly h{0, 1}; // t
    int d = 0;
    while (static_cast<int>(f.size()) - 1 > 0) {
        ++d;
        if (2 * d > static_cast<int>(f.size()) - 1) {
            degs.push_back(static_cast<int>(f.size()) - 1);
            break;
        }
        h = fp_powmod(h, p, f, p);
        FpPoly hx = h;
        // h - t
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = (hx[1] + p - 1) % p;
        fp_trim(hx);
        FpPoly g = fp_gcd(hx, f, p);
        if (!g.empty() && g.size() > 1) {
            int gd = static_cast<int>(g.size()) - 1;
            for (int i = 0; i < gd / d; ++i) degs.push_back(d);
            f = fp_divexact(f, g, p);
            h = fp_rem(h, f, p);
        }
    }
    return degs;
}

bool small_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Rational root probe for the error message: monic f over Q cleared to
// integer coefficients lead*t^n + ... + c0; candidate roots u/v need u | c0
// and v | lead. Only small divisors are tried; this only upgrades the
// message from "unverified" to "reducible".
std::optional<Rational> find_small_rational_root(const std::vector<Integer>& c) {
    const Integer& c0 = c.front();
    const Integer& lead = c.back();
    auto divisors = [](const Integer& x, long cap) {
        std::vector<long> out;
        if (x == 0) return out;
        Integer ax = abs(x);
        for (long d = 1; d <= cap; ++d) {
            if (mpz_divisible_ui_p(ax.get_mpz_t(), static_cast<unsigned long>(d)))
                out.push_back(d);
        }
        return out;
    };
    if (c0 == 0) return Rational(0);
    for (long u : divisors(c0, 1000))
        for (long v : divisors(lead, 1000))
            for (int s : {1, -1}) {
                Rational r = rat(s * u, v);
                Rational acc(0);
                for (std::size_t i = c.size(); i-- > 0;) {
                    acc = acc * r + Rational(c[i]);
                    if (i == 0) break;
                }
                if (sgn(acc) == 0) return r;
            }
    return std::nullopt;
}

} // namespace

NumberField::NumberField(std::vector<Rational> mp) : min_poly_(std::move(mp)) {
    degree_ = static_cast<int>(min_poly_.size()) - 1;
    // th^degree = -(c0 + c1 th + ...); higher powers by shift-and-reduce
    if (degree_ >= 1) {
        std::vector<Rational> base(degree_);
        for (int i = 0; i < degree_; ++i) base[i] = -min_poly_[i];
        pow_red_.push_back(base);
        for (int j = 1; j <= degree_ - 2; ++j) {
            const auto& prev = pow_red_.back();
            std::vector<Rational> next(degree_, Rational(0));
            for (int i = 0; i < degree_ - 1; ++i) next[i + 1] = prev[i];
            const Rational& top = prev[degree_ - 1];
            if (sgn(top) != 0)
                for (int i = 0; i < degree_; ++i) next[i] += top * pow_red_[0][i];
            pow_red_.push_back(std::move(next));
        }
    }
}

NumberFieldPtr NumberField::create(std::vector<Rational> min_poly, const Options& opt) {
    while (!min_poly.empty() && sgn(min_poly.back()) == 0) min_poly.pop_back();
    if (min_poly.size() < 2) throw InputError("minimal polynomial must have degree >= 1");
    if (min_poly.back() != 1) throw InputError("minimal polynomial must be monic");
    const int n = static_cast<int>(min_poly.size()) - 1;

    UPoly<Rational> f(min_poly);
    FieldTraits<Rational>::Ctx qc{};
    UPoly<Rational> g = up_gcd(f, up_derivative(f, qc), qc);
    if (up_deg(g) != 0)
        throw NotSquarefree("minimal polynomial is not squarefree (gcd with derivative has degree " +
                            std::to_string(up_deg(g)) + ")");

    if (n == 1) return NumberFieldPtr(new NumberField(std::move(min_poly)));
    if (n > 63)
        throw IrreducibilityUnverified("degree > 63 exceeds the pattern certifier");

    // Integer model for reductions mod p.
    Integer den = common_denominator(min_poly);
    std::vector<Integer> ic(min_poly.size());
    for (std::size_t i = 0; i < min_poly.size(); ++i)
        ic[i] = min_poly[i].get_num() * (den / min_poly[i].get_den());

    const std::uint64_t target = 1ull | (1ull << n);
    std::uint64_t possible = ~0ull >> (63 - n); // degrees 0..n all open
    int good_used = 0;
    for (std::uint32_t p = 2; p < opt.prime_bound && good_used < opt.prime_budget; ++p) {
        if (!small_prime(p)) continue;
        if (mpz_divisible_ui_p(ic.back().get_mpz_t(), p)) continue;
        FpPoly fp(ic.size());
        for (std::size_t i = 0; i < ic.size(); ++i)
            fp[i] = static_cast<std::uint32_t>(mpz_fdiv_ui(ic[i].get_mpz_t(), p));
        fp = fp_monic(std::move(fp), p);
        FpPoly sq = fp_gcd(fp, fp_derivative(fp, p), p);
        if (sq.size() != 1) continue; // not squarefree mod p
        ++good_used;
        std::vector<int> degs = fp_factor_degrees(fp, p);
        std::uint64_t sums = 1;
        for (int d : degs) sums |= sums << d;
        possible &= sums;
        if (possible == target) return NumberFieldPtr(new NumberField(std::move(min_poly)));
    }

    std::ostringstream msg;
    if (auto root = find_small_rational_root(ic)) {
        msg << "reducible over Q: " << rat_str(*root) << " is a root";
    } else {
        msg << "irreducibility unverified after " << good_used
            << " good primes; surviving proper factor degrees:";
        for (int k = 1; k < n; ++k)
            if (possible & (1ull << k)) msg << " " << k;
    }
    throw IrreducibilityUnverified(msg.str());
}

NumberFieldPtr NumberField::rationals() {
    static const NumberFieldPtr q = [] {
        std::vector<Rational> t{Rational(0), Rational(1)};
        return NumberFieldPtr(new NumberField(std::move(t)));
    }();
    return q;
}

NfElement NumberField::zero() const {
    return NfElement(shared_from_this(), std::vector<Rational>(degree_, Rational(0)));
}

NfElement NumberField::one() const { return from_rational(Rational(1)); }

NfElement NumberField::gen() const {
    std::vector<Rational> c(degree_, Rational(0));
    if (degree_ >= 2)
        c[1] = 1;
    else {
        // Q[t]/(t - a): th is the rational number a
        c[0] = -min_poly_[0];
    }
    return NfElement(shared_from_this(), std::move(c));
}

NfElement NumberField::from_rational(const Rational& r) const {
    std::vector<Rational> c(degree_, Rational(0));
    c[0] = r;
    return NfElement(shared_from_this(), std::move(c));
}

NfElement NumberField::element(std::vector<Rational> coeffs) const {
    return NfElement(shared_from_this(), std::move(coeffs));
}

// ------------------------------------------------------------- subalgebra

namespace {

// Incremental RREF over Q: insert reduces v against the rows; a nonzero
// residual becomes a new normalized row and existing rows are cleared at
// its pivot. Returns true when v enlarged the span.
struct IncrementalRref {
    std::vector<std::vector<Rational>> rows;
    std::vector<std::size_t> pivots;

    bool insert(std::vector<Rational> v) {
        for (std::size_t t = 0; t < rows.size(); ++t) {
            const Rational& c = v[pivots[t]];
            if (sgn(c) != 0) {
                Rational f = c;
                for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * rows[t][j];
            }
        }
        std::size_t piv = v.size();
        for (std::size_t j = 0; j < v.size(); ++j)
            if (sgn(v[j]) != 0) {
                piv = j;
                break;
            }
        if (piv == v.size()) return false;
        Rational inv = Rational(1) / v[piv];
        for (auto& x : v) x *= inv;
        for (std::size_t t = 0; t < rows.size(); ++t) {
            Rational f = rows[t][piv];
            if (sgn(f) == 0) continue;
            for (std::size_t j = 0; j < v.size(); ++j) rows[t][j] -= f * v[j];
        }
        // keep rows sorted by pivot
        std::size_t pos = 0;
        while (pos < pivots.size() && pivots[pos] < piv) ++pos;
        rows.insert(rows.begin() + pos, std::move(v));
        pivots.insert(pivots.begin() + pos, piv);
        return true;
    }
};

} // namespace

SubalgebraBasis SubalgebraBasis::compute(const NumberFieldPtr& field,
                                         const std::vector<NfElement>& gens) {
    for (const auto& g : gens)
        if (g.field().get() != field.get() && !g.field()->same(*field))
            throw DimensionMismatch("subalgebra generators from different fields");
    IncrementalRref rref;
    std::deque<NfElement> queue;
    NfElement one = field->one();
    rref.insert(one.coeffs());
    queue.push_back(one);
    while (!queue.empty()) {
        NfElement b = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            NfElement prod = b * g;
            if (rref.insert(prod.coeffs())) queue.push_back(prod);
        }
    }
    SubalgebraBasis out;
    out.field_ = field;
    out.rows_ = std::move(rref.rows);
    out.pivots_ = std::move(rref.pivots);
    return out;
}

std::optional<std::vector<Rational>> SubalgebraBasis::coords_of(const NfElement& e) const {
    std::vector<Rational> v = e.coeffs();
    std::vector<Rational> coords(rows_.size(), Rational(0));
    for (std::size_t t = 0; t < rows_.size(); ++t) {
        Rational c = v[pivots_[t]];
        if (sgn(c) != 0) {
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * rows_[t][j];
        }
        coords[t] = c;
    }
    for (const auto& x : v)
        if (sgn(x) != 0) return std::nullopt;
    return coords;
}

int subalgebra_degree(const std::vector<NfElement>& gens) {
    if (gens.empty()) return 1;
    return SubalgebraBasis::compute(gens.front().field(), gens).dimension();
}

// ------------------------------------------------------------------ parse

namespace {

struct Scanner {
    const std::string& s;
    std::size_t i = 0;
    void skip() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool done() {
        skip();
        return i >= s.size();
    }
};

std::optional<Rational> scan_rational(Scanner& sc) {
    sc.skip();
    std::size_t start = sc.i;
    while (sc.i < sc.s.size() && (std::isdigit(static_cast<unsigned char>(sc.s[sc.i])))) ++sc.i;
    if (sc.i == start) return std::nullopt;
    std::string num = sc.s.substr(start, sc.i - start);
    std::string den = "1";
    std::size_t save = sc.i;
    if (sc.eat('/')) {
        sc.skip();
        std::size_t ds = sc.i;
        while (sc.i < sc.s.size() && std::isdigit(static_cast<unsigned char>(sc.s[sc.i]))) ++sc.i;
        if (sc.i == ds) {
            sc.i = save;
        } else {
            den = sc.s.substr(ds, sc.i - ds);
        }
    }
    return rat_parse(num + "/" + den);
}

} // namespace

// Shared term grammar: ["-"] [rational] ["*"] [var ["^" k]], joined by +/-.
static std::optional<std::vector<std::pair<long, Rational>>> parse_terms(
    const std::string& text, const std::string& var) {
    Scanner sc{text};
    std::vector<std::pair<long, Rational>> terms;
    int sign = sc.eat('-') ? -1 : 1;
    while (true) {
        std::optional<Rational> coeff = scan_rational(sc);
        bool has_var = false;
        long power = 0;
        std::size_t save = sc.i;
        bool star = sc.eat('*');
        sc.skip();
        if (sc.s.compare(sc.i, var.size(), var) == 0) {
            sc.i += var.size();
            has_var = true;
            power = 1;
            if (sc.eat('^')) {
                auto e = scan_rational(sc);
                if (!e || !rat_is_integer(*e)) return std::nullopt;
                power = rat_to_long(*e);
                if (power < 0 || power > 64) return std::nullopt;
            }
        } else if (star) {
            return std::nullopt; // dangling '*'
        } else {
            sc.i = save;
        }
        if (!coeff && !has_var) return std::nullopt;
        Rational c = coeff ? *coeff : Rational(1);
        if (sign < 0) c = -c;
        terms.push_back({power, c});
        if (sc.done()) break;
        if (sc.eat('+'))
            sign = 1;
        else if (sc.eat('-'))
            sign = -1;
        else
            return std::nullopt;
    }
    if (terms.empty()) return std::nullopt;
    return terms;
}

std::optional<NfElement> nf_parse(const NumberFieldPtr& field, const std::string& text) {
    auto terms = parse_terms(text, "th");
    if (!terms) return std::nullopt;
    NfElement acc = field->zero();
    NfElement th = field->gen();
    for (const auto& [power, c] : *terms) {
        NfElement term = field->from_rational(c);
        for (long k = 0; k < power; ++k) term = term * th;
        acc = acc + term;
    }
    return acc;
}

std::optional<std::vector<Rational>> poly_parse(const std::string& text, const std::string& var) {
    auto terms = parse_terms(text, var);
    if (!terms) return std::nullopt;
    long deg = 0;
    for (const auto& [power, c] : *terms) deg = std::max(deg, power);
    std::vector<Rational> coeffs(deg + 1, Rational(0));
    for (const auto& [power, c] : *terms) coeffs[power] += c;
    while (coeffs.size() > 1 && sgn(coeffs.back()) == 0) coeffs.pop_back();
    return coeffs;
}

} // namespace sesh
