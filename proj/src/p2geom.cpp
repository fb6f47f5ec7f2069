#include "sesh/p2geom.hpp"

#include <cctype>
#include <sstream>

#include "sesh/errors.hpp"

namespace sesh {

std::vector<Mono> monomial_basis(int d) {
    std::vector<Mono> out;
    out.reserve(static_cast<std::size_t>((d + 1) * (d + 2) / 2));
    for (int e0 = d; e0 >= 0; --e0)
        for (int e1 = d - e0; e1 >= 0; --e1) out.push_back(Mono{e0, e1, d - e0 - e1});
    return out;
}

Rational detail::falling_factorial(int i, int a) {
    Integer r = 1;
    for (int t = 0; t < a; ++t) r *= (i - t);
    return Rational(r);
}

ClosedPoint ClosedPoint::make(const NumberFieldPtr& field, std::array<NfElement, 3> coords) {
    return make_normalized(field, std::move(coords), -1, false);
}

ClosedPoint ClosedPoint::make_over_coordinate_field(const NumberFieldPtr& field,
                                                    std::array<NfElement, 3> coords) {
    return make_normalized(field, std::move(coords), -1, true);
}

ClosedPoint ClosedPoint::make_normalized(const NumberFieldPtr& field,
                                         std::array<NfElement, 3> coords, int chart,
                                         bool base_is_coord_field) {
    if (chart < 0) {
        for (int k = 0; k < 3 && chart < 0; ++k)
            if (!coords[k].is_zero()) chart = k;
        if (chart < 0) throw AllCoordsZero("homogeneous coordinates are all zero");
        NfElement scale = coords[chart].inv();
        for (int k = 0; k < 3; ++k) coords[k] = coords[k] * scale;
    }
    ClosedPoint p;
    p.field_ = field;
    p.coords_ = std::move(coords);
    p.chart_ = chart;
    p.base_is_coord_field_ = base_is_coord_field;
    if (base_is_coord_field) {
        // a point handed in by coordinates in K is K-rational over base K
        p.alpha_ = 1;
        p.residue_basis_ = SubalgebraBasis::compute(field, {});
    } else {
        std::vector<NfElement> affine;
        for (int k = 0; k < 3; ++k)
            if (k != p.chart_) affine.push_back(p.coords_[k]);
        p.residue_basis_ = SubalgebraBasis::compute(field, affine);
        p.alpha_ = p.residue_basis_.dimension();
    }
    return p;
}

bool ClosedPoint::same_presentation(const ClosedPoint& o) const {
    if (!field_->same(*o.field_)) return false;
    for (int k = 0; k < 3; ++k)
        if (!(coords_[k] == o.coords_[k])) return false;
    return base_is_coord_field_ == o.base_is_coord_field_;
}

// -------------------------------------------------------------------- io

static std::string mono_str(const Mono& m) {
    std::string out;
    auto var = [&](const char* name, int e) {
        if (e == 0) return;
        if (!out.empty()) out += "*";
        out += name;
        if (e > 1) out += "^" + std::to_string(e);
    };
    var("x0", m.e0);
    var("x1", m.e1);
    var("x2", m.e2);
    return out;
}

std::string form_str(const Form<Rational>& f) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        Rational a = rat_abs(c);
        if (first) {
            if (sgn(c) < 0) os << "-";
            first = false;
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        std::string vars = mono_str(m);
        if (vars.empty())
            os << rat_str(a);
        else if (a == 1)
            os << vars;
        else
            os << rat_str(a) << "*" << vars;
    }
    return os.str();
}

std::string form_str(const Form<NfElement>& f) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        std::string vars = mono_str(m);
        if (!vars.empty()) os << "*" << vars;
    }
    return os.str();
}

namespace {

struct FormScanner {
    const std::string& s;
    std::size_t i = 0;
    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
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

std::optional<Integer> scan_uint(FormScanner& sc) {
    sc.skip();
    std::size_t start = sc.i;
    while (sc.i < sc.s.size() && std::isdigit(static_cast<unsigned char>(sc.s[sc.i]))) ++sc.i;
    if (sc.i == start) return std::nullopt;
    return Integer(sc.s.substr(start, sc.i - start));
}

} // namespace

std::optional<Form<Rational>> form_parse(const std::string& text) {
    FormScanner sc{text};
    std::vector<std::pair<Mono, Rational>> terms;
    int degree = -1;
    int sign = sc.eat('-') ? -1 : 1;
    while (true) {
        Rational coeff(1);
        bool have_coeff = false;
        if (auto n = scan_uint(sc)) {
            Integer den = 1;
            if (sc.eat('/')) {
                auto d = scan_uint(sc);
                if (!d || *d == 0) return std::nullopt;
                den = *d;
            }
            coeff = Rational(*n);
            coeff /= Rational(den);
            have_coeff = true;
        }
        Mono m;
        bool have_var = false;
        while (true) {
            std::size_t save = sc.i;
            bool star = sc.eat('*');
            sc.skip();
            if (sc.i < sc.s.size() && sc.s[sc.i] == 'x') {
                ++sc.i;
                if (sc.i >= sc.s.size() || sc.s[sc.i] < '0' || sc.s[sc.i] > '2')
                    return std::nullopt;
                int axis = sc.s[sc.i] - '0';
                ++sc.i;
                long e = 1;
                if (sc.eat('^')) {
                    auto ev = scan_uint(sc);
                    if (!ev || !ev->fits_slong_p()) return std::nullopt;
                    e = ev->get_si();
                }
                if (e < 0 || e > 1000) return std::nullopt;
                (axis == 0 ? m.e0 : axis == 1 ? m.e1 : m.e2) += static_cast<int>(e);
                have_var = true;
            } else {
                if (star) return std::nullopt;
                sc.i = save;
                break;
            }
        }
        if (!have_coeff && !have_var) return std::nullopt;
        if (sign < 0) coeff = -coeff;
        if (degree < 0)
            degree = m.total();
        else if (degree != m.total())
            return std::nullopt; // not homogeneous
        terms.push_back({m, coeff});
        if (sc.done()) break;
        if (sc.eat('+'))
            sign = 1;
        else if (sc.eat('-'))
            sign = -1;
        else
            return std::nullopt;
    }
    try {
        return Form<Rational>::from_terms(degree, std::move(terms));
    } catch (const Error&) {
        return std::nullopt;
    }
}

} // namespace sesh
