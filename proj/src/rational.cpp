#include "sesh/rational.hpp"

#include "sesh/errors.hpp"

namespace sesh {

Rational rat(long num, long den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::optional<Rational> rat_parse(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return std::nullopt;
    std::string t = s.substr(a, b - a + 1);
    if (t.empty()) return std::nullopt;
    // mpq accepts "p/q" directly but not leading '+' nor empty parts.
    if (t[0] == '+') t = t.substr(1);
    if (t.empty() || t == "-") return std::nullopt;
    std::size_t slash = t.find('/');
    std::string num = slash == std::string::npos ? t : t.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (num.empty() || den.empty()) return std::nullopt;
    auto digits_ok = [](const std::string& u, bool sign_ok) {
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (i == 0 && sign_ok && u[i] == '-') continue;
            if (u[i] < '0' || u[i] > '9') return false;
        }
        return true;
    };
    if (!digits_ok(num, true) || !digits_ok(den, false)) return std::nullopt;
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0) return std::nullopt;
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0) return std::nullopt;
    q.canonicalize();
    return q;
}

std::string rat_str(const Rational& q) {
    if (rat_is_integer(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

long rat_to_long(const Rational& q) {
    if (!rat_is_integer(q)) throw Error("rat_to_long: not an integer: " + rat_str(q));
    if (!q.get_num().fits_slong_p()) throw Error("rat_to_long: out of range: " + rat_str(q));
    return q.get_num().get_si();
}

Integer common_denominator(const std::vector<Rational>& v) {
    Integer l = 1;
    for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    return l;
}

} // namespace sesh
