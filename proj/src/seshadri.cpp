#include "sesh/seshadri.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "sesh/errors.hpp"

namespace sesh {

BracketParams make_bracket_params(const Rational& gamma, int bundle_degree) {
    if (bundle_degree < 1) throw InputError("bundle degree must be >= 1 (ample)");
    BracketParams p;
    p.gamma = gamma;
    p.bundle_degree = bundle_degree;
    p.ample_shift_r = -(2 / bundle_degree); // smallest r with r*d0 >= -2
    p.chi = 1;
    return p;
}

Rational sqrt_bound_sq(const Rational& l_self, int alpha) {
    if (alpha < 1) throw InputError("residue degree must be >= 1");
    if (sgn(l_self) <= 0) throw InputError("self-intersection must be positive");
    return l_self / Rational(alpha);
}

Rational multipoint_bound_mth_power(const Rational& l_top, const std::vector<int>& degs, int m) {
    if (m < 2) throw InputError("multipoint bound needs dimension m >= 2");
    if (degs.empty()) throw InputError("multipoint bound needs at least one fiber point");
    long sum = 0;
    for (int d : degs) {
        if (d < 1) throw InputError("fiber point degrees must be >= 1");
        sum += d;
    }
    return l_top / Rational(sum);
}

static void check_gamma(const BracketParams& p, int alpha) {
    Rational l_self(static_cast<long>(p.bundle_degree) * p.bundle_degree);
    if (sgn(p.gamma) <= 0 || Rational(alpha) * p.gamma * p.gamma >= l_self)
        throw GammaOutOfRange("gamma must satisfy 0 < alpha*gamma^2 < L^2; got gamma = " +
                              rat_str(p.gamma) + ", alpha = " + std::to_string(alpha));
}

DegreeBound degree_bound(const BracketParams& p, int alpha) {
    check_gamma(p, alpha);
    const Integer q(p.gamma.get_den());
    const Integer num(p.gamma.get_num());
    if (!q.fits_slong_p()) throw NoBoundInBudget("gamma denominator too large");
    const long step = q.get_si();
    const Rational l_self(static_cast<long>(p.bundle_degree) * p.bundle_degree);
    for (long k = 1; k <= 1000000; ++k) {
        const long d = k * step;
        if (d <= p.ample_shift_r) continue;
        Integer m = num * k;
        // h0(d*d0) > alpha * m(m+1)/2, in big integers
        Integer dd0(d);
        dd0 *= p.bundle_degree;
        Integer sections = (dd0 + 1) * (dd0 + 2) / 2;
        Integer conditions = Integer(alpha) * m * (m + 1) / 2;
        if (sections > conditions) {
            DegreeBound out;
            out.d = d;
            if (!m.fits_slong_p()) throw NoBoundInBudget("multiplicity target too large");
            out.m = m.get_si();
            Rational dr(d);
            out.quadratic_value = (l_self - Rational(alpha) * p.gamma * p.gamma) * dr * dr -
                                  (Rational(alpha) * p.gamma + Rational(p.ample_shift_r) * l_self) * dr +
                                  Rational(2 * p.chi);
            return out;
        }
    }
    throw NoBoundInBudget("no admissible degree below the search cap");
}

namespace {

int worker_count() {
    if (const char* env = std::getenv("SESH_THREADS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n >= 1 && n <= 256) return static_cast<int>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(e) for e = 1..n on the worker pool; results must be written into
// pre-sized slots so the aggregation is order-independent.
template <class Fn>
void parallel_degrees(long n, Fn&& fn) {
    int threads = std::min<long>(worker_count(), n);
    if (threads <= 1) {
        for (long e = 1; e <= n; ++e) fn(e);
        return;
    }
    std::atomic<long> next{1};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&] {
        while (true) {
            long e = next.fetch_add(1);
            if (e > n) return;
            try {
                fn(e);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

template <class P>
BracketOutcome<typename P::Scalar> bracket_core(const ClosedPoint& x, const BracketParams& p) {
    using F = typename P::Scalar;
    BracketOutcome<F> out;
    out.alpha = x.residue_degree();
    DegreeBound db = degree_bound(p, out.alpha);
    out.degree_bound_d = db.d;
    out.quadratic_value = db.quadratic_value;
    out.enumeration_degree = db.d * p.bundle_degree;

    out.table.assign(static_cast<std::size_t>(out.enumeration_degree), MultTableEntry<F>{});
    parallel_degrees(out.enumeration_degree, [&](long e) {
        auto r = max_mult<P>(static_cast<int>(e), x);
        MultTableEntry<F>& entry = out.table[e - 1];
        entry.degree = static_cast<int>(e);
        entry.m_max = r.m_max;
        entry.kernel_dim = r.kernel_dim;
        entry.witness = std::move(r.witness);
    });

    // minimal ratio d0*e/(alpha*m_max(e)), earliest degree wins ties
    bool found = false;
    Rational best;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < out.table.size(); ++i) {
        const auto& entry = out.table[i];
        if (entry.m_max < 1) continue;
        Rational ratio = rat(static_cast<long>(p.bundle_degree) * entry.degree,
                             static_cast<long>(out.alpha) * entry.m_max);
        if (!found || ratio < best) {
            found = true;
            best = ratio;
            best_idx = i;
        }
    }
    if (!found) throw Error("no curve through the point in the enumeration range");

    const auto& best_entry = out.table[best_idx];
    out.witness = best_entry.witness;
    out.witness_degree = best_entry.degree;
    out.witness_order = best_entry.m_max;
    if (best < p.gamma) {
        out.kind = ResultKind::Exact;
        out.value = best;
        // ratio floor d0/alpha and the squared Prop-style bound, exact
        if (out.value < rat(p.bundle_degree, out.alpha))
            throw Error("exact value below the order<=degree floor; table corrupted");
        Rational l_self(static_cast<long>(p.bundle_degree) * p.bundle_degree);
        if (Rational(out.alpha) * out.value * out.value > l_self)
            throw Error("exact value above the square bound; table corrupted");
    } else {
        out.kind = ResultKind::Interval;
        out.lower = p.gamma;
        out.upper_candidate = best;
        out.upper_sq_bound = sqrt_bound_sq(
            Rational(static_cast<long>(p.bundle_degree) * p.bundle_degree), out.alpha);
    }
    return out;
}

} // namespace

SeshadriResult seshadri_p2(const ClosedPoint& x, const BracketParams& p) {
    if (x.base_is_coordinate_field())
        throw UnsupportedConfiguration("point is presented over its coordinate field; "
                                       "use seshadri_p2_over_extension");
    return bracket_core<RationalBase>(x, p);
}

SeshadriResultExt seshadri_p2_over_extension(const ClosedPoint& x, const BracketParams& p) {
    if (!x.base_is_coordinate_field())
        throw UnsupportedConfiguration("point is presented over base Q; use seshadri_p2");
    return bracket_core<ExtensionBase>(x, p);
}

namespace {

template <class F>
std::vector<std::array<long, 3>> table_triples(const std::vector<MultTableEntry<F>>& t) {
    std::vector<std::array<long, 3>> out;
    out.reserve(t.size());
    for (const auto& e : t) out.push_back({e.degree, e.m_max, e.kernel_dim});
    return out;
}

// Embed a Q-form into K and renormalize (first nonzero coefficient 1).
Form<NfElement> promote_form(const Form<Rational>& f, const NumberFieldPtr& K) {
    std::vector<std::pair<Mono, NfElement>> terms;
    for (const auto& [m, c] : f.terms()) terms.push_back({m, K->from_rational(c)});
    return Form<NfElement>::from_terms(f.degree(), std::move(terms), K);
}

} // namespace

BaseChangeReport base_change_compare(const ClosedPoint& x, const NumberFieldPtr& K,
                                     const BracketParams& p,
                                     std::optional<Rational> ext_gamma) {
    if (x.base_is_coordinate_field())
        throw UnsupportedConfiguration("base point must be presented over Q");
    BaseChangeReport report;
    report.alpha = x.residue_degree();

    if (report.alpha == 1) {
        // rational point: any K works, the table must not move
        report.mode = BaseChangeReport::Mode::RationalPoint;
        report.ext_gamma = p.gamma;
        report.base = seshadri_p2(x, p);
        std::array<NfElement, 3> coords;
        for (int k = 0; k < 3; ++k) {
            const NfElement& c = x.coords()[k];
            if (!c.is_rational())
                throw UnsupportedConfiguration("rational point with irrational coordinates");
            coords[k] = K->from_rational(c.rational_value());
        }
        ClosedPoint y0 = ClosedPoint::make_over_coordinate_field(K, std::move(coords));
        report.extended = seshadri_p2_over_extension(y0, p);
        report.tables_match =
            table_triples(report.base.table) == table_triples(report.extended.table);
        report.results_match =
            report.base.kind == report.extended.kind &&
            (report.base.kind == ResultKind::Exact
                 ? report.base.value == report.extended.value
                 : (report.base.lower == report.extended.lower &&
                    report.base.upper_candidate == report.extended.upper_candidate &&
                    report.base.upper_sq_bound == report.extended.upper_sq_bound));
        report.witness_match =
            report.base.witness.has_value() == report.extended.witness.has_value() &&
            (!report.base.witness ||
             promote_form(*report.base.witness, K) == *report.extended.witness);
        report.inequality_holds = report.results_match;
        report.strict = false;
        return report;
    }

    // residue-field extension: K must be the coordinate field itself
    if (!K->same(*x.coord_field()))
        throw UnsupportedConfiguration(
            "relative extensions are not modeled; the extension must equal the "
            "point's residue field");
    report.mode = BaseChangeReport::Mode::ResidueField;
    report.base = seshadri_p2(x, p);
    Rational ge = ext_gamma ? *ext_gamma : rat(9 * p.bundle_degree, 10);
    report.ext_gamma = ge;
    BracketParams pk = make_bracket_params(ge, p.bundle_degree);
    ClosedPoint y0 = ClosedPoint::make_over_coordinate_field(x.coord_field(), x.coords());
    report.extended = seshadri_p2_over_extension(y0, pk);
    Rational base_upper =
        report.base.kind == ResultKind::Exact ? report.base.value : report.base.upper_candidate;
    Rational ext_lower =
        report.extended.kind == ResultKind::Exact ? report.extended.value : report.extended.lower;
    report.inequality_holds = ext_lower >= base_upper;
    report.strict = ext_lower > base_upper;
    report.tables_match = false;
    report.results_match = false;
    report.witness_match = false;
    return report;
}

std::vector<std::pair<int, Rational>> global_trend(int dmax) {
    if (dmax < 2) throw InputError("global trend needs dmax >= 2");
    std::vector<std::pair<int, Rational>> out;
    Form<Rational> line = *form_parse("x2");
    for (int delta = 2; delta <= dmax; ++delta) {
        std::vector<Rational> mp(delta + 1, Rational(0));
        mp[0] = -2;
        mp[delta] = 1;
        NumberFieldPtr field = NumberField::create(std::move(mp));
        ClosedPoint x = ClosedPoint::make(field, {field->gen(), field->one(), field->zero()});
        if (x.residue_degree() != delta)
            throw Error("2^(1/delta) failed to generate a degree-delta residue field");
        int mult = mult_point(line, x);
        if (mult != delta) throw Error("line multiplicity at the trend point is off");
        out.push_back({delta, intersection_number(1, line) / Rational(mult)});
    }
    return out;
}

} // namespace sesh
