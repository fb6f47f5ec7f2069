#include "sesh/certificate.hpp"

#include <json.hpp>

#include "sesh/errors.hpp"

namespace sesh {

using ordered_json = nlohmann::ordered_json;

std::string toolchain_fingerprint() {
    return std::string("cxx ") + __VERSION__ + "; gmp " + gmp_version;
}

Certificate make_certificate(const std::optional<std::string>& input_minpoly,
                             const std::array<std::string, 3>& input_point,
                             const std::string& input_gamma, const BracketParams& params,
                             const ClosedPoint& x, const SeshadriResult& result) {
    Certificate c;
    c.input_minpoly = input_minpoly;
    c.input_point = input_point;
    c.input_gamma = input_gamma;
    c.bundle_degree = params.bundle_degree;

    c.field_minpoly = x.coord_field()->min_poly();
    for (int k = 0; k < 3; ++k) c.point_coords[k] = x.coords()[k].coeffs();
    c.chart = x.chart();
    c.alpha = x.residue_degree();

    c.gamma = params.gamma;
    c.ample_shift_r = params.ample_shift_r;
    c.chi = params.chi;

    c.degree_bound_d = result.degree_bound_d;
    c.enumeration_degree = result.enumeration_degree;
    c.quadratic_value = result.quadratic_value;
    {
        Rational m = Rational(result.degree_bound_d) * params.gamma;
        c.degree_bound_m = rat_to_long(m);
    }

    for (const auto& row : result.table) {
        Certificate::TableRow r;
        r.degree = row.degree;
        r.m_max = row.m_max;
        r.kernel_dim = row.kernel_dim;
        if (row.witness) r.witness = form_str(*row.witness);
        c.table.push_back(std::move(r));
    }

    c.kind = result.kind;
    c.value = result.value;
    c.lower = result.lower;
    c.upper_candidate = result.upper_candidate;
    c.upper_sq_bound = result.upper_sq_bound;
    if (result.witness) c.witness = form_str(*result.witness);
    c.witness_degree = result.witness_degree;
    c.witness_order = result.witness_order;

    c.toolchain = toolchain_fingerprint();
    return c;
}

namespace {

ordered_json rat_list(const std::vector<Rational>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& q : v) a.push_back(rat_str(q));
    return a;
}

std::vector<Rational> parse_rat_list(const ordered_json& a) {
    if (!a.is_array()) throw ParseError("expected array of rationals");
    std::vector<Rational> out;
    for (const auto& e : a) {
        if (!e.is_string()) throw ParseError("rationals must be strings");
        auto q = rat_parse(e.get<std::string>());
        if (!q) throw ParseError("bad rational: " + e.get<std::string>());
        out.push_back(*q);
    }
    return out;
}

Rational parse_rat(const ordered_json& e) {
    if (!e.is_string()) throw ParseError("rational must be a string");
    auto q = rat_parse(e.get<std::string>());
    if (!q) throw ParseError("bad rational: " + e.get<std::string>());
    return *q;
}

} // namespace

std::string certificate_to_text(const Certificate& c) {
    ordered_json j;
    j["schema_version"] = c.schema_version;
    j["kind"] = "p2-seshadri-bracket";
    ordered_json in;
    in["minpoly"] = c.input_minpoly ? ordered_json(*c.input_minpoly) : ordered_json(nullptr);
    in["point"] = {c.input_point[0], c.input_point[1], c.input_point[2]};
    in["gamma"] = c.input_gamma;
    in["bundle_degree"] = c.bundle_degree;
    j["input"] = in;
    j["field"] = {{"degree", static_cast<int>(c.field_minpoly.size()) - 1},
                  {"minpoly", rat_list(c.field_minpoly)}};
    j["point"] = {{"chart", c.chart},
                  {"coords", ordered_json::array({rat_list(c.point_coords[0]),
                                                  rat_list(c.point_coords[1]),
                                                  rat_list(c.point_coords[2])})},
                  {"alpha", c.alpha}};
    j["params"] = {{"gamma", rat_str(c.gamma)},
                   {"ample_shift_r", c.ample_shift_r},
                   {"chi", c.chi}};
    j["degree_bound"] = {{"d", c.degree_bound_d},
                         {"m", c.degree_bound_m},
                         {"quadratic_value", rat_str(c.quadratic_value)},
                         {"enumeration_degree", c.enumeration_degree}};
    ordered_json table = ordered_json::array();
    for (const auto& r : c.table) {
        ordered_json row;
        row["e"] = r.degree;
        row["m_max"] = r.m_max;
        row["kernel_dim"] = r.kernel_dim;
        row["witness"] = r.witness ? ordered_json(*r.witness) : ordered_json(nullptr);
        table.push_back(row);
    }
    j["table"] = table;
    ordered_json res;
    if (c.kind == ResultKind::Exact) {
        res["status"] = "exact";
        res["value"] = rat_str(c.value);
    } else {
        res["status"] = "interval";
        res["lower"] = rat_str(c.lower);
        res["upper_candidate"] = rat_str(c.upper_candidate);
        res["upper_sq_bound"] = rat_str(c.upper_sq_bound);
    }
    res["witness"] = c.witness ? ordered_json(*c.witness) : ordered_json(nullptr);
    res["witness_degree"] = c.witness_degree;
    res["witness_order"] = c.witness_order;
    j["result"] = res;
    j["toolchain"] = c.toolchain;
    return j.dump(2) + "\n";
}

Certificate certificate_from_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("certificate is not valid JSON: ") + e.what());
    }
    try {
        Certificate c;
        c.schema_version = j.at("schema_version").get<int>();
        if (c.schema_version != 1) throw ParseError("unsupported schema version");
        if (j.at("kind").get<std::string>() != "p2-seshadri-bracket")
            throw ParseError("unsupported certificate kind");
        const auto& in = j.at("input");
        if (!in.at("minpoly").is_null()) c.input_minpoly = in.at("minpoly").get<std::string>();
        for (int k = 0; k < 3; ++k) c.input_point[k] = in.at("point").at(k).get<std::string>();
        c.input_gamma = in.at("gamma").get<std::string>();
        c.bundle_degree = in.at("bundle_degree").get<int>();
        c.field_minpoly = parse_rat_list(j.at("field").at("minpoly"));
        const auto& pt = j.at("point");
        c.chart = pt.at("chart").get<int>();
        for (int k = 0; k < 3; ++k) c.point_coords[k] = parse_rat_list(pt.at("coords").at(k));
        c.alpha = pt.at("alpha").get<int>();
        const auto& pr = j.at("params");
        c.gamma = parse_rat(pr.at("gamma"));
        c.ample_shift_r = pr.at("ample_shift_r").get<int>();
        c.chi = pr.at("chi").get<long>();
        const auto& db = j.at("degree_bound");
        c.degree_bound_d = db.at("d").get<long>();
        c.degree_bound_m = db.at("m").get<long>();
        c.quadratic_value = parse_rat(db.at("quadratic_value"));
        c.enumeration_degree = db.at("enumeration_degree").get<long>();
        for (const auto& row : j.at("table")) {
            Certificate::TableRow r;
            r.degree = row.at("e").get<int>();
            r.m_max = row.at("m_max").get<int>();
            r.kernel_dim = row.at("kernel_dim").get<long>();
            if (!row.at("witness").is_null()) r.witness = row.at("witness").get<std::string>();
            c.table.push_back(std::move(r));
        }
        const auto& res = j.at("result");
        std::string status = res.at("status").get<std::string>();
        if (status == "exact") {
            c.kind = ResultKind::Exact;
            c.value = parse_rat(res.at("value"));
        } else if (status == "interval") {
            c.kind = ResultKind::Interval;
            c.lower = parse_rat(res.at("lower"));
            c.upper_candidate = parse_rat(res.at("upper_candidate"));
            c.upper_sq_bound = parse_rat(res.at("upper_sq_bound"));
        } else {
            throw ParseError("unknown result status: " + status);
        }
        if (!res.at("witness").is_null()) c.witness = res.at("witness").get<std::string>();
        c.witness_degree = res.at("witness_degree").get<int>();
        c.witness_order = res.at("witness_order").get<int>();
        c.toolchain = j.value("toolchain", "");
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("certificate structure: ") + e.what());
    }
}

std::optional<std::string> verify_certificate(const Certificate& c) {
    auto fail = [](const std::string& s) { return std::optional<std::string>(s); };

    // field and point renormalize to themselves
    NumberFieldPtr field;
    try {
        field = NumberField::create(c.field_minpoly);
    } catch (const Error& e) {
        return fail(std::string("field: ") + e.what());
    }
    ClosedPoint x = [&] {
        std::array<NfElement, 3> coords;
        for (int k = 0; k < 3; ++k) {
            if (static_cast<int>(c.point_coords[k].size()) != field->degree())
                throw ParseError("coordinate length != field degree");
            coords[k] = field->element(c.point_coords[k]);
        }
        return ClosedPoint::make(field, std::move(coords));
    }();
    if (x.chart() != c.chart) return fail("chart mismatch after renormalization");
    for (int k = 0; k < 3; ++k)
        if (x.coords()[k].coeffs() != c.point_coords[k])
            return fail("coordinates not in normalized form");
    if (x.residue_degree() != c.alpha) return fail("alpha mismatch");

    // params and degree bound
    BracketParams p;
    try {
        p = make_bracket_params(c.gamma, c.bundle_degree);
    } catch (const Error& e) {
        return fail(std::string("params: ") + e.what());
    }
    if (p.ample_shift_r != c.ample_shift_r) return fail("ample shift r mismatch");
    if (p.chi != c.chi) return fail("chi mismatch");
    DegreeBound db;
    try {
        db = degree_bound(p, c.alpha);
    } catch (const Error& e) {
        return fail(std::string("degree bound: ") + e.what());
    }
    if (db.d != c.degree_bound_d) return fail("degree bound d mismatch");
    if (db.m != c.degree_bound_m) return fail("degree bound m mismatch");
    if (db.quadratic_value != c.quadratic_value) return fail("quadratic value mismatch");
    if (c.enumeration_degree != c.degree_bound_d * c.bundle_degree)
        return fail("enumeration degree mismatch");

    // table invariants and witness replay through the direct path
    if (static_cast<long>(c.table.size()) != c.enumeration_degree)
        return fail("table length != enumeration degree");
    int prev_mmax = 0;
    bool any_curve = false;
    Rational best;
    int best_e = 0, best_m = 0;
    for (std::size_t i = 0; i < c.table.size(); ++i) {
        const auto& row = c.table[i];
        if (row.degree != static_cast<int>(i) + 1) return fail("table degrees out of order");
        if (row.m_max < 0 || row.m_max > row.degree)
            return fail("m_max outside [0, degree] at e = " + std::to_string(row.degree));
        if (row.m_max < prev_mmax)
            return fail("m_max not nondecreasing at e = " + std::to_string(row.degree));
        prev_mmax = row.m_max;
        if (row.m_max >= 1) {
            if (row.kernel_dim < 1) return fail("positive m_max with empty kernel");
            if (!row.witness) return fail("missing witness at e = " + std::to_string(row.degree));
            auto w = form_parse(*row.witness);
            if (!w) return fail("unparseable witness at e = " + std::to_string(row.degree));
            if (w->degree() != row.degree) return fail("witness degree mismatch");
            if (vanishing_order(*w, x) < row.m_max)
                return fail("witness vanishing order below m_max at e = " +
                            std::to_string(row.degree));
            Rational ratio = rat(static_cast<long>(c.bundle_degree) * row.degree,
                                 static_cast<long>(c.alpha) * row.m_max);
            if (!any_curve || ratio < best) {
                any_curve = true;
                best = ratio;
                best_e = row.degree;
                best_m = row.m_max;
            }
        }
    }
    if (!any_curve) return fail("no curve in the table");

    // result invariants
    if (c.witness_degree != best_e || c.witness_order != best_m)
        return fail("result witness does not achieve the table minimum");
    if (!c.witness) return fail("missing result witness");
    {
        auto w = form_parse(*c.witness);
        if (!w) return fail("unparseable result witness");
        if (w->degree() != best_e) return fail("result witness degree mismatch");
        if (vanishing_order(*w, x) < best_m) return fail("result witness order too low");
    }
    if (c.kind == ResultKind::Exact) {
        if (!(best < c.gamma)) return fail("exact result although the minimum is >= gamma");
        if (c.value != best) return fail("exact value != table minimum");
        if (c.value < rat(c.bundle_degree, c.alpha)) return fail("exact value below d0/alpha floor");
        Rational l_self(static_cast<long>(c.bundle_degree) * c.bundle_degree);
        if (Rational(c.alpha) * c.value * c.value > l_self)
            return fail("exact value violates the square bound");
    } else {
        if (best < c.gamma) return fail("interval result although the minimum beats gamma");
        if (c.lower != c.gamma) return fail("interval lower != gamma");
        if (c.upper_candidate != best) return fail("interval upper candidate != table minimum");
        Rational l_self(static_cast<long>(c.bundle_degree) * c.bundle_degree);
        if (c.upper_sq_bound != l_self / Rational(c.alpha))
            return fail("interval square bound mismatch");
        if (c.lower * c.lower > c.upper_sq_bound)
            return fail("interval lower^2 exceeds the square bound");
        if (c.lower > c.upper_candidate) return fail("empty interval");
    }
    return std::nullopt;
}

} // namespace sesh
