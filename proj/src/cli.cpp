#include "sesh/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "sesh/certificate.hpp"
#include "sesh/nslattice.hpp"

namespace sesh::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

Rational require_rational(const std::string& s, const std::string& what) {
    auto q = rat_parse(s);
    if (!q) throw ParseError(what + ": not a rational: '" + s + "'");
    return *q;
}

std::vector<long> parse_long_list(const std::string& s, const std::string& what) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stol(tok));
        } catch (...) {
            throw ParseError(what + ": not an integer list: '" + s + "'");
        }
    }
    if (out.empty()) throw ParseError(what + ": empty list");
    return out;
}

struct PointSpec {
    NumberFieldPtr field;
    ClosedPoint point;
};

// --minpoly/--point pair -> closed point over Q with coordinates in the
// field. Entries of the point are rationals or polynomials in th.
PointSpec build_point(const std::optional<std::string>& minpoly, const std::string& point) {
    PointSpec out;
    if (minpoly && !minpoly->empty()) {
        auto coeffs = poly_parse(*minpoly);
        if (!coeffs) throw ParseError("cannot parse minimal polynomial '" + *minpoly + "'");
        out.field = NumberField::create(*coeffs);
    } else {
        out.field = NumberField::rationals();
    }
    std::vector<std::string> parts;
    std::stringstream ss(point);
    std::string tok;
    while (std::getline(ss, tok, ',')) parts.push_back(tok);
    if (parts.size() != 3)
        throw ParseError("point must have three comma-separated coordinates");
    std::array<NfElement, 3> coords;
    for (int k = 0; k < 3; ++k) {
        auto e = nf_parse(out.field, parts[k]);
        if (!e) throw ParseError("cannot parse coordinate '" + parts[k] + "'");
        coords[k] = *e;
    }
    out.point = ClosedPoint::make(out.field, std::move(coords));
    return out;
}

template <class F>
void print_table(std::ostream& os, const BracketOutcome<F>& r, int bundle_degree) {
    os << "alpha = " << r.alpha << ", degree bound d = " << r.degree_bound_d
       << ", enumeration through degree " << r.enumeration_degree << "\n";
    os << "  e  m_max  ker_dim  ratio\n";
    for (const auto& e : r.table) {
        os << "  " << e.degree << "  " << e.m_max << "      " << e.kernel_dim << "        ";
        if (e.m_max >= 1)
            os << rat_str(rat(static_cast<long>(bundle_degree) * e.degree,
                              static_cast<long>(r.alpha) * e.m_max));
        else
            os << "-";
        os << "\n";
    }
}

std::string result_summary(const SeshadriResult& r) {
    std::ostringstream os;
    if (r.kind == ResultKind::Exact) {
        os << "exact " << rat_str(r.value);
        if (r.witness) os << " (witness " << form_str(*r.witness) << ", degree "
                          << r.witness_degree << ", order " << r.witness_order << ")";
    } else {
        os << "interval [" << rat_str(r.lower) << ", " << rat_str(r.upper_candidate)
           << "], eps^2 <= " << rat_str(r.upper_sq_bound);
    }
    return os.str();
}

int cmd_p2_compute(const std::optional<std::string>& minpoly, const std::string& point,
                   const std::string& gamma, int bundle, const std::string& output) {
    PointSpec ps = build_point(minpoly, point);
    BracketParams params = make_bracket_params(require_rational(gamma, "gamma"), bundle);
    SeshadriResult r = seshadri_p2(ps.point, params);
    print_table(std::cout, r, bundle);
    std::cout << "result: " << result_summary(r) << "\n";
    if (!output.empty()) {
        std::array<std::string, 3> echo;
        {
            std::stringstream ss(point);
            std::string tok;
            for (int k = 0; k < 3 && std::getline(ss, tok, ','); ++k) echo[k] = tok;
        }
        Certificate cert = make_certificate(minpoly, echo, gamma, params, ps.point, r);
        std::ofstream f(output);
        if (!f) throw Error("cannot open output file " + output);
        f << certificate_to_text(cert);
        std::cout << "certificate written to " << output << "\n";
    }
    return kExitOk;
}

int cmd_verify(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        std::cerr << "cannot read " << path << "\n";
        return kExitMalformed;
    }
    std::stringstream buf;
    buf << f.rdbuf();
    Certificate cert;
    try {
        cert = certificate_from_text(buf.str());
    } catch (const ParseError& e) {
        std::cerr << "malformed certificate: " << e.what() << "\n";
        return kExitMalformed;
    }
    auto failure = verify_certificate(cert);
    if (failure) {
        std::cerr << "verification failed: " << *failure << "\n";
        return kExitVerifyFailed;
    }
    std::cout << "certificate verified\n";
    return kExitOk;
}

// ---- lattice files ----

LatticeSurface surface_from_json(const ordered_json& j) {
    std::vector<std::vector<long>> gram;
    for (const auto& row : j.at("gram")) gram.push_back(row.get<std::vector<long>>());
    return LatticeSurface::make(std::move(gram), j.at("canonical").get<std::vector<long>>(),
                                j.at("chi").get<long>());
}

struct LatticeFile {
    LatticeSurface surface;
    BlowupLattice blowup;
    std::vector<CurveClass> curves;
};

LatticeFile load_lattice_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot read lattice file " + path);
    ordered_json j;
    try {
        j = ordered_json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("lattice file is not valid JSON: ") + e.what());
    }
    try {
        LatticeFile out{surface_from_json(j), {}, {}};
        std::vector<int> alphas = j.at("points").get<std::vector<int>>();
        out.blowup = BlowupLattice::make(out.surface, std::move(alphas));
        for (const auto& c : j.at("curves")) {
            CurveClass cc;
            cc.base_class = c.at("class").get<std::vector<long>>();
            cc.mults = c.at("mults").get<std::vector<int>>();
            out.curves.push_back(std::move(cc));
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("lattice file structure: ") + e.what());
    }
}

int cmd_lattice_seshadri(const LatticeFile& lf, const std::vector<int>& points,
                         const std::string& l, bool complete) {
    SupOutcome r = seshadri_sup(parse_long_list(l, "L"), points, lf.curves, complete, lf.blowup);
    std::cout << "value = " << rat_str(r.value) << " (" << (r.exact ? "exact" : "upper bound")
              << ")\n";
    std::cout << "eps^2 <= " << rat_str(r.sq_cap);
    if (r.cap_binding) std::cout << " (binding: the square cap beats the curve bound)";
    std::cout << "\n";
    if (!lf.surface.signature_ok())
        std::cout << "warning: intersection form does not have signature (1, rank-1)\n";
    return kExitOk;
}

int cmd_lattice_chi(const LatticeFile& lf, const std::string& d) {
    std::cout << rat_str(chi_rr_lattice(parse_long_list(d, "D"), lf.surface)) << "\n";
    return kExitOk;
}

int cmd_lattice_nef(const LatticeFile& lf, const std::string& cls) {
    bool nef = is_nef_against(parse_long_list(cls, "class"), lf.curves, lf.blowup);
    std::cout << (nef ? "nef against the listed curves" : "not nef: pairs negatively") << "\n";
    return kExitOk;
}

int cmd_lattice_scaling(const LatticeFile& lf, int n, const std::vector<int>& points,
                        const std::string& l, bool complete) {
    bool ok = scaling_check(parse_long_list(l, "L"), n, points, lf.curves, complete, lf.blowup);
    std::cout << (ok ? "scaling identities hold" : "scaling identities FAILED") << "\n";
    return ok ? kExitOk : kExitInternal;
}

int cmd_lattice_cover(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot read cover file " + path);
    ordered_json j;
    try {
        j = ordered_json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("cover file is not valid JSON: ") + e.what());
    }
    try {
        LatticeSurface z = surface_from_json(j.at("z_surface"));
        LatticeSurface y = surface_from_json(j.at("y_surface"));
        std::vector<std::vector<long>> phi;
        for (const auto& row : j.at("phi")) phi.push_back(row.get<std::vector<long>>());
        auto curves = [](const ordered_json& a) {
            std::vector<CurveClass> out;
            for (const auto& c : a)
                out.push_back(CurveClass{c.at("class").get<std::vector<long>>(),
                                         c.at("mults").get<std::vector<int>>()});
            return out;
        };
        CoverReport r = cover_check(phi, j.at("z_alpha").get<int>(),
                                    j.at("fiber_alphas").get<std::vector<int>>(),
                                    j.at("L").get<std::vector<long>>(), curves(j.at("z_curves")),
                                    curves(j.at("y_curves")), z, y,
                                    j.value("z_complete", false), j.value("y_complete", false));
        std::cout << "eps(Z, L, z)            = " << rat_str(r.eps_base) << "\n";
        std::cout << "eps(Y, phi L, fiber)    = " << rat_str(r.eps_cover_multi)
                  << (r.equality ? "  [equality]" : "  [no equality: curve list incomplete]")
                  << "\n";
        std::cout << "eps(Y, phi L, y1)       = " << rat_str(r.eps_cover_single)
                  << (r.single_point_ge ? "  [>= base]" : "  [below base: list incomplete]")
                  << "\n";
        return kExitOk;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("cover file structure: ") + e.what());
    }
}

int cmd_bounds(int alpha, const std::string& selfint, const std::string& top,
               const std::string& degs, int power) {
    if (!degs.empty()) {
        std::vector<int> dl;
        for (long v : parse_long_list(degs, "degs")) dl.push_back(static_cast<int>(v));
        Rational b = multipoint_bound_mth_power(require_rational(top, "top"), dl, power);
        std::cout << "epsilon^" << power << " <= " << rat_str(b) << "\n";
    } else {
        Rational b = sqrt_bound_sq(require_rational(selfint, "selfint"), alpha);
        std::cout << "epsilon^2 <= " << rat_str(b) << "\n";
    }
    return kExitOk;
}

int cmd_base_change(const std::optional<std::string>& minpoly, const std::string& point,
                    const std::string& gamma, int bundle, const std::string& ext,
                    const std::string& ext_gamma) {
    PointSpec ps = build_point(minpoly, point);
    BracketParams params = make_bracket_params(require_rational(gamma, "gamma"), bundle);
    NumberFieldPtr K;
    if (ext == "self") {
        K = ps.field;
    } else {
        auto coeffs = poly_parse(ext);
        if (!coeffs) throw ParseError("cannot parse extension minimal polynomial '" + ext + "'");
        K = NumberField::create(*coeffs);
    }
    std::optional<Rational> eg;
    if (!ext_gamma.empty()) eg = require_rational(ext_gamma, "ext-gamma");
    BaseChangeReport r = base_change_compare(ps.point, K, params, eg);
    auto summary_ext = [&](const SeshadriResultExt& e) {
        std::ostringstream os;
        if (e.kind == ResultKind::Exact)
            os << rat_str(e.value);
        else
            os << "[" << rat_str(e.lower) << ", " << rat_str(e.upper_candidate) << "]";
        return os.str();
    };
    if (r.mode == BaseChangeReport::Mode::RationalPoint) {
        std::cout << "rational point: table over Q "
                  << (r.tables_match ? "matches" : "DIFFERS from") << " table over K\n";
        std::cout << "eps_Q " << result_summary(r.base) << "\n";
        std::cout << "eps_K = " << summary_ext(r.extended) << "\n";
        std::cout << "results " << (r.results_match ? "identical" : "DIFFER") << ", witnesses "
                  << (r.witness_match ? "identical" : "DIFFER") << "\n";
        return r.tables_match && r.results_match ? kExitOk : kExitInternal;
    }
    std::cout << "eps_Q = "
              << (r.base.kind == ResultKind::Exact ? rat_str(r.base.value)
                                                    : "[" + rat_str(r.base.lower) + ", " +
                                                          rat_str(r.base.upper_candidate) + "]")
              << ", eps_K in " << summary_ext(r.extended) << " (ext gamma "
              << rat_str(r.ext_gamma) << ")\n";
    std::cout << "inequality eps_K >= eps_Q "
              << (r.inequality_holds ? (r.strict ? "holds (strict)" : "holds") : "not resolved")
              << "\n";
    return kExitOk;
}

int cmd_trend(int dmax) {
    auto rows = global_trend(dmax);
    for (const auto& [alpha, ratio] : rows) {
        std::cout << "alpha = " << alpha << ": witness ratio " << rat_str(ratio)
                  << ", eps^2 <= " << rat_str(sqrt_bound_sq(Rational(1), alpha)) << "\n";
    }
    return kExitOk;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"exact Seshadri constants of O(d) on the projective plane at closed points"};
    app.require_subcommand(1);

    // p2 compute
    auto* p2 = app.add_subcommand("p2", "computations on the plane");
    p2->require_subcommand(1);
    auto* compute = p2->add_subcommand("compute", "certified bracket at a closed point");
    std::string opt_minpoly, opt_point, opt_gamma, opt_output;
    int opt_bundle = 1;
    compute->add_option("--minpoly", opt_minpoly, "minimal polynomial in t (omit for Q)");
    compute->add_option("--point", opt_point, "homogeneous coordinates a,b,c (entries in th)")
        ->required();
    compute->add_option("--gamma", opt_gamma, "certified lower-bound threshold p/q")->required();
    compute->add_option("--bundle", opt_bundle, "bundle degree d0 of L = O(d0)");
    compute->add_option("-o,--output", opt_output, "certificate output path");

    auto* verify = app.add_subcommand("verify", "re-check a certificate");
    std::string opt_cert;
    verify->add_option("cert", opt_cert, "certificate path")->required();

    auto* bounds = app.add_subcommand("bounds", "upper bounds compared on powers");
    int opt_alpha = 1, opt_power = 2;
    std::string opt_selfint = "1", opt_top = "1", opt_degs;
    bounds->add_option("--alpha", opt_alpha, "residue degree");
    bounds->add_option("--selfint", opt_selfint, "L^2");
    bounds->add_option("--top", opt_top, "top self-intersection of the pulled back bundle");
    bounds->add_option("--degs", opt_degs, "fiber point degrees d1,d2,...");
    bounds->add_option("--power", opt_power, "dimension m for the multipoint bound");

    auto* lattice = app.add_subcommand("lattice", "abstract surface from a lattice file");
    std::string opt_lfile;
    lattice->add_option("--file", opt_lfile, "lattice JSON file");
    lattice->require_subcommand(1);
    auto* lsesh = lattice->add_subcommand("seshadri", "min curve ratio at chosen points");
    std::vector<int> opt_points{0};
    std::string opt_l = "1";
    bool opt_complete = false;
    lsesh->add_option("--point", opt_points, "blown-up point indices");
    lsesh->add_option("--L", opt_l, "class of L on the base, comma separated");
    lsesh->add_flag("--complete", opt_complete, "the curve list is Seshadri-complete");
    auto* lchi = lattice->add_subcommand("chi", "Riemann-Roch characteristic of a class");
    std::string opt_d = "0";
    lchi->add_option("--D", opt_d, "class, comma separated");
    auto* lnef = lattice->add_subcommand("nef", "nef test on the blow-up");
    std::string opt_cls;
    lnef->add_option("--class", opt_cls, "extended class, comma separated")->required();
    auto* lscale = lattice->add_subcommand("scaling", "n^2-scaling identity");
    int opt_n = 2;
    lscale->add_option("--n", opt_n, "scaling factor");
    lscale->add_option("--point", opt_points, "blown-up point indices");
    lscale->add_option("--L", opt_l, "class of L on the base");
    lscale->add_flag("--complete", opt_complete, "the curve list is Seshadri-complete");
    auto* lcover = lattice->add_subcommand("cover", "finite cover consistency from a setup file");
    std::string opt_cover_file;
    lcover->add_option("--setup", opt_cover_file, "cover setup JSON file")->required();

    auto* bc = app.add_subcommand("base-change", "compare the bracket over Q and over K");
    std::string bc_minpoly, bc_point, bc_gamma, bc_ext = "self", bc_ext_gamma;
    int bc_bundle = 1;
    bc->add_option("--minpoly", bc_minpoly, "minimal polynomial of the coordinate field");
    bc->add_option("--point", bc_point, "homogeneous coordinates a,b,c")->required();
    bc->add_option("--gamma", bc_gamma, "threshold for the base computation")->required();
    bc->add_option("--bundle", bc_bundle, "bundle degree d0");
    bc->add_option("--ext", bc_ext, "'self' or a minimal polynomial for K");
    bc->add_option("--ext-gamma", bc_ext_gamma, "threshold for the extension side");

    auto* trend = app.add_subcommand("trend", "witness ratios at points of growing degree");
    int opt_dmax = 6;
    trend->add_option("--dmax", opt_dmax, "largest residue degree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (compute->parsed())
            return cmd_p2_compute(opt_minpoly.empty() ? std::nullopt
                                                      : std::optional<std::string>(opt_minpoly),
                                  opt_point, opt_gamma, opt_bundle, opt_output);
        if (verify->parsed()) return cmd_verify(opt_cert);
        if (bounds->parsed())
            return cmd_bounds(opt_alpha, opt_selfint, opt_top, opt_degs, opt_power);
        if (lattice->parsed()) {
            if (lcover->parsed()) return cmd_lattice_cover(opt_cover_file);
            if (opt_lfile.empty()) throw ParseError("--file is required for this subcommand");
            LatticeFile lf = load_lattice_file(opt_lfile);
            if (lsesh->parsed()) return cmd_lattice_seshadri(lf, opt_points, opt_l, opt_complete);
            if (lchi->parsed()) return cmd_lattice_chi(lf, opt_d);
            if (lnef->parsed()) return cmd_lattice_nef(lf, opt_cls);
            if (lscale->parsed())
                return cmd_lattice_scaling(lf, opt_n, opt_points, opt_l, opt_complete);
        }
        if (bc->parsed())
            return cmd_base_change(bc_minpoly.empty() ? std::nullopt
                                                       : std::optional<std::string>(bc_minpoly),
                                   bc_point, bc_gamma, bc_bundle, bc_ext, bc_ext_gamma);
        if (trend->parsed()) return cmd_trend(opt_dmax);
        return kExitInput;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

} // namespace sesh::cli
