#include "sesh/nslattice.hpp"

#include <algorithm>

#include "sesh/errors.hpp"

namespace sesh {

LatticeSurface LatticeSurface::make(std::vector<std::vector<long>> gram,
                                    std::vector<long> canonical, long chi) {
    LatticeSurface s;
    s.rank = static_cast<int>(gram.size());
    if (s.rank == 0) throw InputError("lattice rank must be >= 1");
    for (const auto& row : gram)
        if (static_cast<int>(row.size()) != s.rank) throw ShapeMismatch("gram matrix not square");
    for (int i = 0; i < s.rank; ++i)
        for (int j = 0; j < s.rank; ++j)
            if (gram[i][j] != gram[j][i]) throw InputError("gram matrix not symmetric");
    if (static_cast<int>(canonical.size()) != s.rank)
        throw ShapeMismatch("canonical class has wrong length");
    s.gram = std::move(gram);
    s.canonical = std::move(canonical);
    s.chi = chi;
    return s;
}

bool LatticeSurface::signature_ok() const {
    // Symmetric congruence diagonalization over Q; Sylvester gives the
    // signature from the diagonal signs.
    std::vector<std::vector<Rational>> a(rank, std::vector<Rational>(rank));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) a[i][j] = Rational(gram[i][j]);
    int pos = 0, neg = 0, zero = 0;
    for (int i = 0; i < rank; ++i) {
        if (sgn(a[i][i]) == 0) {
            int swap_k = -1, off_j = -1;
            for (int k = i + 1; k < rank && swap_k < 0; ++k)
                if (sgn(a[k][k]) != 0) swap_k = k;
            if (swap_k >= 0) {
                std::swap(a[i], a[swap_k]);
                for (int r = 0; r < rank; ++r) std::swap(a[r][i], a[r][swap_k]);
            } else {
                for (int j = i + 1; j < rank && off_j < 0; ++j)
                    if (sgn(a[i][j]) != 0) off_j = j;
                if (off_j < 0) {
                    ++zero;
                    continue;
                }
                for (int r = 0; r < rank; ++r) a[i][r] += a[off_j][r];
                for (int r = 0; r < rank; ++r) a[r][i] += a[r][off_j];
            }
        }
        Rational piv = a[i][i];
        if (sgn(piv) > 0)
            ++pos;
        else if (sgn(piv) < 0)
            ++neg;
        else {
            ++zero;
            continue;
        }
        for (int j = i + 1; j < rank; ++j) {
            if (sgn(a[j][i]) == 0) continue;
            Rational f = a[j][i] / piv;
            for (int r = 0; r < rank; ++r) a[j][r] -= f * a[i][r];
            for (int r = 0; r < rank; ++r) a[r][j] -= f * a[r][i];
        }
    }
    return pos == 1 && neg == rank - 1 && zero == 0;
}

BlowupLattice BlowupLattice::make(LatticeSurface base, std::vector<int> alphas) {
    for (int a : alphas)
        if (a < 1) throw InputError("residue degrees must be >= 1");
    BlowupLattice b;
    b.base = std::move(base);
    b.alphas = std::move(alphas);
    return b;
}

std::vector<std::vector<long>> BlowupLattice::extended_gram() const {
    const int n = total_rank();
    std::vector<std::vector<long>> g(n, std::vector<long>(n, 0));
    for (int i = 0; i < base.rank; ++i)
        for (int j = 0; j < base.rank; ++j) g[i][j] = base.gram[i][j];
    for (std::size_t t = 0; t < alphas.size(); ++t) {
        int k = base.rank + static_cast<int>(t);
        g[k][k] = -alphas[t];
    }
    return g;
}

long BlowupLattice::pairing_ext(const std::vector<long>& u, const std::vector<long>& v) const {
    const int n = total_rank();
    if (static_cast<int>(u.size()) != n || static_cast<int>(v.size()) != n)
        throw DimensionMismatch("extended vector length != blow-up rank");
    long acc = 0;
    for (int i = 0; i < base.rank; ++i)
        for (int j = 0; j < base.rank; ++j) acc += u[i] * base.gram[i][j] * v[j];
    for (std::size_t t = 0; t < alphas.size(); ++t) {
        int k = base.rank + static_cast<int>(t);
        acc -= static_cast<long>(alphas[t]) * u[k] * v[k];
    }
    return acc;
}

std::vector<long> strict_transform(const CurveClass& c, const BlowupLattice& b) {
    if (static_cast<int>(c.base_class.size()) != b.base.rank)
        throw DimensionMismatch("curve class length != base rank");
    if (c.mults.size() != b.alphas.size())
        throw DimensionMismatch("curve multiplicity list != number of blown-up points");
    std::vector<long> v(c.base_class);
    for (int m : c.mults) v.push_back(-static_cast<long>(m));
    return v;
}

long pairing(const std::vector<long>& u, const std::vector<long>& v, const LatticeSurface& s) {
    if (static_cast<int>(u.size()) != s.rank || static_cast<int>(v.size()) != s.rank)
        throw DimensionMismatch("vector length != lattice rank");
    long acc = 0;
    for (int i = 0; i < s.rank; ++i)
        for (int j = 0; j < s.rank; ++j) acc += u[i] * s.gram[i][j] * v[j];
    return acc;
}

Rational chi_rr_lattice(const std::vector<long>& d, const LatticeSurface& s) {
    std::vector<long> dk(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) dk[i] = d[i] - s.canonical[i];
    return Rational(s.chi) + Rational(pairing(d, dk, s)) / 2;
}

bool is_nef_against(const std::vector<long>& cls, const std::vector<CurveClass>& curves,
                    const BlowupLattice& b) {
    for (std::size_t t = 0; t < b.alphas.size(); ++t) {
        std::vector<long> e(b.total_rank(), 0);
        e[b.base.rank + t] = 1;
        if (b.pairing_ext(cls, e) < 0) return false;
    }
    for (const auto& c : curves)
        if (b.pairing_ext(cls, strict_transform(c, b)) < 0) return false;
    return true;
}

SupOutcome seshadri_sup(const std::vector<long>& l, const std::vector<int>& points,
                        const std::vector<CurveClass>& curves, bool complete,
                        const BlowupLattice& b) {
    if (static_cast<int>(l.size()) != b.base.rank)
        throw DimensionMismatch("L length != base rank");
    if (points.empty()) throw InputError("no points chosen");
    for (int p : points)
        if (p < 0 || p >= static_cast<int>(b.alphas.size()))
            throw InputError("point index out of range");
    if (curves.empty()) throw NoCurveThroughPoint("empty curve list");

    long alpha_sum = 0;
    for (int p : points) alpha_sum += b.alphas[p];

    bool found = false;
    Rational best;
    for (const auto& c : curves) {
        if (c.mults.size() != b.alphas.size())
            throw DimensionMismatch("curve multiplicity list != number of blown-up points");
        long denom = 0;
        for (int p : points) denom += static_cast<long>(c.mults[p]) * b.alphas[p];
        if (denom == 0)
            throw NoCurveThroughPoint("a listed curve misses every chosen point");
        long num = pairing(l, c.base_class, b.base);
        if (num < 0) throw InputError("L pairs negatively with a listed curve (not nef)");
        Rational ratio = rat(num, denom);
        if (!found || ratio < best) {
            found = true;
            best = ratio;
        }
    }
    SupOutcome out;
    out.value = best;
    out.sq_cap = rat(pairing(l, l, b.base), alpha_sum);
    out.cap_binding = best * best > out.sq_cap;
    out.exact = complete && !out.cap_binding;
    return out;
}

bool scaling_check(const std::vector<long>& l, int n, const std::vector<int>& points,
                   const std::vector<CurveClass>& curves, bool complete,
                   const BlowupLattice& b) {
    if (n < 1) throw InputError("scaling factor must be >= 1");
    auto scale = [&](long k) {
        std::vector<long> v(l);
        for (auto& x : v) x *= k;
        return v;
    };
    SupOutcome base = seshadri_sup(l, points, curves, complete, b);
    SupOutcome sq = seshadri_sup(scale(static_cast<long>(n) * n), points, curves, complete, b);
    SupOutcome lin = seshadri_sup(scale(n), points, curves, complete, b);
    return sq.value == Rational(static_cast<long>(n) * n) * base.value &&
           lin.value == Rational(n) * base.value;
}

CoverReport cover_check(const std::vector<std::vector<long>>& phi, int z_alpha,
                        const std::vector<int>& fiber_alphas, const std::vector<long>& l,
                        const std::vector<CurveClass>& z_curves,
                        const std::vector<CurveClass>& y_curves, const LatticeSurface& z,
                        const LatticeSurface& y, bool z_complete, bool y_complete) {
    if (static_cast<int>(phi.size()) != y.rank) throw ShapeMismatch("phi rows != rank Pic Y");
    for (const auto& row : phi)
        if (static_cast<int>(row.size()) != z.rank) throw ShapeMismatch("phi cols != rank Pic Z");
    if (fiber_alphas.empty()) throw InputError("no fiber points");

    BlowupLattice bz = BlowupLattice::make(z, {z_alpha});
    BlowupLattice by = BlowupLattice::make(y, fiber_alphas);

    std::vector<long> ly(y.rank, 0);
    for (int i = 0; i < y.rank; ++i)
        for (int j = 0; j < z.rank; ++j) ly[i] += phi[i][j] * l[j];

    CoverReport report;
    report.eps_base = seshadri_sup(l, {0}, z_curves, z_complete, bz).value;

    std::vector<int> all_points(fiber_alphas.size());
    for (std::size_t i = 0; i < fiber_alphas.size(); ++i) all_points[i] = static_cast<int>(i);
    report.eps_cover_multi = seshadri_sup(ly, all_points, y_curves, y_complete, by).value;

    std::vector<CurveClass> through_first;
    for (const auto& c : y_curves)
        if (!c.mults.empty() && c.mults[0] > 0) through_first.push_back(c);
    if (through_first.empty())
        throw NoCurveThroughPoint("no listed curve passes through the first fiber point");
    report.eps_cover_single = seshadri_sup(ly, {0}, through_first, false, by).value;

    report.equality = report.eps_cover_multi == report.eps_base;
    report.single_point_ge = report.eps_cover_single >= report.eps_base;
    report.list_incomplete_flag = !report.equality;
    return report;
}

} // namespace sesh
