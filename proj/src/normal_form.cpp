#include "resonf/normal_form.hpp"

#include <cmath>

namespace resonf {

BlockMatrix block_matrix(const CombGraph& G, int q)
{
    BlockMatrix C;
    C.m = G.m;
    C.q = q;
    C.vertices = G.vertices;
    int d = static_cast<int>(G.size());
    auto shift = omega_shift(q, G.m);
    C.entries.assign(d, std::vector<Poly>(d, Poly(G.m)));
    for (int a = 0; a < d; ++a) {
        const auto& va = G.vertices[a];
        C.signs.push_back(va.sigma);
        Poly diag = shift_pairing(shift, va.a);
        C.diagonal_shift.push_back(diag);
        C.entries[a][a] = diag * mpz_class(va.sigma);
        for (int b = 0; b < d; ++b) {
            if (a == b) continue;
            auto x = edge_between(va, G.vertices[b], q);
            if (!x) continue;
            // minus sign when the column vertex is of conjugate type
            C.entries[a][b] = c_coeff(x->a, q) * mpz_class(G.vertices[b].sigma);
        }
    }
    return C;
}

BlockMatrix conjugate(const BlockMatrix& C)
{
    BlockMatrix D = C;
    for (auto& row : D.entries)
        for (auto& e : row) e = -e;
    return D;
}

BlockMatrix reorder(const BlockMatrix& C, const std::vector<int>& order)
{
    BlockMatrix D = C;
    int d = C.dim();
    for (int i = 0; i < d; ++i) {
        D.vertices[i] = C.vertices[order[i]];
        D.signs[i] = C.signs[order[i]];
        D.diagonal_shift[i] = C.diagonal_shift[order[i]];
        for (int j = 0; j < d; ++j) D.entries[i][j] = C.entries[order[i]][order[j]];
    }
    return D;
}

bool sigma_self_adjoint(const BlockMatrix& C)
{
    int d = C.dim();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (C.entries[i][j] * mpz_class(C.signs[i] * C.signs[j]) != C.entries[j][i]) return false;
    return true;
}

Poly map_variables(const Poly& p, const std::vector<int>& map, int m)
{
    Poly r(m);
    for (const auto& [e, c] : p.terms()) {
        Exponent f(m, 0);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) f[map[i]] += e[i];
        r.add_term(f, c);
    }
    return r;
}

EdgeBlock general_edge_block(const IVec& ell, int q)
{
    if (!is_edge(ell, q)) throw InputError("not an edge of X_q: " + e_string(ell));
    int m = static_cast<int>(ell.size());
    EdgeBlock eb;
    eb.ell = ell;
    Int eta = mass(ell);
    int sign = static_cast<int>(1 + eta);  // +1 black, -1 red
    CombGraph G{m, {identity(m), GroupElement{ell, sign}}};
    eb.block = block_matrix(G, q);

    mpz_class q1(q + 1);
    Poly c = c_coeff(ell, q);
    // grad A_{q+1} . l - (q+1)^2 A_q eta(l) = (q+1)(1+eta) b
    Poly A1 = A_poly(q + 1, m), A0 = A_poly(q, m);
    Poly lhs(m);
    for (int i = 0; i < m; ++i)
        if (ell[i]) lhs += A1.d_xi(i) * mpz_class(static_cast<long>(ell[i]));
    lhs = lhs - A0 * mpz_class(static_cast<long>((q + 1) * (q + 1) * eta));
    if (!c.divisible_by(q1) || !lhs.divisible_by(q1)) {
        eb.detail = "coefficients not divisible by q+1";
        return eb;
    }
    eb.a = c.div_exact(q1);
    eb.b = lhs.div_exact(q1) * mpz_class(sign);
    Poly zero(m);
    std::vector<std::vector<Poly>> tmpl{{zero, eb.a * mpz_class(sign * (q + 1))}, {eb.a * q1, eb.b * q1}};
    eb.template_ok = (tmpl == eb.block.entries);
    if (!eb.template_ok) eb.detail = "block differs from the (q+1)[[0,(1+eta)a],[a,b]] template";
    return eb;
}

ConstCoeffCertificate verify_constant_coefficients(const GeoComponent& A, const Lift& L)
{
    ConstCoeffCertificate c;
    if (!L.ok) {
        c.detail = "no lift: " + L.detail;
        return c;
    }
    for (const auto& e : A.edges) {
        int u = A.index_of(e.u), v = A.index_of(e.v);
        const auto &gu = L.g[u], &gv = L.g[v];
        ++c.edges_checked;
        bool ok;
        if (e.color == Color::Black) ok = gv.sigma == gu.sigma && gv.a == add(e.ell, gu.a);
        else ok = gv.sigma == -gu.sigma && add(gv.a, gu.a) == e.ell;
        GroupElement x{e.ell, e.color == Color::Black ? 1 : -1};
        ok = ok && gv == x * gu;
        if (!ok) {
            c.detail = "identity fails on edge " + to_string(e.u) + " - " + to_string(e.v) + " labelled " + e_string(e.ell);
            return c;
        }
    }
    c.ok = true;
    return c;
}

Int omega_tilde(const IVec& k, const GroupElement& lift, const TangentialSet& S)
{
    return norm2(k) + weighted_norm(lift.a, S);
}

QMat evaluate(const BlockMatrix& C, const QVec& s)
{
    int d = C.dim();
    QMat M(d, QVec(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) M[i][j] = C.entries[i][j].eval_s(s);
    return M;
}

UPoly char_poly(const QMat& A)
{
    // Faddeev-LeVerrier: exact over the rationals
    int d = static_cast<int>(A.size());
    UPoly c(d + 1);
    c[d] = 1;
    QMat M(d, QVec(d, 0));
    for (int k = 1; k <= d; ++k) {
        QMat N(d, QVec(d, 0));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                mpq_class s = 0;
                for (int t = 0; t < d; ++t) s += A[i][t] * M[t][j];
                N[i][j] = s;
            }
        for (int i = 0; i < d; ++i) N[i][i] += c[d - k + 1];
        mpq_class tr = 0;
        for (int i = 0; i < d; ++i)
            for (int t = 0; t < d; ++t) tr += A[i][t] * N[t][i];
        c[d - k] = -tr / k;
        M = std::move(N);
    }
    return c;
}

namespace {

void trim(UPoly& p)
{
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly derivative(const UPoly& p)
{
    UPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

void divmod(UPoly a, const UPoly& b, UPoly& q, UPoly& r)
{
    trim(a);
    q.assign(std::max(0, degree(a) - degree(b) + 1), 0);
    while (degree(a) >= degree(b) && !a.empty()) {
        int s = degree(a) - degree(b);
        mpq_class f = a.back() / b.back();
        q[s] = f;
        for (int i = 0; i <= degree(b); ++i) a[i + s] -= f * b[i];
        trim(a);
    }
    r = a;
}

UPoly monic(UPoly p)
{
    trim(p);
    if (p.empty()) return p;
    mpq_class l = p.back();
    for (auto& x : p) x /= l;
    return p;
}

UPoly gcd(UPoly a, UPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

UPoly quotient(const UPoly& a, const UPoly& b)
{
    UPoly q, r;
    divmod(a, b, q, r);
    trim(q);
    return q;
}

UPoly sub(UPoly a, const UPoly& b)
{
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

mpq_class eval(const UPoly& p, const mpq_class& x)
{
    mpq_class v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
}

// Yun's square-free factorisation: factors[i] has multiplicity i+1.
std::vector<UPoly> squarefree(const UPoly& f)
{
    std::vector<UPoly> out;
    UPoly fp = derivative(f);
    UPoly a = gcd(f, fp);
    UPoly b = quotient(f, a), c = quotient(fp, a);
    UPoly d = sub(c, derivative(b));
    while (degree(b) > 0) {
        UPoly g = gcd(b, d);
        out.push_back(g);
        UPoly b2 = quotient(b, g);
        c = quotient(d, g);
        b = b2;
        d = sub(c, derivative(b));
    }
    return out;
}

std::vector<UPoly> sturm(const UPoly& p)
{
    std::vector<UPoly> s{p, derivative(p)};
    while (!s.back().empty() && degree(s.back()) > 0) {
        UPoly q, r;
        divmod(s[s.size() - 2], s.back(), q, r);
        if (r.empty()) break;
        for (auto& x : r) x = -x;
        s.push_back(r);
    }
    return s;
}

int sign_changes(const std::vector<UPoly>& s, const mpq_class& x)
{
    int changes = 0, last = 0;
    for (const auto& p : s) {
        int v = sgn(eval(p, x));
        if (v == 0) continue;
        if (last != 0 && v != last) ++changes;
        last = v;
    }
    return changes;
}

void isolate(const std::vector<UPoly>& st, mpq_class lo, mpq_class hi, int mult, std::vector<RootInterval>& out)
{
    int k = sign_changes(st, lo) - sign_changes(st, hi);
    if (k == 0) return;
    if (k == 1) {
        // shrink a little so the interval is informative
        for (int it = 0; it < 40 && hi - lo > mpq_class(1, 1 << 20); ++it) {
            mpq_class mid = (lo + hi) / 2;
            if (sign_changes(st, lo) - sign_changes(st, mid) == 1) hi = mid;
            else lo = mid;
        }
        out.push_back({lo, hi, mult});
        return;
    }
    mpq_class mid = (lo + hi) / 2;
    isolate(st, lo, mid, mult, out);
    isolate(st, mid, hi, mult, out);
}

std::vector<std::complex<double>> durand_kerner(const UPoly& p)
{
    int d = degree(p);
    std::vector<std::complex<double>> z(d), c(d + 1);
    if (d <= 0) return {};
    for (int i = 0; i <= d; ++i) c[i] = mpq_class(p[i] / p[d]).get_d();
    std::complex<double> seed(0.4, 0.9);
    for (int i = 0; i < d; ++i) z[i] = std::pow(seed, i);
    for (int it = 0; it < 500; ++it) {
        for (int i = 0; i < d; ++i) {
            std::complex<double> num = 0;
            for (int k = d; k >= 0; --k) num = num * z[i] + c[k];
            std::complex<double> den = 1;
            for (int j = 0; j < d; ++j)
                if (j != i) den *= (z[i] - z[j]);
            if (std::abs(den) > 0) z[i] -= num / den;
        }
    }
    return z;
}

}  // namespace

SpectrumReport spectrum(const QMat& A)
{
    SpectrumReport r;
    r.charpoly = char_poly(A);
    int d = degree(r.charpoly);
    auto factors = squarefree(r.charpoly);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const UPoly& f = factors[i];
        if (degree(f) < 1) continue;
        mpq_class bound = 1;
        for (std::size_t j = 0; j + 1 < f.size(); ++j) bound = std::max(bound, mpq_class(abs(f[j] / f.back()) + 1));
        auto st = sturm(f);
        std::vector<RootInterval> found;
        isolate(st, -bound, bound, static_cast<int>(i + 1), found);
        for (auto& ri : found) {
            r.real_count += ri.multiplicity;
            r.real_roots.push_back(ri);
        }
    }
    std::sort(r.real_roots.begin(), r.real_roots.end(),
              [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
    r.complex_count = d - r.real_count;
    r.all_real = r.complex_count == 0;
    r.all_real_distinct = r.all_real && static_cast<int>(r.real_roots.size()) == d;
    r.approx = durand_kerner(r.charpoly);
    return r;
}

SpectrumReport spectrum(const BlockMatrix& C, const QVec& s)
{
    if (static_cast<int>(s.size()) != C.m) throw InputError("need one s value per site");
    for (const auto& x : s)
        if (sgn(x) <= 0) throw InputError("s values must be positive");
    return spectrum(evaluate(C, s));
}

Poly red_discriminant(const IVec& ell, int q)
{
    if (mass(ell) != -2) throw InputError("discriminant is defined for red edges");
    EdgeBlock eb = general_edge_block(ell, q);
    return eb.b * eb.b - eb.a * eb.a * mpz_class(4);
}

RegionCertificate discriminant_region(int q, int m, long max_t)
{
    RegionCertificate rc;
    rc.q = q;
    rc.m = m;
    for (const auto& e : enumerate_edges(q, m)) {
        if (e.color() != Color::Red) continue;
        DiscriminantEntry d;
        d.ell = e.coeffs;
        d.disc = red_discriminant(e.coeffs, q);
        d.leading = d.disc.leading_term();
        rc.entries.push_back(d);
    }
    // xi_i = t^((2q+1)^(m+1-i)), i = 1..m
    for (long t = 2; t <= max_t; ++t) {
        QVec xi(m);
        for (int i = 0; i < m; ++i) {
            mpz_class e;
            mpz_ui_pow_ui(e.get_mpz_t(), 2 * q + 1, m - i);
            mpz_class v;
            mpz_ui_pow_ui(v.get_mpz_t(), t, e.get_ui());
            xi[i] = mpq_class(v);
        }
        bool all = true;
        for (auto& d : rc.entries) {
            d.positive = sgn(d.disc.eval_xi(xi)) > 0;
            all = all && d.positive;
        }
        if (all) {
            rc.ok = true;
            rc.t = t;
            rc.xi = xi;
            return rc;
        }
    }
    rc.note = "no witness on the curve up to t = " + std::to_string(max_t);
    return rc;
}

}  // namespace resonf
