#include "resonf/coefficients.hpp"

#include "resonf/linalg.hpp"

#include <functional>
#include <random>

namespace resonf {

mpz_class multinomial(int r, const std::vector<int>& k)
{
    int total = 0;
    for (int x : k) {
        if (x < 0) return 0;
        total += x;
    }
    if (total != r) return 0;
    // product of binomials avoids large factorials
    mpz_class res = 1, b;
    int acc = 0;
    for (int x : k) {
        acc += x;
        mpz_bin_uiui(b.get_mpz_t(), acc, x);
        res *= b;
    }
    return res;
}

static void compositions(int r, int m, const std::function<void(const std::vector<int>&)>& f)
{
    std::vector<int> k(m, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == m - 1) {
            k[i] = left;
            f(k);
            return;
        }
        for (int x = left; x >= 0; --x) {
            k[i] = x;
            rec(i + 1, left - x);
        }
    };
    if (m > 0) rec(0, r);
}

Poly A_poly(int r, int m)
{
    if (r < 0 || m < 1) throw InputError("A_poly needs r >= 0 and m >= 1");
    Poly p(m);
    compositions(r, m, [&](const std::vector<int>& k) {
        mpz_class c = multinomial(r, k);
        p += Poly::xi_monomial(k, c * c);
    });
    return p;
}

std::vector<Poly> omega_shift(int q, int m)
{
    if (q < 1) throw InputError("q must be positive");
    Poly Aq1 = A_poly(q + 1, m), Aq = A_poly(q, m);
    Poly tail = Aq * mpz_class((q + 1) * (q + 1));
    std::vector<Poly> out;
    for (int i = 0; i < m; ++i) out.push_back(Aq1.d_xi(i) - tail);
    return out;
}

Omega omega(const TangentialSet& S, int q)
{
    return Omega{S.omega0(), omega_shift(q, S.m())};
}

Poly c_coeff(const IVec& l, int q)
{
    if (!is_edge(l, q)) throw InputError("not an edge of X_q: " + e_string(l));
    int m = static_cast<int>(l.size());
    Edge e{l};
    IVec lp = e.plus(), lm = e.minus();
    int np = static_cast<int>(l1(lp));
    bool black = e.color() == Color::Black;
    // black: |alpha + l+| = q; red: |alpha + l+| = q - 1
    int top = black ? q : q - 1;
    int need = top - np;
    Poly p(m);
    if (need < 0) return p;
    compositions(need, m, [&](const std::vector<int>& alpha) {
        std::vector<int> kp(m), km(m);
        Exponent ex(m);
        for (int i = 0; i < m; ++i) {
            kp[i] = static_cast<int>(lp[i]) + alpha[i];
            km[i] = static_cast<int>(lm[i]) + alpha[i];
            ex[i] = static_cast<int>(lp[i] + lm[i]) + 2 * alpha[i];
        }
        mpz_class c = black ? multinomial(q, kp) * multinomial(q, km) : multinomial(q + 1, km) * multinomial(q - 1, kp);
        p.add_term(ex, c);
    });
    return p * mpz_class(black ? (q + 1) * (q + 1) : (q + 1) * q);
}

Poly shift_pairing(const std::vector<Poly>& shift, const IVec& L)
{
    Poly r(static_cast<int>(shift.size()));
    for (size_t i = 0; i < shift.size(); ++i)
        if (L[i]) r += shift[i] * mpz_class(static_cast<long>(L[i]));
    return r;
}

static std::vector<QVec> trial_points(int m, int trials)
{
    std::vector<QVec> pts;
    pts.push_back(QVec(m, 1));
    QVec ramp(m);
    for (int i = 0; i < m; ++i) ramp[i] = i + 1;
    pts.push_back(ramp);
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> d(1, 9);
    while (static_cast<int>(pts.size()) < trials) {
        QVec s(m);
        for (auto& x : s) x = d(rng);
        pts.push_back(s);
    }
    pts.resize(std::max(1, trials));
    return pts;
}

static Certificate certify(const std::vector<std::vector<Poly>>& J, int m, int trials)
{
    Certificate cert;
    for (const auto& s : trial_points(m, trials)) {
        ++cert.trials;
        QMat M(m, QVec(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) M[i][j] = J[i][j].eval_s(s);
        mpq_class d = det(M);
        if (sgn(d) != 0) {
            cert.ok = true;
            cert.s = s;
            cert.det = d;
            return cert;
        }
    }
    cert.note = "all trial points gave a zero determinant (inconclusive)";
    return cert;
}

Certificate hessian_nondegenerate(int r, int m, int trials)
{
    if (r < 2) throw InputError("Hessian certificate needs r >= 2");
    Poly A = A_poly(r, m);
    std::vector<std::vector<Poly>> H(m, std::vector<Poly>(m));
    for (int i = 0; i < m; ++i) {
        Poly di = A.d_xi(i);
        for (int j = 0; j < m; ++j) H[i][j] = di.d_xi(j);
    }
    return certify(H, m, trials);
}

Certificate jacobian_omega_nondegenerate(int q, int m, int trials)
{
    auto sh = omega_shift(q, m);
    std::vector<std::vector<Poly>> J(m, std::vector<Poly>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) J[i][j] = sh[i].d_xi(j);
    return certify(J, m, trials);
}

}  // namespace resonf
