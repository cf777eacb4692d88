#include <doctest.h>

#include "resonf/coefficients.hpp"

#include <functional>

using namespace resonf;

namespace {

// Calls f for every ordered tuple in {0..m-1}^len, passing its content vector.
void tuples(int m, int len, const std::function<void(const std::vector<int>&)>& f)
{
    std::vector<int> idx(len, 0);
    while (true) {
        std::vector<int> content(m, 0);
        for (int i : idx) ++content[i];
        f(content);
        int i = 0;
        while (i < len && idx[i] == m - 1) idx[i++] = 0;
        if (i == len) break;
        ++idx[i];
    }
}

// A_r from ordered tuples: the coefficient of xi^k counts pairs of r-tuples with content k.
Poly A_oracle(int r, int m)
{
    Poly p(m);
    tuples(m, r, [&](const std::vector<int>& a) {
        tuples(m, r, [&](const std::vector<int>& b) {
            if (a == b) p += Poly::xi_monomial(a, 1);
        });
    });
    return p;
}

// Edge coefficient from ordered tuples t1, t2 whose contents differ by the label.
Poly c_oracle(const IVec& l, int q)
{
    int m = static_cast<int>(l.size());
    bool black = mass(l) == 0;
    int len1 = black ? q : q + 1, len2 = black ? q : q - 1;
    Poly p(m);
    tuples(m, len1, [&](const std::vector<int>& a) {
        tuples(m, len2, [&](const std::vector<int>& b) {
            Exponent e(m);
            for (int i = 0; i < m; ++i) {
                Int diff = black ? a[i] - b[i] : b[i] - a[i];
                if (diff != l[i]) return;
                e[i] = a[i] + b[i];
            }
            p += Poly::monomial(e, 1);
        });
    });
    return p * mpz_class(black ? (q + 1) * (q + 1) : (q + 1) * q);
}

Poly xi(int m, int i) { return Poly::xi_monomial([&] { std::vector<int> k(m, 0); k[i] = 1; return k; }(), 1); }

}  // namespace

TEST_CASE("multinomials")
{
    CHECK(multinomial(4, {2, 1, 1}) == 12);
    CHECK(multinomial(3, {3}) == 1);
    CHECK(multinomial(3, {2, 2}) == 0);
    CHECK(multinomial(2, {-1, 3}) == 0);
}

TEST_CASE("A_r agrees with the ordered-tuple count")
{
    for (int r = 1; r <= 4; ++r)
        for (int m = 1; m <= 3; ++m) CHECK(A_poly(r, m) == A_oracle(r, m));
    Poly A22 = xi(2, 0) * xi(2, 0) + xi(2, 0) * xi(2, 1) * mpz_class(4) + xi(2, 1) * xi(2, 1);
    CHECK(A_poly(2, 2) == A22);
    CHECK(A_poly(1, 2) == xi(2, 0) + xi(2, 1));
    CHECK(A_poly(5, 1) == Poly::xi_monomial({5}, 1));
}

TEST_CASE("Euler identity and permutation symmetry of A_r")
{
    for (int r = 1; r <= 4; ++r) {
        int m = 3;
        Poly A = A_poly(r, m), euler(m);
        for (int i = 0; i < m; ++i) euler += xi(m, i) * A.d_xi(i);
        CHECK(euler == A * mpz_class(r));
        CHECK(A.homogeneous_degree() == 2 * r);
        for (const auto& [e, c] : A.terms()) {
            Exponent f{e[1], e[2], e[0]};
            CHECK(A.coeff(f) == c);
        }
    }
}

TEST_CASE("omega for q=1 is |v_i|^2 - 2 xi_i")
{
    TangentialSet S(2, {{1, 2}, {-3, 0}, {0, 4}, {5, -1}});
    Omega w = omega(S, 1);
    for (int i = 0; i < S.m(); ++i) {
        Poly expect = Poly::constant(4, mpz_class(static_cast<long>(S.site_norm2(i)))) - xi(4, i) * mpz_class(2);
        CHECK(w.component(i) == expect);
    }
}

TEST_CASE("omega shift is homogeneous of degree q and vanishes at the origin")
{
    for (int q = 1; q <= 3; ++q)
        for (int m = 1; m <= 4; ++m)
            for (const auto& p : omega_shift(q, m)) {
                CHECK(p.homogeneous_degree() == 2 * q);
                CHECK(p.eval_xi(QVec(m, 0)) == 0);
            }
}

TEST_CASE("edge coefficients agree with the ordered-tuple expansion")
{
    for (int q = 1; q <= 3; ++q)
        for (int m = 2; m <= 3; ++m)
            for (const auto& e : enumerate_edges(q, m)) CHECK(c_coeff(e.coeffs, q) == c_oracle(e.coeffs, q));
}

TEST_CASE("edge coefficient values and symmetry")
{
    Poly four_s1s2 = Poly::monomial({1, 1}, 4);
    CHECK(c_coeff({1, -1}, 1) == four_s1s2);
    CHECK(c_coeff({-1, -1}, 1) == four_s1s2);
    for (int q = 1; q <= 2; ++q)
        for (const auto& e : enumerate_edges(q, 4)) {
            Poly c = c_coeff(e.coeffs, q);
            CHECK(c.homogeneous_degree() == 2 * q);
            for (const auto& [ex, k] : c.terms()) {
                CHECK(k > 0);
                for (int i = 0; i < 4; ++i) CHECK((ex[i] - e.coeffs[i]) % 2 == 0);
            }
            if (e.color() == Color::Black) CHECK(c == c_coeff(neg(e.coeffs), q));
        }
    CHECK_THROWS_AS(c_coeff({-2, 0}, 1), InputError);
}

TEST_CASE("Hessian certificates")
{
    auto h = hessian_nondegenerate(2, 2);
    REQUIRE(h.ok);
    CHECK(h.det == -12);  // [[2,4],[4,2]] at any point
    auto h1 = hessian_nondegenerate(2, 1);
    CHECK(h1.ok);
    CHECK(h1.det == 2);
    for (int r = 2; r <= 5; ++r)
        for (int m = 1; m <= 4; ++m) CHECK(hessian_nondegenerate(r, m).ok);
    CHECK_THROWS_AS(hessian_nondegenerate(1, 2), InputError);
}

TEST_CASE("Jacobian certificates")
{
    auto j = jacobian_omega_nondegenerate(1, 2);
    REQUIRE(j.ok);
    CHECK(j.det == 4);
    for (int q = 1; q <= 2; ++q)
        for (int m = 1; m <= 4; ++m) CHECK(jacobian_omega_nondegenerate(q, m).ok);
}
