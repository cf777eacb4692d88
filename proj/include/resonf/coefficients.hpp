#pragma once

#include "resonf/poly.hpp"

namespace resonf {

// r! / prod k_i!, zero when some k_i < 0 or sum k_i != r
mpz_class multinomial(int r, const std::vector<int>& k);

// sum over compositions k of r into m parts of multinomial(r;k)^2 xi^k
Poly A_poly(int r, int m);

// grad A_{q+1} - (q+1)^2 A_q (1,...,1), one even polynomial per index
std::vector<Poly> omega_shift(int q, int m);

struct Omega {
    std::vector<Int> base;      // |v_i|^2
    std::vector<Poly> shift;    // homogeneous of xi-degree q
    Poly component(int i) const { return shift[i] + Poly::constant(shift[i].nvars(), mpz_class(static_cast<long>(base[i]))); }
};

Omega omega(const TangentialSet& S, int q);

// Edge coefficient c_q(l); contains the half-integer power xi^((l+ + l-)/2).
Poly c_coeff(const IVec& l, int q);

// (shift, L) for a vector L of length m
Poly shift_pairing(const std::vector<Poly>& shift, const IVec& L);

struct Certificate {
    bool ok = false;
    QVec s;            // witness point in s coordinates; xi = s^2
    mpq_class det;
    int trials = 0;
    std::string note;
};

Certificate hessian_nondegenerate(int r, int m, int trials = 16);
Certificate jacobian_omega_nondegenerate(int q, int m, int trials = 16);

}  // namespace resonf
