#pragma once

#include "resonf/coefficients.hpp"
#include "resonf/combinatorial.hpp"

#include <complex>

namespace resonf {

struct BlockMatrix {
    int m = 0, q = 0;
    std::vector<GroupElement> vertices;        // row/column order
    std::vector<std::vector<Poly>> entries;
    std::vector<int> signs;                    // Sigma_A
    std::vector<Poly> diagonal_shift;          // (grad A_{q+1} - (q+1)^2 A_q 1, L(k))
    int dim() const { return static_cast<int>(entries.size()); }
    bool operator==(const BlockMatrix& o) const { return entries == o.entries; }
};

// C_{A,+} with rows in the vertex order of G (root first).
BlockMatrix block_matrix(const CombGraph& G, int q);
// C_{A,-} = -C_{A,+}
BlockMatrix conjugate(const BlockMatrix& C);
BlockMatrix reorder(const BlockMatrix& C, const std::vector<int>& order);
// Sigma C Sigma = C^T
bool sigma_self_adjoint(const BlockMatrix& C);
Poly map_variables(const Poly& p, const std::vector<int>& map, int m);

struct EdgeBlock {
    IVec ell;
    Poly a, b;           // c(l) = (q+1) a(l)
    BlockMatrix block;   // from block_matrix on the single-edge graph
    bool template_ok = false;
    std::string detail;
};

EdgeBlock general_edge_block(const IVec& ell, int q);

struct ConstCoeffCertificate {
    bool ok = false;
    std::size_t edges_checked = 0;
    std::string detail;
};

ConstCoeffCertificate verify_constant_coefficients(const GeoComponent& A, const Lift& L);

// |k|^2 + sum_i |v_i|^2 L_i(k)
Int omega_tilde(const IVec& k, const GroupElement& lift, const TangentialSet& S);

using UPoly = std::vector<mpq_class>;  // coefficients, lowest degree first

UPoly char_poly(const QMat& A);
QMat evaluate(const BlockMatrix& C, const QVec& s);

struct RootInterval {
    mpq_class lo, hi;  // root in (lo, hi]
    int multiplicity = 1;
};

struct SpectrumReport {
    UPoly charpoly;
    std::vector<RootInterval> real_roots;
    int real_count = 0;     // with multiplicity
    int complex_count = 0;  // non-real roots with multiplicity
    bool all_real = false;
    bool all_real_distinct = false;
    std::vector<std::complex<double>> approx;
};

SpectrumReport spectrum(const QMat& A);
// s are the square roots of xi, so entries evaluate exactly
SpectrumReport spectrum(const BlockMatrix& C, const QVec& s);

struct DiscriminantEntry {
    IVec ell;
    Poly disc;  // b(l)^2 - 4 a(l)^2
    std::pair<Exponent, mpz_class> leading;
    bool positive = false;
};

struct RegionCertificate {
    bool ok = false;
    int q = 0, m = 0;
    std::vector<DiscriminantEntry> entries;
    long t = 0;
    QVec xi;  // witness point on the curve xi_i = t^((2q+1)^(m+1-i))
    std::string note;
};

Poly red_discriminant(const IVec& ell, int q);
RegionCertificate discriminant_region(int q, int m, long max_t = 64);

}  // namespace resonf
