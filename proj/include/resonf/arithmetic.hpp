#pragma once

#include "resonf/genericity.hpp"
#include "resonf/geometric.hpp"

namespace resonf {

// All k in Z^n on the sphere of the red edge l, by completing the square:
// |2k + pi(l)|^2 = -|pi(l)|^2 - 2 sum l_i |v_i|^2.
std::vector<IVec> integral_points_on_sphere(const IVec& l, const TangentialSet& S);

struct ArithmeticVerdict {
    bool pass = true;
    std::size_t sphere_points = 0;   // lattice points examined on red spheres
    std::size_t black_pairs = 0;     // pairs of black planes intersected
    IVec witness;                    // vertex lying on two edges
    std::vector<IVec> labels;        // the edge labels meeting at the witness
    std::string detail;
};

// Requires n <= 2.
ArithmeticVerdict certify_arithmetic_genericity(const TangentialSet& S, int q);

// |pi(l1) ^ pi(l2)| >= c |pi(l1)| |pi(l2)| for every pair of edges l1 != +-l2, tested squared.
bool sector_condition(const TangentialSet& S, int q, const mpq_class& c);
mpq_class default_sector_constant(int m);

struct SearchOptions {
    int n = 2, m = 4, q = 1;
    Int radius = 40;
    std::uint64_t seed = 1;
    std::size_t max_candidates = 4000;
    bool require_arithmetic = true;
    bool require_sector = true;
    mpq_class sector_c = 0;  // 0 selects the default 1/(4m^2)
    bool parallel = true;
};

struct SearchResult {
    bool found = false;
    TangentialSet S;
    std::size_t index = 0;  // candidate number that succeeded
    std::size_t tried = 0;
    std::size_t rejected_sector = 0, rejected_geometric = 0, rejected_arithmetic = 0;
    std::string report;
};

// Candidate i is drawn from its own generator seeded with (seed, i), so the outcome does not
// depend on the batch size or thread count; the smallest passing index wins.
TangentialSet search_candidate(const SearchOptions& opt, std::size_t index);
SearchResult find_arithmetically_generic(const SearchOptions& opt, const Catalog& cat);

}  // namespace resonf
