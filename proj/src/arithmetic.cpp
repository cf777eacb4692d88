#include "resonf/arithmetic.hpp"

#include <cmath>
#include <random>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace resonf {

namespace {

Int isqrt(Int x)
{
    if (x <= 0) return 0;
    Int r = static_cast<Int>(std::sqrt(static_cast<long double>(x)));
    while (r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

// y with |y|^2 = R and y_i = p_i (mod 2)
void lattice_sphere(const IVec& p, Int R, std::size_t i, IVec& y, std::vector<IVec>& out)
{
    if (i == p.size()) {
        if (R == 0) out.push_back(y);
        return;
    }
    Int b = isqrt(R);
    for (Int t = -b; t <= b; ++t) {
        if (((t - p[i]) % 2 + 2) % 2 != 0) continue;
        y[i] = t;
        lattice_sphere(p, R - t * t, i + 1, y, out);
    }
}

bool on_edge(const IVec& x, const IVec& l, const TangentialSet& S)
{
    QVec xq = to_q(x);
    return mass(l) == 0 ? plane_membership(xq, l, S) : sphere_membership(xq, l, S);
}

}  // namespace

std::vector<IVec> integral_points_on_sphere(const IVec& l, const TangentialSet& S)
{
    if (mass(l) != -2) throw InputError("sphere requires a red edge: " + e_string(l));
    IVec p = momentum(l, S);
    Int R = -norm2(p) - 2 * weighted_norm(l, S);
    std::vector<IVec> out;
    if (R < 0) return out;
    IVec y(p.size());
    std::vector<IVec> ys;
    lattice_sphere(p, R, 0, y, ys);
    for (const auto& v : ys) {
        IVec x(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) x[i] = (v[i] - p[i]) / 2;
        out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

ArithmeticVerdict certify_arithmetic_genericity(const TangentialSet& S, int q)
{
    if (S.n() > 2) throw InputError("arithmetic certification is limited to n <= 2");
    ArithmeticVerdict v;
    Lattice span(S.sites());
    auto edges = enumerate_edges(q, S.m());
    auto eligible = [&](const IVec& x) { return !S.contains(x) && span.contains(x); };

    auto fail = [&](const IVec& x, std::vector<IVec> labels, std::string why) {
        v.pass = false;
        v.witness = x;
        v.labels = std::move(labels);
        v.detail = std::move(why);
    };

    // Any configuration with a red edge puts x on one of finitely many sphere points.
    for (const auto& e : edges) {
        if (e.color() != Color::Red) continue;
        for (const auto& x : integral_points_on_sphere(e.coeffs, S)) {
            if (!eligible(x)) continue;
            ++v.sphere_points;
            std::vector<IVec> labels;
            for (const auto& f : edges)
                if (on_edge(x, f.coeffs, S)) labels.push_back(f.coeffs);
            if (labels.size() >= 2) {
                fail(x, labels, "lattice point on two edges");
                return v;
            }
        }
    }

    // Two black edges: x solves two linear equations.
    std::vector<const Edge*> black;
    for (const auto& e : edges)
        if (e.color() == Color::Black) black.push_back(&e);
    int n = S.n();
    for (std::size_t i = 0; i < black.size(); ++i) {
        for (std::size_t j = i + 1; j < black.size(); ++j) {
            const IVec &l1 = black[i]->coeffs, &l2 = black[j]->coeffs;
            ++v.black_pairs;
            QMat A;
            QVec b;
            for (const IVec* l : {&l1, &l2}) {
                IVec p = momentum(*l, S);
                QVec row(n);
                for (int c = 0; c < n; ++c) row[c] = static_cast<long>(2 * p[c]);
                A.push_back(row);
                b.push_back(mpq_class(static_cast<long>(norm2(p) + weighted_norm(*l, S))));
            }
            AffineSolution sol = solve_affine(A, b, n);
            if (!sol.consistent) continue;
            if (sol.dimension() > 0) {
                fail({}, {l1, l2}, "two black edges share a line of solutions");
                return v;
            }
            if (!is_integral(sol.particular)) continue;
            IVec x = to_int(sol.particular);
            if (!eligible(x)) continue;
            fail(x, {l1, l2}, "lattice point on two black edges");
            return v;
        }
    }
    return v;
}

mpq_class default_sector_constant(int m) { return mpq_class(1, 4 * m * m); }

bool sector_condition(const TangentialSet& S, int q, const mpq_class& c)
{
    auto edges = enumerate_edges(q, S.m());
    std::vector<IVec> p;
    for (const auto& e : edges) p.push_back(momentum(e.coeffs, S));
    mpq_class c2 = c * c;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            if (edges[j].coeffs == neg(edges[i].coeffs)) continue;
            // |p1 ^ p2|^2 = |p1|^2 |p2|^2 - (p1, p2)^2
            mpz_class a(static_cast<long>(norm2(p[i]))), b(static_cast<long>(norm2(p[j]))),
                d(static_cast<long>(dot(p[i], p[j])));
            mpz_class wedge = a * b - d * d;
            if (mpq_class(wedge) < c2 * mpq_class(a * b)) return false;
        }
    }
    return true;
}

TangentialSet search_candidate(const SearchOptions& opt, std::size_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<Int> d(-opt.radius, opt.radius);
    std::vector<IVec> sites;
    std::set<IVec> seen;
    while (static_cast<int>(sites.size()) < opt.m) {
        IVec v(opt.n);
        for (auto& x : v) x = d(rng);
        if (seen.insert(v).second) sites.push_back(v);
    }
    return TangentialSet(opt.n, sites);
}

namespace {

enum class Outcome { Pass, Sector, Geometric, Arithmetic };

Outcome evaluate(const SearchOptions& opt, const TangentialSet& S, const Catalog& cat, const mpq_class& c)
{
    if (opt.require_sector && !sector_condition(S, opt.q, c)) return Outcome::Sector;
    if (!check_all(S, opt.q, cat, false).pass()) return Outcome::Geometric;
    if (opt.require_arithmetic && !certify_arithmetic_genericity(S, opt.q).pass) return Outcome::Arithmetic;
    return Outcome::Pass;
}

}  // namespace

SearchResult find_arithmetically_generic(const SearchOptions& opt, const Catalog& cat)
{
    if (opt.m < 2 || opt.n < 1) throw InputError("search needs n >= 1 and m >= 2");
    if (opt.radius < 1) throw InputError("search radius must be positive");
    if (cat.n != opt.n || cat.q != opt.q) throw InputError("catalog does not match the search dimensions");
    if (opt.require_arithmetic && opt.n > 2) throw InputError("arithmetic certification is limited to n <= 2");
    Int cube = 1;
    for (int i = 0; i < opt.n; ++i) cube *= 2 * opt.radius + 1;
    if (cube < opt.m) throw InputError("radius too small to hold m distinct sites");

    mpq_class c = sgn(opt.sector_c) > 0 ? opt.sector_c : default_sector_constant(opt.m);
    SearchResult r;
    std::size_t batch = 8;
#ifdef _OPENMP
    if (opt.parallel) batch = std::max<std::size_t>(batch, 2 * static_cast<std::size_t>(omp_get_max_threads()));
#endif
    for (std::size_t start = 0; start < opt.max_candidates && !r.found; start += batch) {
        std::size_t count = std::min(batch, opt.max_candidates - start);
        std::vector<Outcome> out(count);
        std::vector<TangentialSet> sets(count);
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
        for (long k = 0; k < static_cast<long>(count); ++k) {
            sets[k] = search_candidate(opt, start + k);
            out[k] = evaluate(opt, sets[k], cat, c);
        }
        for (std::size_t k = 0; k < count; ++k) {
            ++r.tried;
            if (out[k] == Outcome::Sector) ++r.rejected_sector;
            else if (out[k] == Outcome::Geometric) ++r.rejected_geometric;
            else if (out[k] == Outcome::Arithmetic) ++r.rejected_arithmetic;
            else {
                r.found = true;
                r.S = sets[k];
                r.index = start + k;
                break;
            }
        }
    }
    r.report = (r.found ? "found at candidate " + std::to_string(r.index) : "exhausted") + " after " +
               std::to_string(r.tried) + " candidates (sector " + std::to_string(r.rejected_sector) +
               ", geometric " + std::to_string(r.rejected_geometric) + ", arithmetic " +
               std::to_string(r.rejected_arithmetic) + ")";
    return r;
}

}  // namespace resonf
