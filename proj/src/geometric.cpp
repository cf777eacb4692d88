#include "resonf/geometric.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <omp.h>

namespace resonf {

namespace {

struct EdgeData {
    IVec ell, p;
    Int w;  // sum l_i |v_i|^2
    Color color;
};

std::vector<EdgeData> edge_data(const TangentialSet& S, int q)
{
    std::vector<EdgeData> out;
    for (const auto& e : enumerate_edges(q, S.m()))
        out.push_back({e.coeffs, momentum(e.coeffs, S), weighted_norm(e.coeffs, S), e.color()});
    return out;
}

struct Window {
    int n, N;
    Int side;
    std::size_t size;
    std::vector<char> ok;  // in Span(S) and not a site

    Window(const TangentialSet& S, int N_, bool parallel) : n(S.n()), N(N_), side(2 * N_ + 1)
    {
        size = 1;
        for (int c = 0; c < n; ++c) size *= side;
        ok.assign(size, 0);
        Lattice span(S.sites());
        bool full = span.rank() == n;
        if (full) {
            mpz_class d = 1;
            for (int i = 0; i < n; ++i) d *= span.basis()[i][i];
            full = (d == 1);
        }
#pragma omp parallel for schedule(static) if (parallel)
        for (long long i = 0; i < static_cast<long long>(size); ++i) {
            IVec k = point(i);
            ok[i] = (full || span.contains(k)) && !S.contains(k);
        }
    }

    IVec point(std::size_t i) const
    {
        IVec k(n);
        for (int c = 0; c < n; ++c) {
            k[c] = static_cast<Int>(i % side) - N;
            i /= side;
        }
        return k;
    }

    bool inside(const IVec& k) const
    {
        for (Int x : k)
            if (x < -N || x > N) return false;
        return true;
    }

    std::size_t index(const IVec& k) const
    {
        std::size_t i = 0;
        for (int c = n - 1; c >= 0; --c) i = i * side + static_cast<std::size_t>(k[c] + N);
        return i;
    }
};

// Neighbour of k through edge d, if k satisfies the relation.
bool neighbour(const IVec& k, const EdgeData& d, IVec& h)
{
    Int kp = dot(k, d.p), pp = norm2(d.p);
    if (d.color == Color::Black) {
        if (2 * kp != pp + d.w) return false;
        h = sub(k, d.p);
    } else {
        if (2 * norm2(k) + 2 * kp != -(pp + d.w)) return false;
        h = sub(neg(k), d.p);
    }
    return true;
}

struct ShardOut {
    std::vector<GeoEdge> edges;
    std::vector<std::size_t> touching;
};

void scan_point(const Window& W, const TangentialSet& S, const std::vector<EdgeData>& ed, std::size_t i, ShardOut& out)
{
    if (!W.ok[i]) return;
    IVec k = W.point(i), h;
    for (const auto& d : ed) {
        if (!neighbour(k, d, h)) continue;
        if (!W.inside(h)) {
            if (!S.contains(h)) out.touching.push_back(i);
            continue;
        }
        if (!W.ok[W.index(h)]) continue;
        // each edge is seen from both ends; keep the copy with u <= v
        if (h < k) continue;
        out.edges.push_back(GeoEdge{k, h, d.ell, d.color});
    }
}

ShardOut scan_window(const Window& W, const TangentialSet& S, const std::vector<EdgeData>& ed, bool parallel)
{
    ShardOut all;
    if (!parallel) {
        for (std::size_t i = 0; i < W.size; ++i) scan_point(W, S, ed, i, all);
    } else {
        int shards = std::max(1, omp_get_max_threads()) * 8;
        std::vector<ShardOut> parts(shards);
        std::size_t chunk = (W.size + shards - 1) / shards;
#pragma omp parallel for schedule(dynamic)
        for (int s = 0; s < shards; ++s) {
            std::size_t lo = s * chunk, hi = std::min(W.size, lo + chunk);
            for (std::size_t i = lo; i < hi; ++i) scan_point(W, S, ed, i, parts[s]);
        }
        for (auto& p : parts) {
            all.edges.insert(all.edges.end(), p.edges.begin(), p.edges.end());
            all.touching.insert(all.touching.end(), p.touching.begin(), p.touching.end());
        }
    }
    std::sort(all.edges.begin(), all.edges.end());
    std::sort(all.touching.begin(), all.touching.end());
    all.touching.erase(std::unique(all.touching.begin(), all.touching.end()), all.touching.end());
    return all;
}

struct DSU {
    std::vector<std::size_t> p;
    explicit DSU(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    std::size_t find(std::size_t x)
    {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b)
    {
        a = find(a), b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};

void finish(GeoComponent& c)
{
    std::sort(c.vertices.begin(), c.vertices.end());
    std::sort(c.edges.begin(), c.edges.end());
    for (const auto& e : c.edges) {
        if (e.color == Color::Red) c.contains_red = true;
        if (e.u == e.v) c.self_conjugate = true;
    }
}

}  // namespace

bool sphere_membership(const QVec& x, const IVec& l, const TangentialSet& S)
{
    if (mass(l) != -2) throw InputError("sphere_membership needs a red edge");
    IVec p = momentum(l, S);
    mpq_class lhs = 0;
    for (size_t c = 0; c < x.size(); ++c) lhs += x[c] * x[c] + x[c] * static_cast<long>(p[c]);
    mpq_class rhs(static_cast<long>(-(norm2(p) + weighted_norm(l, S))), 2);
    rhs.canonicalize();
    return lhs == rhs;
}

bool plane_membership(const QVec& x, const IVec& l, const TangentialSet& S)
{
    if (mass(l) != 0) throw InputError("plane_membership needs a black edge");
    IVec p = momentum(l, S);
    if (is_zero(p)) throw InputError("pi(l) = 0: no hyperplane for " + e_string(l));
    mpq_class lhs = 0;
    for (size_t c = 0; c < x.size(); ++c) lhs += x[c] * static_cast<long>(p[c]);
    mpq_class rhs(static_cast<long>(norm2(p) + weighted_norm(l, S)), 2);
    rhs.canonicalize();
    return lhs == rhs;
}

bool edge_relation_holds(const GeoEdge& e, const TangentialSet& S)
{
    IVec p = momentum(e.ell, S);
    Int w = weighted_norm(e.ell, S);
    if (e.color == Color::Black)
        return mass(e.ell) == 0 && is_zero(sub(add(e.v, p), e.u)) && norm2(e.u) - norm2(e.v) == w;
    return mass(e.ell) == -2 && is_zero(add(add(p, e.u), e.v)) && w + norm2(e.u) + norm2(e.v) == 0;
}

int GeoComponent::index_of(const IVec& k) const
{
    auto it = std::lower_bound(vertices.begin(), vertices.end(), k);
    if (it == vertices.end() || *it != k) return -1;
    return static_cast<int>(it - vertices.begin());
}

std::vector<GeoEdge> window_edges(const TangentialSet& S, int q, int window, bool parallel)
{
    Window W(S, window, parallel);
    return scan_window(W, S, edge_data(S, q), parallel).edges;
}

GeoComponent special_component(const TangentialSet& S, int q)
{
    GeoComponent c;
    c.is_special = true;
    c.vertices = S.sites();
    IVec h;
    auto ed = edge_data(S, q);
    for (const auto& k : S.sites())
        for (const auto& d : ed) {
            if (!neighbour(k, d, h) || !S.contains(h) || h < k) continue;
            c.edges.push_back(GeoEdge{k, h, d.ell, d.color});
        }
    finish(c);
    return c;
}

GeoGraph build_graph(const TangentialSet& S, int q, int window, const BuildOptions& opt)
{
    if (window < 1) throw InputError("window radius must be positive");
    Window W(S, window, opt.parallel);
    auto scan = scan_window(W, S, edge_data(S, q), opt.parallel);

    DSU dsu(W.size);
    for (const auto& e : scan.edges) dsu.unite(W.index(e.u), W.index(e.v));
    std::vector<char> has_edge(W.size, 0), touch(W.size, 0);
    for (const auto& e : scan.edges) has_edge[W.index(e.u)] = has_edge[W.index(e.v)] = 1;
    for (auto i : scan.touching) touch[i] = 1;

    GeoGraph g;
    g.window = window;
    g.edge_count = scan.edges.size();
    std::map<std::size_t, std::size_t> slot;
    for (std::size_t i = 0; i < W.size; ++i) {
        if (!W.ok[i]) continue;
        ++g.points;
        std::size_t r = dsu.find(i);
        if (opt.drop_isolated && !has_edge[i] && !touch[i]) continue;
        auto [it, fresh] = slot.emplace(r, g.components.size());
        if (fresh) g.components.emplace_back();
        auto& c = g.components[it->second];
        c.vertices.push_back(W.point(i));
        if (touch[i]) c.truncated = true;
    }
    for (const auto& e : scan.edges) g.components[slot.at(dsu.find(W.index(e.u)))].edges.push_back(e);
    for (auto& c : g.components) finish(c);
    std::sort(g.components.begin(), g.components.end(),
              [](const GeoComponent& a, const GeoComponent& b) { return a.root() < b.root(); });
    g.special = special_component(S, q);
    return g;
}

SizeAudit component_size_audit(const std::vector<GeoComponent>& comps, int n)
{
    SizeAudit a;
    for (const auto& c : comps) {
        std::size_t sz = c.vertices.size();
        ++a.components;
        ++a.histogram[sz];
        if (c.truncated) ++a.truncated;
        if (c.contains_red) {
            ++a.red_containing;
            a.max_red = std::max(a.max_red, sz);
            if (sz > static_cast<std::size_t>(2 * n))
                a.violations.push_back({"red-size", c.root(), sz, "red component exceeds 2n vertices"});
        } else {
            ++a.black_only;
            a.max_black = std::max(a.max_black, sz);
            if (sz > static_cast<std::size_t>(n + 1))
                a.violations.push_back({"black-size", c.root(), sz, "black component exceeds n+1 vertices"});
        }
        std::set<IVec> labels;
        for (const auto& e : c.edges) {
            if (e.color != Color::Black) continue;
            IVec key = std::max(e.ell, neg(e.ell));
            if (!labels.insert(key).second)
                a.violations.push_back({"repeated-label", c.root(), sz, "black label " + e_string(key) + " used twice"});
        }
    }
    a.pass = a.violations.empty();
    return a;
}

}  // namespace resonf
