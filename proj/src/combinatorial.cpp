#include "resonf/combinatorial.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace resonf {

CombGraph single_vertex(int m) { return CombGraph{m, {identity(m)}}; }

std::optional<GroupElement> edge_between(const GroupElement& from, const GroupElement& to, int q)
{
    GroupElement x = quotient(to, from);
    Int h = mass(x.a);
    if (x.sigma == 1 && h != 0) return std::nullopt;
    if (x.sigma == -1 && h != -2) return std::nullopt;
    if (!is_edge(x.a, q)) return std::nullopt;
    return x;
}

std::vector<CombEdge> graph_edges(const CombGraph& G, int q)
{
    std::vector<CombEdge> out;
    for (int i = 0; i < static_cast<int>(G.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(G.size()); ++j)
            if (auto x = edge_between(G.vertices[i], G.vertices[j], q))
                out.push_back({i, j, x->a, x->color()});
    return out;
}

bool is_connected(const CombGraph& G, int q)
{
    if (G.size() == 0) return false;
    std::vector<std::vector<int>> adj(G.size());
    for (const auto& e : graph_edges(G, q)) {
        adj[e.from].push_back(e.to);
        adj[e.to].push_back(e.from);
    }
    std::vector<char> seen(G.size(), 0);
    std::deque<int> todo{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!todo.empty()) {
        int u = todo.front();
        todo.pop_front();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                todo.push_back(v);
            }
    }
    return count == G.size();
}

Ranks colored_rank(const CombGraph& G)
{
    std::vector<IVec> black, red, all;
    for (std::size_t i = 1; i < G.size(); ++i) {
        const auto& v = G.vertices[i];
        (v.sigma == 1 ? black : red).push_back(v.a);
        all.push_back(v.a);
    }
    Ranks r;
    r.black_count = static_cast<int>(black.size());
    r.red_count = static_cast<int>(red.size());
    r.black = rank(black);
    r.red = rank(red);
    r.total = rank(all);
    r.degenerate = r.total < static_cast<int>(G.size()) - 1;
    r.colored_degenerate = r.black < r.black_count || r.red < r.red_count;
    return r;
}

std::vector<IVec> relations(const CombGraph& G)
{
    std::vector<IVec> vecs;
    for (std::size_t i = 1; i < G.size(); ++i) vecs.push_back(G.vertices[i].a);
    return integer_relations(vecs);
}

QuadraticTag avoidable_resonance(const CombGraph& G, const IVec& c)
{
    if (c.size() + 1 != G.size()) throw InputError("relation length must equal the number of non-root vertices");
    IVec sum(G.m, 0);
    QuadraticTag t;
    for (std::size_t i = 0; i < c.size(); ++i) {
        sum = add(sum, scale(G.vertices[i + 1].a, c[i]));
        t += quadratic_tag(G.vertices[i + 1]).scaled(c[i]);
    }
    if (!is_zero(sum)) throw InputError("coefficients do not form a relation among the vertices");
    return t;
}

const char* kind_name(EntryKind k)
{
    switch (k) {
    case EntryKind::Possible: return "possible";
    case EntryKind::ZeroResonance: return "zero-resonance";
    case EntryKind::Avoidable: return "avoidable";
    case EntryKind::RankExcess: return "rank-excess";
    }
    return "?";
}

std::vector<const CatalogEntry*> Catalog::of_kind(EntryKind k) const
{
    std::vector<const CatalogEntry*> out;
    for (const auto& e : entries)
        if (e.kind == k) out.push_back(&e);
    return out;
}

std::vector<int> support(const CombGraph& G)
{
    std::vector<int> s;
    for (int i = 0; i < G.m; ++i)
        for (const auto& v : G.vertices)
            if (v.a[i] != 0) {
                s.push_back(i);
                break;
            }
    return s;
}

namespace {

Encoding encode(const std::vector<GroupElement>& vs, const std::vector<int>& pos, int m)
{
    Encoding rows;
    rows.reserve(vs.size());
    for (const auto& v : vs) {
        IVec r(m + 1, 0);
        r[0] = v.sigma;
        for (int i = 0; i < m; ++i)
            if (pos[i] >= 0) r[1 + pos[i]] = v.a[i];
        rows.push_back(std::move(r));
    }
    // (0,+) sorts first among sigma = +1 rows only if we order by sign descending
    std::sort(rows.begin(), rows.end(), [](const IVec& x, const IVec& y) {
        if (x[0] != y[0]) return x[0] > y[0];
        return x < y;
    });
    return rows;
}

// Permutation-invariant data attached to one index.
IVec index_signature(const std::vector<GroupElement>& vs, int i)
{
    std::vector<IVec> parts;
    for (const auto& v : vs) {
        if (v.a[i] == 0) continue;
        IVec p{v.sigma, v.a[i]};
        IVec vals;
        for (Int x : v.a)
            if (x) vals.push_back(x);
        std::sort(vals.begin(), vals.end());
        p.insert(p.end(), vals.begin(), vals.end());
        parts.push_back(p);
    }
    std::sort(parts.begin(), parts.end());
    IVec sig;
    for (const auto& p : parts) {
        sig.push_back(static_cast<Int>(p.size()));
        sig.insert(sig.end(), p.begin(), p.end());
    }
    return sig;
}

void best_for_root(const std::vector<GroupElement>& vs, int m, Encoding& best, bool& have)
{
    std::vector<int> sup;
    for (int i = 0; i < m; ++i)
        for (const auto& v : vs)
            if (v.a[i] != 0) {
                sup.push_back(i);
                break;
            }
    std::vector<std::pair<IVec, int>> sigs;
    for (int i : sup) sigs.emplace_back(index_signature(vs, i), i);
    std::sort(sigs.begin(), sigs.end());
    std::vector<std::vector<int>> groups;
    for (std::size_t k = 0; k < sigs.size(); ++k) {
        if (k == 0 || sigs[k].first != sigs[k - 1].first) groups.emplace_back();
        groups.back().push_back(sigs[k].second);
    }
    std::vector<int> pos(m, -1);
    std::function<void(std::size_t, int)> rec = [&](std::size_t gi, int next) {
        if (gi == groups.size()) {
            Encoding e = encode(vs, pos, m);
            if (!have || e < best) {
                best = std::move(e);
                have = true;
            }
            return;
        }
        std::vector<int> g = groups[gi];
        std::sort(g.begin(), g.end());
        do {
            for (std::size_t k = 0; k < g.size(); ++k) pos[g[k]] = next + static_cast<int>(k);
            rec(gi + 1, next + static_cast<int>(g.size()));
        } while (std::next_permutation(g.begin(), g.end()));
        for (int i : groups[gi]) pos[i] = -1;
    };
    rec(0, 0);
}

}  // namespace

Encoding canonical_form(const CombGraph& G)
{
    Encoding best;
    bool have = false;
    for (const auto& r : G.vertices) {
        GroupElement ri = inverse(r);
        std::vector<GroupElement> vs;
        for (const auto& v : G.vertices) vs.push_back(v * ri);
        best_for_root(vs, G.m, best, have);
    }
    return best;
}

CombGraph from_encoding(const Encoding& e, int m)
{
    CombGraph G{m, {}};
    for (const auto& r : e) {
        GroupElement v{IVec(r.begin() + 1, r.end()), static_cast<int>(r[0])};
        v.a.resize(m, 0);
        G.vertices.push_back(v);
    }
    auto it = std::find(G.vertices.begin(), G.vertices.end(), identity(m));
    if (it == G.vertices.end()) throw InputError("encoding lacks the root (0,+)");
    std::rotate(G.vertices.begin(), it, it + 1);
    return G;
}

CombGraph inject(const CombGraph& G, const std::vector<int>& map, int m)
{
    CombGraph H{m, {}};
    for (const auto& v : G.vertices) {
        GroupElement w{IVec(m, 0), v.sigma};
        for (int i = 0; i < G.m; ++i)
            if (v.a[i] != 0) w.a[map[i]] += v.a[i];
        H.vertices.push_back(w);
    }
    return H;
}

std::vector<std::vector<int>> injections(const CombGraph& G, int m)
{
    auto sup = support(G);
    std::vector<std::vector<int>> out;
    if (static_cast<int>(sup.size()) > m) return out;
    std::vector<int> map(G.m, 0), used(m, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == sup.size()) {
            out.push_back(map);
            return;
        }
        for (int t = 0; t < m; ++t) {
            if (used[t]) continue;
            used[t] = 1;
            map[sup[k]] = t;
            rec(k + 1);
            used[t] = 0;
        }
    };
    rec(0);
    return out;
}

namespace {

CatalogEntry classify(const CombGraph& G, int n)
{
    CatalogEntry e;
    e.graph = G;
    e.ranks = colored_rank(G);
    e.relations = relations(G);
    bool nonzero = false;
    for (const auto& r : e.relations) {
        e.resonances.push_back(avoidable_resonance(G, r));
        if (!e.resonances.back().is_zero()) nonzero = true;
    }
    if (nonzero) e.kind = EntryKind::Avoidable;
    else if (e.ranks.total > n) e.kind = EntryKind::RankExcess;
    else if (e.ranks.degenerate || e.ranks.colored_degenerate) e.kind = EntryKind::ZeroResonance;
    else e.kind = EntryKind::Possible;
    return e;
}

std::vector<GroupElement> padded_generators(int q, int k, int m)
{
    std::vector<GroupElement> out;
    if (k < 2) k = 2;
    for (const auto& e : enumerate_edges(q, k)) {
        IVec a = e.coeffs;
        a.resize(m, 0);
        out.push_back(GroupElement{a, e.color() == Color::Black ? 1 : -1});
    }
    return out;
}

}  // namespace

Catalog enumerate_catalog(int n, int q, int max_vertices, bool parallel)
{
    if (n < 1 || q < 1) throw InputError("catalog needs n >= 1 and q >= 1");
    Catalog cat;
    cat.n = n;
    cat.q = q;
    cat.m_eff = 4 * q * (n + 1);
    cat.max_vertices = max_vertices < 0 ? 2 * n + 2 : max_vertices;
    const int m = cat.m_eff;

    std::set<Encoding> seen;
    CombGraph root = single_vertex(m);
    seen.insert(canonical_form(root));
    std::vector<CombGraph> frontier{root};
    std::map<int, std::vector<GroupElement>> gens;

    while (!frontier.empty()) {
        std::vector<int> ks(frontier.size());
        for (std::size_t f = 0; f < frontier.size(); ++f) {
            int k = std::min(static_cast<int>(support(frontier[f]).size()) + 2 * q, m);
            ks[f] = k;
            if (!gens.count(k)) gens[k] = padded_generators(q, k, m);
        }
        std::vector<std::vector<std::pair<Encoding, CombGraph>>> found(frontier.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
        for (long long f = 0; f < static_cast<long long>(frontier.size()); ++f) {
            const CombGraph& G = frontier[f];
            const auto& X = gens.at(ks[f]);
            std::set<Encoding> local;
            for (const auto& u : G.vertices)
                for (const auto& x : X) {
                    GroupElement w = x * u;
                    if (std::find(G.vertices.begin(), G.vertices.end(), w) != G.vertices.end()) continue;
                    CombGraph H = G;
                    H.vertices.push_back(w);
                    Encoding enc = canonical_form(H);
                    if (local.insert(enc).second) found[f].emplace_back(std::move(enc), std::move(H));
                }
        }
        std::map<Encoding, CombGraph> fresh;
        for (auto& part : found)
            for (auto& [enc, H] : part) {
                ++cat.graphs_examined;
                if (seen.count(enc)) continue;
                fresh.emplace(enc, H);
            }
        frontier.clear();
        for (auto& [enc, H] : fresh) {
            seen.insert(enc);
            CombGraph canon = from_encoding(enc, m);
            CatalogEntry e = classify(canon, n);
            bool extend = (e.kind == EntryKind::Possible || e.kind == EntryKind::ZeroResonance) &&
                          static_cast<int>(canon.size()) < cat.max_vertices;
            if (extend) frontier.push_back(canon);
            cat.entries.push_back(std::move(e));
        }
    }
    std::stable_sort(cat.entries.begin(), cat.entries.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
        if (a.graph.size() != b.graph.size()) return a.graph.size() < b.graph.size();
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    });
    for (std::size_t i = 0; i < cat.entries.size(); ++i)
        cat.entries[i].id = "B" + std::to_string(n) + "q" + std::to_string(q) + "-" + std::to_string(i);
    return cat;
}

EquationSystem equations(const CombGraph& G, const TangentialSet& S)
{
    if (G.m != S.m()) throw InputError("graph index count differs from the number of sites");
    EquationSystem eq;
    eq.n = S.n();
    int red0 = -1;
    QVec p0;
    mpq_class k0;
    for (std::size_t i = 1; i < G.size(); ++i) {
        const auto& v = G.vertices[i];
        QVec p = to_q(momentum(v.a, S));
        mpq_class half(static_cast<long>(energy(v, S)), 2);
        half.canonicalize();
        if (v.sigma == 1) {
            eq.lin_rows.push_back(p);
            eq.lin_rhs.push_back(half);
            eq.origin.push_back("black " + to_string(v));
        } else if (red0 < 0) {
            red0 = static_cast<int>(i);
            p0 = p;
            k0 = half;
            eq.has_quadratic = true;
            eq.quad_p = p;
            eq.quad_rhs = half;
        } else {
            QVec d(p.size());
            for (std::size_t c = 0; c < p.size(); ++c) d[c] = p[c] - p0[c];
            eq.lin_rows.push_back(d);
            eq.lin_rhs.push_back(half - k0);
            eq.origin.push_back("red difference " + to_string(v) + " - " + to_string(G.vertices[red0]));
        }
    }
    return eq;
}

const char* location_name(Location l)
{
    switch (l) {
    case Location::InS: return "in-S";
    case Location::InSc: return "in-Sc";
    case Location::NonIntegral: return "non-integral";
    case Location::OutsideSpan: return "outside-span";
    }
    return "?";
}

Location locate(const QVec& x, const TangentialSet& S, const Lattice& span)
{
    if (!is_integral(x)) return Location::NonIntegral;
    IVec k = to_int(x);
    if (!span.contains(k)) return Location::OutsideSpan;
    return S.contains(k) ? Location::InS : Location::InSc;
}

std::string Realization::summary() const
{
    std::ostringstream os;
    switch (kind) {
    case None: os << "no solution"; break;
    case Unique: os << "unique solution"; break;
    case TwoPoints: os << "two points" << (irrational ? " (irrational)" : ""); break;
    case Positive: os << "solution set of dimension " << dimension; break;
    }
    for (std::size_t i = 0; i < locations.size(); ++i) os << (i ? ", " : ": ") << location_name(locations[i]);
    return os.str();
}

static mpq_class qdot(const QVec& a, const QVec& b)
{
    mpq_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

static bool rational_sqrt(const mpq_class& v, mpq_class& r)
{
    if (sgn(v) < 0) return false;
    mpz_class num = v.get_num(), den = v.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
    r = mpq_class(sqrt(num), sqrt(den));
    r.canonicalize();
    return true;
}

Realization realize(const CombGraph& G, const TangentialSet& S)
{
    auto eq = equations(G, S);
    int n = S.n();
    Lattice span(S.sites());
    auto sol = solve_affine(eq.lin_rows, eq.lin_rhs, n);
    Realization r;
    auto add_point = [&](const QVec& x) {
        r.points.push_back(x);
        r.locations.push_back(locate(x, S, span));
    };
    if (!sol.consistent) return r;
    int d = sol.dimension();
    if (!eq.has_quadratic) {
        if (d == 0) {
            r.kind = Realization::Unique;
            r.dimension = 0;
            add_point(sol.particular);
        } else {
            r.kind = Realization::Positive;
            r.dimension = d;
        }
        return r;
    }
    // |y|^2 = R with y = x + p/2 on the affine solution set
    QVec half_p(n), y(n);
    for (int c = 0; c < n; ++c) {
        half_p[c] = eq.quad_p[c] / 2;
        y[c] = sol.particular[c] + half_p[c];
    }
    std::vector<QVec> U;
    for (const auto& dir : sol.directions) {
        QVec u = dir;
        for (const auto& w : U) {
            mpq_class f = qdot(u, w) / qdot(w, w);
            for (int c = 0; c < n; ++c) u[c] -= f * w[c];
        }
        U.push_back(u);
    }
    for (const auto& w : U) {
        mpq_class f = qdot(y, w) / qdot(w, w);
        for (int c = 0; c < n; ++c) y[c] -= f * w[c];
    }
    mpq_class R = eq.quad_rhs + qdot(half_p, half_p);
    mpq_class r2 = R - qdot(y, y);
    auto shifted = [&](const QVec& yy) {
        QVec x(n);
        for (int c = 0; c < n; ++c) x[c] = yy[c] - half_p[c];
        return x;
    };
    if (sgn(r2) < 0) return r;
    if (sgn(r2) == 0) {
        r.kind = Realization::Unique;
        r.dimension = 0;
        add_point(shifted(y));
        return r;
    }
    if (d == 0) return r;
    if (d >= 2) {
        r.kind = Realization::Positive;
        r.dimension = d - 1;
        return r;
    }
    r.kind = Realization::TwoPoints;
    r.dimension = 0;
    mpq_class t;
    if (!rational_sqrt(r2 / qdot(U[0], U[0]), t)) {
        r.irrational = true;
        r.locations = {Location::NonIntegral, Location::NonIntegral};
        return r;
    }
    for (int s : {-1, 1}) {
        QVec yy = y;
        for (int c = 0; c < n; ++c) yy[c] += s * t * U[0][c];
        add_point(shifted(yy));
    }
    return r;
}

Compatibility compatibility(const CombGraph& G, const TangentialSet& S)
{
    auto eq = equations(G, S);
    int n = S.n();
    Compatibility c;
    c.linear_rank = rank(eq.lin_rows);
    auto sol = solve_affine(eq.lin_rows, eq.lin_rhs, n);
    if (!sol.consistent) return c;
    c.determined = sol.directions.empty();
    c.consistent = true;
    if (!c.determined) return c;
    c.x = sol.particular;
    if (eq.has_quadratic) c.consistent = qdot(c.x, c.x) + qdot(c.x, eq.quad_p) == eq.quad_rhs;
    return c;
}

static GroupElement label(const GeoEdge& e)
{
    return GroupElement{e.ell, e.color == Color::Black ? 1 : -1};
}

Lift lift_component(const GeoComponent& A, const TangentialSet& S, int q)
{
    (void)q;
    Lift L;
    std::size_t nv = A.vertices.size();
    std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (edge index, other end)
    std::vector<std::pair<int, int>> ends;
    for (std::size_t i = 0; i < A.edges.size(); ++i) {
        int u = A.index_of(A.edges[i].u), v = A.index_of(A.edges[i].v);
        if (u < 0 || v < 0) {
            L.detail = "edge endpoint outside the component";
            return L;
        }
        ends.emplace_back(u, v);
        adj[u].emplace_back(static_cast<int>(i), v);
        adj[v].emplace_back(static_cast<int>(i), u);
    }
    std::vector<std::optional<GroupElement>> g(nv);
    g[0] = identity(S.m());
    std::deque<int> todo{0};
    while (!todo.empty()) {
        int a = todo.front();
        todo.pop_front();
        for (auto [ei, b] : adj[a]) {
            if (g[b]) continue;
            GroupElement x = label(A.edges[ei]);
            g[b] = (ends[ei].first == a) ? x * *g[a] : inverse(x) * *g[a];
            todo.push_back(b);
        }
    }
    for (std::size_t i = 0; i < nv; ++i)
        if (!g[i]) {
            L.detail = "component is not connected";
            return L;
        }
    L.ok = true;
    for (std::size_t i = 0; i < A.edges.size(); ++i) {
        auto [u, v] = ends[i];
        if (*g[v] != label(A.edges[i]) * *g[u]) {
            L.ok = false;
            L.obstruction.push_back(A.edges[i]);
        }
    }
    for (std::size_t i = 0; i < nv; ++i) L.g.push_back(*g[i]);
    L.graph = CombGraph{S.m(), L.g};
    if (!L.ok) {
        L.detail = "fundamental cycle closed by " + std::to_string(L.obstruction.size()) + " edge(s) is not the identity";
        return L;
    }
    // sigma(k) (|k|^2 + (omega_0, L(k))) is constant on the component
    std::set<Int> values;
    for (std::size_t i = 0; i < nv; ++i)
        values.insert(L.g[i].sigma * (norm2(A.vertices[i]) + weighted_norm(L.g[i].a, S)));
    L.energy_constant = values.size() == 1;
    return L;
}

namespace {

using EdgeKey = std::tuple<int, int, IVec, int>;

EdgeKey normalized(int i, int j, IVec ell, Color c)
{
    if (i > j) {
        std::swap(i, j);
        if (c == Color::Black) ell = neg(ell);
    }
    return {i, j, ell, c == Color::Black ? 0 : 1};
}

std::set<EdgeKey> comb_edge_set(const CombGraph& G, int q)
{
    std::set<EdgeKey> s;
    for (const auto& e : graph_edges(G, q)) s.insert(normalized(e.from, e.to, e.ell, e.color));
    return s;
}

}  // namespace

IsoCertificate certify_isomorphism(const GeoComponent& A, const Lift& L, const TangentialSet& S, int q)
{
    IsoCertificate c;
    if (!L.ok) {
        c.detail = "no lift: " + L.detail;
        return c;
    }
    const IVec& x = A.root();
    std::set<GroupElement> distinct(L.g.begin(), L.g.end());
    if (distinct.size() != L.g.size()) {
        c.detail = "lift is not injective";
        return c;
    }
    for (std::size_t i = 0; i < L.g.size(); ++i)
        if (act_on_point(L.g[i], x, S) != A.vertices[i]) {
            c.detail = "vertex " + to_string(A.vertices[i]) + " is not the image of its lift";
            return c;
        }
    std::set<EdgeKey> geo;
    for (const auto& e : A.edges) geo.insert(normalized(A.index_of(e.u), A.index_of(e.v), e.ell, e.color));
    std::set<EdgeKey> comb = comb_edge_set(L.graph, q);
    if (geo != comb) {
        c.detail = "edge sets differ: " + std::to_string(geo.size()) + " geometric vs " + std::to_string(comb.size()) +
                   " combinatorial";
        return c;
    }
    // right translation by kernel elements of pi permutes the lifts of the same points
    auto ker = integer_relations(S.sites());
    if (ker.size() > 2) ker.resize(2);
    for (const auto& z : ker) {
        GroupElement t{z, 1};
        CombGraph moved{S.m(), {}};
        for (const auto& g : L.g) moved.vertices.push_back(g * t);
        for (std::size_t i = 0; i < moved.size(); ++i)
            if (act_on_point(moved.vertices[i], x, S) != A.vertices[i]) {
                c.detail = "kernel translate by " + e_string(z) + " moves a point";
                return c;
            }
        if (comb_edge_set(moved, q) != comb) {
            c.detail = "kernel translate by " + e_string(z) + " changes the edges";
            return c;
        }
        ++c.kernel_checks;
    }
    c.ok = true;
    return c;
}

}  // namespace resonf
