#include "resonf/genericity.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>
#include <set>

namespace resonf {

void ConstraintVerdict::fail(Violation v)
{
    pass = false;
    ++failures;
    if (violations.size() < 8) violations.push_back(std::move(v));
}

bool GenericityReport::pass() const
{
    return std::all_of(verdicts.begin(), verdicts.end(), [](const ConstraintVerdict& v) { return v.pass; });
}

const ConstraintVerdict* GenericityReport::find(const std::string& name) const
{
    for (const auto& v : verdicts)
        if (v.name == name) return &v;
    return nullptr;
}

namespace {

void box_rec(IVec& cur, int i, Int budget, Int mass_left, int min_l1, int max_l1,
             const std::function<bool(const IVec&)>& bad, BoxScan& out, std::size_t limit)
{
    int m = static_cast<int>(cur.size());
    if (i == m) {
        if (mass_left != 0) return;
        Int used = max_l1 - budget;
        if (used < min_l1) return;
        ++out.checked;
        if (bad(cur)) {
            ++out.hits;
            if (out.witnesses.size() < limit) out.witnesses.push_back(cur);
        }
        return;
    }
    for (Int c = -budget; c <= budget; ++c) {
        Int rest = budget - std::llabs(c);
        // remaining coordinates must be able to absorb the leftover mass
        if (std::llabs(mass_left - c) > rest) continue;
        cur[i] = c;
        box_rec(cur, i + 1, rest, mass_left - c, min_l1, max_l1, bad, out, limit);
    }
    cur[i] = 0;
}

}  // namespace

BoxScan scan_box(int m, int min_l1, int max_l1, Int mass, const std::function<bool(const IVec&)>& bad,
                 bool parallel, std::size_t limit)
{
    BoxScan total;
    if (max_l1 < 0 || m < 1) return total;
    // one shard per value of the first coordinate; merged in order so results are deterministic
    int shards = 2 * max_l1 + 1;
    std::vector<BoxScan> parts(shards);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int s = 0; s < shards; ++s) {
        Int c0 = s - max_l1;
        Int rest = max_l1 - std::llabs(c0);
        if (std::llabs(mass - c0) > rest && m > 1) continue;
        IVec cur(m, 0);
        cur[0] = c0;
        if (m == 1) {
            if (c0 == mass && std::llabs(c0) >= min_l1) {
                ++parts[s].checked;
                if (bad(cur)) {
                    ++parts[s].hits;
                    parts[s].witnesses.push_back(cur);
                }
            }
            continue;
        }
        box_rec(cur, 1, rest, mass - c0, min_l1, max_l1, bad, parts[s], limit);
    }
    for (auto& p : parts) {
        total.checked += p.checked;
        total.hits += p.hits;
        for (auto& w : p.witnesses)
            if (total.witnesses.size() < limit) total.witnesses.push_back(std::move(w));
    }
    return total;
}

ConstraintVerdict check_constraint_1(const TangentialSet& S, int q, bool parallel)
{
    ConstraintVerdict v;
    v.name = "constraint-1";
    int m = S.m();
    auto i_scan = scan_box(m, 2, 2 * q + 2, 0, [&](const IVec& a) { return is_zero(momentum(a, S)); }, parallel);
    v.checked += i_scan.checked;
    for (const auto& w : i_scan.witnesses) v.fail({"i", w, "", "sum n_i v_i = 0 with mass 0"});
    v.failures += i_scan.hits - i_scan.witnesses.size();

    auto ii_scan = scan_box(m, 2, 2 * q + 1, 1, [&](const IVec& a) {
        return norm2(momentum(a, S)) - weighted_norm(a, S) == 0;
    }, parallel);
    v.checked += ii_scan.checked;
    for (const auto& w : ii_scan.witnesses) v.fail({"ii", w, "", "|sum n_i v_i|^2 = sum n_i |v_i|^2 with mass 1"});
    v.failures += ii_scan.hits - ii_scan.witnesses.size();

    if (m >= 2) {
        auto X = enumerate_edges(q, m);
        std::map<IVec, std::vector<IVec>> by_p;
        for (const auto& e : X) {
            ++v.checked;
            IVec p = momentum(e.coeffs, S);
            if (is_zero(p)) v.fail({"iii", e.coeffs, "", "pi(l) = 0 for an edge"});
            by_p[p].push_back(e.coeffs);
        }
        // pi(l - l') = 0 or pi(l + l') = 0 for distinct edges
        for (const auto& [p, ls] : by_p) {
            for (std::size_t a = 0; a < ls.size(); ++a)
                for (std::size_t b = a + 1; b < ls.size(); ++b) v.fail({"iii", sub(ls[a], ls[b]), "", "pi(l - l') = 0"});
            auto it = by_p.find(neg(p));
            if (it == by_p.end() || !(p < it->first)) continue;
            for (const auto& l : ls)
                for (const auto& l2 : it->second) {
                    IVec s = add(l, l2);
                    if (!is_zero(s)) v.fail({"iii", s, "", "pi(l + l') = 0"});
                }
        }
        for (const auto& e : X) {
            if (e.color() != Color::Red) continue;
            ++v.checked;
            if (2 * weighted_norm(e.coeffs, S) + norm2(momentum(e.coeffs, S)) == 0)
                v.fail({"iv", e.coeffs, "", "2 sum l_i |v_i|^2 + |pi(l)|^2 = 0 for a red edge"});
        }
    }
    return v;
}

namespace {

void multisets(int m, int size, const std::function<void(const std::vector<int>&)>& f)
{
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int lo) {
        if (static_cast<int>(cur.size()) == size) {
            f(cur);
            return;
        }
        for (int i = lo; i < m; ++i) {
            cur.push_back(i);
            rec(i);
            cur.pop_back();
        }
    };
    rec(0);
}

}  // namespace

CompletenessVerdict check_completeness_integrability(const TangentialSet& S, int q)
{
    CompletenessVerdict r;
    auto c1 = check_constraint_1(S, q, false);
    r.constraint_pass = std::none_of(c1.violations.begin(), c1.violations.end(),
                                     [](const Violation& v) { return v.item == "i" || v.item == "ii"; });
    int m = S.m(), n = S.n();
    r.complete = true;
    multisets(m, q + 1, [&](const std::vector<int>& A) {
        if (!r.complete) return;
        multisets(m, q, [&](const std::vector<int>& B) {
            if (!r.complete) return;
            IVec w(n, 0);
            Int e = 0;
            for (int i : A) w = add(w, S.site(i)), e += S.site_norm2(i);
            for (int i : B) w = sub(w, S.site(i)), e -= S.site_norm2(i);
            if (norm2(w) == e && !S.contains(w)) {
                r.complete = false;
                r.missing = w;
            }
        });
    });
    r.integrable = true;
    std::map<std::pair<IVec, Int>, std::vector<int>> seen;
    multisets(m, q + 1, [&](const std::vector<int>& A) {
        if (!r.integrable) return;
        IVec w(n, 0);
        Int e = 0;
        for (int i : A) w = add(w, S.site(i)), e += S.site_norm2(i);
        auto [it, fresh] = seen.emplace(std::make_pair(w, e), A);
        if (!fresh) {
            r.integrable = false;
            for (int i : it->second) r.pair_a.push_back(S.site(i));
            for (int i : A) r.pair_b.push_back(S.site(i));
        }
    });
    return r;
}

ConstraintVerdict check_constraint_4(const TangentialSet& S, int q, int bound, bool parallel)
{
    ConstraintVerdict v;
    v.name = "co4";
    if (bound < 0) bound = 4 * q * (S.n() + 1);
    v.notes.push_back("coefficient bound " + std::to_string(bound));
    auto scan = scan_box(S.m(), 1, bound, 0, [&](const IVec& a) { return is_zero(momentum(a, S)); }, parallel);
    v.checked = scan.checked;
    for (const auto& w : scan.witnesses) v.fail({"co4", w, "", "sum l_i v_i = 0 with mass 0"});
    v.failures += scan.hits - scan.witnesses.size();
    return v;
}

QuadraticTag co5_tag(const IVec& a, const IVec& l)
{
    // a.a - 2 a.l + 2 l.l + 2 sum l_i e_i^2 in S^2[Z^m]
    QuadraticTag t;
    int m = static_cast<int>(a.size());
    auto sym = [&](const IVec& x, const IVec& y, Int c) {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (x[i] && y[j]) {
                    // e_i e_j for i != j is counted from both orders
                    t.add(i, j, c * x[i] * y[j]);
                }
    };
    sym(a, a, 1);
    sym(a, l, -2);
    sym(l, l, 2);
    for (int i = 0; i < m; ++i)
        if (l[i]) t.add(i, i, 2 * l[i]);
    return t;
}

ConstraintVerdict check_constraint_5(const TangentialSet& S, int q, int bound, bool parallel)
{
    ConstraintVerdict v;
    v.name = "co5";
    if (bound < 0) bound = 4 * q * (S.n() + 1);
    v.notes.push_back("coefficient bound " + std::to_string(bound));
    if (S.m() < 2) return v;
    struct Red {
        IVec l, p;
        Int rhs;
    };
    std::vector<Red> reds;
    for (const auto& e : enumerate_edges(q, S.m()))
        if (e.color() == Color::Red)
            reds.push_back({e.coeffs, momentum(e.coeffs, S), 2 * energy(GroupElement{e.coeffs, -1}, S)});
    std::vector<IVec> hits_l;
    auto bad = [&](const IVec& a) {
        IVec pa = momentum(a, S);
        Int na = norm2(pa);
        for (const auto& r : reds)
            if (na - 2 * dot(pa, r.p) == r.rhs && !co5_tag(a, r.l).is_zero()) return true;
        return false;
    };
    auto scan = scan_box(S.m(), 0, bound, -2, bad, parallel);
    v.checked = scan.checked * reds.size();
    for (const auto& w : scan.witnesses) {
        IVec pa = momentum(w, S);
        for (const auto& r : reds)
            if (norm2(pa) - 2 * dot(pa, r.p) == r.rhs && !co5_tag(w, r.l).is_zero())
                v.fail({"co5", w, "", "equation holds with l = " + e_string(r.l)});
    }
    v.failures = std::max(v.failures, scan.hits);
    return v;
}

std::vector<TangentialSet> random_pool(int n, int m, int count, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> d(-97, 97);
    std::vector<TangentialSet> pool;
    while (static_cast<int>(pool.size()) < count) {
        std::set<IVec> pts;
        while (static_cast<int>(pts.size()) < m) {
            IVec v(n);
            for (auto& x : v) x = d(rng);
            pts.insert(v);
        }
        std::vector<IVec> sites(pts.begin(), pts.end());
        std::shuffle(sites.begin(), sites.end(), rng);
        pool.emplace_back(n, sites);
    }
    return pool;
}

static void require_catalog(const TangentialSet& S, int q, const Catalog& cat)
{
    if (cat.n != S.n() || cat.q != q)
        throw InputError("catalog for (n=" + std::to_string(cat.n) + ", q=" + std::to_string(cat.q) +
                         ") does not match the sites (n=" + std::to_string(S.n()) + ", q=" + std::to_string(q) + ")");
}

static std::string map_string(const CombGraph& G, const std::vector<int>& map)
{
    std::string s;
    for (int i : support(G)) s += (s.empty() ? "" : ",") + std::to_string(i + 1) + "->" + std::to_string(map[i] + 1);
    return s;
}

std::vector<ConstraintVerdict> check_constraint_6_8(const TangentialSet& S, int q, const Catalog& cat)
{
    require_catalog(S, q, cat);
    ConstraintVerdict co6, co8;
    co6.name = "co6";
    co8.name = "co8";
    for (const auto& e : cat.entries) {
        if (e.kind == EntryKind::Avoidable) {
            for (const auto& map : injections(e.graph, S.m())) {
                CombGraph G = inject(e.graph, map, S.m());
                for (const auto& rel : e.relations) {
                    QuadraticTag t = avoidable_resonance(G, rel);
                    if (t.is_zero()) continue;
                    ++co6.checked;
                    if (t.evaluate(S) == 0)
                        co6.fail({"co6", rel, e.id, "resonance " + t.to_string() + " vanishes at S, indices " + map_string(e.graph, map)});
                }
            }
        } else if (e.kind == EntryKind::Possible || e.kind == EntryKind::ZeroResonance) {
            if (e.ranks.colored_degenerate) continue;
            for (const auto& map : injections(e.graph, S.m())) {
                CombGraph G = inject(e.graph, map, S.m());
                std::vector<IVec> black, red;
                for (std::size_t i = 1; i < G.size(); ++i)
                    (G.vertices[i].sigma == 1 ? black : red).push_back(momentum(G.vertices[i].a, S));
                ++co8.checked;
                if (rank(black) < static_cast<int>(black.size()))
                    co8.fail({"co8", {}, e.id, "black momenta dependent, indices " + map_string(e.graph, map)});
                else if (rank(red) < static_cast<int>(red.size()))
                    co8.fail({"co8", {}, e.id, "red momenta dependent, indices " + map_string(e.graph, map)});
            }
        }
    }
    return {co6, co8};
}

ConstraintVerdict check_constraint_7(const TangentialSet& S, int q, const Catalog& cat, std::size_t* special)
{
    require_catalog(S, q, cat);
    ConstraintVerdict v;
    v.name = "co7";
    auto pool = random_pool(S.n(), S.m());
    std::size_t specials = 0, undetermined = 0;
    for (const auto& e : cat.entries) {
        if (e.kind != EntryKind::RankExcess && e.kind != EntryKind::ZeroResonance) continue;
        for (const auto& map : injections(e.graph, S.m())) {
            CombGraph G = inject(e.graph, map, S.m());
            ++v.checked;
            Compatibility c = compatibility(G, S);
            int generic_rank = 0;
            for (const auto& T : pool) generic_rank = std::max(generic_rank, compatibility(G, T).linear_rank);
            if (c.linear_rank < generic_rank) {
                v.fail({"co7", {}, e.id, "selected equations become dependent at S, indices " + map_string(e.graph, map)});
                continue;
            }
            if (!c.consistent) continue;
            if (!c.determined) {
                ++undetermined;
                continue;
            }
            bool identical = true, on_site = true;
            for (const auto& T : pool) {
                Compatibility ct = compatibility(G, T);
                if (!ct.consistent || !ct.determined) {
                    identical = false;
                    break;
                }
                if (!is_integral(ct.x) || !T.contains(to_int(ct.x))) on_site = false;
            }
            bool x_in_S = is_integral(c.x) && S.contains(to_int(c.x));
            if (identical && on_site && x_in_S) {
                ++specials;
                continue;
            }
            std::string why = identical ? "identically compatible but the solution is not a site"
                                        : "equations compatible at S";
            v.fail({"co7", {}, e.id, why + ", indices " + map_string(e.graph, map)});
        }
    }
    v.notes.push_back(std::to_string(specials) + " special (site-realized) instances recorded");
    if (undetermined)
        v.notes.push_back(std::to_string(undetermined) + " instances with positive-dimensional solution sets");
    if (special) *special = specials;
    return v;
}

GenericityReport check_all(const TangentialSet& S, int q, const Catalog& cat, bool parallel)
{
    GenericityReport r;
    r.verdicts.push_back(check_constraint_1(S, q, parallel));
    r.verdicts.push_back(check_constraint_4(S, q, -1, parallel));
    r.verdicts.push_back(check_constraint_5(S, q, -1, parallel));
    for (auto& v : check_constraint_6_8(S, q, cat)) r.verdicts.push_back(std::move(v));
    r.verdicts.push_back(check_constraint_7(S, q, cat, &r.special_graphs));
    return r;
}

}  // namespace resonf
