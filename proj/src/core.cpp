#include "resonf/core.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace resonf {

IVec unit(int m, int i, Int c)
{
    IVec v(m, 0);
    v[i] = c;
    return v;
}

static void check_len(const IVec& a, const IVec& b)
{
    if (a.size() != b.size()) throw InputError("vector length mismatch");
}

IVec add(const IVec& a, const IVec& b)
{
    check_len(a, b);
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IVec sub(const IVec& a, const IVec& b)
{
    check_len(a, b);
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

IVec neg(const IVec& a) { return scale(a, -1); }

IVec scale(const IVec& a, Int c)
{
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    return r;
}

Int dot(const IVec& a, const IVec& b)
{
    check_len(a, b);
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int norm2(const IVec& a) { return dot(a, a); }

Int l1(const IVec& a)
{
    Int s = 0;
    for (Int x : a) s += std::llabs(x);
    return s;
}

bool is_zero(const IVec& a)
{
    return std::all_of(a.begin(), a.end(), [](Int x) { return x == 0; });
}

std::string to_string(const IVec& a)
{
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << ")";
    return os.str();
}

std::string e_string(const IVec& a)
{
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < a.size(); ++i) {
        Int c = a[i];
        if (c == 0) continue;
        if (c < 0) os << "-";
        else if (!first) os << "+";
        if (std::llabs(c) != 1) os << std::llabs(c);
        os << "e" << (i + 1);
        first = false;
    }
    return first ? "0" : os.str();
}

QVec to_q(const IVec& a)
{
    QVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = mpq_class(static_cast<long>(a[i]));
    return r;
}

bool is_integral(const QVec& x)
{
    return std::all_of(x.begin(), x.end(), [](const mpq_class& c) { return c.get_den() == 1; });
}

IVec to_int(const QVec& x)
{
    IVec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i].get_den() != 1) throw InputError("non-integral vector");
        r[i] = x[i].get_num().get_si();
    }
    return r;
}

TangentialSet::TangentialSet(int n, std::vector<IVec> sites) : n_(n), sites_(std::move(sites))
{
    if (n_ < 1) throw InputError("dimension n must be positive");
    if (sites_.empty()) throw InputError("at least one site is required");
    for (size_t i = 0; i < sites_.size(); ++i) {
        if (static_cast<int>(sites_[i].size()) != n_)
            throw InputError("site " + std::to_string(i + 1) + " has wrong dimension");
        norms_.push_back(norm2(sites_[i]));
        sorted_.emplace_back(sites_[i], static_cast<int>(i));
    }
    std::sort(sorted_.begin(), sorted_.end());
    for (size_t i = 1; i < sorted_.size(); ++i)
        if (sorted_[i].first == sorted_[i - 1].first)
            throw InputError("duplicate site: v" + std::to_string(sorted_[i - 1].second + 1) + " = v" +
                             std::to_string(sorted_[i].second + 1));
}

int TangentialSet::index_of(const IVec& k) const
{
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), k,
                               [](const std::pair<IVec, int>& p, const IVec& x) { return p.first < x; });
    if (it != sorted_.end() && it->first == k) return it->second;
    return -1;
}

Int TangentialSet::max_abs() const
{
    Int r = 0;
    for (const auto& v : sites_)
        for (Int x : v) r = std::max(r, std::llabs(x));
    return r;
}

IVec momentum(const IVec& a, const TangentialSet& S)
{
    if (static_cast<int>(a.size()) != S.m()) throw InputError("coefficient vector length differs from m");
    IVec r(S.n(), 0);
    for (int i = 0; i < S.m(); ++i) {
        if (a[i] == 0) continue;
        for (int c = 0; c < S.n(); ++c) r[c] += a[i] * S.site(i)[c];
    }
    return r;
}

Int mass(const IVec& a)
{
    Int s = 0;
    for (Int x : a) s += x;
    return s;
}

Int weighted_norm(const IVec& a, const TangentialSet& S)
{
    if (static_cast<int>(a.size()) != S.m()) throw InputError("coefficient vector length differs from m");
    Int s = 0;
    for (int i = 0; i < S.m(); ++i) s += a[i] * S.site_norm2(i);
    return s;
}

const char* color_name(Color c) { return c == Color::Black ? "black" : "red"; }

IVec Edge::plus() const
{
    IVec r(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) r[i] = std::max<Int>(coeffs[i], 0);
    return r;
}

IVec Edge::minus() const
{
    IVec r(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) r[i] = std::max<Int>(-coeffs[i], 0);
    return r;
}

bool is_edge(const IVec& l, int q)
{
    Int s = l1(l), h = mass(l);
    if (s == 0 || s > 2 * q || s % 2 != 0) return false;
    if (h != 0 && h != -2) return false;
    if (h == -2 && s == 2) {
        for (Int x : l)
            if (x == -2) return false;
    }
    return true;
}

static void edges_rec(int q, int m, int i, Int budget, IVec& cur, std::vector<Edge>& out)
{
    if (i == m) {
        if (is_edge(cur, q)) out.push_back(Edge{cur});
        return;
    }
    for (Int c = -budget; c <= budget; ++c) {
        cur[i] = c;
        edges_rec(q, m, i + 1, budget - std::llabs(c), cur, out);
    }
    cur[i] = 0;
}

std::vector<Edge> enumerate_edges(int q, int m)
{
    if (q < 1) throw InputError("q must be positive");
    if (m < 2) throw InputError("edges need at least two sites (m >= 2)");
    std::vector<Edge> out;
    IVec cur(m, 0);
    edges_rec(q, m, 0, 2 * q, cur, out);
    std::sort(out.begin(), out.end(), [](const Edge& x, const Edge& y) { return x.coeffs < y.coeffs; });
    return out;
}

GroupElement identity(int m) { return GroupElement{IVec(m, 0), 1}; }

GroupElement operator*(const GroupElement& g, const GroupElement& h)
{
    // (a,s)(b,t) = (a + s b, s t)
    check_len(g.a, h.a);
    GroupElement r;
    r.a.resize(g.a.size());
    for (size_t i = 0; i < g.a.size(); ++i) r.a[i] = g.a[i] + g.sigma * h.a[i];
    r.sigma = g.sigma * h.sigma;
    return r;
}

GroupElement inverse(const GroupElement& g)
{
    if (g.sigma == -1) return g;
    return GroupElement{neg(g.a), 1};
}

GroupElement quotient(const GroupElement& b, const GroupElement& a) { return b * inverse(a); }

std::string to_string(const GroupElement& g)
{
    return "(" + e_string(g.a) + "," + (g.sigma == 1 ? "+" : "-") + ")";
}

Int energy(const GroupElement& u, const TangentialSet& S)
{
    IVec p = momentum(u.a, S);
    return u.sigma * (norm2(p) + weighted_norm(u.a, S));
}

IVec act_on_point(const GroupElement& g, const IVec& k, const TangentialSet& S)
{
    IVec p = momentum(g.a, S);
    IVec r(k.size());
    for (size_t c = 0; c < k.size(); ++c) r[c] = g.sigma * k[c] - p[c];
    return r;
}

QVec act_on_point(const GroupElement& g, const QVec& k, const TangentialSet& S)
{
    IVec p = momentum(g.a, S);
    QVec r(k.size());
    for (size_t c = 0; c < k.size(); ++c) r[c] = g.sigma * k[c] - mpq_class(static_cast<long>(p[c]));
    return r;
}

QuadraticTag& QuadraticTag::add(int i, int j, Int c)
{
    if (i > j) std::swap(i, j);
    auto key = std::make_pair(i, j);
    Int v = (c_.count(key) ? c_[key] : 0) + c;
    if (v == 0) c_.erase(key);
    else c_[key] = v;
    return *this;
}

QuadraticTag& QuadraticTag::operator+=(const QuadraticTag& o)
{
    for (const auto& [k, v] : o.c_) add(k.first, k.second, v);
    return *this;
}

QuadraticTag QuadraticTag::operator+(const QuadraticTag& o) const
{
    QuadraticTag r = *this;
    r += o;
    return r;
}

QuadraticTag QuadraticTag::operator-(const QuadraticTag& o) const { return *this + o.scaled(-1); }

QuadraticTag QuadraticTag::scaled(Int c) const
{
    QuadraticTag r;
    if (c == 0) return r;
    for (const auto& [k, v] : c_) r.c_[k] = v * c;
    return r;
}

Int QuadraticTag::coeff(int i, int j) const
{
    if (i > j) std::swap(i, j);
    auto it = c_.find({i, j});
    return it == c_.end() ? 0 : it->second;
}

Int QuadraticTag::evaluate(const TangentialSet& S) const
{
    Int s = 0;
    for (const auto& [k, v] : c_) {
        if (k.second >= S.m()) throw InputError("quadratic tag index exceeds m");
        s += v * dot(S.site(k.first), S.site(k.second));
    }
    return s;
}

std::string QuadraticTag::to_string() const
{
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : c_) {
        if (v < 0) os << "-";
        else if (!first) os << "+";
        if (std::llabs(v) != 1) os << std::llabs(v);
        if (k.first == k.second) os << "e" << k.first + 1 << "^2";
        else os << "e" << k.first + 1 << "e" << k.second + 1;
        first = false;
    }
    return os.str();
}

QuadraticTag quadratic_tag(const GroupElement& u)
{
    // C(u) = sigma/2 (a^2 + a^(2)); a_i^2 + a_i is always even
    QuadraticTag t;
    const IVec& a = u.a;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        t.add(i, i, u.sigma * (a[i] * a[i] + a[i]) / 2);
        for (size_t j = i + 1; j < a.size(); ++j)
            if (a[j] != 0) t.add(i, j, u.sigma * a[i] * a[j]);
    }
    return t;
}

}  // namespace resonf
