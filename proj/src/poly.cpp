#include "resonf/poly.hpp"

#include <cmath>
#include <sstream>

namespace resonf {

Poly Poly::constant(int m, const mpz_class& c)
{
    Poly p(m);
    p.add_term(Exponent(m, 0), c);
    return p;
}

Poly Poly::monomial(const Exponent& e, const mpz_class& c)
{
    Poly p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
}

Poly Poly::xi_monomial(const std::vector<int>& k, const mpz_class& c)
{
    Exponent e(k.size());
    for (size_t i = 0; i < k.size(); ++i) e[i] = 2 * k[i];
    return monomial(e, c);
}

mpz_class Poly::coeff(const Exponent& e) const
{
    auto it = t_.find(e);
    return it == t_.end() ? mpz_class(0) : it->second;
}

void Poly::add_term(const Exponent& e, const mpz_class& c)
{
    if (static_cast<int>(e.size()) != m_) throw InputError("polynomial variable count mismatch");
    if (c == 0) return;
    auto [it, fresh] = t_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o)
{
    if (m_ == 0) m_ = o.m_;
    for (const auto& [e, c] : o.t_) add_term(e, c);
    return *this;
}

Poly Poly::operator+(const Poly& o) const
{
    Poly r = *this;
    r += o;
    return r;
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const
{
    Poly r(std::max(m_, o.m_));
    for (const auto& [e1, c1] : t_)
        for (const auto& [e2, c2] : o.t_) {
            Exponent e(e1.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

Poly Poly::operator*(const mpz_class& c) const
{
    Poly r(m_);
    if (c == 0) return r;
    r.t_ = t_;
    for (auto& [e, v] : r.t_) v *= c;
    return r;
}

bool Poly::is_even() const
{
    for (const auto& [e, c] : t_)
        for (int x : e)
            if (x % 2) return false;
    return true;
}

Poly Poly::d_xi(int i) const
{
    if (!is_even()) throw InputError("d_xi needs an even polynomial");
    Poly r(m_);
    for (const auto& [e, c] : t_) {
        if (e[i] == 0) continue;
        Exponent f = e;
        f[i] -= 2;
        r.add_term(f, c * (e[i] / 2));
    }
    return r;
}

bool Poly::divisible_by(const mpz_class& d) const
{
    for (const auto& [e, c] : t_)
        if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t())) return false;
    return true;
}

Poly Poly::div_exact(const mpz_class& d) const
{
    if (!divisible_by(d)) throw std::logic_error("polynomial not divisible by " + d.get_str());
    Poly r = *this;
    for (auto& [e, c] : r.t_) c /= d;
    return r;
}

int Poly::homogeneous_degree() const
{
    int deg = -1;
    for (const auto& [e, c] : t_) {
        int s = 0;
        for (int x : e) s += x;
        if (deg >= 0 && s != deg) return -1;
        deg = s;
    }
    return deg;
}

mpq_class Poly::eval_s(const QVec& s) const
{
    mpq_class total = 0;
    for (const auto& [e, c] : t_) {
        mpq_class v(c);
        for (size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) v *= s[i];
        total += v;
    }
    return total;
}

double Poly::eval_s(const std::vector<double>& s) const
{
    double total = 0;
    for (const auto& [e, c] : t_) {
        double v = c.get_d();
        for (size_t i = 0; i < e.size(); ++i) v *= std::pow(s[i], e[i]);
        total += v;
    }
    return total;
}

mpq_class Poly::eval_xi(const QVec& xi) const
{
    if (!is_even()) throw InputError("eval_xi needs an even polynomial");
    mpq_class total = 0;
    for (const auto& [e, c] : t_) {
        mpq_class v(c);
        for (size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i] / 2; ++k) v *= xi[i];
        total += v;
    }
    return total;
}

std::pair<Exponent, mpz_class> Poly::leading_term() const
{
    if (t_.empty()) return {Exponent(m_, 0), 0};
    return *t_.rbegin();
}

std::string Poly::to_string() const
{
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [e, c] = *it;
        mpz_class a = abs(c);
        bool unit_mono = true;
        for (int x : e)
            if (x) unit_mono = false;
        if (c < 0) os << (first ? "-" : " - ");
        else if (!first) os << " + ";
        if (a != 1 || unit_mono) os << a.get_str();
        bool star = (a != 1 || unit_mono);
        for (size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (star) os << "*";
            star = true;
            os << "s" << i + 1;
            if (e[i] > 1) os << "^" << e[i];
        }
        first = false;
    }
    return os.str();
}

}  // namespace resonf
