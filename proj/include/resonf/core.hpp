#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace resonf {

using Int = long long;
using IVec = std::vector<Int>;
using QVec = std::vector<mpq_class>;

// Thrown for malformed input; the CLI maps it to exit status 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

IVec unit(int m, int i, Int c = 1);
IVec add(const IVec& a, const IVec& b);
IVec sub(const IVec& a, const IVec& b);
IVec neg(const IVec& a);
IVec scale(const IVec& a, Int c);
Int dot(const IVec& a, const IVec& b);
Int norm2(const IVec& a);
Int l1(const IVec& a);
bool is_zero(const IVec& a);
std::string to_string(const IVec& a);
// e-basis rendering such as "e1-2e3"; "0" for the zero vector
std::string e_string(const IVec& a);

QVec to_q(const IVec& a);
bool is_integral(const QVec& x);
IVec to_int(const QVec& x);

class TangentialSet {
public:
    TangentialSet() = default;
    TangentialSet(int n, std::vector<IVec> sites);

    int n() const { return n_; }
    int m() const { return static_cast<int>(sites_.size()); }
    const IVec& site(int i) const { return sites_[i]; }
    const std::vector<IVec>& sites() const { return sites_; }
    Int site_norm2(int i) const { return norms_[i]; }
    const std::vector<Int>& omega0() const { return norms_; }
    bool contains(const IVec& k) const { return index_of(k) >= 0; }
    int index_of(const IVec& k) const;
    Int max_abs() const;

private:
    int n_ = 0;
    std::vector<IVec> sites_;
    std::vector<Int> norms_;
    std::vector<std::pair<IVec, int>> sorted_;
};

IVec momentum(const IVec& a, const TangentialSet& S);
Int mass(const IVec& a);
// sum_i a_i |v_i|^2
Int weighted_norm(const IVec& a, const TangentialSet& S);

enum class Color { Black, Red };
const char* color_name(Color c);

struct Edge {
    IVec coeffs;
    Color color() const { return mass(coeffs) == 0 ? Color::Black : Color::Red; }
    IVec plus() const;
    IVec minus() const;
};

std::vector<Edge> enumerate_edges(int q, int m);
bool is_edge(const IVec& l, int q);

struct GroupElement {
    IVec a;
    int sigma = 1;

    bool operator==(const GroupElement& o) const { return sigma == o.sigma && a == o.a; }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }
    bool operator<(const GroupElement& o) const
    {
        if (sigma != o.sigma) return sigma > o.sigma;
        return a < o.a;
    }
    bool is_identity() const { return sigma == 1 && is_zero(a); }
    Color color() const { return sigma == 1 ? Color::Black : Color::Red; }
};

GroupElement identity(int m);
GroupElement operator*(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);
// (b,rho)(a,sigma)^{-1}
GroupElement quotient(const GroupElement& b, const GroupElement& a);
std::string to_string(const GroupElement& g);

Int energy(const GroupElement& u, const TangentialSet& S);
IVec act_on_point(const GroupElement& g, const IVec& k, const TangentialSet& S);
QVec act_on_point(const GroupElement& g, const QVec& k, const TangentialSet& S);

// Element of S^2[Z^m]: keys (i,j) with i <= j stand for e_i e_j.
class QuadraticTag {
public:
    QuadraticTag& add(int i, int j, Int c);
    QuadraticTag& operator+=(const QuadraticTag& o);
    QuadraticTag operator+(const QuadraticTag& o) const;
    QuadraticTag operator-(const QuadraticTag& o) const;
    QuadraticTag scaled(Int c) const;
    bool is_zero() const { return c_.empty(); }
    bool operator==(const QuadraticTag& o) const { return c_ == o.c_; }
    Int coeff(int i, int j) const;
    // pi extended by pi(e_i e_j) = (v_i, v_j)
    Int evaluate(const TangentialSet& S) const;
    const std::map<std::pair<int, int>, Int>& terms() const { return c_; }
    std::string to_string() const;

private:
    std::map<std::pair<int, int>, Int> c_;
};

QuadraticTag quadratic_tag(const GroupElement& u);

}  // namespace resonf
