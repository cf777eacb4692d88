#pragma once

#include "resonf/core.hpp"

#include <map>

namespace resonf {

using Exponent = std::vector<int>;

// Polynomial with integer coefficients in s_1..s_m, where s_i stands for sqrt(xi_i).
// Polynomials in xi are the ones with all exponents even.
class Poly {
public:
    Poly() = default;
    explicit Poly(int m) : m_(m) {}
    static Poly constant(int m, const mpz_class& c);
    static Poly monomial(const Exponent& e, const mpz_class& c);
    // xi^k, i.e. s^(2k)
    static Poly xi_monomial(const std::vector<int>& k, const mpz_class& c);

    int nvars() const { return m_; }
    bool is_zero() const { return t_.empty(); }
    const std::map<Exponent, mpz_class>& terms() const { return t_; }
    mpz_class coeff(const Exponent& e) const;
    void add_term(const Exponent& e, const mpz_class& c);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const mpz_class& c) const;
    Poly& operator+=(const Poly& o);
    bool operator==(const Poly& o) const { return t_ == o.t_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    bool is_even() const;
    // d/dxi_i on an even polynomial
    Poly d_xi(int i) const;
    // exact division by an integer; throws if some coefficient is not divisible
    Poly div_exact(const mpz_class& c) const;
    bool divisible_by(const mpz_class& c) const;
    // total s-degree if homogeneous, -1 otherwise (and for zero)
    int homogeneous_degree() const;
    mpq_class eval_s(const QVec& s) const;
    double eval_s(const std::vector<double>& s) const;
    // evaluation of an even polynomial at xi directly, no square roots needed
    mpq_class eval_xi(const QVec& xi) const;
    // lexicographically largest exponent (s_1 most significant)
    std::pair<Exponent, mpz_class> leading_term() const;
    std::string to_string() const;

private:
    int m_ = 0;
    std::map<Exponent, mpz_class> t_;
};

}  // namespace resonf
