#pragma once

#include "saet/rational.hpp"

#include <map>
#include <vector>

namespace saet {

// Sparse multivariate polynomial with rational coefficients.
class Poly {
public:
    using Exps = std::vector<int>;

    Poly() = default;
    explicit Poly(std::size_t nvars) : nvars_(nvars) {}
    static Poly constant(std::size_t nvars, const Q& c);
    static Poly variable(std::size_t nvars, std::size_t i);
    // c0 + sum_i coeffs[i] * x_i
    static Poly affine(const Vec& c0_then_coeffs);

    std::size_t nvars() const { return nvars_; }
    const std::map<Exps, Q>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;

    Q eval(const Vec& x) const;
    // Substitutes x_i := subs[i]; all subs must share the same nvars.
    Poly compose(const std::vector<Poly>& subs) const;
    Poly derivative(std::size_t var) const;
    // Coefficient of var^k as a polynomial in the same variables (var absent).
    Poly coeff_in(std::size_t var, int k) const;
    // Smallest k such that coeff_in(var, k) != 0; -1 for the zero polynomial.
    int order_in(std::size_t var) const;
    // Embeds into a ring with more variables (new ones appended).
    Poly extend(std::size_t nvars) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Q& s) const;
    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

    void add_term(const Exps& e, const Q& c);

private:
    std::size_t nvars_ = 0;
    std::map<Exps, Q> terms_;
};

std::string to_string(const Poly& p, const std::vector<std::string>& names = {});

// Univariate helpers on dense coefficient vectors (index = power).
using UPoly = std::vector<Q>;
UPoly to_upoly(const Poly& p); // p must be univariate (nvars == 1)
int uorder(const UPoly& p);    // lowest nonzero power, -1 if zero

} // namespace saet
