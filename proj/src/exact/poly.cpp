#include "saet/poly.hpp"

#include <sstream>

namespace saet {

Poly Poly::constant(std::size_t nvars, const Q& c) {
    Poly p(nvars);
    p.add_term(Exps(nvars, 0), c);
    return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t i) {
    Poly p(nvars);
    Exps e(nvars, 0);
    e[i] = 1;
    p.add_term(e, Q(1));
    return p;
}

Poly Poly::affine(const Vec& c) {
    std::size_t n = c.size() - 1;
    Poly p = constant(n, c[0]);
    for (std::size_t i = 0; i < n; ++i) p = p + variable(n, i) * c[i + 1];
    return p;
}

void Poly::add_term(const Exps& e, const Q& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

int Poly::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int k : e) s += k;
        d = std::max(d, s);
    }
    return d;
}

Q Poly::eval(const Vec& x) const {
    Q s = 0;
    for (const auto& [e, c] : terms_) {
        Q t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k) t *= x[i];
        s += t;
    }
    return s;
}

Poly Poly::compose(const std::vector<Poly>& subs) const {
    std::size_t m = subs.empty() ? 0 : subs[0].nvars();
    Poly r(m);
    // cache powers per variable
    std::vector<std::vector<Poly>> pw(nvars_);
    for (const auto& [e, c] : terms_) {
        Poly t = constant(m, c);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            auto& cache = pw[i];
            if (cache.empty()) cache.push_back(constant(m, Q(1)));
            while (static_cast<int>(cache.size()) <= e[i]) cache.push_back(cache.back() * subs[i]);
            t = t * cache[e[i]];
        }
        r = r + t;
    }
    return r;
}

Poly Poly::derivative(std::size_t var) const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exps f = e;
        f[var] -= 1;
        r.add_term(f, c * e[var]);
    }
    return r;
}

Poly Poly::coeff_in(std::size_t var, int k) const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] != k) continue;
        Exps f = e;
        f[var] = 0;
        r.add_term(f, c);
    }
    return r;
}

int Poly::order_in(std::size_t var) const {
    int o = -1;
    for (const auto& [e, c] : terms_)
        if (o < 0 || e[var] < o) o = e[var];
    return o;
}

Poly Poly::extend(std::size_t nvars) const {
    Poly r(nvars);
    for (const auto& [e, c] : terms_) {
        Exps f = e;
        f.resize(nvars, 0);
        r.add_term(f, c);
    }
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    if (r.nvars_ == 0 && r.terms_.empty()) r.nvars_ = o.nvars_;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r(std::max(nvars_, o.nvars_));
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            Exps e(r.nvars_, 0);
            for (std::size_t i = 0; i < e1.size(); ++i) e[i] += e1[i];
            for (std::size_t i = 0; i < e2.size(); ++i) e[i] += e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

Poly Poly::operator*(const Q& s) const {
    Poly r(nvars_);
    if (s == 0) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
    return r;
}

std::string to_string(const Poly& p, const std::vector<std::string>& names) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        bool constant = true;
        for (int k : e)
            if (k) constant = false;
        Q a = abs(c);
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        if (constant || a != 1) os << a.get_str();
        bool need_star = !constant && a != 1;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (need_star) os << "*";
            need_star = true;
            os << (i < names.size() ? names[i] : "x" + std::to_string(i));
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

UPoly to_upoly(const Poly& p) {
    UPoly r;
    for (const auto& [e, c] : p.terms()) {
        int k = e.empty() ? 0 : e[0];
        if (static_cast<int>(r.size()) <= k) r.resize(k + 1, Q(0));
        r[k] += c;
    }
    return r;
}

int uorder(const UPoly& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != 0) return static_cast<int>(i);
    return -1;
}

} // namespace saet
