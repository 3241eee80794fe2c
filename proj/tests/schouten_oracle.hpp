#ifndef SPROUTFORGE_TESTS_SCHOUTEN_ORACLE_HPP
#define SPROUTFORGE_TESTS_SCHOUTEN_ORACLE_HPP

// Independent model of a Gerstenhaber algebra: polynomial polyvector fields
// Q[y_1..y_N] (x) Lambda[th_1..th_N] with |y|=0, |th|=1 and the bracket
// derived from the odd Laplacian  D = sum_a d/dy_a d/dth_a  via
//   {F,G} := (-1)^{|F|} ( D(FG) - (DF)G - (-1)^{|F|} F (DG) ).
// D is a square-zero odd second-order operator, so the derived bracket
// satisfies the Gerstenhaber axioms; no hand-picked signs enter anywhere
// beyond the left-derivative convention fixed below.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "sproutforge/rational.hpp"

namespace schouten {

using sforge::Rational;
using sforge::is_zero;

struct Monomial {
    std::vector<int> ypow;      // exponents of y_1..y_N
    std::uint32_t theta = 0;    // bitmask of th_a factors, ascending order

    bool operator<(const Monomial& o) const {
        if (theta != o.theta) return theta < o.theta;
        return ypow < o.ypow;
    }
    bool operator==(const Monomial& o) const = default;
};

struct Poly {
    int nvars = 0;
    std::map<Monomial, Rational> terms;

    bool zero() const { return terms.empty(); }
    bool operator==(const Poly& o) const { return terms == o.terms; }
};

inline int theta_count(std::uint32_t mask) { return __builtin_popcount(mask); }

inline void add_term(Poly& p, const Monomial& m, const Rational& c) {
    if (is_zero(c)) return;
    auto [it, ins] = p.terms.emplace(m, c);
    if (!ins) {
        it->second += c;
        if (is_zero(it->second)) p.terms.erase(it);
    }
}

inline Poly add(const Poly& a, const Poly& b) {
    Poly out = a;
    out.nvars = std::max(a.nvars, b.nvars);
    for (const auto& [m, c] : b.terms) add_term(out, m, c);
    return out;
}

inline Poly scale(const Poly& a, const Rational& c) {
    Poly out;
    out.nvars = a.nvars;
    for (const auto& [m, v] : a.terms) add_term(out, m, v * c);
    return out;
}

// product of theta masks with the Koszul sign of interleaving
inline int theta_mul_sign(std::uint32_t a, std::uint32_t b) {
    if (a & b) return 0;
    int sign = 1;
    for (int i = 0; i < 32; ++i)
        if (b & (1u << i)) {
            int above = theta_count(a >> (i + 1));
            if (above % 2) sign = -sign;
        }
    return sign;
}

inline Poly mul(const Poly& a, const Poly& b) {
    Poly out;
    out.nvars = std::max(a.nvars, b.nvars);
    for (const auto& [m1, c1] : a.terms)
        for (const auto& [m2, c2] : b.terms) {
            int s = theta_mul_sign(m1.theta, m2.theta);
            if (!s) continue;
            Monomial m;
            m.ypow.resize(std::max(m1.ypow.size(), m2.ypow.size()), 0);
            for (std::size_t i = 0; i < m1.ypow.size(); ++i) m.ypow[i] += m1.ypow[i];
            for (std::size_t i = 0; i < m2.ypow.size(); ++i) m.ypow[i] += m2.ypow[i];
            m.theta = m1.theta | m2.theta;
            add_term(out, m, c1 * c2 * s);
        }
    return out;
}

// left derivative d/dth_a: kills terms without th_a, sign counts the th's
// standing before it
inline Poly dtheta(const Poly& p, int a) {
    Poly out;
    out.nvars = p.nvars;
    for (const auto& [m, c] : p.terms) {
        if (!(m.theta & (1u << a))) continue;
        int before = theta_count(m.theta & ((1u << a) - 1));
        Monomial m2 = m;
        m2.theta &= ~(1u << a);
        add_term(out, m2, (before % 2) ? -c : c);
    }
    return out;
}

inline Poly dy(const Poly& p, int a) {
    Poly out;
    out.nvars = p.nvars;
    for (const auto& [m, c] : p.terms) {
        if (static_cast<int>(m.ypow.size()) <= a || m.ypow[a] == 0) continue;
        Monomial m2 = m;
        m2.ypow[a] -= 1;
        add_term(out, m2, c * m.ypow[a]);
    }
    return out;
}

inline Poly laplace(const Poly& p) {
    Poly out;
    out.nvars = p.nvars;
    for (int a = 0; a < p.nvars; ++a) out = add(out, dy(dtheta(p, a), a));
    return out;
}

// all monomials of a homogeneous polyvector share one degree
inline int degree(const Poly& p) {
    return p.zero() ? 0 : theta_count(p.terms.begin()->first.theta);
}

inline Poly bracket(const Poly& f, const Poly& g) {
    int sf = degree(f) % 2 ? -1 : 1;
    Poly out = laplace(mul(f, g));
    out = add(out, scale(mul(laplace(f), g), Rational(-1)));
    out = add(out, scale(mul(f, laplace(g)), Rational(-sf)));
    return scale(out, Rational(sf));
}

} // namespace schouten

#endif
