#include "sproutforge/selftest.hpp"

#include "sproutforge/cohomology.hpp"
#include "sproutforge/serialize.hpp"
#include "sproutforge/sprout_engine.hpp"

namespace sforge::io {

namespace {

bool differential_squares_to_zero() {
    for (int arity = 1; arity <= 3; ++arity)
        for (int nu = 0; nu <= 2; ++nu)
            for (const auto& t : br::enumerate_basis(arity, nu - arity + 1)) {
                br::BrElement one;
                one.arity = arity;
                one.add(t, Rational(1));
                if (!br::differential(br::differential(one)).zero()) return false;
            }
    return true;
}

bool derivation_rule() {
    auto one = [](const br::BraceTree& t) {
        br::BrElement e;
        e.arity = t.arity();
        e.add(t, Rational(1));
        return e;
    };
    for (const auto& a : br::enumerate_basis(2, -1))
        for (const auto& b : br::enumerate_basis(2, 0))
            for (int slot = 1; slot <= 2; ++slot) {
                br::BrElement lhs = br::differential(br::insert(one(a), slot, one(b)));
                br::BrElement rhs = br::insert(br::differential(one(a)), slot, one(b));
                int sign = (a.degree() % 2 == 0) ? 1 : -1;
                for (const auto& [t, c] : br::insert(one(a), slot, br::differential(one(b))).terms)
                    rhs.add(t, c * sign);
                if (!(lhs.terms == rhs.terms)) return false;
            }
    return true;
}

bool jacobi_instance() {
    conv::ConvElement f, g, h;
    f.add_raw(Rational(1), br::parse_tree("r(1(2))"), ger::parse_word("b1 b2"));
    g.add_raw(Rational(1), br::parse_tree("r(•(1,2))"), ger::parse_word("{b1,b2}"));
    h.add_raw(Rational(1), br::parse_tree("r(•(1,2))"), ger::parse_word("b1 b2"));
    conv::Exec ex{false};
    auto lhs = conv::bracket(f, conv::bracket(g, h, 5, ex), 5, ex);
    auto rhs = conv::bracket(conv::bracket(f, g, 5, ex), h, 5, ex);
    rhs.add(conv::bracket(g, conv::bracket(f, h, 5, ex), 5, ex), Rational(-1));
    return lhs == rhs;
}

bool leibniz_instance() {
    conv::ConvElement f, g;
    f.add_raw(Rational(1), br::parse_tree("r(1(2))"), ger::parse_word("b1 b2"));
    g.add_raw(Rational(1), br::parse_tree("r(1(•(2,3)))"), ger::parse_word("{b1,{b2,b3}}"));
    conv::Exec ex{false};
    auto lhs = conv::differential(conv::bracket(f, g, 5, ex));
    auto rhs = conv::bracket(conv::differential(f), g, 5, ex);
    rhs.add(conv::bracket(f, conv::differential(g), 5, ex), Rational(-1));
    return lhs == rhs;
}

bool alpha_prime_checks() {
    try {
        auto alpha = engine::seed_paper();
        if (!conv::is_sprout(alpha, 2).ok) return false;
        if (conv::is_sprout(alpha, 3).ok) return false;   // arity-4 curvature must persist
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

bool cohomology_dims_small() {
    for (int n = 2; n <= 3; ++n) {
        std::map<int, int> ger_dims;
        for (const auto& w : ger::enumerate_basis(n)) ++ger_dims[w.ger_degree()];
        for (int d = -(n - 1); d <= 0; ++d)
            if (engine::cohomology(n, d).dim() != (ger_dims.count(d) ? ger_dims[d] : 0))
                return false;
    }
    return true;
}

} // namespace

SelfTestReport run_selftest() {
    SelfTestReport rep;
    rep.fingerprint = convention_fingerprint();
    rep.checks.push_back({"br-differential-squares-to-zero", differential_squares_to_zero()});
    rep.checks.push_back({"br-differential-derivation-rule", derivation_rule()});
    rep.checks.push_back({"conv-bracket-jacobi", jacobi_instance()});
    rep.checks.push_back({"conv-differential-leibniz", leibniz_instance()});
    rep.checks.push_back({"second-sprout-curvature", alpha_prime_checks()});
    rep.checks.push_back({"cohomology-dimensions", cohomology_dims_small()});
    return rep;
}

} // namespace sforge::io
