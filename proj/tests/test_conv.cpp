#include "doctest.h"

#include <random>

#include "sproutforge/conv_element.hpp"
#include "sproutforge/sprout_engine.hpp"

using namespace sforge;
using namespace sforge::conv;

namespace {

const Exec serial{false};

ConvElement one_term(const char* coeff, const char* tree, const char* word) {
    ConvElement e;
    e.add_raw(parse_rational(coeff), br::parse_tree(tree), ger::parse_word(word));
    return e;
}

ConvElement random_element(std::mt19937& rng, int arity, int degree, int max_terms) {
    ConvElement e;
    auto classes = enumerate_classes(arity, degree);
    if (classes.empty()) return e;
    for (int t = 0; t < max_terms; ++t) {
        long c = static_cast<long>(rng() % 3) - 1;
        if (c) e.add_class(classes[rng() % classes.size()], Rational(c));
    }
    e.prune();
    return e;
}

} // namespace

TEST_CASE("av_normalize basics") {
    CHECK(av_normalize({}).zero());

    // the seven raw alpha' terms keep their printed coefficients per class
    ConvElement alpha = engine::seed_paper();
    const Component* a2 = alpha.component(2);
    REQUIRE(a2 != nullptr);
    REQUIRE(a2->size() == 2);
    ConvKey k1{br::parse_tree("r(1(2))"), ger::parse_word("b1 b2")};
    ConvKey k2{br::parse_tree("r(•(1,2))"), ger::parse_word("{b1,b2}")};
    CHECK(a2->at(k1) == 1);
    CHECK(a2->at(k2) == rat(1, 2));

    // orbit constancy: a term and its relabeled image fold to the same class
    RawTerm t{Rational(1), br::parse_tree("r(2(1))"), ger::parse_word("{b1,b2}")};
    ConvElement folded = av_normalize({t});
    ConvElement direct = av_normalize({{Rational(1), br::parse_tree("r(1(2))"),
                                        ger::parse_word("{b1,b2}")}});
    CHECK(folded == direct);

    // a term plus its transposition image merges (product word is symmetric)
    ConvElement doubled = av_normalize({{Rational(1), br::parse_tree("r(•(1,2))"),
                                         ger::parse_word("b1 b2")},
                                        {Rational(1), br::parse_tree("r(•(2,1))"),
                                         ger::parse_word("b1 b2")}});
    REQUIRE(doubled.term_count() == 1);
    CHECK(doubled.component(2)->begin()->second == 2);

    // with the orbit sign flipped the pair cancels
    ConvElement cancelled = av_normalize({{Rational(1), br::parse_tree("r(•(1,2))"),
                                           ger::parse_word("b1 b2")},
                                          {Rational(-1), br::parse_tree("r(•(2,1))"),
                                           ger::parse_word("b1 b2")}});
    CHECK(cancelled.zero());
}

TEST_CASE("pre_lie bilinearity and degree additivity") {
    ConvElement zero;
    ConvElement f = one_term("1", "r(1(2))", "b1 b2");
    CHECK(pre_lie(f, zero).zero());
    CHECK(pre_lie(zero, f).zero());

    ConvElement g = one_term("1", "r(•(1,2))", "{b1,b2}");
    int df = 0, dg = 0, dfg = 0;
    REQUIRE(f.homogeneous(df));
    REQUIRE(g.homogeneous(dg));
    ConvElement fg = pre_lie(f, g);
    REQUIRE(!fg.zero());
    REQUIRE(fg.homogeneous(dfg));
    CHECK(dfg == df + dg);
}

TEST_CASE("bracket sign arithmetic") {
    ConvElement f = one_term("1", "r(1(2))", "b1 b2");   // odd
    ConvElement twice = pre_lie(f, f);
    twice.scale_by(Rational(2));
    CHECK(bracket(f, f) == twice);

    ConvElement g = one_term("1", "r(•(1,2))", "{b1,b2}");
    ConvElement lhs = bracket(f, g);
    ConvElement rhs = bracket(g, f);
    rhs.scale_by(Rational(1));   // -(-1)^{1*1} = +1
    CHECK(lhs == rhs);

    ConvElement even = one_term("1", "r(•(1,2))", "b1 b2");   // degree 2
    ConvElement l2 = bracket(f, even);
    ConvElement r2 = bracket(even, f);
    r2.scale_by(Rational(-1));   // -(-1)^{1*2} = -1
    CHECK(l2 == r2);
}

TEST_CASE("graded Jacobi on seeded random small elements") {
    std::mt19937 rng(2026);
    int checked = 0;
    for (int trial = 0; trial < 70; ++trial) {
        int arities[3], degrees[3];
        ConvElement e[3];
        bool ok = true;
        for (int i = 0; i < 3; ++i) {
            arities[i] = 2 + rng() % 2;
            degrees[i] = 1 + rng() % 2;
            e[i] = random_element(rng, arities[i], degrees[i], 2);
            if (e[i].zero()) ok = false;
        }
        if (!ok) continue;
        ++checked;
        int cap = 5;
        int s_fg = (degrees[0] * degrees[1]) % 2 ? -1 : 1;
        ConvElement lhs = bracket(e[0], bracket(e[1], e[2], cap, serial), cap, serial);
        ConvElement rhs = bracket(bracket(e[0], e[1], cap, serial), e[2], cap, serial);
        rhs.add(bracket(e[1], bracket(e[0], e[2], cap, serial), cap, serial), Rational(s_fg));
        REQUIRE(lhs == rhs);
    }
    CHECK(checked > 20);
}

TEST_CASE("differential squares to zero on every class of arity <= 4") {
    for (int arity = 2; arity <= 4; ++arity) {
        for (int degree = -6; degree <= 6; ++degree) {
            for (const auto& k : enumerate_classes(arity, degree)) {
                ConvElement unit;
                unit.add_class(k, Rational(1));
                REQUIRE(differential(differential(unit)).zero());
            }
        }
    }
    CHECK(differential(ConvElement{}).zero());
}

TEST_CASE("differential is a derivation of the bracket") {
    std::mt19937 rng(77);
    int checked = 0;
    for (int trial = 0; trial < 30; ++trial) {
        ConvElement f = random_element(rng, 2 + rng() % 2, 1, 2);
        ConvElement g = random_element(rng, 2 + rng() % 2, 1 + rng() % 2, 2);
        int df = 0, dg = 0;
        if (f.zero() || g.zero()) continue;
        REQUIRE(f.homogeneous(df));
        REQUIRE(g.homogeneous(dg));
        ++checked;
        ConvElement lhs = differential(bracket(f, g, 5, serial));
        ConvElement rhs = bracket(differential(f), g, 5, serial);
        rhs.add(bracket(f, differential(g), 5, serial), Rational(df % 2 ? -1 : 1));
        REQUIRE(lhs == rhs);
    }
    CHECK(checked > 15);
}

TEST_CASE("curvature") {
    ConvElement zero;
    CHECK(curvature(zero).zero());

    ConvElement alpha = engine::seed_paper();
    ConvElement curv = curvature(alpha, 4, serial);
    CHECK(curv.component(2) == nullptr);
    CHECK(curv.component(3) == nullptr);
    REQUIRE(curv.component(4) != nullptr);
    CHECK(!curv.component(4)->empty());

    ConvElement bad = one_term("1", "r(•(1,2))", "b1 b2");   // degree 2
    CHECK_THROWS_AS(curvature(bad), UsageError);
}

TEST_CASE("is_sprout") {
    ConvElement alpha = engine::seed_paper();
    CHECK(is_sprout(alpha, 2, serial).ok);
    CHECK(!is_sprout(alpha, 3, serial).ok);
    ConvElement zero;
    for (int n = 1; n <= 4; ++n) CHECK(is_sprout(zero, n, serial).ok);
}

TEST_CASE("truncate") {
    ConvElement alpha = engine::seed_paper();
    ConvElement t1 = truncate(alpha, 1);
    CHECK(t1.component(3) == nullptr);
    CHECK(t1.component(2) != nullptr);
    CHECK(truncate(alpha, 2) == alpha);
    CHECK(truncate(truncate(alpha, 2), 1) == truncate(alpha, 1));
    CHECK_THROWS_AS(truncate(alpha, 0), UsageError);
}

TEST_CASE("filtration compatibility of the bracket") {
    // f supported in arity >= 3, g in arity >= 2: [f,g] has nothing below 4
    std::mt19937 rng(11);
    ConvElement f = random_element(rng, 3, 1, 3);
    ConvElement g = random_element(rng, 2, 1, 2);
    REQUIRE(!f.zero());
    REQUIRE(!g.zero());
    ConvElement out = bracket(f, g, 10, serial);
    for (const auto& [arity, m] : out.comp)
        if (!m.empty()) CHECK(arity >= 4);
}

TEST_CASE("parallel and serial paths agree bit for bit") {
    ConvElement alpha = engine::seed_paper();
    ConvElement a = pre_lie(alpha, alpha, 5, Exec{false});
    ConvElement b = pre_lie(alpha, alpha, 5, Exec{true});
    CHECK(a == b);
    CHECK(curvature(alpha, 4, Exec{false}) == curvature(alpha, 4, Exec{true}));
}

TEST_CASE("class enumeration matches the coinvariant dimension") {
    // arity 2, total degree 1: the two seed classes
    auto cls = enumerate_classes(2, 1);
    REQUIRE(cls.size() == 2);
    // dimension = (full tensor dimension) / n!
    for (int arity = 2; arity <= 3; ++arity) {
        for (int degree = 0; degree <= 2; ++degree) {
            std::size_t full = 0;
            for (const auto& w : ger::enumerate_basis(arity))
                full += br::enumerate_basis(arity, degree - w.shifted_degree()).size();
            std::size_t fact = 1;
            for (int i = 2; i <= arity; ++i) fact *= i;
            CHECK(full % fact == 0);
            CHECK(enumerate_classes(arity, degree).size() == full / fact);
        }
    }
}
