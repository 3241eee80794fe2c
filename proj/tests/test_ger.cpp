#include "doctest.h"

#include <algorithm>
#include <set>

#include "sproutforge/ger_word.hpp"

using namespace sforge;
using namespace sforge::ger;

namespace {

GerSum one(const GerWord& w) { return {{w, Rational(1)}}; }

GerSum compose_sum(const GerSum& a, int slot, const GerSum& b) {
    GerSum out;
    for (const auto& [u, cu] : a)
        for (const auto& [v, cv] : b)
            for (const auto& [w, c] : compose(u, slot, v)) {
                auto [it, ins] = out.emplace(w, cu * cv * c);
                if (!ins) {
                    it->second += cu * cv * c;
                    if (is_zero(it->second)) out.erase(it);
                }
            }
    return out;
}

} // namespace

TEST_CASE("word text round trips") {
    for (const char* s : {"b1", "b1 b2", "{b1,b2}", "b1{b2,b3}", "b2{b1,b3}",
                          "{b1,{b2,b3}}", "{b2,{b1,b3}}", "b1 b2 b3",
                          "{b1,b3}{b2,b4}", "b3{b1,{b2,b4}}"}) {
        GerWord w = parse_word(s);
        CHECK(word_text(w) == s);
    }
    CHECK_THROWS_AS(parse_word("{b3,{b1,b2}}"), FormatError);   // max not innermost
    CHECK_THROWS_AS(parse_word("{b1}"), FormatError);
    CHECK_THROWS_AS(parse_word(""), FormatError);
}

TEST_CASE("degrees and the suspension shift") {
    CHECK(parse_word("b1 b2").ger_degree() == 0);
    CHECK(parse_word("b1 b2").shifted_degree() == 2);
    CHECK(parse_word("{b1,b2}").ger_degree() == -1);
    CHECK(parse_word("{b1,b2}").shifted_degree() == 1);
    CHECK(parse_word("{b1,{b2,b3}}").ger_degree() == -2);
    CHECK(parse_word("{b1,{b2,b3}}").shifted_degree() == 2);
    CHECK(parse_word("b1{b2,b3}").ger_degree() == -1);
    CHECK(parse_word("b1{b2,b3}").shifted_degree() == 3);
}

TEST_CASE("basis counts are n!, Lie words are (k-1)!") {
    CHECK(enumerate_basis(1).size() == 1);
    CHECK(enumerate_basis(2).size() == 2);
    CHECK(enumerate_basis(3).size() == 6);
    CHECK(enumerate_basis(4).size() == 24);
    CHECK(enumerate_basis(5).size() == 120);

    // single-factor words of arity k number (k-1)!
    for (int k = 2; k <= 5; ++k) {
        int single = 0;
        for (const auto& w : enumerate_basis(k))
            if (w.factor_count() == 1) ++single;
        int expect = 1;
        for (int i = 2; i < k; ++i) expect *= i;
        CHECK(single == expect);
    }
}

TEST_CASE("arity-3 basis is the stated list") {
    std::set<std::string> expect = {"b1 b2 b3", "b1{b2,b3}", "b2{b1,b3}", "b3{b1,b2}",
                                    "{b1,{b2,b3}}", "{b2,{b1,b3}}"};
    std::set<std::string> got;
    for (const auto& w : enumerate_basis(3)) got.insert(word_text(w));
    CHECK(got == expect);
}

TEST_CASE("normal form rewriting") {
    // {b3,{b1,b2}} = -{b1,{b2,b3}} - {b2,{b1,b3}}
    auto nf = normalize_comb({3, 1, 2});
    REQUIRE(nf.size() == 2);
    CHECK(nf.at({1, 2, 3}) == -1);
    CHECK(nf.at({2, 1, 3}) == -1);

    // antisymmetry on generators is a plain swap
    auto swp = normalize_comb({2, 1});
    REQUIRE(swp.size() == 1);
    CHECK(swp.at({1, 2}) == 1);

    // normal inputs are fixed points
    for (const auto& w : enumerate_basis(4))
        for (const auto& f : w.factors()) {
            auto r = normalize_comb(f);
            REQUIRE(r.size() == 1);
            CHECK(r.at(f) == 1);
        }
}

TEST_CASE("composition unit axioms") {
    GerWord unit = parse_word("b1");
    for (const auto& w : enumerate_basis(3)) {
        for (int slot = 1; slot <= 3; ++slot) {
            auto r = compose(w, slot, unit);
            REQUIRE(r.size() == 1);
            CHECK(r.begin()->first == w);
            CHECK(r.begin()->second == 1);
        }
        auto l = compose(unit, 1, w);
        REQUIRE(l.size() == 1);
        CHECK(l.begin()->first == w);
        CHECK(l.begin()->second == 1);
    }
}

TEST_CASE("stated composition examples") {
    // ger_compose(b1b2, 1, {b1,b2}) = {b1,b2} b3
    auto r1 = compose(parse_word("b1 b2"), 1, parse_word("{b1,b2}"));
    REQUIRE(r1.size() == 1);
    CHECK(word_text(r1.begin()->first) == "b3{b1,b2}");
    CHECK(r1.begin()->second == 1);

    // ger_compose({b1,b2}, 1, b1b2) = b1{b2,b3} + b2{b1,b3}
    auto r2 = compose(parse_word("{b1,b2}"), 1, parse_word("b1 b2"));
    REQUIRE(r2.size() == 2);
    CHECK(r2.at(parse_word("b1{b2,b3}")) == 1);
    CHECK(r2.at(parse_word("b2{b1,b3}")) == 1);
}

TEST_CASE("composition associativity, nested and disjoint slots") {
    auto arity2 = enumerate_basis(2);
    // nested: (a o_1 b) o_1 c = a o_1 (b o_1 c)
    for (const auto& a : arity2)
        for (const auto& b : arity2)
            for (const auto& c : arity2) {
                auto left = compose_sum(compose(a, 1, b), 1, one(c));
                auto right = compose_sum(one(a), 1, compose(b, 1, c));
                REQUIRE(left == right);
            }
    // disjoint: (a o_1 b) o_{1+|b|} c = (-1)^{|b||c|} (a o_2 c) o_1 b
    for (const auto& a : arity2)
        for (const auto& b : arity2)
            for (const auto& c : arity2) {
                auto left = compose_sum(compose(a, 1, b), 3, one(c));
                auto right = compose_sum(compose(a, 2, c), 1, one(b));
                int s = (b.ger_degree() % 2 != 0) && (c.ger_degree() % 2 != 0) ? -1 : 1;
                if (s == -1)
                    for (auto& [w, v] : right) v = -v;
                REQUIRE(left == right);
            }
}

TEST_CASE("action is a signed group action") {
    // (12) fixes both arity-2 words: the product commutes and the odd
    // bracket of even generators is symmetric
    for (const auto& w : enumerate_basis(2)) {
        auto img = act({2, 1}, w);
        REQUIRE(img.size() == 1);
        CHECK(img.begin()->first == w);
        CHECK(img.begin()->second == 1);
    }

    // group law sigma(tau(w)) = (sigma tau)(w) on all arity-3 words
    std::vector<int> sigma = {2, 3, 1}, tau = {2, 1, 3};
    std::vector<int> sigma_tau(3);
    for (int i = 0; i < 3; ++i) sigma_tau[i] = sigma[tau[i] - 1];
    for (const auto& w : enumerate_basis(3)) {
        GerSum lhs;
        for (const auto& [u, c] : act(tau, w))
            for (const auto& [v, c2] : act(sigma, u)) {
                auto [it, ins] = lhs.emplace(v, c * c2);
                if (!ins) it->second += c * c2;
            }
        for (auto it = lhs.begin(); it != lhs.end();)
            it = is_zero(it->second) ? lhs.erase(it) : std::next(it);
        CHECK(lhs == act(sigma_tau, w));
    }
}

TEST_CASE("composition is equivariant in the guest") {
    // u o_1 (sigma v) = block(sigma) (u o_1 v) for sigma = (12) on arity-2 guests
    for (const auto& u : enumerate_basis(2))
        for (const auto& v : enumerate_basis(2)) {
            GerSum lhs;
            for (const auto& [v2, c] : act({2, 1}, v))
                for (const auto& [w, c2] : compose(u, 1, v2)) {
                    auto [it, ins] = lhs.emplace(w, c * c2);
                    if (!ins) it->second += c * c2;
                }
            for (auto it = lhs.begin(); it != lhs.end();)
                it = is_zero(it->second) ? lhs.erase(it) : std::next(it);

            GerSum rhs;
            for (const auto& [w, c] : compose(u, 1, v))
                for (const auto& [w2, c2] : act({2, 1, 3}, w)) {
                    auto [it, ins] = rhs.emplace(w2, c * c2);
                    if (!ins) it->second += c * c2;
                }
            for (auto it = rhs.begin(); it != rhs.end();)
                it = is_zero(it->second) ? rhs.erase(it) : std::next(it);
            REQUIRE(lhs == rhs);
        }
}

TEST_CASE("cocompose is the transpose of compose, blockwise") {
    // unit counit compatibility
    auto entries = cocompose(parse_word("b1 b2"), 2, 1, 1);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].host == parse_word("b1 b2"));
    CHECK(entries[0].guest == parse_word("b1"));
    CHECK(entries[0].coeff == 1);

    // the Leibniz transpose example
    bool found = false;
    for (const auto& e : cocompose(parse_word("b1{b2,b3}"), 2, 1, 2))
        if (e.host == parse_word("{b1,b2}") && e.guest == parse_word("b1 b2")) {
            found = true;
            CHECK(e.coeff == 1);
        }
    CHECK(found);

    // full transpose check over every split with composite arity <= 4
    for (int n = 2; n <= 4; ++n) {
        for (int k = 1; k <= n; ++k) {
            int m = n - k + 1;
            if (m < 1) continue;
            for (int slot = 1; slot <= k; ++slot) {
                std::map<std::pair<std::string, std::string>, Rational> direct;
                for (const auto& u : enumerate_basis(k))
                    for (const auto& v : enumerate_basis(m))
                        for (const auto& [w, c] : compose(u, slot, v))
                            direct[{w.encoding(), u.encoding() + "|" + v.encoding()}] = c;
                std::size_t seen = 0;
                for (const auto& w : enumerate_basis(n)) {
                    for (const auto& e : cocompose(w, k, slot, m)) {
                        auto key = std::make_pair(w.encoding(),
                                                  e.host.encoding() + "|" + e.guest.encoding());
                        REQUIRE(direct.count(key) == 1);
                        CHECK(direct.at(key) == e.coeff);
                        ++seen;
                    }
                }
                CHECK(seen == direct.size());
            }
        }
    }
}

TEST_CASE("degrees are additive under composition") {
    for (int k = 2; k <= 3; ++k)
        for (const auto& u : enumerate_basis(k))
            for (const auto& v : enumerate_basis(2))
                for (int slot = 1; slot <= k; ++slot)
                    for (const auto& [w, c] : compose(u, slot, v)) {
                        CHECK(w.ger_degree() == u.ger_degree() + v.ger_degree());
                        CHECK(w.shifted_degree() == u.shifted_degree() + v.shifted_degree());
                    }
}

TEST_CASE("bad inputs raise usage errors") {
    CHECK_THROWS_AS(compose(parse_word("b1 b2"), 3, parse_word("b1")), UsageError);
    CHECK_THROWS_AS(cocompose(parse_word("b1 b2"), 2, 1, 2), UsageError);
    CHECK_THROWS_AS(act({1}, parse_word("b1 b2")), UsageError);
}
