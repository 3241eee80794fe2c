#include "doctest.h"

#include "sproutforge/rational.hpp"

using namespace sforge;

TEST_CASE("rationals stay in lowest terms with positive denominator") {
    Rational a = rat(4, -6);
    CHECK(a.get_num() == -2);
    CHECK(a.get_den() == 3);

    Rational b = rat(1, 3) + rat(1, 6);
    CHECK(rat_str(b) == "1/2");

    Rational c = rat(2, 4) - rat(1, 2);
    CHECK(is_zero(c));

    Rational d = rat(7, 3) * rat(3, 7);
    CHECK(d == 1);
    CHECK(d.get_den() == 1);
}

TEST_CASE("parse and print round trip") {
    for (const char* s : {"0", "1", "-1", "1/2", "-22/7", "355/113"}) {
        Rational q = parse_rational(s);
        CHECK(rat_str(q) == s);
    }
    CHECK_THROWS_AS(parse_rational("1/0"), FormatError);
    CHECK_THROWS_AS(parse_rational("x"), FormatError);
}

TEST_CASE("exact arithmetic survives deep products") {
    Rational p(1);
    for (int i = 1; i <= 40; ++i) p *= rat(i, i + 1);
    CHECK(rat_str(p) == "1/41");
}
