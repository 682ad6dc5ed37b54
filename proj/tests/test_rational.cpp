#include "qtheta/rational.hpp"

#include <doctest.h>

#include <sstream>

using qtheta::Int;
using qtheta::Rat;

TEST_SUITE("rational") {

TEST_CASE("construction is always canonical") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(Int(2), Int(4)).num() == 1);
    CHECK(Rat(Int(2), Int(4)).den() == 2);
    CHECK(Rat(-2, 4).num() == -1);
    CHECK(Rat(2, -4).num() == -1);
    CHECK(Rat(2, -4).den() == 2);
    CHECK(Rat(0, 7) == Rat());
    CHECK(Rat(-6, -4) == Rat(3, 2));
    CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
}

TEST_CASE("arithmetic") {
    CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
    CHECK(Rat(1, 2) - Rat(1, 3) == Rat(1, 6));
    CHECK(Rat(1, 2) * Rat(2, 3) == Rat(1, 3));
    CHECK(Rat(1, 2) / Rat(3, 4) == Rat(2, 3));
    CHECK(-Rat(3, 7) == Rat(-3, 7));
    CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);

    Rat r(1, 6);
    r += Rat(1, 3);
    CHECK(r == Rat(1, 2));
    r *= Rat(4);
    CHECK(r == Rat(2));
    r -= Rat(1, 2);
    CHECK(r == Rat(3, 2));
    r /= Rat(3);
    CHECK(r == Rat(1, 2));
}

TEST_CASE("comparisons and queries") {
    CHECK(Rat(1, 3) < Rat(1, 2));
    CHECK(Rat(-1, 2) < Rat(-1, 3));
    CHECK(Rat(2, 4) <= Rat(1, 2));
    CHECK(Rat(5, 3) > Rat(1));
    CHECK(Rat(3).is_integer());
    CHECK(!Rat(3, 2).is_integer());
    CHECK(Rat().is_zero());
    CHECK(Rat(-5, 2).sign() == -1);
    CHECK(Rat().sign() == 0);
    CHECK(Rat(1, 8).sign() == 1);
    CHECK(min(Rat(1, 3), Rat(1, 4)) == Rat(1, 4));
    CHECK(max(Rat(-1), Rat(-2)) == Rat(-1));
}

TEST_CASE("floor and ceil at both signs") {
    CHECK(Rat(7, 2).floor() == 3);
    CHECK(Rat(7, 2).ceil() == 4);
    CHECK(Rat(-7, 2).floor() == -4);
    CHECK(Rat(-7, 2).ceil() == -3);
    CHECK(Rat(6).floor() == 6);
    CHECK(Rat(6).ceil() == 6);
    CHECK(Rat(-1, 8).floor() == -1);
    CHECK(Rat(-1, 8).ceil() == 0);
}

TEST_CASE("rendering and conversion") {
    CHECK(Rat(3, 4).str() == "3/4");
    CHECK(Rat(-3, 4).str() == "-3/4");
    CHECK(Rat(5).str() == "5");
    CHECK(Rat().str() == "0");
    CHECK(Rat(3, 4).to_double() == doctest::Approx(0.75));
    CHECK(Rat(-1, 3).to_double() == doctest::Approx(-1.0 / 3.0));
}

TEST_CASE("big values stay exact") {
    Rat big(Int("123456789012345678901234567890"), Int(3));
    CHECK(big * Rat(3) == Rat(Int("123456789012345678901234567890")));
    Rat third(1, 3);
    Rat sum;
    for (int i = 0; i < 3000; ++i) sum += third;
    CHECK(sum == Rat(1000));
}

} // TEST_SUITE
