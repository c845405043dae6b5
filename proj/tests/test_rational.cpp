#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pdmom/rational.hpp"

using namespace pdmom;

namespace {

Rat random_rat(std::mt19937_64& rng) {
    long num = static_cast<long>(rng() % 2001) - 1000;
    long den = static_cast<long>(rng() % 999) + 1;
    return Rat(num, den);
}

}  // namespace

TEST_CASE("rational literals parse exactly") {
    CHECK(parse_rat("3/4") == Rat(3, 4));
    CHECK(parse_rat("-7") == Rat(-7));
    CHECK(parse_rat("  10/4 ") == Rat(5, 2));
    CHECK(parse_rat("0.25") == Rat(1, 4));
    CHECK(parse_rat("-1.5e-3") == Rat(-3, 2000));
    CHECK(parse_rat("2e2") == Rat(200));
    CHECK_THROWS_AS(parse_rat("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rat("abc"), ParseError);
    CHECK_THROWS_AS(parse_rat("1.2.3"), ParseError);
    CHECK_THROWS_AS(parse_rat(""), ParseError);
}

TEST_CASE("rational formatting round trips") {
    CHECK(to_string(Rat(4, 15)) == "4/15");
    CHECK(to_string(Rat(-3)) == "-3");
    CHECK(parse_rat(to_string(Rat(-355, 113))) == Rat(-355, 113));
}

TEST_CASE("invariants: lowest terms, positive denominator") {
    Rat r = make_rat(6, -4);
    CHECK(numerator(r) == -3);
    CHECK(denominator(r) == 2);
    CHECK_THROWS_AS(make_rat(1, 0), RangeError);
}

TEST_CASE("exact field laws on random rationals") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        Rat a = random_rat(rng), b = random_rat(rng), c = random_rat(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("falling factorial") {
    CHECK(falling_factorial<Rat>(5, 2) == Rat(20));
    CHECK(falling_factorial<Rat>(3, 3) == Rat(6));
    CHECK(falling_factorial<Rat>(2, 3) == Rat(0));  // k < j
    CHECK(falling_factorial<Rat>(7, 0) == Rat(1));
    CHECK(falling_factorial<double>(4, 2) == 12.0);
}

TEST_CASE("binomial") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(4, 0) == 1);
    CHECK(binomial(3, 5) == 0);
}
