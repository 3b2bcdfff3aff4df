#include <doctest.h>

#include <set>
#include <stdexcept>

#include "pgcaps/gf.hpp"

using namespace pgcaps;

namespace {

// every prime power up to 64
const std::vector<std::pair<std::uint32_t, std::uint32_t>> kSmallFields = {
    {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1},  {2, 3}, {3, 2}, {11, 1}, {13, 1},
    {2, 4}, {17, 1}, {19, 1}, {23, 1}, {5, 2}, {3, 3}, {29, 1}, {31, 1}, {2, 5},
    {37, 1}, {41, 1}, {43, 1}, {47, 1}, {7, 2}, {53, 1}, {59, 1}, {61, 1}, {2, 6}};

}  // namespace

TEST_CASE("construction validates its inputs") {
    CHECK_THROWS_AS(Field(4, 1), std::invalid_argument);   // not prime
    CHECK_THROWS_AS(Field(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(Field(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(Field(2, 21), std::invalid_argument);  // beyond default max order
    CHECK_NOTHROW(Field(2, 21, 1ull << 22));               // raised limit
}

TEST_CASE("prime fields and the forced F4 modulus") {
    Field f2(2, 1);
    CHECK(f2.q() == 2);
    Field f3(3, 1);
    CHECK(f3.q() == 3);
    CHECK(f3.add(1, 2) == 0);
    Field f4(2, 2);
    CHECK(f4.q() == 4);
    CHECK(f4.modulus() == std::vector<Fel>{1, 1, 1});  // x^2 + x + 1
    // x * x = x + 1 under that modulus: index 2 is x, index 3 is x+1
    CHECK(f4.mul(2, 2) == 3);
    CHECK(f4.add(2, 2) == 0);  // characteristic 2
    CHECK(f4.inv(2) == 3);     // x(x+1) = x^2 + x = 1
    Field f5(5, 1);
    CHECK(f5.add(0, 4) == 4);
    CHECK(f5.mul(2, 3) == 1);
    CHECK(f5.inv(2) == 3);
    CHECK(f5.mul(3, 0) == 0);
}

TEST_CASE("construction is deterministic") {
    for (auto [p, k] : {std::pair<std::uint32_t, std::uint32_t>{2, 4}, {3, 3}, {7, 2}}) {
        Field a(p, k), b(p, k);
        CHECK(a.modulus() == b.modulus());
    }
}

TEST_CASE("field axioms hold exhaustively for q <= 64") {
    for (auto [p, k] : kSmallFields) {
        Field f(p, k);
        const std::uint32_t q = f.q();
        CAPTURE(q);
        for (Fel a = 0; a < q; ++a) {
            CHECK(f.add(a, 0) == a);
            CHECK(f.mul(a, 1) == a);
            CHECK(f.mul(a, 0) == 0);
            CHECK(f.add(a, f.neg(a)) == 0);
            for (Fel b = 0; b < q; ++b) {
                CHECK(f.add(a, b) == f.add(b, a));
                CHECK(f.mul(a, b) == f.mul(b, a));
                if (a != 0 && b != 0) CHECK(f.mul(a, b) != 0);  // no zero divisors
                for (Fel c = 0; c < q; ++c) {
                    REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                    REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                    REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("inverses and multiplicative group order, exhaustively") {
    for (auto [p, k] : kSmallFields) {
        Field f(p, k);
        CHECK_THROWS_AS(f.inv(0), std::domain_error);
        for (Fel a = 1; a < f.q(); ++a) {
            CHECK(f.mul(a, f.inv(a)) == 1);
            CHECK(f.pow(a, f.q() - 1) == 1);
        }
    }
}

TEST_CASE("modulus shape and the powers of x in larger extensions") {
    for (auto [p, k] : {std::pair<std::uint32_t, std::uint32_t>{2, 8}, {3, 4}, {5, 3}}) {
        Field f(p, k);
        CHECK(f.modulus().size() == k + 1);
        CHECK(f.modulus().back() == 1);  // monic
        // index p encodes the polynomial x; its powers never vanish and
        // x^{q-1} = 1, which fails if the modulus were reducible
        const Fel x = f.p();
        Fel acc = 1;
        for (std::uint32_t i = 1; i < f.q(); ++i) {
            acc = f.mul(acc, x);
            REQUIRE(acc != 0);
        }
        CHECK(acc == 1);
    }
}

TEST_CASE("element range is checked") {
    Field f(5, 1);
    CHECK_THROWS_AS(f.add(5, 0), std::out_of_range);
    CHECK_THROWS_AS(f.mul(0, 7), std::out_of_range);
    CHECK_THROWS_AS(f.inv(9), std::out_of_range);
}

TEST_CASE("large untabulated field still behaves as a field (spot checks)") {
    Field f(2, 17);  // q = 131072, beyond the table limit
    CHECK(f.q() == 131072u);
    for (Fel a : {Fel(1), Fel(2), Fel(12345), Fel(65537), Fel(131071)}) {
        CHECK(f.mul(a, f.inv(a)) == 1);
        CHECK(f.add(a, a) == 0);  // characteristic 2
    }
    CHECK(f.mul(3, f.mul(12345, 991)) == f.mul(f.mul(3, 12345), 991));
}
