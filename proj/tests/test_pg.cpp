#include <doctest.h>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <set>

#include "pgcaps/pg.hpp"

using namespace pgcaps;

namespace {

ProjectiveSpace make_space(int dim, std::uint32_t p, std::uint32_t k = 1) {
    return {dim, Field(p, k)};
}

PointId pt(const ProjectiveSpace& sp, std::initializer_list<Fel> coords) {
    std::vector<Fel> v(coords);
    return sp.point_of(v);
}

}  // namespace

TEST_CASE("point counts") {
    CHECK(ProjectiveSpace::count_points(2, 2) == 7);   // Fano plane
    CHECK(ProjectiveSpace::count_points(3, 2) == 15);
    CHECK(ProjectiveSpace::count_points(3, 3) == 40);
    CHECK(ProjectiveSpace::count_points(3, 5) == 156);
    CHECK(ProjectiveSpace::count_points(4, 3) == 121);
    CHECK(ProjectiveSpace::count_points(3, 49) == 120100);
    CHECK_THROWS_AS(ProjectiveSpace::count_points(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(ProjectiveSpace::count_points(40, 1 << 20), std::overflow_error);
}

TEST_CASE("canonical indexing round-trips over whole small spaces") {
    for (auto sp : {make_space(2, 3), make_space(3, 5), make_space(2, 2, 2)}) {
        for (PointId v = 0; v < sp.num_points(); ++v) {
            auto coords = sp.coords_of(v);
            CHECK(sp.is_canonical(coords));
            CHECK(sp.point_of(coords) == v);
        }
    }
}

TEST_CASE("scalar multiples identify the same point") {
    auto sp = make_space(2, 3);
    // 2*(1,2,0) = (2,4,0) = (2,1,0) over F_3
    CHECK(pt(sp, {2, 1, 0}) == pt(sp, {1, 2, 0}));
    auto sp2 = make_space(2, 2);
    const PointId e3 = pt(sp2, {0, 0, 1});
    CHECK(sp2.coords_of(e3) == std::vector<Fel>{0, 0, 1});
    CHECK_THROWS_AS(pt(sp2, {0, 0, 0}), std::invalid_argument);
}

TEST_CASE("collinearity in the Fano plane") {
    auto sp = make_space(2, 2);
    CHECK(sp.collinear(pt(sp, {1, 0, 0}), pt(sp, {0, 1, 0}), pt(sp, {1, 1, 0})));
    CHECK_FALSE(sp.collinear(pt(sp, {1, 0, 0}), pt(sp, {0, 1, 0}), pt(sp, {0, 0, 1})));
    CHECK_THROWS_AS(sp.collinear(0, 0, 1), std::invalid_argument);  // degenerate triple
}

TEST_CASE("line through two points") {
    auto sp = make_space(2, 2);
    const auto l = sp.line(pt(sp, {1, 0, 0}), pt(sp, {0, 1, 0}));
    REQUIRE(l.size() == 3);
    CHECK(std::find(l.begin(), l.end(), pt(sp, {1, 1, 0})) != l.end());
    CHECK(sp.line(l[0], l[1]) == sp.line(l[1], l[0]));
    CHECK_THROWS_AS(sp.line(3, 3), std::invalid_argument);
}

TEST_CASE("every line of PG(3,4) has q+1 points") {
    auto sp = make_space(3, 2, 2);
    REQUIRE(sp.num_points() == 85);
    for (PointId a = 0; a < 20; ++a)
        for (PointId b = a + 1; b < sp.num_points(); b += 7) {
            const auto l = sp.line(a, b);
            REQUIRE(l.size() == 5);
            CHECK(std::is_sorted(l.begin(), l.end()));
            CHECK(std::adjacent_find(l.begin(), l.end()) == l.end());
        }
}

TEST_CASE("collinear agrees with line membership, exhaustively") {
    for (auto sp : {make_space(2, 2), make_space(2, 3), make_space(3, 2)}) {
        for (PointId a = 0; a < sp.num_points(); ++a)
            for (PointId b = a + 1; b < sp.num_points(); ++b) {
                const auto l = sp.line(a, b);
                for (PointId c = 0; c < sp.num_points(); ++c) {
                    if (c == a || c == b) continue;
                    const bool on_line = std::find(l.begin(), l.end(), c) != l.end();
                    REQUIRE(sp.collinear(a, b, c) == on_line);
                }
            }
    }
}

TEST_CASE("third points of PG(3,3) lines are collinear with the generators") {
    auto sp = make_space(3, 3);
    for (PointId a = 0; a < sp.num_points(); ++a)
        for (PointId b = a + 1; b < sp.num_points(); ++b)
            for (PointId t : sp.line(a, b))
                if (t != a && t != b) REQUIRE(sp.collinear(a, b, t));
}

TEST_CASE("pencil through a point partitions the rest of the space") {
    auto check_pencil = [](const ProjectiveSpace& sp, PointId v) {
        std::set<PointId> seen;
        std::size_t lines = 0;
        sp.for_each_line_through(v, [&](std::span<const PointId> line) {
            ++lines;
            REQUIRE(line.size() == sp.points_per_line());
            bool has_v = false;
            for (PointId x : line) {
                if (x == v) {
                    has_v = true;
                    continue;
                }
                REQUIRE(seen.insert(x).second);  // each point on exactly one line
            }
            REQUIRE(has_v);
        });
        CHECK(lines == sp.lines_per_point());
        CHECK(seen.size() == sp.num_points() - 1);
    };
    auto f = make_space(2, 2);
    CHECK(f.lines_per_point() == 3);
    check_pencil(f, 0);
    auto s33 = make_space(3, 3);
    CHECK(s33.lines_per_point() == 13);
    check_pencil(s33, 5);
    auto s32 = make_space(3, 2);
    CHECK(s32.lines_per_point() == 7);
    for (PointId v = 0; v < s32.num_points(); ++v) check_pencil(s32, v);
}

TEST_CASE("any two points lie on exactly one common line") {
    for (auto sp : {make_space(2, 2), make_space(2, 3), make_space(3, 2),
                    make_space(2, 2, 2), make_space(4, 2), make_space(3, 3),
                    make_space(2, 5), make_space(4, 3), make_space(3, 5)}) {
        REQUIRE(sp.num_points() <= 400);
        // count via the pencils: summed line sizes cover each other point once
        for (PointId v = 0; v < sp.num_points(); v += 3) {
            std::uint64_t covered = 0;
            sp.for_each_line_through(v, [&](std::span<const PointId> line) {
                covered += line.size() - 1;
            });
            REQUIRE(covered == sp.num_points() - 1);
            REQUIRE(sp.lines_per_point() * sp.q() == sp.num_points() - 1);
        }
    }
}

TEST_CASE("pencil keys separate lines through a base point") {
    auto sp = make_space(3, 3);
    const PointId x = 7;
    std::map<PointId, std::set<PointId>> by_key;
    for (PointId y = 0; y < sp.num_points(); ++y) {
        if (y == x) continue;
        by_key[sp.pencil_key(x, y)].insert(y);
    }
    CHECK(by_key.size() == sp.lines_per_point());
    for (const auto& [key, members] : by_key) {
        REQUIRE(members.size() == sp.q());  // q points besides x per line
        const auto l = sp.line(x, *members.begin());
        for (PointId y : members)
            REQUIRE(std::find(l.begin(), l.end(), y) != l.end());
    }
}
