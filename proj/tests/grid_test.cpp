#include <doctest.h>

#include <set>
#include <sstream>

#include "gridpart/grid.hpp"
#include "test_util.hpp"

using namespace gridpart;

TEST_CASE("parse_grid accepts well-formed input") {
    GridGraph g = parse_grid("3 3\n1 1 1\n1 1 1\n1 1 1");
    CHECK(g.rows() == 3);
    CHECK(g.cols() == 3);
    CHECK(g.total_weight() == 9);

    GridGraph one = parse_grid("1 1\n7");
    CHECK(one.rows() == 1);
    CHECK(one.total_weight() == 7);

    // trailing whitespace is tolerated
    GridGraph t = parse_grid("2 2\n1 2 \n3 4\n  \n");
    CHECK(t.weight(NodeId{2, 2}) == 4);
}

TEST_CASE("parse_grid rejects malformed input with line numbers") {
    auto msg = [](const auto& fn) {
        try {
            fn();
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(msg([] { parse_grid("2 2\n1 0\n1 1"); }) == "non-positive weight at line 2");
    CHECK(msg([] { parse_grid("2 2\n1 1\n1 -3"); }) == "non-positive weight at line 3");
    CHECK(msg([] { parse_grid("x 2\n1 1\n1 1"); }) == "malformed header at line 1");
    CHECK(msg([] { parse_grid("2\n1 1\n1 1"); }) == "malformed header at line 1");
    CHECK(msg([] { parse_grid("2 2\n1 1 1\n1 1"); }) == "too many weights at line 2");
    CHECK(msg([] { parse_grid("2 2\n1\n1 1"); }) == "too few weights at line 2");
    CHECK(msg([] { parse_grid("2 2\n1 1\n1 1\nstray"); }) == "unexpected content at line 4");
    CHECK(msg([] { parse_grid("2 2\n1 1"); }) == "missing row at line 3");
    CHECK(msg([] { parse_grid("2 2\n1 a\n1 1"); }) == "invalid weight at line 2");
}

TEST_CASE("parse/serialize round-trip is identity") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        GridGraph g = testutil::random_grid(3 + seed % 3, 4, 9, seed);
        std::string text = serialize_grid(g);
        GridGraph h = parse_grid(text);
        CHECK(serialize_grid(h) == text);
    }
}

TEST_CASE("boundary_cycle enumerates clockwise from (1,1)") {
    GridGraph g = testutil::uniform_grid(3, 3);
    auto b = boundary_cycle(g);
    std::vector<NodeId> want = {{1, 1}, {1, 2}, {1, 3}, {2, 3}, {3, 3}, {3, 2}, {3, 1}, {2, 1}};
    CHECK(b == want);

    auto b22 = boundary_cycle(testutil::uniform_grid(2, 2));
    CHECK(b22.size() == 4);

    auto b35 = boundary_cycle(testutil::uniform_grid(3, 5));
    CHECK(b35.size() == 12);
    // each boundary node exactly once, matching the set definition
    std::set<std::pair<int, int>> seen;
    GridGraph g35 = testutil::uniform_grid(3, 5);
    for (NodeId v : b35) {
        CHECK(g35.on_boundary(v));
        CHECK(seen.insert({v.row, v.col}).second);
    }
    std::size_t boundary_count = 0;
    for (std::size_t i = 0; i < g35.node_count(); ++i)
        if (g35.on_boundary(g35.node_at(i))) ++boundary_count;
    CHECK(seen.size() == boundary_count);

    CHECK_THROWS_AS(boundary_cycle(testutil::uniform_grid(1, 5)), std::invalid_argument);
}

TEST_CASE("boundary_cycle consecutive entries are cyclically adjacent") {
    for (int m = 2; m <= 5; ++m) {
        for (int n = 2; n <= 5; ++n) {
            auto b = boundary_cycle(testutil::uniform_grid(m, n));
            CHECK(b.size() == static_cast<std::size_t>(2 * m + 2 * n - 4));
            for (std::size_t i = 0; i < b.size(); ++i)
                CHECK(grid_adjacent(b[i], b[(i + 1) % b.size()]));
        }
    }
}

TEST_CASE("two_cut_corner identifies corner-neighbor pairs") {
    GridGraph g = testutil::uniform_grid(3, 3);
    auto x = two_cut_corner(g, NodeId{1, 2}, NodeId{2, 1});
    REQUIRE(x.has_value());
    CHECK(*x == NodeId{1, 1});

    auto y = two_cut_corner(g, NodeId{1, 2}, NodeId{2, 3});
    REQUIRE(y.has_value());
    CHECK(*y == NodeId{1, 3});

    CHECK_FALSE(two_cut_corner(g, NodeId{1, 1}, NodeId{3, 3}).has_value());
}

TEST_CASE("two_cut_corner agrees with brute-force disconnection on small grids") {
    for (int m = 3; m <= 5; ++m) {
        for (int n = 3; n <= 5; ++n) {
            GridGraph g = testutil::uniform_grid(m, n);
            for (std::size_t a = 0; a < g.node_count(); ++a) {
                for (std::size_t b = a + 1; b < g.node_count(); ++b) {
                    NodeId s = g.node_at(a), t = g.node_at(b);
                    bool has = two_cut_corner(g, s, t).has_value();
                    CHECK(has == testutil::removal_disconnects(g, s, t));
                }
            }
        }
    }
}

TEST_CASE("validate_bipartition flood-fills both sides") {
    GridGraph g = testutil::uniform_grid(3, 3);

    // column 1 vs rest
    std::vector<std::uint8_t> side(9, 1);
    for (int r = 0; r < 3; ++r) side[static_cast<std::size_t>(r) * 3] = 0;
    CHECK(validate_bipartition(g, make_bipartition(g, side)));

    // diagonal corners are disconnected
    std::vector<std::uint8_t> diag(9, 1);
    diag[g.index(NodeId{1, 1})] = 0;
    diag[g.index(NodeId{3, 3})] = 0;
    CHECK_FALSE(validate_bipartition(g, make_bipartition(g, diag)));

    // side 0 occupying the full middle column splits side 1 in two
    std::vector<std::uint8_t> snake(9, 1);
    for (NodeId v : {NodeId{1, 1}, NodeId{1, 2}, NodeId{2, 2}, NodeId{3, 2}})
        snake[g.index(v)] = 0;
    CHECK_FALSE(validate_bipartition(g, make_bipartition(g, snake)));

    // bent side 0 leaving side 1 connected around it
    std::vector<std::uint8_t> bent(9, 1);
    for (NodeId v : {NodeId{1, 1}, NodeId{1, 2}, NodeId{2, 2}})
        bent[g.index(v)] = 0;
    CHECK(validate_bipartition(g, make_bipartition(g, bent)));

    // an empty side is invalid
    CHECK_FALSE(validate_bipartition(g, make_bipartition(g, std::vector<std::uint8_t>(9, 0))));
}

TEST_CASE("make_bipartition tracks weights") {
    GridGraph g = parse_grid("2 2\n1 2\n3 4");
    std::vector<std::uint8_t> side = {0, 1, 0, 1};
    Bipartition b = make_bipartition(g, side);
    CHECK(b.weight0 == 4);
    CHECK(b.weight1 == 6);
    CHECK(b.balance() == 4);
    CHECK(b.weight0 + b.weight1 == g.total_weight());
}

TEST_CASE("make_path validates adjacency and simplicity") {
    GridGraph g = testutil::uniform_grid(3, 3);
    GridPath p = make_path(g, {{1, 1}, {1, 2}, {2, 2}});
    CHECK(p.weight == 3);
    CHECK_THROWS_AS(make_path(g, {{1, 1}, {2, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(make_path(g, {{1, 1}, {1, 2}, {1, 1}}), std::invalid_argument);
}
