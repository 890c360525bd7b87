#include <doctest.h>

#include <random>

#include "gridpart/bcp_fptas.hpp"
#include "gridpart/oracle.hpp"
#include "test_util.hpp"

using namespace gridpart;

TEST_CASE("fptas parameter arithmetic") {
    GridGraph g = testutil::uniform_grid(3, 3); // W = 9, N = 9
    // eps = 1: rho = 1/2, r = W/(6N) = 9/54 = 1/6
    auto p = FptasParams::make(g, 1, 1);
    CHECK(p.r_num * 6 == p.r_den); // r == 1/6
    // scaled total <= 3N(1+1/eps) = 6N
    std::uint64_t scaled_total = 0;
    for (std::size_t i = 0; i < g.node_count(); ++i) scaled_total += p.scale(g.weight_at(i));
    CHECK(scaled_total <= 6 * g.node_count());

    // eps = 1/2: rho = 1/3, r = W/(9N) = 1/9, so unit weights scale to 9
    auto p2 = FptasParams::make(g, 1, 2);
    CHECK(p2.scale(1) == 9);

    CHECK_THROWS_AS(FptasParams::make(g, 0, 1), std::invalid_argument);
}

TEST_CASE("fptas on uniform 3x3 returns the optimum at eps = 1/2") {
    GridGraph g = testutil::uniform_grid(3, 3);
    Bipartition b = fptas_bcp2(g, 1, 2);
    CHECK(validate_bipartition(g, b));
    CHECK(b.balance() == 4);
}

TEST_CASE("fptas trivial split when a node holds half the weight") {
    std::vector<std::uint32_t> w(9, 1);
    w[4] = 20;
    GridGraph g(3, 3, w);
    Bipartition b = fptas_bcp2(g, 1, 1);
    CHECK(validate_bipartition(g, b));
    CHECK(b.balance() == 8);

    // one-row grid where the singleton split would disconnect: exact fallback
    GridGraph path = parse_grid("1 4\n1 9 1 1");
    Bipartition pb = fptas_bcp2(path, 1, 1);
    CHECK(validate_bipartition(path, pb));
    CHECK(pb.balance() == oracle::brute_bcp2(path).balance);
}

TEST_CASE("fptas guarantee on random instances") {
    std::mt19937_64 eng(86420);
    const std::pair<std::uint64_t, std::uint64_t> epsilons[] = {{1, 1}, {1, 2}, {1, 4}, {1, 10}};
    int audited = 0;
    while (audited < 12) {
        GridGraph g = testutil::random_grid(3, 6, 50, eng());
        std::uint64_t maxw = 0;
        for (std::size_t i = 0; i < g.node_count(); ++i) maxw = std::max<std::uint64_t>(maxw, g.weight_at(i));
        if (2 * maxw >= g.total_weight()) continue;
        std::uint64_t opt = exact_bcp2(g).balance;
        for (auto [en, ed] : epsilons) {
            Bipartition b = fptas_bcp2(g, en, ed);
            CHECK(validate_bipartition(g, b));
            // balance * (1 + eps) >= OPT, rationally: balance * (en + ed) >= opt * ed
            CHECK(b.balance() * (en + ed) >= opt * ed);
        }
        ++audited;
    }
}

TEST_CASE("scaled table width stays within the scheme budget") {
    std::mt19937_64 eng(13579);
    for (int rep = 0; rep < 6; ++rep) {
        GridGraph g = testutil::random_grid(3, 5, 1000, eng());
        std::uint64_t maxw = 0;
        for (std::size_t i = 0; i < g.node_count(); ++i) maxw = std::max<std::uint64_t>(maxw, g.weight_at(i));
        if (2 * maxw >= g.total_weight()) continue;
        for (auto [en, ed] : {std::pair<std::uint64_t, std::uint64_t>{1, 1}, {1, 4}}) {
            auto p = FptasParams::make(g, en, ed);
            std::uint64_t scaled_total = 0;
            for (std::size_t i = 0; i < g.node_count(); ++i) scaled_total += p.scale(g.weight_at(i));
            // W' <= 3N(1+1/eps) + N
            std::uint64_t n64 = g.node_count();
            CHECK(scaled_total * en <= 3 * n64 * (en + ed) + n64 * en);
        }
    }
}
