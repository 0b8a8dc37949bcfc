#include <stdexcept>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "ldsal/contour.hpp"

using namespace ldsal;
using namespace ldsal::testing;

namespace {

GrayImage vertical_step(int w, int h, int step_col, double lo = 0.1, double hi = 0.9) {
    GrayImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) img(x, y) = x < step_col ? lo : hi;
    return img;
}

}  // namespace

TEST_CASE("detect_edges of a constant image is all zero") {
    const FloatMap edges = detect_edges(constant_map(32, 24, 0.5), EdgeParams{});
    for (const double v : edges.data()) CHECK(v == 0.0);
}

TEST_CASE("detect_edges thins a vertical step to a single-pixel line") {
    const FloatMap edges = detect_edges(vertical_step(40, 30, 20), EdgeParams{});
    // NMS oracle on the analytic step: per row exactly one responding
    // pixel, adjacent to the step column
    for (int y = 0; y < 30; ++y) {
        int count = 0, where = -1;
        for (int x = 0; x < 40; ++x)
            if (edges(x, y) > 0.0) {
                ++count;
                where = x;
            }
        CHECK(count == 1);
        CHECK(std::abs(where - 20) <= 1);
    }
}

TEST_CASE("detect_edges keeps a 45-degree edge free of 2-pixel-thick runs") {
    GrayImage img(48, 48);
    for (int y = 0; y < 48; ++y)
        for (int x = 0; x < 48; ++x) img(x, y) = (x + y < 48) ? 0.2 : 0.8;
    const FloatMap edges = detect_edges(img, EdgeParams{});
    int on = 0;
    for (const double v : edges.data()) on += v > 0.0 ? 1 : 0;
    CHECK(on > 20);
    // brute-force thickness check: no 2x2 block fully set
    for (int y = 0; y + 1 < 48; ++y)
        for (int x = 0; x + 1 < 48; ++x) {
            const bool thick = edges(x, y) > 0 && edges(x + 1, y) > 0 &&
                               edges(x, y + 1) > 0 && edges(x + 1, y + 1) > 0;
            CHECK_FALSE(thick);
        }
}

TEST_CASE("detect_edges output is in [0,1] and zero off-edge") {
    const FloatMap edges = detect_edges(vertical_step(30, 20, 15), EdgeParams{});
    for (const double v : edges.data()) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("EdgeParams validation") {
    EdgeParams p;
    p.low_threshold = 0.5;
    p.high_threshold = 0.4;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = EdgeParams{};
    p.min_chain_length = 1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("link_edges traces a straight segment into one full chain") {
    ContourMask m(30, 10);
    for (int x = 5; x < 25; ++x) m(x, 4) = 1;
    const LinkResult res = link_edges(m, 10);
    REQUIRE(res.chains.size() == 1);
    CHECK(res.chains[0].points.size() == 20);
    CHECK_FALSE(res.chains[0].closed);
    int surviving = 0;
    for (const std::uint8_t b : res.mask.data()) surviving += b;
    CHECK(surviving == 20);
}

TEST_CASE("link_edges prunes short speckle") {
    ContourMask m(20, 20);
    for (int x = 3; x < 8; ++x) m(x, 10) = 1;  // 5-pixel speckle
    const LinkResult res = link_edges(m, 10);
    CHECK(res.chains.empty());
    for (const std::uint8_t b : res.mask.data()) CHECK(b == 0);
}

TEST_CASE("link_edges traces a hollow square as one closed chain") {
    ContourMask m(20, 20);
    for (int i = 5; i <= 14; ++i) {
        m(i, 5) = m(i, 14) = 1;
        m(5, i) = m(14, i) = 1;
    }
    const LinkResult res = link_edges(m, 10);
    REQUIRE(res.chains.size() == 1);
    CHECK(res.chains[0].closed);
    CHECK(res.chains[0].points.size() == 36);
}

TEST_CASE("link_edges partitions surviving pixels among chains") {
    const ContourMask m = random_mask(40, 40, 0.15, 9);
    const LinkResult res = link_edges(m, 2);
    std::set<std::pair<int, int>> seen;
    long long total = 0;
    for (const EdgeChain& chain : res.chains) {
        for (const auto& p : chain.points) {
            CHECK(seen.insert(p).second);  // no pixel in two chains
            CHECK(res.mask(p.first, p.second) == 1);
        }
        total += static_cast<long long>(chain.points.size());
    }
    long long mask_count = 0;
    for (const std::uint8_t b : res.mask.data()) mask_count += b;
    CHECK(total == mask_count);
}

TEST_CASE("link_edges chains are 8-connected in order") {
    const ContourMask m = random_mask(30, 30, 0.1, 21);
    const LinkResult res = link_edges(m, 2);
    for (const EdgeChain& chain : res.chains) {
        CHECK(chain.points.size() >= 2);
        for (std::size_t i = 1; i < chain.points.size(); ++i) {
            CHECK(std::abs(chain.points[i].first - chain.points[i - 1].first) <= 1);
            CHECK(std::abs(chain.points[i].second - chain.points[i - 1].second) <= 1);
        }
    }
}

TEST_CASE("link_edges passes components of >= 2 pixels through losslessly at min length 2") {
    ContourMask m(25, 25);
    for (int x = 2; x < 12; ++x) m(x, 3) = 1;
    for (int i = 0; i < 6; ++i) m(15 + i, 10 + i) = 1;
    m(20, 20) = m(21, 20) = 1;
    // a junctioned component: plus sign
    for (int i = -2; i <= 2; ++i) {
        m(6 + i, 18) = 1;
        m(6, 18 + i) = 1;
    }
    const LinkResult res = link_edges(m, 2);
    CHECK(res.mask == m);
}

TEST_CASE("link_edges pruning is monotone in min_chain_length") {
    const ContourMask m = random_mask(35, 35, 0.12, 4);
    const LinkResult loose = link_edges(m, 2);
    const LinkResult strict = link_edges(m, 8);
    for (std::size_t i = 0; i < m.size(); ++i)
        if (strict.mask.data()[i]) CHECK(loose.mask.data()[i] == 1);
}

TEST_CASE("link_edges binarizes real-valued maps at > 0") {
    FloatMap edges(20, 5);
    for (int x = 4; x < 16; ++x) edges(x, 2) = 0.25;
    const LinkResult res = link_edges(edges, 5);
    REQUIRE(res.chains.size() == 1);
    CHECK(res.chains[0].points.size() == 12);
}
