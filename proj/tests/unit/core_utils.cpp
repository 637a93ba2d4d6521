#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "edlgp/core/matrix.hpp"
#include "edlgp/core/random.hpp"

using namespace edlgp;

TEST_CASE("matrix gather and hconcat")
{
    Matrix m(3, 2);
    for (std::size_t r = 0; r < 3; ++r) {
        m(r, 0) = static_cast<double>(r);
        m(r, 1) = 10.0 + static_cast<double>(r);
    }
    std::vector<std::size_t> rows { 2, 0, 2 };
    Matrix g = gather_rows(m, rows);
    CHECK(g.rows() == 3);
    CHECK(g(0, 0) == 2.0);
    CHECK(g(1, 1) == 10.0);
    CHECK(g(2, 1) == 12.0);

    Matrix b(3, 1, 7.0);
    Matrix h = hconcat(m, b);
    CHECK(h.cols() == 3);
    CHECK(h(1, 0) == 1.0);
    CHECK(h(1, 2) == 7.0);
}

TEST_CASE("uniform helpers stay in range and are reproducible")
{
    Rng a(5);
    Rng b(5);
    std::set<int> seen;
    for (int i = 0; i < 2000; ++i) {
        int const v = uniform_int(a, 3, 7);
        CHECK(v == uniform_int(b, 3, 7));
        CHECK(v >= 3);
        CHECK(v <= 7);
        seen.insert(v);
        double const u = uniform01(a);
        CHECK(u == uniform01(b));
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    CHECK(seen.size() == 5);
}

TEST_CASE("derived seeds differ by salt")
{
    CHECK(derive_seed(1, "a") != derive_seed(1, "b"));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(1, "a") == derive_seed(1, "a"));
}

TEST_CASE("shuffle is a permutation")
{
    std::vector<int> v(50);
    for (int i = 0; i < 50; ++i) {
        v[static_cast<std::size_t>(i)] = i;
    }
    Rng rng(3);
    shuffle(v.begin(), v.end(), rng);
    std::set<int> s(v.begin(), v.end());
    CHECK(s.size() == 50);
    CHECK(*s.begin() == 0);
    CHECK(*s.rbegin() == 49);
}
