#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "qderange/permoracle.hpp"
#include "qderange/qseries.hpp"

using namespace qderange;

namespace {

CoefficientHistogram::Map as_map(std::initializer_list<std::pair<std::size_t, long>> rows) {
    CoefficientHistogram::Map m;
    for (auto [k, c] : rows) m[k] = Integer(c);
    return m;
}

}  // namespace

TEST_CASE("major index") {
    CHECK(maj_A({1, 2, 3, 4, 5}) == 0);
    CHECK(maj_A({4, 1, 2, 3}) == 1);
    CHECK(maj_A({2, 1, 4, 3}) == 4);
}

TEST_CASE("flag major index") {
    const SignedPerm paper({3, 5, -1, 2, -6, -7, 4});
    CHECK(maj_B(paper) == 11);
    CHECK(neg(paper) == 3);
    CHECK(fmaj(paper) == 25);

    CHECK(fmaj(SignedPerm({1, 2, 3})) == 0);

    const SignedPerm barred_one({-1});
    CHECK(maj_B(barred_one) == 0);
    CHECK(neg(barred_one) == 1);
    CHECK(fmaj(barred_one) == 1);
}

TEST_CASE("SignedPerm validation") {
    CHECK_THROWS_AS(SignedPerm({1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(SignedPerm({1, -1}), std::invalid_argument);
    CHECK_THROWS_AS(SignedPerm({0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(SignedPerm({3}), std::invalid_argument);
    CHECK_NOTHROW(SignedPerm({}));
}

TEST_CASE("type A enumeration") {
    CHECK(enumerate_derangements_A(0).counts() == as_map({{0, 1}}));
    CHECK(enumerate_derangements_A(1).empty());
    CHECK(enumerate_derangements_A(2).counts() == as_map({{1, 1}}));
    CHECK(enumerate_derangements_A(5).counts() ==
          as_map({{1, 1}, {2, 3}, {3, 5}, {4, 7}, {5, 8}, {6, 8}, {7, 6}, {8, 4}, {9, 2}}));
    CHECK_THROWS_AS(enumerate_derangements_A(10), std::length_error);

    for (unsigned long n = 0; n <= 7; ++n) {
        const CoefficientHistogram h = enumerate_derangements_A(n);
        CHECK(h.total() == derangement_count_A(n));
        CHECK(h.to_poly() == d_poly_A(n));
    }
}

TEST_CASE("type B enumeration") {
    CHECK(enumerate_derangements_B(1).counts() == as_map({{1, 1}}));
    CHECK(enumerate_derangements_B(2).counts() == as_map({{1, 1}, {2, 2}, {3, 1}, {4, 1}}));
    CHECK(enumerate_derangements_B(3).counts() ==
          as_map({{1, 1}, {2, 3}, {3, 4}, {4, 5}, {5, 5}, {6, 4}, {7, 4}, {8, 2}, {9, 1}}));
    CHECK_THROWS_AS(enumerate_derangements_B(8), std::length_error);

    for (unsigned long n = 0; n <= 5; ++n) {
        const CoefficientHistogram h = enumerate_derangements_B(n);
        CHECK(h.total() == derangement_count_B(n));
        CHECK(h.to_poly() == d_poly_B(n));
    }
}

TEST_CASE("the five B_2-derangements are exactly the listed ones") {
    // section 1 lists 1'2', 21, 21', 2'1, 2'1'
    std::set<std::vector<int>> expected = {
        {-1, -2}, {2, 1}, {2, -1}, {-2, 1}, {-2, -1}};
    std::set<std::vector<int>> found;
    std::vector<int> base = {1, 2};
    do {
        for (int mask = 0; mask < 4; ++mask) {
            std::vector<int> s(2);
            for (int i = 0; i < 2; ++i) s[i] = (mask >> i) & 1 ? -base[i] : base[i];
            if (s[0] != 1 && s[1] != 2) found.insert(s);
        }
    } while (std::next_permutation(base.begin(), base.end()));
    CHECK(found == expected);

    // and their fmaj histogram is the n = 2 row
    CoefficientHistogram::Map hist;
    for (const auto& s : found) hist[fmaj(SignedPerm(s))] += Integer(1);
    CHECK(hist == enumerate_derangements_B(2).counts());
}

TEST_CASE("worker count never changes the histogram") {
    CHECK(enumerate_derangements_A(6, 1) == enumerate_derangements_A(6, 4));
    CHECK(enumerate_derangements_B(4, 1) == enumerate_derangements_B(4, 3));
    CHECK(enumerate_derangements_A(7, 2) == enumerate_derangements_A(7, 7));
}
