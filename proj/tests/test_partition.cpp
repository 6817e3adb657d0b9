#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmiura/partition.hpp"

using namespace qmiura;

TEST_CASE("partition basics") {
    Partition zero;
    CHECK(zero.weight() == 0);
    CHECK(zero.length() == 0);
    CHECK(zero.is_zero());

    Partition p({1, 2, 1}); // sorts to (2,1,1)
    CHECK(p.parts() == std::vector<int>{2, 1, 1});
    CHECK(p.weight() == 4);
    CHECK(p.length() == 3);
    CHECK(p.multiplicity(1) == 2);
    CHECK(p.multiplicity(2) == 1);
    CHECK(p.multiplicity(5) == 0);
}

TEST_CASE("enumeration order is descending lexicographic") {
    auto y0 = partitions_of_weight(0);
    REQUIRE(y0.size() == 1);
    CHECK(y0[0].is_zero());

    auto y3 = partitions_of_weight(3);
    REQUIRE(y3.size() == 3);
    CHECK(y3[0].parts() == std::vector<int>{3});
    CHECK(y3[1].parts() == std::vector<int>{2, 1});
    CHECK(y3[2].parts() == std::vector<int>{1, 1, 1});

    auto y5 = partitions_of_weight(5);
    REQUIRE(y5.size() == 7);
    CHECK(y5[0].parts() == std::vector<int>{5});
    CHECK(y5[1].parts() == std::vector<int>{4, 1});
    CHECK(y5[2].parts() == std::vector<int>{3, 2});
    CHECK(y5[3].parts() == std::vector<int>{3, 1, 1});
    CHECK(y5[4].parts() == std::vector<int>{2, 2, 1});
    CHECK(y5[5].parts() == std::vector<int>{2, 1, 1, 1});
    CHECK(y5[6].parts() == std::vector<int>{1, 1, 1, 1, 1});

    for (int k = 0; k <= 8; ++k) {
        auto all = partitions_of_weight(k);
        for (size_t i = 0; i < all.size(); ++i) {
            CHECK(all[i].weight() == k);
            CHECK(partition_index(all[i]) == static_cast<int>(i));
        }
    }
}

TEST_CASE("plus_one") {
    CHECK(Partition({2, 1}).plus_one().parts() == std::vector<int>{3, 2});
    CHECK(Partition().plus_one().is_zero());
    CHECK(Partition({1, 1, 1}).plus_one().parts() == std::vector<int>{2, 2, 2});
}

TEST_CASE("z_lambda and mult factorial") {
    CHECK(Partition().z() == 1);
    CHECK(Partition({2, 1, 1}).z() == 4);
    CHECK(Partition({3, 3}).z() == 18);
    CHECK(Partition({2, 1, 1}).mult_factorial() == 2);
}

TEST_CASE("Lagrange numbers match the printed list") {
    CHECK(lagrange_number(Partition()) == 1);
    CHECK(lagrange_number(Partition({1})) == -1);
    CHECK(lagrange_number(Partition({2})) == -1);
    CHECK(lagrange_number(Partition({1, 1})) == 3);
    CHECK(lagrange_number(Partition({3})) == -1);
    CHECK(lagrange_number(Partition({2, 1})) == 10);
    CHECK(lagrange_number(Partition({1, 1, 1})) == -15);
    // L((n)) = -1 and L((1^n)) = (-1)^n (2n-1)!! for n <= 10
    for (int n = 1; n <= 10; ++n) {
        CHECK(lagrange_number(Partition({n})) == -1);
        Int dd = double_factorial(2 * n - 1);
        if (n % 2 != 0) dd = -dd;
        CHECK(lagrange_number(Partition(std::vector<int>(n, 1))) == dd);
    }
}

TEST_CASE("multiset union and componentwise sum") {
    Partition a({3, 1}), b({2, 1});
    CHECK(a.multiset_union(b).parts() == std::vector<int>{3, 2, 1, 1});
    CHECK(a.componentwise_sum(b).parts() == std::vector<int>{5, 2});
}
