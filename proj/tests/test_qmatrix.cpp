#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmiura/qmatrix.hpp"

using namespace qmiura;

namespace {

std::vector<std::vector<long>> to_long(const std::vector<std::vector<Int>>& m) {
    std::vector<std::vector<long>> r;
    for (auto& row : m) {
        std::vector<long> rr;
        for (auto& e : row) rr.push_back(e.get_si());
        r.push_back(rr);
    }
    return r;
}

} // namespace

TEST_CASE("single entries") {
    CHECK(q_entry(Partition({2}), Partition({1, 1})) == -3);
    CHECK(q_entry(Partition({2, 1}), Partition({1, 1, 1})) == -3);
    CHECK(q_entry(Partition({3}), Partition({1, 1, 1})) == 15);
    CHECK(inverse_q_entry(Partition({2}), Partition({1, 1})) == 3);
    CHECK(inverse_q_entry(Partition({3, 2}), Partition({1, 1, 1, 1, 1})) == 45);
    // weight mismatch
    CHECK(q_entry(Partition({2}), Partition({1})) == 0);
    CHECK(inverse_q_entry(Partition({3}), Partition({1})) == 0);
    // diagonal
    for (int k = 0; k <= 6; ++k)
        for (const auto& p : partitions_of_weight(k)) {
            CHECK(q_entry(p, p) == 1);
            CHECK(inverse_q_entry(p, p) == 1);
        }
}

TEST_CASE("printed tables, weights 0-5") {
    CHECK(to_long(q_matrix(0, QKind::direct).entries) ==
          std::vector<std::vector<long>>{{1}});
    CHECK(to_long(q_matrix(1, QKind::direct).entries) ==
          std::vector<std::vector<long>>{{1}});
    CHECK(to_long(q_matrix(2, QKind::direct).entries) ==
          std::vector<std::vector<long>>{{1, -3}, {0, 1}});
    CHECK(to_long(q_matrix(2, QKind::inverse).entries) ==
          std::vector<std::vector<long>>{{1, 3}, {0, 1}});
    CHECK(to_long(q_matrix(3, QKind::direct).entries) ==
          std::vector<std::vector<long>>{{1, -10, 15}, {0, 1, -3}, {0, 0, 1}});
    CHECK(to_long(q_matrix(3, QKind::inverse).entries) ==
          std::vector<std::vector<long>>{{1, 10, 15}, {0, 1, 3}, {0, 0, 1}});
    CHECK(to_long(q_matrix(4, QKind::direct).entries) ==
          std::vector<std::vector<long>>{{1, -15, -10, 105, -105},
                                         {0, 1, 0, -10, 15},
                                         {0, 0, 1, -6, 9},
                                         {0, 0, 0, 1, -3},
                                         {0, 0, 0, 0, 1}});
    CHECK(to_long(q_matrix(4, QKind::inverse).entries) ==
          std::vector<std::vector<long>>{{1, 15, 10, 105, 105},
                                         {0, 1, 0, 10, 15},
                                         {0, 0, 1, 6, 9},
                                         {0, 0, 0, 1, 3},
                                         {0, 0, 0, 0, 1}});
    CHECK(to_long(q_matrix(5, QKind::direct).entries) ==
          std::vector<std::vector<long>>{{1, -21, -35, 210, 280, -1260, 945},
                                         {0, 1, 0, -15, -10, 105, -105},
                                         {0, 0, 1, -3, -10, 45, -45},
                                         {0, 0, 0, 1, 0, -10, 15},
                                         {0, 0, 0, 0, 1, -6, 9},
                                         {0, 0, 0, 0, 0, 1, -3},
                                         {0, 0, 0, 0, 0, 0, 1}});
    CHECK(to_long(q_matrix(5, QKind::inverse).entries) ==
          std::vector<std::vector<long>>{{1, 21, 35, 210, 280, 1260, 945},
                                         {0, 1, 0, 15, 10, 105, 105},
                                         {0, 0, 1, 3, 10, 45, 45},
                                         {0, 0, 0, 1, 0, 10, 15},
                                         {0, 0, 0, 0, 1, 6, 9},
                                         {0, 0, 0, 0, 0, 1, 3},
                                         {0, 0, 0, 0, 0, 0, 1}});
}

TEST_CASE("inverse times direct is the identity, weights <= 8") {
    for (int k = 0; k <= 8; ++k) {
        auto inv = q_matrix(k, QKind::inverse);
        auto dir = q_matrix(k, QKind::direct);
        auto prod = q_product(inv, dir);
        for (size_t i = 0; i < prod.size(); ++i)
            for (size_t j = 0; j < prod.size(); ++j)
                CHECK(prod[i][j] == (i == j ? 1 : 0));
    }
}

TEST_CASE("sign relation and first-row law, weights <= 8") {
    for (int k = 0; k <= 8; ++k) {
        auto all = partitions_of_weight(k);
        for (const auto& la : all)
            for (const auto& mu : all) {
                Int q = q_entry(la, mu);
                Int iq = inverse_q_entry(la, mu);
                int sign = (la.length() + mu.length()) % 2 == 0 ? 1 : -1;
                CHECK(q == sign * iq);
            }
        if (k >= 1) {
            Partition row({k});
            for (const auto& mu : all) {
                CHECK(q_entry(row, mu) == -lagrange_number(mu));
                CHECK(inverse_q_entry(row, mu) == abs(lagrange_number(mu)));
            }
        }
    }
}

TEST_CASE("upper triangular with unit diagonal, weights <= 8") {
    for (int k = 0; k <= 8; ++k)
        for (QKind kind : {QKind::direct, QKind::inverse}) {
            auto m = q_matrix(k, kind);
            for (size_t i = 0; i < m.entries.size(); ++i) {
                CHECK(m.entries[i][i] == 1);
                for (size_t j = 0; j < i; ++j) CHECK(m.entries[i][j] == 0);
            }
        }
}

TEST_CASE("lambda_g contraction identity") {
    // sum_{lambda in Y_{2g-3}} (-1)^{l} L(lambda) Q^{lambda mu} = delta_{mu,(2g-3)}
    for (int g = 2; g <= 4; ++g) {
        int w = 2 * g - 3;
        auto all = partitions_of_weight(w);
        for (const auto& mu : all) {
            Int s = 0;
            for (const auto& la : all) {
                Int t = lagrange_number(la) * q_entry(la, mu);
                s += la.length() % 2 == 0 ? t : -t;
            }
            CHECK(s == (mu == Partition({w}) ? 1 : 0));
        }
    }
}

TEST_CASE("JSON round trip") {
    auto m = q_matrix(4, QKind::direct);
    auto text = m.to_json();
    auto m2 = QMatrix::from_json(text);
    CHECK(m2.to_json() == text);
    CHECK(m2.entries == m.entries);
    CHECK(m2.order == m.order);
}
