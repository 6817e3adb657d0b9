#pragma once

#include <string>
#include <vector>

#include "qmiura/partition.hpp"

namespace qmiura {

enum class QKind { direct, inverse };

// Integer change-of-basis matrix between t-monomials and jet-monomials,
// indexed by the partitions of a fixed weight in descending-lex order.
// Upper triangular with unit diagonal in that order.
struct QMatrix {
    int weight = 0;
    QKind kind = QKind::direct;
    std::vector<Partition> order;
    std::vector<std::vector<Int>> entries;

    const Int& at(const Partition& row, const Partition& col) const;

    std::string to_json() const;
    static QMatrix from_json(const std::string& text);
};

// Q^{lambda mu}: signed sum over tuples (mu^1,...,mu^l) with mu^q a partition
// of lambda_q and multiset union mu, of prod_q L(mu^q).  Zero unless
// |lambda| = |mu|.
Int q_entry(const Partition& lambda, const Partition& mu);

// Q_{mu rho}: same tuple sum with |L(rho^q)| factors.
Int inverse_q_entry(const Partition& mu, const Partition& rho);

QMatrix q_matrix(int weight, QKind kind);

// Matrix product helper (same weight, canonical order on both sides).
std::vector<std::vector<Int>> q_product(const QMatrix& a, const QMatrix& b);

} // namespace qmiura
