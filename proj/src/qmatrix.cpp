#include "qmiura/qmatrix.hpp"

#include <map>
#include <nlohmann/json.hpp>

namespace qmiura {

namespace {

using Counts = std::map<int, int>; // part -> multiplicity left to cover

bool fits(const Partition& p, const Counts& avail) {
    for (auto& [part, m] : p.multiplicities()) {
        auto it = avail.find(part);
        if (it == avail.end() || it->second < m) return false;
    }
    return true;
}

void subtract(Counts& avail, const Partition& p, int sign) {
    for (int part : p.parts()) avail[part] += sign;
}

// Backtracking over tuples (mu^1,...,mu^l), mu^q a partition of lambda_q,
// whose multiset union is the target.  abs_value selects |L| factors.
void tuple_sum(const std::vector<int>& lambda_parts, size_t q, Counts& avail,
               const Int& acc, bool abs_value, Int& total) {
    if (q == lambda_parts.size()) {
        for (auto& [part, m] : avail)
            if (m != 0) return;
        total += acc;
        return;
    }
    for (const Partition& p : partitions_of_weight(lambda_parts[q])) {
        if (!fits(p, avail)) continue;
        Int L = lagrange_number(p);
        if (abs_value) L = abs(L);
        subtract(avail, p, -1);
        tuple_sum(lambda_parts, q + 1, avail, acc * L, abs_value, total);
        subtract(avail, p, +1);
    }
}

Int tuple_entry(const Partition& lambda, const Partition& mu, bool abs_value) {
    if (lambda.weight() != mu.weight()) return 0;
    if (lambda.is_zero()) return 1; // Q^{(0)(0)} = Q_{(0)(0)} = 1
    Counts avail;
    for (int p : mu.parts()) ++avail[p];
    Int total = 0;
    tuple_sum(lambda.parts(), 0, avail, Int(1), abs_value, total);
    return total;
}

} // namespace

Int q_entry(const Partition& lambda, const Partition& mu) {
    Int t = tuple_entry(lambda, mu, false);
    return lambda.length() % 2 == 0 ? t : -t;
}

Int inverse_q_entry(const Partition& mu, const Partition& rho) {
    return tuple_entry(mu, rho, true);
}

QMatrix q_matrix(int weight, QKind kind) {
    QMatrix m;
    m.weight = weight;
    m.kind = kind;
    m.order = partitions_of_weight(weight);
    size_t n = m.order.size();
    m.entries.assign(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            m.entries[i][j] = kind == QKind::direct
                                  ? q_entry(m.order[i], m.order[j])
                                  : inverse_q_entry(m.order[i], m.order[j]);
    return m;
}

const Int& QMatrix::at(const Partition& row, const Partition& col) const {
    return entries[static_cast<size_t>(partition_index(row))]
                  [static_cast<size_t>(partition_index(col))];
}

std::vector<std::vector<Int>> q_product(const QMatrix& a, const QMatrix& b) {
    size_t n = a.order.size();
    if (b.order.size() != n || a.weight != b.weight)
        throw std::invalid_argument("q_product: weight mismatch");
    std::vector<std::vector<Int>> r(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < n; ++j)
                r[i][j] += a.entries[i][k] * b.entries[k][j];
    return r;
}

std::string QMatrix::to_json() const {
    nlohmann::ordered_json j;
    j["weight"] = weight;
    j["kind"] = kind == QKind::direct ? "direct" : "inverse";
    auto ord = nlohmann::ordered_json::array();
    for (const Partition& p : order) ord.push_back(p.parts());
    j["order"] = ord;
    auto ent = nlohmann::ordered_json::array();
    for (const auto& row : entries) {
        auto r = nlohmann::ordered_json::array();
        for (const Int& e : row) r.push_back(e.get_str());
        ent.push_back(r);
    }
    j["entries"] = ent;
    return j.dump();
}

QMatrix QMatrix::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    QMatrix m;
    m.weight = j.at("weight").get<int>();
    std::string k = j.at("kind").get<std::string>();
    if (k == "direct")
        m.kind = QKind::direct;
    else if (k == "inverse")
        m.kind = QKind::inverse;
    else
        throw std::invalid_argument("QMatrix::from_json: bad kind");
    for (const auto& p : j.at("order"))
        m.order.push_back(Partition(p.get<std::vector<int>>()));
    for (const auto& row : j.at("entries")) {
        std::vector<Int> r;
        for (const auto& e : row) r.push_back(Int(e.get<std::string>()));
        m.entries.push_back(std::move(r));
    }
    return m;
}

} // namespace qmiura
