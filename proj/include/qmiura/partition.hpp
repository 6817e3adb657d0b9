#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <vector>

#include "qmiura/rational.hpp"

namespace qmiura {

// Integer partition: weakly decreasing positive parts.  The empty list is
// the partition (0) of weight zero.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        std::sort(parts_.begin(), parts_.end(), std::greater<int>());
        for (int p : parts_)
            if (p <= 0) throw std::invalid_argument("Partition: parts must be positive");
    }

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int weight() const {
        int w = 0;
        for (int p : parts_) w += p;
        return w;
    }
    bool is_zero() const { return parts_.empty(); }
    int part(int i) const { return parts_.at(static_cast<size_t>(i)); }

    // Multiplicity of i among the parts.
    int multiplicity(int i) const {
        return static_cast<int>(std::count(parts_.begin(), parts_.end(), i));
    }
    std::map<int, int> multiplicities() const {
        std::map<int, int> m;
        for (int p : parts_) ++m[p];
        return m;
    }

    // m(lambda)! = prod_i m_i(lambda)!
    Int mult_factorial() const {
        Int r = 1;
        for (auto& [part, m] : multiplicities()) r *= factorial(m);
        return r;
    }

    // z_lambda = m(lambda)! prod_i i^{m_i(lambda)}
    Int z() const {
        Int r = mult_factorial();
        for (int p : parts_) r *= p;
        return r;
    }

    // lambda+1: every part incremented; (0)+1 = (0).
    Partition plus_one() const {
        std::vector<int> v = parts_;
        for (int& p : v) ++p;
        return Partition(std::move(v));
    }

    // Componentwise sum (pads with zeros).
    Partition componentwise_sum(const Partition& o) const {
        std::vector<int> v;
        size_t n = std::max(parts_.size(), o.parts_.size());
        for (size_t i = 0; i < n; ++i) {
            int a = i < parts_.size() ? parts_[i] : 0;
            int b = i < o.parts_.size() ? o.parts_[i] : 0;
            v.push_back(a + b);
        }
        return Partition(std::move(v));
    }

    // Multiset union of parts.
    Partition multiset_union(const Partition& o) const {
        std::vector<int> v = parts_;
        v.insert(v.end(), o.parts_.begin(), o.parts_.end());
        return Partition(std::move(v));
    }

    auto operator<=>(const Partition&) const = default;

private:
    std::vector<int> parts_;
};

// All partitions of weight k in descending-lexicographic order:
// (k) first, (1^k) last.  This matches the row/column order of the
// printed Q-matrix tables.
std::vector<Partition> partitions_of_weight(int k);

// Position of lambda within partitions_of_weight(lambda.weight()).
int partition_index(const Partition& lambda);

// Lagrange number L(mu) = (-1)^{l(mu)} (|mu|+l(mu))! / (m(mu)! prod_j (j+1)!^{m_j(mu)}).
// Always an integer; asserted on construction.
Int lagrange_number(const Partition& mu);

} // namespace qmiura
