#include "qmiura/partition.hpp"

#include <mutex>
#include <unordered_map>

namespace qmiura {

namespace {

void gen(int remaining, int maxpart, std::vector<int>& cur, std::vector<Partition>& out) {
    if (remaining == 0) {
        out.push_back(Partition(cur));
        return;
    }
    for (int p = std::min(remaining, maxpart); p >= 1; --p) {
        cur.push_back(p);
        gen(remaining - p, p, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<Partition> partitions_of_weight(int k) {
    if (k < 0) throw std::invalid_argument("partitions_of_weight: negative weight");
    // Memoized: enumeration feeds every Q-matrix entry.  Cache is fill-once.
    static std::unordered_map<int, std::vector<Partition>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    std::vector<Partition> out;
    std::vector<int> cur;
    gen(k, k, cur, out);
    if (k == 0) out = {Partition()};
    cache[k] = out;
    return out;
}

int partition_index(const Partition& lambda) {
    auto all = partitions_of_weight(lambda.weight());
    for (size_t i = 0; i < all.size(); ++i)
        if (all[i] == lambda) return static_cast<int>(i);
    throw std::logic_error("partition_index: partition not found");
}

Int lagrange_number(const Partition& mu) {
    Int num = factorial(mu.weight() + mu.length());
    Int den = mu.mult_factorial();
    for (int p : mu.parts()) den *= factorial(p + 1);
    Rat L(num, den);
    L.canonicalize();
    if (L.get_den() != 1)
        throw std::logic_error("lagrange_number: non-integral value (internal error)");
    Int r = L.get_num();
    if (mu.length() % 2 != 0) r = -r;
    return r;
}

} // namespace qmiura
