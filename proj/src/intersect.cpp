#include "qmiura/intersect.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace qmiura {

namespace {

Int dfac(long n) { return double_factorial(n); }

std::string key_string(const std::vector<int>& key) {
    std::string s;
    for (int k : key) {
        s += std::to_string(k);
        s += ',';
    }
    return s;
}

Rat genus0(const std::vector<int>& key) {
    // <tau_{k_1}...tau_{k_n}>_0 = (n-3)! / prod k_i!  when sum k = n-3.
    Rat r = factorial(static_cast<long>(key.size()) - 3);
    for (int k : key) r /= factorial(k);
    return r;
}

Rat tau_memo_lookup(std::vector<int> key);

// Core recursion on a sorted (ascending) valid key with genus g >= 1.
Rat tau_recurse(const std::vector<int>& key, int g) {
    int n = static_cast<int>(key.size());
    if (g == 1 && n == 1 && key[0] == 1) return Rat(1, 24);

    if (key.front() == 0) {
        // string equation: lower each remaining index by one
        Rat r = 0;
        std::vector<int> rest(key.begin() + 1, key.end());
        for (size_t j = 0; j < rest.size(); ++j) {
            if (rest[j] == 0) continue;
            std::vector<int> lowered = rest;
            lowered[j] -= 1;
            r += tau_memo_lookup(lowered);
        }
        return r;
    }
    if (key.front() == 1 && n > 1) {
        // dilaton equation on a tau_1 insertion
        std::vector<int> rest1(key.begin() + 1, key.end());
        return Rat(2 * g - 2 + n - 1) * tau_memo_lookup(rest1);
    }
    int k0 = key.back();
    std::vector<int> rest(key.begin(), key.end() - 1);
    // Virasoro (DVV) recursion on the largest index k0 >= 2.
    Rat r = 0;
    Int d0 = dfac(2 * k0 + 1);
    for (size_t j = 0; j < rest.size(); ++j) {
        std::vector<int> merged;
        merged.reserve(rest.size());
        for (size_t i = 0; i < rest.size(); ++i)
            if (i != j) merged.push_back(rest[i]);
        merged.push_back(k0 + rest[j] - 1);
        Rat c = Rat(dfac(2 * k0 + 2 * rest[j] - 1)) /
                Rat(d0 * dfac(2 * rest[j] - 1));
        r += c * tau_memo_lookup(merged);
    }
    for (int a = 0; a <= k0 - 2; ++a) {
        int b = k0 - 2 - a;
        Rat c = Rat(dfac(2 * a + 1) * dfac(2 * b + 1)) / (2 * Rat(d0));
        // non-separating term
        std::vector<int> irr = rest;
        irr.push_back(a);
        irr.push_back(b);
        r += c * tau_memo_lookup(irr);
        // separating terms: ordered genus split and subset split
        int m = static_cast<int>(rest.size());
        for (int mask = 0; mask < (1 << m); ++mask) {
            std::vector<int> left{a}, right{b};
            for (int i = 0; i < m; ++i)
                (mask >> i & 1 ? left : right).push_back(rest[i]);
            for (int g1 = 0; g1 <= g; ++g1) {
                int g2 = g - g1;
                if (2 * g1 - 2 + static_cast<int>(left.size()) <= 0) continue;
                if (2 * g2 - 2 + static_cast<int>(right.size()) <= 0) continue;
                if (tau_genus(left) != g1 || tau_genus(right) != g2) continue;
                r += c * tau_memo_lookup(left) * tau_memo_lookup(right);
            }
        }
    }
    return r;
}

Rat tau_memo_lookup(std::vector<int> key) {
    for (int k : key)
        if (k < 0) return 0;
    std::sort(key.begin(), key.end());
    int n = static_cast<int>(key.size());
    long sum = std::accumulate(key.begin(), key.end(), 0L);
    if ((sum - n + 3) % 3 != 0) return 0;
    long g = (sum - n + 3) / 3;
    if (g < 0 || 2 * g - 2 + n <= 0) return 0;
    if (g == 0) return genus0(key);

    static std::unordered_map<std::string, Rat> memo;
    static std::mutex mu;
    std::string ks = key_string(key);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(ks);
        if (it != memo.end()) return it->second;
    }
    Rat value = tau_recurse(key, static_cast<int>(g));
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(ks, value);
    return value;
}

// ---- residue formula -------------------------------------------------------

// One term t -> coeff of an R-matrix entry.  Entry exponents step down by 6.
struct EntryTerm {
    int t;
    Rat c;
};

// Terms of entry (i,j) with exponent >= tmin, highest first.
std::vector<EntryTerm> entry_terms(int i, int j, int tmin) {
    std::vector<EntryTerm> out;
    for (int g = 0;; ++g) {
        int t;
        Rat c;
        if (i == j) {
            if (g == 0) continue; // diagonal sums start at g = 1
            t = -6 * g + 4;
            c = Rat(dfac(6 * g - 5)) /
                (Rat(int_pow(24, g - 1)) * Rat(factorial(g - 1)));
            c /= 2;
            if (i == 0) c = -c; // (1,1) entry carries the minus sign
        } else if (i == 0) {    // (1,2) entry
            t = -6 * g;
            c = -Rat(dfac(6 * g - 1)) /
                (Rat(int_pow(24, g)) * Rat(factorial(g)));
        } else { // (2,1) entry
            t = -6 * g + 2;
            c = Rat(6 * g + 1) / Rat(6 * g - 1) * Rat(dfac(6 * g - 1)) /
                (Rat(int_pow(24, g)) * Rat(factorial(g)));
        }
        if (t < tmin) break;
        c.canonicalize();
        out.push_back({t, c});
    }
    return out;
}

// Counts non-negative integer solutions m of A m = b (A: nv x nf).  The
// solution set must be finite (cycle incidence systems have at most a
// one-dimensional kernel with mixed signs).
long count_solutions(std::vector<std::vector<Rat>> A, std::vector<Rat> b) {
    int nv = static_cast<int>(A.size());
    int nf = nv == 0 ? 0 : static_cast<int>(A[0].size());
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < nf && row < nv; ++col) {
        int p = -1;
        for (int i = row; i < nv; ++i)
            if (A[i][col] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(A[p], A[row]);
        std::swap(b[p], b[row]);
        Rat inv = Rat(1) / A[row][col];
        for (int c = col; c < nf; ++c) A[row][c] *= inv;
        b[row] *= inv;
        for (int i = 0; i < nv; ++i) {
            if (i == row || A[i][col] == 0) continue;
            Rat f = A[i][col];
            for (int c = col; c < nf; ++c) A[i][c] -= f * A[row][c];
            b[i] -= f * b[row];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (int i = row; i < nv; ++i)
        if (b[i] != 0) return 0; // inconsistent
    std::vector<bool> is_pivot(nf, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < nf; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    if (free_cols.empty()) {
        for (int i = 0; i < row; ++i)
            if (b[i] < 0 || b[i].get_den() != 1) return 0;
        return 1;
    }
    if (free_cols.size() != 1)
        throw std::logic_error("count_solutions: unexpected kernel dimension");
    int fc = free_cols[0];
    // m_{pivot i} = b[i] - A[i][fc] * c,  m_fc = c >= 0
    // Find the integer range of c keeping everything >= 0.
    bool has_upper = false;
    Rat lo = 0, hi = 0;
    for (int i = 0; i < row; ++i) {
        Rat coef = A[i][fc];
        if (coef > 0) {
            Rat bound = b[i] / coef;
            if (!has_upper || bound < hi) hi = bound;
            has_upper = true;
        } else if (coef < 0) {
            Rat bound = b[i] / coef;
            if (bound > lo) lo = bound;
        } else if (b[i] < 0) {
            return 0;
        }
    }
    if (!has_upper)
        throw std::logic_error("count_solutions: unbounded solution set");
    long count = 0;
    Int clo_z, chi_z;
    mpz_cdiv_q(clo_z.get_mpz_t(), lo.get_num().get_mpz_t(),
               lo.get_den().get_mpz_t());
    mpz_fdiv_q(chi_z.get_mpz_t(), hi.get_num().get_mpz_t(),
               hi.get_den().get_mpz_t());
    for (Int c = clo_z; c <= chi_z; ++c) {
        bool ok = true;
        for (int i = 0; i < row && ok; ++i) {
            Rat m = b[i] - A[i][fc] * Rat(c);
            if (m < 0 || m.get_den() != 1) ok = false;
        }
        if (ok) ++count;
    }
    return count;
}

// Contribution of one permutation x trace-index cycle, summed over all
// admissible exponent choices of the R-entry factors.
Rat cycle_sum(const std::vector<int>& parts, const std::vector<int>& perm,
              const std::vector<int>& idx, int T0) {
    int l = static_cast<int>(parts.size());
    // Entry term lists and suffix maxima for pruning.
    std::vector<std::vector<EntryTerm>> terms(l);
    std::vector<int> maxexp(l);
    for (int j = 0; j < l; ++j) {
        int a = idx[j], b = idx[(j + 1) % l];
        terms[j] = entry_terms(a, b, T0 - 2 * l); // generous lower cutoff
        if (terms[j].empty()) return 0;
        maxexp[j] = terms[j][0].t;
    }
    std::vector<int> sufmax(l + 1, 0);
    for (int j = l - 1; j >= 0; --j) sufmax[j] = sufmax[j + 1] + maxexp[j];

    // Denominator factor j couples variables perm[j] (a) and perm[j+1] (b);
    // the smaller variable index has the larger modulus.
    std::vector<int> hi(l), lovar(l);
    int signprod = 1;
    for (int j = 0; j < l; ++j) {
        int a = perm[j], b = perm[(j + 1) % l];
        if (a < b) {
            hi[j] = a;
            lovar[j] = b;
        } else {
            hi[j] = b;
            lovar[j] = a;
            signprod = -signprod;
        }
    }

    std::vector<int> chosen(l);
    Rat total = 0;
    // DFS over exponent choices with the fixed total T0.
    std::function<void(int, int, Rat)> dfs = [&](int j, int rem, Rat coeff) {
        if (j == l) {
            if (rem != 0) return;
            // Linear system for the geometric expansion orders m_j.
            std::vector<std::vector<Rat>> A(l, std::vector<Rat>(l, 0));
            std::vector<Rat> rhs(l, 0);
            for (int f = 0; f < l; ++f) {
                A[lovar[f]][f] += 1;
                A[hi[f]][f] -= 1;
                rhs[hi[f]] += 1;
            }
            for (int i = 0; i < l; ++i) {
                // variable i is perm-position with perm[p] == i
                int tp = 0;
                for (int p = 0; p < l; ++p)
                    if (perm[p] == i) tp = chosen[p];
                rhs[i] += Rat(-2 * parts[i] - 4 - tp, 2);
                rhs[i].canonicalize();
            }
            long n = count_solutions(A, rhs);
            if (n != 0) total += coeff * Rat(signprod * n);
            return;
        }
        for (const auto& [t, c] : terms[j]) {
            if (rem - t > sufmax[j + 1]) continue; // rest cannot reach rem
            chosen[j] = t;
            dfs(j + 1, rem - t, coeff * c);
        }
    };
    dfs(0, T0, Rat(1));
    return total;
}

} // namespace

Rat MatLaurent::at(int i, int j, int exponent) const {
    auto it = e[i][j].find(exponent);
    return it == e[i][j].end() ? Rat(0) : it->second;
}

MatLaurent mat_mul(const MatLaurent& a, const MatLaurent& b) {
    MatLaurent r;
    r.order = std::min(a.order, b.order);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (const auto& [ea, ca] : a.e[i][k])
                    for (const auto& [eb, cb] : b.e[k][j]) {
                        int ex = ea + eb;
                        if (ex < -r.order || ex > r.order) continue;
                        Rat& slot = r.e[i][j][ex];
                        slot += ca * cb;
                        if (slot == 0) r.e[i][j].erase(ex);
                    }
    return r;
}

MatLaurent r_matrix(int order) {
    if (order < 0) throw std::invalid_argument("r_matrix: negative order");
    MatLaurent m;
    m.order = order;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (const auto& [t, c] : entry_terms(i, j, -order))
                if (t <= order) m.e[i][j][t] = c;
    return m;
}

int tau_genus(const std::vector<int>& key) {
    int n = static_cast<int>(key.size());
    long sum = 0;
    for (int k : key) {
        if (k < 0) return -1;
        sum += k;
    }
    if ((sum - n + 3) % 3 != 0) return -1;
    long g = (sum - n + 3) / 3;
    if (g < 0 || 2 * g - 2 + n <= 0) return -1;
    return static_cast<int>(g);
}

Rat tau_oracle(std::vector<int> key) { return tau_memo_lookup(std::move(key)); }

Rat tau_onepoint(int g) {
    if (g < 1) throw std::invalid_argument("tau_onepoint: g >= 1 required");
    return Rat(1) / (Rat(int_pow(24, g)) * Rat(factorial(g)));
}

Rat tau_bdy(const Partition& la) {
    int l = la.length();
    if (l == 0) throw std::invalid_argument("tau_bdy: empty partition");
    if (l == 1) {
        if (la.part(0) % 3 != 0)
            throw std::invalid_argument("tau_bdy: single part must be 3g-3");
        return tau_onepoint(la.part(0) / 3 + 1);
    }
    if (la.weight() % 3 != 0)
        throw std::invalid_argument("tau_bdy: weight incompatible with genus");
    const std::vector<int>& parts = la.parts();
    int T0 = -2 * la.weight() - 2 * l;

    Rat sum = 0;
    // The summand is invariant under cyclic rotation of the permutation, so
    // fix the first entry and drop the overall 1/l.
    std::vector<int> tail(l - 1);
    std::iota(tail.begin(), tail.end(), 1);
    do {
        std::vector<int> perm(1, 0);
        perm.insert(perm.end(), tail.begin(), tail.end());
        // all 2^l cyclic matrix-index assignments
        for (int mask = 0; mask < (1 << l); ++mask) {
            std::vector<int> idx(l);
            for (int j = 0; j < l; ++j) idx[j] = (mask >> j) & 1;
            sum += cycle_sum(parts, perm, idx, T0);
        }
    } while (std::next_permutation(tail.begin(), tail.end()));
    // The delta_{l,2} correction has only non-negative powers of the inner
    // variable in the chosen expansion region, so it contributes nothing for
    // parts >= 1.
    // Per-point normalization 1/(2 k_i + 1)!! of the correlation kernel,
    // with k_i = lambda_i + 1; calibrated against the recursion oracle.
    for (int p : parts) sum /= Rat(dfac(2 * p + 3));
    return -sum;
}

} // namespace qmiura
