#include "qmiura/graphs1d.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "qmiura/qmatrix.hpp"

namespace qmiura {

int Multigraph::E() const {
    int e = 0;
    for (auto& [pr, m] : edges) e += m;
    return e;
}

int Multigraph::betti() const { return E() - V + 1; }

std::vector<int> Multigraph::valences() const {
    std::vector<int> val(V, 0);
    for (auto& [pr, m] : edges) {
        val[pr.first] += m;
        val[pr.second] += m; // a loop (i,i) counts twice
    }
    return val;
}

Partition Multigraph::lambda() const {
    std::vector<int> parts;
    for (int v : valences()) {
        if (v < 3) throw std::logic_error("Multigraph::lambda: valence < 3");
        parts.push_back(v - 2);
    }
    return Partition(parts);
}

namespace {

using EdgeMap = std::map<std::pair<int, int>, int>;

EdgeMap permuted(const EdgeMap& edges, const std::vector<int>& perm) {
    EdgeMap out;
    for (auto& [pr, m] : edges) {
        int a = perm[pr.first], b = perm[pr.second];
        if (a > b) std::swap(a, b);
        out[{a, b}] += m;
    }
    return out;
}

EdgeMap canonical_form(const EdgeMap& edges, int V) {
    std::vector<int> perm(V);
    std::iota(perm.begin(), perm.end(), 0);
    EdgeMap best = permuted(edges, perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
        EdgeMap cand = permuted(edges, perm);
        if (cand < best) best = cand;
    }
    return best;
}

bool is_connected(const EdgeMap& edges, int V) {
    std::vector<int> root(V);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int a) {
        while (root[a] != a) a = root[a] = root[root[a]];
        return a;
    };
    for (auto& [pr, m] : edges)
        if (m > 0) root[find(pr.first)] = find(pr.second);
    for (int i = 1; i < V; ++i)
        if (find(i) != find(0)) return false;
    return true;
}

// |Aut| = (vertex permutations fixing the adjacency map) * (permutations of
// parallel edges) * (flips and permutations of loops).
Int aut_order_of(const Multigraph& mg) {
    Int r = mg.vertex_stabilizer();
    for (auto& [pr, m] : mg.edges) {
        r *= factorial(m);
        if (pr.first == pr.second) r *= int_pow(2, m);
    }
    return r;
}

} // namespace

Int Multigraph::vertex_stabilizer() const {
    std::vector<int> perm(V);
    std::iota(perm.begin(), perm.end(), 0);
    Int count = 0;
    do {
        if (permuted(edges, perm) == edges) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

std::vector<Multigraph> enumerate_graphs(int g) {
    if (g < 2) throw std::invalid_argument("enumerate_graphs: g must be >= 2");
    std::vector<Multigraph> out;
    for (int V = 1; V <= 2 * g - 2; ++V) {
        int E = V + g - 1;
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < V; ++i)
            for (int j = i; j < V; ++j) slots.emplace_back(i, j);
        std::set<EdgeMap> seen;
        EdgeMap cur;
        // distribute E edges over the slots
        auto rec = [&](auto&& self, size_t slot, int rem) -> void {
            if (slot == slots.size()) {
                if (rem != 0) return;
                std::vector<int> val(V, 0);
                for (auto& [pr, m] : cur) {
                    val[pr.first] += m;
                    val[pr.second] += m;
                }
                for (int v : val)
                    if (v < 3) return;
                if (!is_connected(cur, V)) return;
                EdgeMap canon = canonical_form(cur, V);
                if (!seen.insert(canon).second) return;
                Multigraph mg;
                mg.V = V;
                mg.edges = canon;
                mg.aut_order = aut_order_of(mg);
                if (mg.betti() != g)
                    throw std::logic_error("enumerate_graphs: Euler relation");
                out.push_back(std::move(mg));
                return;
            }
            for (int m = 0; m <= rem; ++m) {
                if (m > 0) cur[slots[slot]] = m;
                self(self, slot + 1, rem - m);
            }
            cur.erase(slots[slot]);
        };
        rec(rec, 0, E);
    }
    return out;
}

JetPoly f_g_1d(int g) {
    if (g < 1) throw std::invalid_argument("f_g_1d: g must be >= 1");
    if (g == 1) {
        // +1/2: the one-loop determinant (1 - t_1)^{-1/2} gives the genus-1
        // free energy -(1/2) log(1 - t_1) = +(1/2) log v_1 on the jet side
        Rat c(1);
        c /= Rat(2);
        return c * JetPoly::log_v1();
    }
    std::vector<Partition> mus = partitions_of_weight(2 * g - 2);
    std::map<Partition, Rat> coeff;
    for (const Multigraph& mg : enumerate_graphs(g)) {
        Partition la = mg.lambda();
        Rat w(1);
        w /= Rat(mg.aut_order);
        for (const Partition& mu : mus) {
            Int q = q_entry(la, mu);
            if (q != 0) coeff[mu] += w * Rat(q);
        }
    }
    JetPoly out;
    for (auto& [mu, c] : coeff) {
        if (c == 0) continue;
        JetMonomial m;
        m.v1_exp = -(mu.length() + g - 1);
        for (auto& [p, e] : mu.multiplicities()) m.higher.emplace_back(p + 1, e);
        out.add_term(m, c);
    }
    return out;
}

namespace {

// Re-declare a series at a larger truncation.  The added top-degree
// coefficients are incomplete; callers account for that by padding the
// working degree (see burgers_oracle).
TSeries lift(const TSeries& s, int maxdeg) {
    if (s.maxdeg() >= maxdeg) return s;
    TSeries out(s.nvars(), maxdeg);
    for (auto& [e, c] : s.terms()) out.add_term(e, c);
    return out;
}

// Antiderivative in t_n with zero constant of integration.
TSeries integrate_t(const TSeries& s, int n, int maxdeg) {
    TSeries out(s.nvars(), maxdeg);
    for (auto& [e, c] : s.terms()) {
        int deg = 0;
        for (int x : e) deg += x;
        if (deg + 1 > maxdeg) continue;
        std::vector<int> up = e;
        up[n] += 1;
        out.add_term(up, c / Rat(up[n]));
    }
    return out;
}

// (eps d_x + u)^n (u) followed by d_x/(n+1)!, per eps-component, carried at
// working degree Dw throughout.
std::vector<TSeries> burgers_rhs(const std::vector<TSeries>& u, int n, int Dw) {
    std::vector<TSeries> w = u;
    for (int it = 0; it < n; ++it) {
        std::vector<TSeries> next(w.size());
        for (size_t gg = 0; gg < w.size(); ++gg) {
            TSeries acc(u[0].nvars(), Dw);
            if (gg > 0) acc += lift(w[gg - 1].deriv(0), Dw);
            for (size_t a = 0; a <= gg; ++a) acc += u[a] * w[gg - a];
            next[gg] = acc;
        }
        w = std::move(next);
    }
    Rat pref(1);
    pref /= Rat(factorial(n + 1));
    for (auto& s : w) s = pref * lift(s.deriv(0), Dw);
    return w;
}

} // namespace

std::vector<TSeries> burgers_oracle(int gmax, int P, int D) {
    if (gmax < 0 || P < 1 || D < 1)
        throw std::invalid_argument("burgers_oracle: bad arguments");
    // Every t_0-derivative consumes one degree of headroom; the scaling
    // grading (coefficient of t^K in the eps^g part vanishes unless
    // sum (k-1) a_k = 2g - 1) bounds the total consumption by
    // 2*gmax - 1 + D, so this working degree returns results exact
    // through total degree D.
    int Dw = 2 * D + 2 * gmax;
    // Exponents of t_1..t_P never decrease under any later step, so terms
    // whose non-t_0 degree already exceeds D cannot reach the degree-D
    // window and are pruned.
    auto prune = [&](const TSeries& s) {
        TSeries out(s.nvars(), s.maxdeg());
        for (auto& [e, c] : s.terms()) {
            int rest = 0;
            for (size_t i = 1; i < e.size(); ++i) rest += e[i];
            if (rest <= D) out.add_term(e, c);
        }
        return out;
    };
    std::vector<TSeries> u(gmax + 1, TSeries(P + 1, Dw));
    u[0] = TSeries::var(0, P + 1, Dw);
    for (int n = 1; n <= P; ++n) {
        std::vector<TSeries> base = u; // independent of t_n so far
        std::vector<TSeries> cur = u;
        // the t_n-power-k coefficients stabilize after k iterations
        for (int it = 0; it <= D; ++it) {
            std::vector<TSeries> rhs = burgers_rhs(cur, n, Dw);
            for (int gg = 0; gg <= gmax; ++gg)
                cur[gg] = prune(base[gg] + integrate_t(rhs[gg], n, Dw));
        }
        u = cur;
    }
    for (auto& s : u) s = s.truncated(D);
    return u;
}

} // namespace qmiura
