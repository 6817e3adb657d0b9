#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "qmiura/graphs1d.hpp"
#include "qmiura/tseries.hpp"

using namespace qmiura;

namespace {

JetPoly rational_term(const Rat& c, int v1_exp,
                      std::initializer_list<std::pair<int, int>> higher) {
    JetMonomial m;
    m.v1_exp = v1_exp;
    for (auto& pr : higher) m.higher.push_back(pr);
    JetPoly p;
    p.add_term(m, c);
    return p;
}

// Orbit size of the labeled adjacency map under vertex permutations.
Int orbit_size(const Multigraph& mg) {
    std::vector<int> perm(mg.V);
    std::iota(perm.begin(), perm.end(), 0);
    std::set<std::map<std::pair<int, int>, int>> images;
    do {
        std::map<std::pair<int, int>, int> img;
        for (auto& [pr, m] : mg.edges) {
            int a = perm[pr.first], b = perm[pr.second];
            if (a > b) std::swap(a, b);
            img[{a, b}] += m;
        }
        images.insert(img);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return Int(images.size());
}

} // namespace

TEST_CASE("genus-2 graph classes") {
    auto gs = enumerate_graphs(2);
    REQUIRE(gs.size() == 3);
    // collect (V, E, lambda, |Aut|)
    std::multiset<std::tuple<int, int, std::vector<int>, Int>> got;
    Rat aut_sum = 0;
    for (auto& mg : gs) {
        CHECK(mg.betti() == 2);
        CHECK(mg.E() - mg.V == 1);
        for (int v : mg.valences()) CHECK(v >= 3);
        got.insert({mg.V, mg.E(), mg.lambda().parts(), mg.aut_order});
        aut_sum += Rat(1) / Rat(mg.aut_order);
    }
    std::multiset<std::tuple<int, int, std::vector<int>, Int>> expect = {
        {2, 3, {1, 1}, 12}, // triple edge
        {2, 3, {1, 1}, 8},  // two loops joined by an edge
        {1, 2, {2}, 8},     // two loops at one vertex
    };
    CHECK(got == expect);
    CHECK(aut_sum == Rat(1) / 3);
}

TEST_CASE("automorphism order via orbit-stabilizer") {
    for (int g : {2, 3}) {
        for (auto& mg : enumerate_graphs(g)) {
            Int stab = mg.vertex_stabilizer();
            CHECK(stab * orbit_size(mg) == factorial(mg.V));
            // |Aut| = stabilizer times internal edge symmetries
            Int internal = 1;
            for (auto& [pr, m] : mg.edges) {
                internal *= factorial(m);
                if (pr.first == pr.second) internal *= int_pow(2, m);
            }
            CHECK(mg.aut_order == stab * internal);
        }
    }
}

TEST_CASE("genus-3 classes satisfy the valence bounds") {
    auto gs = enumerate_graphs(3);
    CHECK(!gs.empty());
    for (auto& mg : gs) {
        CHECK(mg.V <= 4);
        CHECK(mg.E() <= 6);
        CHECK(mg.betti() == 3);
    }
}

TEST_CASE("jet-form genus expansions") {
    CHECK(f_g_1d(1) == Rat(1, 2) * JetPoly::log_v1());
    JetPoly f2 = rational_term(Rat(1, 8), -2, {{3, 1}}) +
                 rational_term(Rat(-1, 6), -3, {{2, 2}});
    CHECK(f_g_1d(2) == f2);
    for (int g : {2, 3}) {
        auto d = f_g_1d(g).homogeneous_deg();
        auto db = f_g_1d(g).homogeneous_degbar();
        REQUIRE(d.has_value());
        REQUIRE(db.has_value());
        CHECK(*d == g - 1);
        CHECK(*db == 2 * g - 2);
    }
}

TEST_CASE("genus-2 t-series form at t_0 = 0") {
    int P = 4, D = 6;
    std::vector<TSeries> jets(4, TSeries(P + 1, D));
    for (int m = 1; m <= 3; ++m) jets[m] = vms(m, P, D);
    TSeries lhs = eval_jetpoly(f_g_1d(2), jets);
    TSeries one_minus_t1 = TSeries::constant(1, P + 1, D) - TSeries::var(1, P + 1, D);
    TSeries t2 = TSeries::var(2, P + 1, D), t3 = TSeries::var(3, P + 1, D);
    TSeries rhs = Rat(5, 24) * (t2 * t2 * one_minus_t1.int_power(-3)) +
                  Rat(1, 8) * (t3 * one_minus_t1.int_power(-2));
    CHECK(lhs == rhs);
}

TEST_CASE("direct-integration oracle") {
    int P = 4, D = 5;
    auto u = burgers_oracle(2, P, D);
    REQUIRE(u.size() == 3);
    CHECK(u[0] == v_top(P, D));
    CHECK(u[1] == eval_on_topological_jets(dx(f_g_1d(1)), P, D));
    CHECK(u[2] == eval_on_topological_jets(dx(f_g_1d(2)), P, D));

    // flows satisfied simultaneously (commutation): check the t_1 and t_2
    // equations u_{t_n} = 1/(n+1)! d_x (eps d_x + u)^n (u) on the result
    for (int n : {1, 2}) {
        std::vector<TSeries> w = u;
        for (int it = 0; it < n; ++it) {
            std::vector<TSeries> next(w.size());
            for (size_t g = 0; g < w.size(); ++g) {
                TSeries acc(P + 1, D);
                if (g > 0) acc += w[g - 1].deriv(0);
                for (size_t a = 0; a <= g; ++a) acc += u[a] * w[g - a];
                next[g] = acc;
            }
            w = std::move(next);
        }
        for (size_t g = 0; g < u.size(); ++g) {
            TSeries lhs = u[g].deriv(n);
            TSeries rhs = (Rat(1) / Rat(factorial(n + 1))) * w[g].deriv(0);
            CHECK(lhs.truncated(D - 2) == rhs.truncated(D - 2));
        }
    }
}

TEST_CASE("genus-3 graph sum matches the oracle") {
    int P = 5, D = 5;
    auto u = burgers_oracle(3, P, D);
    CHECK(u[3] == eval_on_topological_jets(dx(f_g_1d(3)), P, D));
}
