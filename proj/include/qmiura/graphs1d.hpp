#pragma once

#include <map>
#include <vector>

#include "qmiura/jet.hpp"
#include "qmiura/partition.hpp"
#include "qmiura/rational.hpp"
#include "qmiura/tseries.hpp"

namespace qmiura {

// Connected multigraph (loops allowed) up to isomorphism, with cached
// automorphism-group order.  Vertices are 0..V-1; edges is the multiset of
// unordered pairs (i <= j), a loop being (i, i).
struct Multigraph {
    int V = 0;
    std::map<std::pair<int, int>, int> edges; // (i,j) with i <= j -> multiplicity
    Int aut_order = 1;

    int E() const;
    int betti() const;                 // E - V + 1
    std::vector<int> valences() const; // loops count twice
    Partition lambda() const;          // valence - 2 per vertex

    // Number of vertex permutations fixing the adjacency matrix (used by the
    // orbit-stabilizer cross-check: stabilizer * orbit = V!).
    Int vertex_stabilizer() const;
};

// All isomorphism classes of connected multigraphs with first Betti number g
// and all valences >= 3 (hence V <= 2g-2, E = V+g-1 <= 3g-3), g >= 2.
std::vector<Multigraph> enumerate_graphs(int g);

// F_1 = +(1/2) log v_1; for g >= 2 the Q-contraction of the graph weights
// Q^{lambda(Gamma) mu}/|Aut| with v_{mu+1}/v_1^{l(mu)+g-1}.
JetPoly f_g_1d(int g);

// Integrates u_{t_n} = 1/(n+1)! d_x (eps d_x + u)^n (u), n = 1..P, from
// u(x,0,...) = x, and returns the eps^g coefficients u_g(t) for g = 0..gmax
// as series in t_0..t_P exact through total degree D.
std::vector<TSeries> burgers_oracle(int gmax, int P, int D);

} // namespace qmiura
