#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qmiura/jet.hpp"
#include "qmiura/partition.hpp"
#include "qmiura/rational.hpp"
#include "qmiura/tseries.hpp"

namespace qmiura {

// Coefficients of x/(1 - e^{-x}) = sum B_k x^k / k!  (so B_1 = +1/2).
Rat bernoulli(int k);

// Table of the log-level generating functions G_{g,phi}(t): the literal
// coefficient of the s-monomial s^phi in the genus-g Hodge potential.
// phi is a partition whose part j stands for a factor s_j (i.e. ch_{2j-1}).
struct FPTable {
    int gmax = 0;
    int P = 0;      // t-variables t_0..t_P
    int D = 0;      // initial total-degree truncation
    int W = 0;      // s-weight cap: sum (2*j - 1) over parts of phi
    std::map<std::pair<int, Partition>, TSeries> G;

    const TSeries& g_series(int g, const Partition& phi) const;
    // <ch_{2 phi - 1} tau_{k_1} ... tau_{k_n}>_g extracted from the table.
    Rat hodge_integral(int g, const Partition& phi,
                       std::vector<int> tau) const;
};

// Builds the table by the s_k-flow recursion on top of the genus <= gmax
// psi-class potentials.
FPTable fp_flow(int gmax, int P, int D, int W);

// Shared, lazily built table (grows monotonically in the requests).
const FPTable& fp_table(int gmax, int W);

// Polynomial in the odd Chern characters: a monomial is a partition of
// j-values (part j = factor ch_{2j-1}).
using ChPoly = std::map<Partition, Rat>;

ChPoly ch_mul(const ChPoly& a, const ChPoly& b);
// lambda_j expanded in the odd-ch basis (even power sums vanish).
ChPoly lambda_class(int j);
// Product lambda_{j_1} ... lambda_{j_m}.
ChPoly lambda_monomial(const std::vector<int>& js);

enum class LambdaWhich { lg, lg_lgm1, lg_lgm1_lgm2 };

// Printed closed forms for <lambda... tau_{k_1}...tau_{k_n}>_g.
Rat lambda_pairing(int g, LambdaWhich which, const std::vector<int>& taus);

// The phi-component jet of the genus-g Hodge potential (no s factors):
// v1^{-g+1+2|phi|-l(phi)} * sum_{lambda,mu} <ch_{2phi-1} tau_{lambda+1}>/
// m(lambda)! * Q^{lambda mu} * v_{mu+1}/v1^{l(mu)}.  For phi empty this is
// the plain psi-class part.
JetPoly hg_phi_jet(int g, const Partition& phi, const FPTable& table);

// Full jet-form Hodge potential with s_1..s_g slots, s-weight <= W.
JetPoly hg_jet(int g, int W);

// H_g(gamma) for a linear combination gamma of ch-monomials.
JetPoly hg_gamma_jet(int g, const ChPoly& gamma, const FPTable& table);

enum class SpecTarget { ilw, dkdv };

// Substitutes s_k -> (2k-2)! s^{2k-1} (ilw) or -(4^k-1)(2k-2)! s^{2k-1}
// (dkdv); the result carries the single parameter s in the aux-0 slot.
JetPoly specialize(const JetPoly& h, SpecTarget target);

// Jet coefficients c^mu of a phi-component: coefficient of
// v_{mu+1} * v1^{-(g-1-2|phi|+l(phi)+l(mu))} in hg_phi_jet.
std::map<Partition, Rat> hg_phi_coefficients(const JetPoly& phi_jet, int g,
                                             const Partition& phi);

// Inverse extraction: <ch_{2phi-1} tau_{lambda+1}>_g = m(lambda)! *
// sum_mu invQ_{lambda mu} c^mu.
std::map<Partition, Rat> hodge_from_jets(int g, const Partition& phi,
                                         const std::map<Partition, Rat>& c);

} // namespace qmiura
