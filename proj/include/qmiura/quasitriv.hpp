#pragma once

#include <string>

#include "qmiura/eps.hpp"
#include "qmiura/jet.hpp"

namespace qmiura {

enum class Target { kdv, ilw, dkdv, burgers };

std::string target_name(Target t);
Target target_from_name(const std::string& name);

// The genus-g coefficient of the KdV quasi-triviality: M_1 = (1/24) log v_1,
// and for g >= 2 the double Q-contraction of primitive psi-intersection
// numbers with the jet monomials v_{mu+1}/v_1^{l(mu)+g-1}.
JetPoly m_g(int g);

// A substitution u = u(v, v_1, ..., v_N; eps) carrying the dispersive target
// equation to its dispersionless limit.  For ilw/dkdv the body also carries
// the parameter s in the aux-0 slot (dkdv verification sets s = 1).
struct Transformation {
    Target target = Target::kdv;
    int gmax = 0;
    EpsSeries body; // eps^0 part is v (v/2 for dkdv, after the rescale)
};

// Builds the transformation through genus gmax.  jet_cap <= 0 selects the
// default 3*gmax + 4.
Transformation assemble(Target target, int gmax, int jet_cap = 0);

// Left side minus right side of the target equation, evaluated on the
// assembled transformation with v evolving by its dispersionless flow
// (v_t = v v_x, except dkdv: v_t = 2 e^{v/2} v_x).  Vanishes through
// eps^{2*gmax} (eps^{gmax} for burgers).  dkdv residual is taken at s = 1.
EpsSeries residual(Target target, int gmax, int jet_cap = 0);

} // namespace qmiura
