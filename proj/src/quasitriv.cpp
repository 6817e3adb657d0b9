#include "qmiura/quasitriv.hpp"

#include <algorithm>
#include <stdexcept>

#include "qmiura/graphs1d.hpp"
#include "qmiura/hodge.hpp"

namespace qmiura {

std::string target_name(Target t) {
    switch (t) {
        case Target::kdv: return "kdv";
        case Target::ilw: return "ilw";
        case Target::dkdv: return "dkdv";
        case Target::burgers: return "burgers";
    }
    throw std::logic_error("target_name: bad enum");
}

Target target_from_name(const std::string& name) {
    if (name == "kdv") return Target::kdv;
    if (name == "ilw") return Target::ilw;
    if (name == "dkdv") return Target::dkdv;
    if (name == "burgers") return Target::burgers;
    throw std::invalid_argument("unknown target: " + name);
}

JetPoly m_g(int g) {
    // The phi-empty component only consults the psi-class oracle, so the
    // smallest shared table suffices.
    return hg_phi_jet(g, Partition(), fp_table(1, 0));
}

namespace {

// Rebuild p with the requested jet cap so later overflow fails loudly.
JetPoly recap(const JetPoly& p, int cap) {
    JetPoly out(cap);
    for (auto& [m, c] : p.terms()) out.add_term(m, c);
    return out;
}

// s_k -> 1 in the aux-0 slot.
JetPoly set_s_one(const JetPoly& p) {
    JetPoly out(p.jet_cap());
    for (auto& [m, c] : p.terms()) {
        JetMonomial n = m;
        n.aux.clear();
        for (auto& [k, e] : m.aux)
            if (k != 0) n.aux.emplace_back(k, e);
        out.add_term(n, c);
    }
    return out;
}

EpsSeries set_s_one(const EpsSeries& s) {
    EpsSeries out(s.trunc(), s.jet_cap());
    for (int k = 0; k <= s.trunc(); ++k) out.set_coeff(k, set_s_one(s.coeff(k)));
    return out;
}

// Zero-pad to a deeper truncation (the coefficients beyond the original
// truncation of an assembled body are exactly zero only for gmax = 0; used
// there to expose the unremoved dispersion).
EpsSeries extend(const EpsSeries& s, int trunc) {
    if (trunc <= s.trunc()) return s;
    EpsSeries out(trunc, s.jet_cap());
    for (int k = 0; k <= s.trunc(); ++k) out.set_coeff(k, s.coeff(k));
    return out;
}

// w = v + sum_g eps^{2g} d_x^2 H_g with the requested Hodge specialization.
// For dkdv the underlying Hodge series lives at twice the lattice eps and a
// quarter of the lattice s (the deformation parameter eps^2 s is shared):
// the eps^{2g} coefficient picks up 4^g and each s-power a factor 1/4.
EpsSeries hodge_stage(SpecTarget spec, int gmax, int trunc, int cap) {
    EpsSeries w(trunc, cap);
    w.set_coeff(0, JetPoly::v(cap));
    for (int g = 1; g <= gmax; ++g) {
        JetPoly h = specialize(hg_jet(g, 3 * g - 3 + (g == 1 ? 1 : 0)), spec);
        if (spec == SpecTarget::dkdv) {
            JetPoly scaled(h.jet_cap());
            for (auto& [m, c] : h.terms()) {
                Rat cc = rat_pow(Rat(4), g) * c;
                for (auto& [k, e] : m.aux)
                    if (k == 0) cc *= rat_pow(Rat(1, 4), e);
                scaled.add_term(m, cc);
            }
            h = scaled;
        }
        w.set_coeff(2 * g, recap(dx(dx(h)), cap));
    }
    return w;
}

} // namespace

Transformation assemble(Target target, int gmax, int jet_cap) {
    if (gmax < 0) throw std::invalid_argument("assemble: gmax must be >= 0");
    int cap = jet_cap > 0 ? jet_cap : 3 * gmax + 4;
    Transformation tr;
    tr.target = target;
    tr.gmax = gmax;
    switch (target) {
        case Target::kdv: {
            EpsSeries u(2 * gmax, cap);
            u.set_coeff(0, JetPoly::v(cap));
            for (int g = 1; g <= gmax; ++g)
                u.set_coeff(2 * g, recap(dx(dx(m_g(g))), cap));
            tr.body = u;
            break;
        }
        case Target::ilw: {
            EpsSeries w = hodge_stage(SpecTarget::ilw, gmax, 2 * gmax, cap);
            // Miura tail: u = w + sum_g (-1)^g/(2^{2g}(2g+1)!) eps^{2g} s^g w_{2g}
            EpsSeries outer(2 * gmax, cap);
            outer.set_coeff(0, JetPoly::v(cap));
            for (int g = 1; g <= gmax; ++g) {
                Rat c(g % 2 ? -1 : 1);
                c /= Rat(int_pow(2, 2 * g) * factorial(2 * g + 1));
                JetPoly term = JetPoly::aux(0, cap).pow(g) * JetPoly::jet(2 * g, cap);
                outer.set_coeff(2 * g, c * term);
            }
            tr.body = eps_compose(outer, w);
            break;
        }
        case Target::dkdv: {
            EpsSeries w = hodge_stage(SpecTarget::dkdv, gmax, 2 * gmax, cap);
            Rat half(1);
            half /= Rat(2);
            EpsSeries wt = half * w; // the rescale step
            // u = wt + sum_k eps^{2k} (3^{2k+2}-1)/((2k+2)! 4^{k+1}) wt_{2k}
            EpsSeries outer(2 * gmax, cap);
            outer.set_coeff(0, JetPoly::v(cap));
            for (int k = 1; k <= gmax; ++k) {
                Rat c(int_pow(3, 2 * k + 2) - 1);
                c /= Rat(factorial(2 * k + 2) * int_pow(4, k + 1));
                outer.set_coeff(2 * k, c * JetPoly::jet(2 * k, cap));
            }
            tr.body = eps_compose(outer, wt);
            break;
        }
        case Target::burgers: {
            EpsSeries u(gmax, cap);
            u.set_coeff(0, JetPoly::v(cap));
            for (int g = 1; g <= gmax; ++g)
                u.set_coeff(g, recap(dx(f_g_1d(g)), cap));
            tr.body = u;
            break;
        }
    }
    return tr;
}

EpsSeries residual(Target target, int gmax, int jet_cap) {
    Transformation tr = assemble(target, gmax, jet_cap);
    int depth = target == Target::burgers ? std::max(gmax, 1)
                                          : std::max(2 * gmax, 2);
    EpsSeries u = extend(tr.body, depth);
    int cap = u.jet_cap();
    switch (target) {
        case Target::kdv: {
            EpsSeries lhs = flow(u, JetPoly::v(cap));
            EpsSeries rhs = u * dx(u);
            Rat c(1);
            c /= Rat(12);
            rhs += (c * dx(dx(dx(u)))).shifted(2);
            return lhs - rhs;
        }
        case Target::ilw: {
            EpsSeries lhs = flow(u, JetPoly::v(cap));
            EpsSeries rhs = u * dx(u);
            for (int g = 1; 2 * g <= depth; ++g) {
                Rat b = bernoulli(2 * g);
                if (b < 0) b = -b;
                b /= Rat(factorial(2 * g));
                // only the part surviving the shift gets differentiated,
                // so the jet cap is not exceeded spuriously; the shifted
                // term is re-declared at full depth so the += below does
                // not collapse the truncation of rhs
                EpsSeries term(depth - 2 * g, cap);
                for (int k = 0; k <= depth - 2 * g; ++k)
                    term.set_coeff(k, u.coeff(k));
                for (int i = 0; i < 2 * g + 1; ++i) term = dx(term);
                EpsSeries shifted_term(depth, cap);
                for (int k = 0; k <= depth - 2 * g; ++k)
                    shifted_term.set_coeff(k + 2 * g, term.coeff(k));
                rhs += JetPoly::aux(0, cap).pow(g - 1) * (b * shifted_term);
            }
            return lhs - rhs;
        }
        case Target::dkdv: {
            EpsSeries us = set_s_one(u);
            EpsSeries lhs =
                flow(us, Rat(2) * JetPoly::y_pow(1, cap));
            // right side (1/eps)(e^{u(x+eps)} - e^{u(x-eps)}): compute the
            // shifts one order deeper, then drop one power of eps.
            EpsSeries deep = extend(us, depth + 1);
            EpsSeries diff = eps_exp(lattice_shift(deep, +1)) -
                             eps_exp(lattice_shift(deep, -1));
            if (!diff.coeff(0).is_zero())
                throw std::logic_error("dkdv residual: eps^0 mismatch in shift");
            EpsSeries rhs(depth, cap);
            for (int k = 0; k <= depth; ++k) rhs.set_coeff(k, diff.coeff(k + 1));
            return lhs - rhs;
        }
        case Target::burgers: {
            // first member of the hierarchy: u_t = u u_x + (eps/2) u_xx
            EpsSeries lhs = flow(u, JetPoly::v(cap));
            EpsSeries rhs = u * dx(u) + (Rat(1, 2) * dx(dx(u))).shifted(1);
            return lhs - rhs;
        }
    }
    throw std::logic_error("residual: bad enum");
}

} // namespace qmiura
