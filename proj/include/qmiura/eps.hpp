#pragma once

#include <vector>

#include "qmiura/jet.hpp"

namespace qmiura {

// Truncated series in eps with JetPoly coefficients: sum_k c_k eps^k,
// retained through eps^trunc inclusive.
class EpsSeries {
public:
    EpsSeries() : coeffs_(1), trunc_(0) {}
    explicit EpsSeries(int trunc, int jet_cap = JetPoly::kDefaultJetCap);
    static EpsSeries from_jetpoly(const JetPoly& p, int trunc);

    int trunc() const { return trunc_; }
    int jet_cap() const { return jet_cap_; }
    const JetPoly& coeff(int k) const;
    void set_coeff(int k, const JetPoly& p);
    bool is_zero() const;

    EpsSeries& operator+=(const EpsSeries& o);
    EpsSeries& operator-=(const EpsSeries& o);
    EpsSeries operator-() const;
    friend EpsSeries operator+(EpsSeries a, const EpsSeries& b) { return a += b; }
    friend EpsSeries operator-(EpsSeries a, const EpsSeries& b) { return a -= b; }
    friend EpsSeries operator*(const EpsSeries& a, const EpsSeries& b);
    friend EpsSeries operator*(const Rat& c, const EpsSeries& s);
    friend EpsSeries operator*(const JetPoly& p, const EpsSeries& s);
    bool operator==(const EpsSeries& o) const;

    // Multiply by eps^k (coefficients beyond trunc are dropped).
    EpsSeries shifted(int k) const;

private:
    std::vector<JetPoly> coeffs_; // size trunc_ + 1
    int trunc_ = 0;
    int jet_cap_ = JetPoly::kDefaultJetCap;
};

EpsSeries dx(const EpsSeries& s);
EpsSeries flow(const EpsSeries& s, const JetPoly& g);

// Substitutes `inner` (a series whose coefficients are polynomials in the
// v-jets) for the letter v of `outer`, and d_x^j(inner) for each jet v_j.
// outer must be polynomial in the jets: no negative v1 powers, no log, no y.
EpsSeries eps_compose(const EpsSeries& outer, const EpsSeries& inner);

// exp of a series whose eps^0 part is (m/2) v for some integer m: returns
// y^m * exp(a - (m/2) v), the remainder being nilpotent in the truncation.
EpsSeries eps_exp(const EpsSeries& a);

// Lattice translation e^{dir * eps * d_x} a = sum_m (dir eps)^m/m! d_x^m a,
// dir = +1 or -1.
EpsSeries lattice_shift(const EpsSeries& a, int dir);

} // namespace qmiura
