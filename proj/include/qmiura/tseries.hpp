#pragma once

#include <map>
#include <string>
#include <vector>

#include "qmiura/jet.hpp"
#include "qmiura/partition.hpp"
#include "qmiura/rational.hpp"

namespace qmiura {

// Graded-lexicographic order on exponent vectors: total degree first,
// then lexicographic.
struct GradedLex {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const;
};

// Truncated power series in t_0, ..., t_{nvars-1}, exact through total
// degree maxdeg.
class TSeries {
public:
    TSeries() = default;
    TSeries(int nvars, int maxdeg);
    static TSeries constant(const Rat& c, int nvars, int maxdeg);
    static TSeries var(int i, int nvars, int maxdeg);

    int nvars() const { return nvars_; }
    int maxdeg() const { return maxdeg_; }
    const std::map<std::vector<int>, Rat, GradedLex>& terms() const {
        return terms_;
    }
    bool is_zero() const { return terms_.empty(); }
    Rat coefficient(const std::vector<int>& exp) const;
    Rat constant_term() const;

    void add_term(const std::vector<int>& exp, const Rat& c);

    TSeries& operator+=(const TSeries& o);
    TSeries& operator-=(const TSeries& o);
    TSeries operator-() const;
    friend TSeries operator+(TSeries a, const TSeries& b) { return a += b; }
    friend TSeries operator-(TSeries a, const TSeries& b) { return a -= b; }
    friend TSeries operator*(const TSeries& a, const TSeries& b);
    friend TSeries operator*(const Rat& c, const TSeries& s);
    bool operator==(const TSeries& o) const;

    TSeries pow(int e) const;              // e >= 0
    TSeries inverse() const;               // constant term must be nonzero
    TSeries int_power(int e) const;        // any integer e
    TSeries deriv(int i) const;            // d/dt_i (exact through maxdeg-1)
    TSeries truncated(int d) const;
    TSeries set_var_zero(int i) const;
    TSeries exp() const;                   // constant term must be zero

    std::string to_json() const;
    static TSeries from_json(const std::string& text);

private:
    int nvars_ = 1;
    int maxdeg_ = 0;
    std::map<std::vector<int>, Rat, GradedLex> terms_;
};

// Topological solution of the dispersionless hierarchy v_{t_k} = v^k v_x / k!
// with initial data v(x,0,0,...) = x.
TSeries v_top(int P, int D);

// m-th x-jet of the topological solution (x = t_0), m >= 1.
TSeries v_top_jet(int m, int P, int D);

// v_m at t_0 = 0 via the closed partition-sum formula, m >= 1.
TSeries vms(int m, int P, int D);

// Jet-side expression of t_{lambda+1} via the Q-matrix contraction.
JetPoly t_from_jets(const Partition& la);

// t-side expression of the jet product v_{mu+1} via the inverse contraction.
TSeries jets_from_t(const Partition& mu, int P, int D);

// Itzykson-Zuber variables: I_0 = v, I_k = sum_n t_{n+k} I_0^n / n!.
TSeries iz_variables(int k, int P, int D);

// Left-hand side of the genus-zero Euler-Lagrange equation evaluated on the
// topological solution (zero through degree D).
TSeries euler_lagrange_residual(int P, int D);

// Evaluates a jet polynomial on a supplied jet table (jets[j] = series for
// v_j; jets[1] must have nonzero constant term).  log factors are rejected;
// y evaluates to exp(jets[0]/2).
TSeries eval_jetpoly(const JetPoly& p, const std::vector<TSeries>& jets);

// Same, on the jets of the topological solution.
TSeries eval_on_topological_jets(const JetPoly& p, int P, int D);

} // namespace qmiura
