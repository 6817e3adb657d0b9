#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmiura/rational.hpp"

namespace qmiura {

// Monomial in the coefficient ring
//   Q[v][v_2,...,v_N][v_1, v_1^{-1}] (x) {log(v_1)^a} (x) {y^m},  y = e^{v/2},
// with optional auxiliary scalar slots s (index 0) and s_1, s_2, ... .
struct JetMonomial {
    int v_exp = 0;                            // >= 0
    int v1_exp = 0;                           // any integer
    std::vector<std::pair<int, int>> higher;  // sorted, j >= 2 -> exp > 0
    int log_exp = 0;                          // >= 0
    int y_exp = 0;                            // any integer
    std::vector<std::pair<int, int>> aux;     // sorted, k >= 0 -> exp > 0

    auto operator<=>(const JetMonomial&) const = default;

    int jet_exponent(int j) const; // exponent of v_j (j >= 0)
    int max_jet() const;
};

JetMonomial jet_monomial(std::initializer_list<std::pair<int, int>> jets);

// Gradings: deg v_j = j; degbar v_j = j-1 (j >= 1), degbar s_k = 2k-1
// (degbar s = 1 for the single collapsed parameter).  log and y count 0.
int mono_deg(const JetMonomial& m);
int mono_degbar(const JetMonomial& m);

class JetPoly {
public:
    static constexpr int kDefaultJetCap = 256;

    JetPoly() = default;
    explicit JetPoly(int jet_cap) : jet_cap_(jet_cap) {}

    static JetPoly constant(const Rat& c, int cap = kDefaultJetCap);
    static JetPoly v(int cap = kDefaultJetCap);
    static JetPoly jet(int j, int cap = kDefaultJetCap); // v_j, j >= 0
    static JetPoly v1_pow(int e, int cap = kDefaultJetCap);
    static JetPoly log_v1(int cap = kDefaultJetCap);
    static JetPoly y_pow(int m, int cap = kDefaultJetCap);
    static JetPoly aux(int k, int cap = kDefaultJetCap); // s (k=0) or s_k
    static JetPoly monomial(const JetMonomial& m, const Rat& c,
                            int cap = kDefaultJetCap);

    const std::map<JetMonomial, Rat>& terms() const { return terms_; }
    int jet_cap() const { return jet_cap_; }
    bool is_zero() const { return terms_.empty(); }
    Rat coefficient(const JetMonomial& m) const;

    void add_term(const JetMonomial& m, const Rat& c);

    JetPoly& operator+=(const JetPoly& o);
    JetPoly& operator-=(const JetPoly& o);
    JetPoly operator-() const;
    friend JetPoly operator+(JetPoly a, const JetPoly& b) { return a += b; }
    friend JetPoly operator-(JetPoly a, const JetPoly& b) { return a -= b; }
    friend JetPoly operator*(const JetPoly& a, const JetPoly& b);
    friend JetPoly operator*(const Rat& c, const JetPoly& p);
    JetPoly pow(int e) const; // e >= 0
    bool operator==(const JetPoly& o) const { return terms_ == o.terms_; }

    int max_jet() const;

    // Degree of a grading-homogeneous polynomial, nullopt if mixed.
    std::optional<int> homogeneous_deg() const;
    std::optional<int> homogeneous_degbar() const;

    std::string to_json() const;
    static JetPoly from_json(const std::string& text, int cap = kDefaultJetCap);
    std::string to_latex() const;

private:
    std::map<JetMonomial, Rat> terms_;
    int jet_cap_ = kDefaultJetCap;
};

// Total x-derivative: d_x = sum_j v_{j+1} d/d v_j, with
// d_x log v_1 = v_2/v_1 and d_x y = (v_1/2) y.
JetPoly dx(const JetPoly& p);
JetPoly dx_pow(JetPoly p, int n);

// Derivation of the flow v_s = g(v) v_1 extended to jets:
// d_s v_m = d_x^m (g(v) v_1).  g may depend on v and y only.
JetPoly flow(const JetPoly& p, const JetPoly& g);

} // namespace qmiura
