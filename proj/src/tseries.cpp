#include "qmiura/tseries.hpp"

#include "qmiura/qmatrix.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qmiura {

namespace {
using ordered_json = nlohmann::ordered_json;

int total(const std::vector<int>& e) {
    return std::accumulate(e.begin(), e.end(), 0);
}
} // namespace

bool GradedLex::operator()(const std::vector<int>& a,
                           const std::vector<int>& b) const {
    int ta = total(a), tb = total(b);
    if (ta != tb) return ta < tb;
    return a < b;
}

TSeries::TSeries(int nvars, int maxdeg) : nvars_(nvars), maxdeg_(maxdeg) {
    if (nvars < 1 || maxdeg < 0)
        throw std::invalid_argument("TSeries: bad shape");
}

TSeries TSeries::constant(const Rat& c, int nvars, int maxdeg) {
    TSeries s(nvars, maxdeg);
    s.add_term(std::vector<int>(nvars, 0), c);
    return s;
}

TSeries TSeries::var(int i, int nvars, int maxdeg) {
    TSeries s(nvars, maxdeg);
    std::vector<int> e(nvars, 0);
    if (i < 0 || i >= nvars) throw std::out_of_range("TSeries::var");
    e[i] = 1;
    s.add_term(e, 1);
    return s;
}

Rat TSeries::coefficient(const std::vector<int>& exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? Rat(0) : it->second;
}

Rat TSeries::constant_term() const {
    return coefficient(std::vector<int>(nvars_, 0));
}

void TSeries::add_term(const std::vector<int>& exp, const Rat& c) {
    if (static_cast<int>(exp.size()) != nvars_)
        throw std::invalid_argument("TSeries::add_term: wrong arity");
    if (c == 0 || total(exp) > maxdeg_) return;
    Rat cc = c;
    cc.canonicalize();
    auto [it, fresh] = terms_.try_emplace(exp, cc);
    if (!fresh) {
        it->second += cc;
        if (it->second == 0) terms_.erase(it);
    }
}

TSeries& TSeries::operator+=(const TSeries& o) {
    if (nvars_ != o.nvars_) throw std::invalid_argument("TSeries: arity mismatch");
    maxdeg_ = std::min(maxdeg_, o.maxdeg_);
    std::erase_if(terms_, [&](const auto& t) { return total(t.first) > maxdeg_; });
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

TSeries& TSeries::operator-=(const TSeries& o) {
    if (nvars_ != o.nvars_) throw std::invalid_argument("TSeries: arity mismatch");
    maxdeg_ = std::min(maxdeg_, o.maxdeg_);
    std::erase_if(terms_, [&](const auto& t) { return total(t.first) > maxdeg_; });
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

TSeries TSeries::operator-() const {
    TSeries r(nvars_, maxdeg_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

TSeries operator*(const TSeries& a, const TSeries& b) {
    if (a.nvars_ != b.nvars_)
        throw std::invalid_argument("TSeries: arity mismatch");
    TSeries r(a.nvars_, std::min(a.maxdeg_, b.maxdeg_));
    for (const auto& [ea, ca] : a.terms_) {
        int da = total(ea);
        if (da > r.maxdeg_) continue;
        for (const auto& [eb, cb] : b.terms_) {
            if (da + total(eb) > r.maxdeg_) break; // graded order: rest larger
            std::vector<int> e = ea;
            for (int i = 0; i < r.nvars_; ++i) e[i] += eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

TSeries operator*(const Rat& c, const TSeries& s) {
    TSeries r(s.nvars_, s.maxdeg_);
    if (c == 0) return r;
    for (const auto& [e, t] : s.terms_) r.terms_.emplace(e, c * t);
    return r;
}

bool TSeries::operator==(const TSeries& o) const {
    return nvars_ == o.nvars_ && truncated(std::min(maxdeg_, o.maxdeg_)).terms_ ==
                                     o.truncated(std::min(maxdeg_, o.maxdeg_)).terms_;
}

TSeries TSeries::pow(int e) const {
    if (e < 0) throw std::invalid_argument("TSeries::pow: negative exponent");
    TSeries r = constant(1, nvars_, maxdeg_);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

TSeries TSeries::inverse() const {
    Rat c0 = constant_term();
    if (c0 == 0)
        throw std::domain_error("TSeries::inverse: zero constant term");
    // 1/(c0 + h) = (1/c0) sum (-h/c0)^k
    TSeries h = *this;
    h.add_term(std::vector<int>(nvars_, 0), -c0);
    TSeries hh = Rat(-1) / c0 * h;
    TSeries r = constant(1, nvars_, maxdeg_);
    TSeries p = r;
    for (int k = 1; k <= maxdeg_; ++k) {
        p = p * hh;
        if (p.is_zero()) break;
        r += p;
    }
    return Rat(1) / c0 * r;
}

TSeries TSeries::int_power(int e) const {
    if (e >= 0) return pow(e);
    return inverse().pow(-e);
}

TSeries TSeries::deriv(int i) const {
    if (i < 0 || i >= nvars_) throw std::out_of_range("TSeries::deriv");
    TSeries r(nvars_, maxdeg_ > 0 ? maxdeg_ - 1 : 0);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        std::vector<int> f = e;
        f[i] -= 1;
        r.add_term(f, c * e[i]);
    }
    return r;
}

TSeries TSeries::truncated(int d) const {
    TSeries r(nvars_, std::min(d, maxdeg_));
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    return r;
}

TSeries TSeries::set_var_zero(int i) const {
    TSeries r(nvars_, maxdeg_);
    for (const auto& [e, c] : terms_)
        if (e[i] == 0) r.terms_.emplace(e, c);
    return r;
}

TSeries TSeries::exp() const {
    if (constant_term() != 0)
        throw std::domain_error("TSeries::exp: nonzero constant term");
    TSeries r = constant(1, nvars_, maxdeg_);
    TSeries p = r;
    Rat fact = 1;
    for (int k = 1; k <= maxdeg_; ++k) {
        p = p * *this;
        if (p.is_zero()) break;
        fact *= k;
        r += Rat(1) / fact * p;
    }
    return r;
}

std::string TSeries::to_json() const {
    ordered_json j;
    j["vars"] = nvars_;
    j["maxdeg"] = maxdeg_;
    ordered_json arr = ordered_json::array();
    for (const auto& [e, c] : terms_) {
        ordered_json t;
        t["exp"] = e;
        t["coeff"] = rat_to_string(c);
        arr.push_back(t);
    }
    j["terms"] = arr;
    return j.dump();
}

TSeries TSeries::from_json(const std::string& text) {
    auto j = ordered_json::parse(text);
    TSeries s(j.at("vars").get<int>(), j.at("maxdeg").get<int>());
    for (const auto& t : j.at("terms"))
        s.add_term(t.at("exp").get<std::vector<int>>(),
                   rat_from_string(t.at("coeff").get<std::string>()));
    return s;
}

namespace {

// Enumerates multisets {p_1 >= ... >= p_k} with given sum and p_i <= pmax,
// calling f(parts, permutation count).
void multisets(int k, int sum, int pmax, std::vector<int>& parts,
               const std::function<void(const std::vector<int>&, const Int&)>& f) {
    if (k == 0) {
        if (sum != 0) return;
        // number of distinct orderings = k! / prod mult!
        Int perms = factorial(static_cast<long>(parts.size()));
        int run = 1;
        for (size_t i = 1; i <= parts.size(); ++i) {
            if (i < parts.size() && parts[i] == parts[i - 1]) {
                ++run;
            } else {
                perms /= factorial(run);
                run = 1;
            }
        }
        f(parts, perms);
        return;
    }
    int hi = parts.empty() ? std::min(sum, pmax) : std::min(parts.back(), sum);
    for (int p = hi; p >= 0; --p) {
        if (p * k < sum) break;
        parts.push_back(p);
        multisets(k - 1, sum - p, pmax, parts, f);
        parts.pop_back();
    }
}

} // namespace

TSeries v_top(int P, int D) {
    TSeries s(P + 1, D);
    for (int k = 1; k <= D; ++k) {
        std::vector<int> parts;
        multisets(k, k - 1, P, parts,
                  [&](const std::vector<int>& ps, const Int& perms) {
                      Rat c(perms, k);
                      std::vector<int> e(P + 1, 0);
                      for (int p : ps) {
                          c /= factorial(p);
                          e[p] += 1;
                      }
                      s.add_term(e, c);
                  });
    }
    return s;
}

TSeries v_top_jet(int m, int P, int D) {
    if (m < 1) throw std::invalid_argument("v_top_jet: m >= 1 required");
    TSeries s(P + 1, D);
    if (m == 1) s.add_term(std::vector<int>(P + 1, 0), 1);
    for (int k = 1; k <= D; ++k) {
        Rat factor = factorial(k + m - 1) / Rat(factorial(k));
        std::vector<int> parts;
        multisets(k, k + m - 1, P, parts,
                  [&](const std::vector<int>& ps, const Int& perms) {
                      Rat c = factor * perms;
                      std::vector<int> e(P + 1, 0);
                      for (int p : ps) {
                          c /= factorial(p);
                          e[p] += 1;
                      }
                      s.add_term(e, c);
                  });
    }
    // Internal consistency: the closed formula agrees with d/dx iterated on
    // the solution series, where both are exact.
    static bool checking = false;
    if (!checking && D <= 8) {
        checking = true;
        TSeries dv = v_top(P, D);
        for (int i = 0; i < m; ++i) dv = dv.deriv(0);
        if (!(dv == s.truncated(std::max(0, D - m))))
            throw std::logic_error("v_top_jet: formula/derivative mismatch");
        checking = false;
    }
    return s;
}

TSeries vms(int m, int P, int D) {
    if (m < 1) throw std::invalid_argument("vms: m >= 1 required");
    if (P < m) throw std::invalid_argument("vms: need P >= m");
    TSeries s(P + 1, D);
    TSeries one_minus_t1 =
        TSeries::constant(1, P + 1, D) - TSeries::var(1, P + 1, D);
    for (const auto& mu : partitions_of_weight(m - 1)) {
        int l = mu.length();
        Rat c = lagrange_number(mu);
        if (l % 2 != 0) c = -c; // (-1)^l L(mu)
        TSeries term = TSeries::constant(c, P + 1, D);
        for (int part : mu.parts())
            term = term * TSeries::var(part + 1, P + 1, D);
        term = term * one_minus_t1.int_power(-(m + l));
        s += term;
    }
    // Cross-check against the jet of the full solution restricted to t_0 = 0.
    if (D <= 8 && !(s == v_top_jet(m, P, D).set_var_zero(0)))
        throw std::logic_error("vms: closed form mismatch");
    return s;
}

JetPoly t_from_jets(const Partition& la) {
    if (la.is_zero()) // t_1 = 1 - 1/v_1
        return JetPoly::constant(1) - JetPoly::v1_pow(-1);
    int w = la.weight();
    JetPoly r;
    for (const auto& mu : partitions_of_weight(w)) {
        Int q = q_entry(la, mu);
        if (q == 0) continue;
        JetPoly term = JetPoly::constant(Rat(q));
        for (int part : mu.parts()) term = term * JetPoly::jet(part + 1);
        term = term * JetPoly::v1_pow(-(mu.length() + w + la.length()));
        r += term;
    }
    return r;
}

TSeries jets_from_t(const Partition& mu, int P, int D) {
    TSeries one_minus_t1 =
        TSeries::constant(1, P + 1, D) - TSeries::var(1, P + 1, D);
    if (mu.is_zero()) // v_1 = 1/(1-t_1)
        return one_minus_t1.int_power(-1);
    int w = mu.weight();
    TSeries s(P + 1, D);
    for (const auto& rho : partitions_of_weight(w)) {
        Int q = inverse_q_entry(mu, rho);
        if (q == 0) continue;
        TSeries term = TSeries::constant(Rat(q), P + 1, D);
        for (int part : rho.parts()) {
            if (part + 1 > P)
                throw std::invalid_argument("jets_from_t: need larger P");
            term = term * TSeries::var(part + 1, P + 1, D);
        }
        term = term * one_minus_t1.int_power(-(rho.length() + w + mu.length()));
        s += term;
    }
    return s;
}

TSeries iz_variables(int k, int P, int D) {
    TSeries v = v_top(P, D);
    if (k == 0) return v;
    TSeries s(P + 1, D);
    TSeries vpow = TSeries::constant(1, P + 1, D);
    Rat fact = 1;
    for (int n = 0; n + k <= P; ++n) {
        if (n > 0) {
            vpow = vpow * v;
            fact *= n;
        }
        s += Rat(1) / fact * (TSeries::var(n + k, P + 1, D) * vpow);
    }
    return s;
}

TSeries euler_lagrange_residual(int P, int D) {
    TSeries v = v_top(P, D);
    TSeries r = TSeries::var(0, P + 1, D); // t~_0 = t_0
    TSeries vpow = TSeries::constant(1, P + 1, D);
    for (int p = 1; p <= P; ++p) {
        vpow = vpow * v;
        TSeries tp = TSeries::var(p, P + 1, D);
        if (p == 1) tp -= TSeries::constant(1, P + 1, D);
        r += Rat(1) / Rat(factorial(p)) * (tp * vpow);
    }
    return r;
}

TSeries eval_jetpoly(const JetPoly& p, const std::vector<TSeries>& jets) {
    if (jets.empty()) throw std::invalid_argument("eval_jetpoly: empty table");
    int nv = jets[0].nvars();
    int D = jets[0].maxdeg();
    TSeries r(nv, D);
    TSeries v1inv;
    bool have_v1inv = false;
    for (const auto& [m, c] : p.terms()) {
        if (m.log_exp != 0)
            throw std::invalid_argument("eval_jetpoly: log factor not supported");
        if (!m.aux.empty())
            throw std::invalid_argument("eval_jetpoly: aux factor not supported");
        if (m.max_jet() >= static_cast<int>(jets.size()))
            throw std::invalid_argument("eval_jetpoly: jet table too small");
        TSeries term = TSeries::constant(c, nv, D);
        term = term * jets[0].pow(m.v_exp);
        if (m.v1_exp > 0) {
            term = term * jets[1].pow(m.v1_exp);
        } else if (m.v1_exp < 0) {
            if (!have_v1inv) {
                v1inv = jets[1].inverse();
                have_v1inv = true;
            }
            term = term * v1inv.pow(-m.v1_exp);
        }
        for (const auto& [j, e] : m.higher) term = term * jets[j].pow(e);
        if (m.y_exp != 0) {
            Rat half(m.y_exp, 2);
            half.canonicalize();
            term = term * (half * jets[0]).exp();
        }
        r += term;
    }
    return r;
}

TSeries eval_on_topological_jets(const JetPoly& p, int P, int D) {
    int top = p.max_jet();
    std::vector<TSeries> jets;
    jets.push_back(v_top(P, D));
    for (int j = 1; j <= std::max(top, 1); ++j)
        jets.push_back(v_top_jet(j, P, D));
    return eval_jetpoly(p, jets);
}

} // namespace qmiura
