#include "qmiura/hodge.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <stdexcept>

#include "qmiura/intersect.hpp"
#include "qmiura/qmatrix.hpp"

namespace qmiura {

Rat bernoulli(int k) {
    if (k < 0) throw std::invalid_argument("bernoulli: negative index");
    static std::vector<Rat> b = {Rat(1)}; // b_n = [x^n] x/(1 - e^{-x})
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(b.size()) <= k) {
        int n = static_cast<int>(b.size());
        // (1 - e^{-x})/x = sum_m a_m x^m with a_m = (-1)^m/(m+1)!;
        // b_n = -sum_{m=1}^{n} a_m b_{n-m}.
        Rat s(0);
        for (int m = 1; m <= n; ++m) {
            Rat a(m % 2 ? -1 : 1);
            a /= Rat(factorial(m + 1));
            s += a * b[static_cast<size_t>(n - m)];
        }
        b.push_back(-s);
    }
    return b[static_cast<size_t>(k)] * Rat(factorial(k));
}

namespace {

int s_weight(const Partition& phi) {
    int w = 0;
    for (int j : phi.parts()) w += 2 * j - 1;
    return w;
}

// Psi-class potential F_g: coefficient of t^K is <tau_K>/prod mult!, keys
// limited by the dimension constraint sum (k_i - 1) = 3g-3.
TSeries psi_potential(int g, int P, int D) {
    TSeries F(P + 1, D);
    int target = 3 * g - 3;
    std::vector<int> mult(static_cast<size_t>(P) + 1, 0);
    std::function<void(int, int, int)> rec = [&](int i, int n, int ex) {
        if (ex - target > D - n) return;           // t_0 slack exhausted
        if (ex + (D - n) * std::max(i - 1, 0) < target) return;
        if (i == 0) {
            int m0 = ex - target;
            if (m0 < 0) return;
            int ntot = n + m0;
            if (ntot < 1 || ntot > D) return;
            mult[0] = m0;
            std::vector<int> key;
            for (int q = 0; q <= P; ++q)
                key.insert(key.end(), static_cast<size_t>(mult[static_cast<size_t>(q)]), q);
            Rat c = tau_oracle(key);
            if (c != 0) {
                Int den = 1;
                for (int q = 0; q <= P; ++q) den *= factorial(mult[static_cast<size_t>(q)]);
                c /= Rat(den);
                std::vector<int> expv(mult.begin(), mult.end());
                F.add_term(expv, c);
            }
            mult[0] = 0;
            return;
        }
        for (int m = 0; n + m <= D; ++m) {
            mult[static_cast<size_t>(i)] = m;
            rec(i - 1, n + m, ex + m * (i - 1));
        }
        mult[static_cast<size_t>(i)] = 0;
    };
    rec(P, 0, 0);
    return F;
}

// Partitions with parts in [1, jmax] and sum (2j-1) <= W, sorted by length.
std::vector<Partition> phi_list(int W, int jmax) {
    std::vector<Partition> out;
    std::vector<int> parts;
    std::function<void(int, int)> rec = [&](int maxpart, int w) {
        if (!parts.empty()) out.push_back(Partition(parts));
        for (int j = std::min(maxpart, jmax); j >= 1; --j) {
            if (w + 2 * j - 1 > W) continue;
            parts.push_back(j);
            rec(j, w + 2 * j - 1);
            parts.pop_back();
        }
    };
    rec((W + 1) / 2, 0);
    std::stable_sort(out.begin(), out.end(),
                     [](const Partition& a, const Partition& b) {
                         return a.length() < b.length();
                     });
    return out;
}

// Ordered submultiset splits phi = phi1 (+) phi2.
std::vector<std::pair<Partition, Partition>> multiset_splits(const Partition& phi) {
    std::map<int, int> mult = phi.multiplicities();
    std::vector<std::pair<int, int>> ms(mult.begin(), mult.end());
    std::vector<std::pair<Partition, Partition>> out;
    std::vector<int> take(ms.size(), 0);
    std::function<void(size_t)> rec = [&](size_t idx) {
        if (idx == ms.size()) {
            std::vector<int> a, b;
            for (size_t q = 0; q < ms.size(); ++q) {
                a.insert(a.end(), static_cast<size_t>(take[q]), ms[q].first);
                b.insert(b.end(), static_cast<size_t>(ms[q].second - take[q]),
                         ms[q].first);
            }
            out.emplace_back(Partition(a), Partition(b));
            return;
        }
        for (int m = 0; m <= ms[idx].second; ++m) {
            take[idx] = m;
            rec(idx + 1);
        }
        take[idx] = 0;
    };
    rec(0);
    return out;
}

} // namespace

const TSeries& FPTable::g_series(int g, const Partition& phi) const {
    auto it = G.find({g, phi});
    if (it == G.end())
        throw std::out_of_range("FPTable::g_series: entry not in table");
    return it->second;
}

Rat FPTable::hodge_integral(int g, const Partition& phi,
                            std::vector<int> tau) const {
    const TSeries& s = g_series(g, phi);
    std::vector<int> expv(static_cast<size_t>(P) + 1, 0);
    for (int k : tau) {
        if (k < 0 || k > P)
            throw std::out_of_range("FPTable::hodge_integral: tau index out of range");
        ++expv[static_cast<size_t>(k)];
    }
    if (static_cast<int>(tau.size()) > s.maxdeg())
        throw std::logic_error("FPTable::hodge_integral: beyond exact degree");
    Rat c = s.coefficient(expv);
    Int f = phi.mult_factorial();
    for (int e : expv) f *= factorial(e);
    return c * Rat(f);
}

FPTable fp_flow(int gmax, int P, int D, int W) {
    FPTable T;
    T.gmax = gmax;
    T.P = P;
    T.D = D;
    T.W = W;
    for (int g = 0; g <= gmax; ++g)
        T.G[{g, Partition()}] = psi_potential(g, P, D);

    std::vector<Partition> phis = phi_list(W, (W + 1) / 2);
    for (int g = 0; g <= gmax; ++g) {
        for (const Partition& phip : phis) {
            int k = phip.part(0); // largest part
            std::vector<int> rest(phip.parts().begin() + 1, phip.parts().end());
            Partition phi(rest);

            const TSeries& base = T.G.at({g, phi});
            if (base.maxdeg() < 2)
                throw std::logic_error("fp_flow: degree budget exhausted; increase D");
            TSeries rhs(P + 1, base.maxdeg());
            for (int p = 0; p + 2 * k - 1 <= P; ++p) {
                TSeries d = base.deriv(p + 2 * k - 1);
                if (d.is_zero()) continue;
                rhs += TSeries::var(p, P + 1, d.maxdeg()) * d;
            }
            // kappa-class contribution of the underlying Grothendieck-
            // Riemann-Roch formula for ch_{2k-1}
            if (2 * k <= P) rhs -= base.deriv(2 * k);
            for (int j = 0; j <= 2 * k - 2; ++j) {
                TSeries quad(P + 1, base.maxdeg() - 2);
                if (g >= 1)
                    quad += T.G.at({g - 1, phi}).deriv(j).deriv(2 * k - 2 - j);
                for (int g1 = 0; g1 <= g; ++g1) {
                    for (auto& [phi1, phi2] : multiset_splits(phi)) {
                        TSeries a = T.G.at({g1, phi1}).deriv(j);
                        if (a.is_zero()) continue;
                        TSeries bq = T.G.at({g - g1, phi2}).deriv(2 * k - 2 - j);
                        if (bq.is_zero()) continue;
                        quad += a * bq;
                    }
                }
                Rat half(j % 2 ? 1 : -1);
                half /= Rat(2);
                rhs += half * quad;
            }
            Rat pref = -bernoulli(2 * k);
            pref /= Rat(factorial(2 * k) * Int(phip.multiplicity(k)));
            T.G[{g, phip}] = pref * rhs;
        }
    }
    return T;
}

const FPTable& fp_table(int gmax, int W) {
    static FPTable table;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (gmax > table.gmax || W > table.W) {
        int g = std::max(gmax, table.gmax);
        int w = std::max(W, table.W);
        int D = std::max({8, 3 * g + 2, 3 * g - 2 + w, 2 * w + 1});
        // P covers the jet extraction (3g-2) and the kappa term d/dt_{2k}
        // for the largest admissible s_k (2k <= w+1).
        table = fp_flow(g, std::max({1, 3 * g - 2, w + 1}), D, w);
    }
    return table;
}

JetPoly hg_phi_jet(int g, const Partition& phi, const FPTable& table) {
    JetPoly out;
    if (g <= 0) return out;
    if (g == 1) {
        if (phi.is_zero()) {
            Rat c(1);
            c /= Rat(24);
            return c * JetPoly::log_v1();
        }
        if (phi == Partition({1})) {
            Rat c(1);
            c /= Rat(24);
            return c * JetPoly::v();
        }
        return out; // higher ch_1 powers vanish at genus 1
    }
    int ws = s_weight(phi);
    int N = 3 * g - 3 - ws;
    if (N < 0) return out;
    int E = -g + 1 + ws; // v1 prefactor exponent

    std::vector<Partition> parts_N = partitions_of_weight(N);
    std::map<Partition, Rat> c;
    for (const Partition& la : parts_N) {
        std::vector<int> key;
        for (int p : la.parts()) key.push_back(p + 1);
        Rat integral = phi.is_zero() ? tau_oracle(key)
                                     : table.hodge_integral(g, phi, key);
        if (integral == 0) continue;
        integral /= Rat(la.mult_factorial());
        for (const Partition& mu : parts_N) {
            Int q = q_entry(la, mu);
            if (q != 0) c[mu] += integral * Rat(q);
        }
    }
    for (auto& [mu, coeff] : c) {
        if (coeff == 0) continue;
        JetMonomial m;
        m.v1_exp = E - mu.length();
        for (auto& [p, e] : mu.multiplicities()) m.higher.emplace_back(p + 1, e);
        out.add_term(m, coeff);
    }
    return out;
}

JetPoly hg_jet(int g, int W) {
    if (g <= 0) return JetPoly();
    int Wc = g == 1 ? std::min(W, 1) : std::min(W, 3 * g - 3);
    const FPTable& table = fp_table(g, Wc);
    JetPoly out = hg_phi_jet(g, Partition(), table);
    for (const Partition& phi : phi_list(Wc, g)) {
        JetPoly body = hg_phi_jet(g, phi, table);
        if (body.is_zero()) continue;
        JetMonomial sm;
        for (auto& [j, e] : phi.multiplicities()) sm.aux.emplace_back(j, e);
        Rat c(1);
        c /= Rat(phi.mult_factorial());
        out += JetPoly::monomial(sm, c) * body;
    }
    return out;
}

JetPoly hg_gamma_jet(int g, const ChPoly& gamma, const FPTable& table) {
    JetPoly out;
    for (auto& [phi, coeff] : gamma) {
        if (coeff == 0) continue;
        out += coeff * hg_phi_jet(g, phi, table);
    }
    return out;
}

JetPoly specialize(const JetPoly& h, SpecTarget target) {
    JetPoly out(h.jet_cap());
    for (auto& [m, c] : h.terms()) {
        JetMonomial nm = m;
        nm.aux.clear();
        Rat coeff = c;
        int spow = 0;
        for (auto& [k, e] : m.aux) {
            if (k == 0)
                throw std::invalid_argument("specialize: input already carries s");
            spow += (2 * k - 1) * e;
            Rat f(factorial(2 * k - 2));
            if (target == SpecTarget::dkdv)
                f *= Rat(1 - int_pow(Int(4), k));
            coeff *= rat_pow(f, e);
        }
        if (spow > 0) nm.aux.emplace_back(0, spow);
        out.add_term(nm, coeff);
    }
    return out;
}

std::map<Partition, Rat> hg_phi_coefficients(const JetPoly& phi_jet, int g,
                                             const Partition& phi) {
    int ws = s_weight(phi);
    int N = 3 * g - 3 - ws;
    int E = -g + 1 + ws;
    std::map<Partition, Rat> c;
    for (auto& [m, coeff] : phi_jet.terms()) {
        if (m.v_exp != 0 || m.log_exp != 0 || m.y_exp != 0 || !m.aux.empty())
            throw std::logic_error("hg_phi_coefficients: unexpected factor");
        std::vector<int> mu_parts;
        for (auto& [j, e] : m.higher)
            mu_parts.insert(mu_parts.end(), static_cast<size_t>(e), j - 1);
        Partition mu(mu_parts);
        if (mu.weight() != N || m.v1_exp != E - mu.length())
            throw std::logic_error("hg_phi_coefficients: unexpected jet shape");
        c[mu] += coeff;
    }
    return c;
}

std::map<Partition, Rat> hodge_from_jets(int g, const Partition& phi,
                                         const std::map<Partition, Rat>& c) {
    int N = 3 * g - 3 - s_weight(phi);
    std::map<Partition, Rat> out;
    for (const Partition& la : partitions_of_weight(N)) {
        Rat val(0);
        for (auto& [mu, coeff] : c) {
            if (coeff == 0) continue;
            Int q = inverse_q_entry(mu, la);
            if (q != 0) val += coeff * Rat(q);
        }
        val *= Rat(la.mult_factorial());
        out[la] = val;
    }
    return out;
}

ChPoly ch_mul(const ChPoly& a, const ChPoly& b) {
    ChPoly out;
    for (auto& [pa, ca] : a)
        for (auto& [pb, cb] : b) {
            Rat c = ca * cb;
            if (c != 0) out[pa.multiset_union(pb)] += c;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

ChPoly lambda_class(int j) {
    if (j < 0) throw std::invalid_argument("lambda_class: negative index");
    static std::vector<ChPoly> cache = {{{Partition(), Rat(1)}}}; // lambda_0 = 1
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= j) {
        int n = static_cast<int>(cache.size());
        // Newton: n e_n = sum_{i=1}^{n} (-1)^{i-1} e_{n-i} p_i, with even
        // power sums zero and p_{2m-1} = (2m-1)! ch_{2m-1}.
        ChPoly en;
        for (int i = 1; i <= n; i += 2) {
            int mpart = (i + 1) / 2;
            ChPoly pi = {{Partition({mpart}), Rat(factorial(i))}};
            ChPoly term = ch_mul(cache[static_cast<size_t>(n - i)], pi);
            Rat f(((i - 1) % 2) ? -1 : 1);
            f /= Rat(n);
            for (auto& [p, cc] : term) {
                Rat add = f * cc;
                if (add != 0) en[p] += add;
            }
        }
        for (auto it = en.begin(); it != en.end();)
            it = it->second == 0 ? en.erase(it) : std::next(it);
        cache.push_back(en);
    }
    return cache[static_cast<size_t>(j)];
}

ChPoly lambda_monomial(const std::vector<int>& js) {
    ChPoly out = {{Partition(), Rat(1)}};
    for (int j : js) out = ch_mul(out, lambda_class(j));
    return out;
}

namespace {
Rat abs_bernoulli(int k) {
    Rat b = bernoulli(k);
    if (b < 0) b = -b;
    return b;
}
} // namespace

Rat lambda_pairing(int g, LambdaWhich which, const std::vector<int>& taus) {
    int n = static_cast<int>(taus.size());
    int total = 0;
    for (int k : taus) {
        if (k < 0) throw std::invalid_argument("lambda_pairing: negative index");
        total += k;
    }
    switch (which) {
    case LambdaWhich::lg: {
        if (g < 1 || total != 2 * g - 3 + n)
            throw std::invalid_argument("lambda_pairing: dimension mismatch");
        Rat r(int_pow(Int(2), 2 * g - 1) - 1);
        r /= Rat(int_pow(Int(2), 2 * g - 1));
        r *= abs_bernoulli(2 * g) / Rat(factorial(2 * g));
        r *= Rat(factorial(2 * g - 3 + n));
        for (int k : taus) r /= Rat(factorial(k));
        return r;
    }
    case LambdaWhich::lg_lgm1: {
        if (g < 2 || total != g - 2 + n)
            throw std::invalid_argument("lambda_pairing: dimension mismatch");
        for (int k : taus)
            if (k < 1)
                throw std::invalid_argument("lambda_pairing: indices must be >= 1");
        Rat r = abs_bernoulli(2 * g);
        r /= Rat(int_pow(Int(2), 2 * g - 1) * factorial(2 * g));
        r *= Rat(factorial(2 * g + n - 3));
        for (int k : taus) r /= Rat(double_factorial(2 * k - 1));
        return r;
    }
    case LambdaWhich::lg_lgm1_lgm2: {
        if (g < 2 || n != 0)
            throw std::invalid_argument("lambda_pairing: expects no tau insertions");
        Rat r(1);
        r /= Rat(2 * factorial(2 * g - 2));
        r *= abs_bernoulli(2 * g - 2) / Rat(2 * g - 2);
        r *= abs_bernoulli(2 * g) / Rat(2 * g);
        return r;
    }
    }
    throw std::logic_error("lambda_pairing: unreachable");
}

} // namespace qmiura
