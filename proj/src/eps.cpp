#include "qmiura/eps.hpp"

#include <algorithm>
#include <stdexcept>

namespace qmiura {

EpsSeries::EpsSeries(int trunc, int jet_cap)
    : coeffs_(trunc + 1, JetPoly(jet_cap)), trunc_(trunc), jet_cap_(jet_cap) {
    if (trunc < 0) throw std::invalid_argument("EpsSeries: negative trunc");
}

EpsSeries EpsSeries::from_jetpoly(const JetPoly& p, int trunc) {
    EpsSeries s(trunc, p.jet_cap());
    s.coeffs_[0] = p;
    return s;
}

const JetPoly& EpsSeries::coeff(int k) const {
    if (k < 0 || k > trunc_)
        throw std::out_of_range("EpsSeries::coeff: index out of range");
    return coeffs_[k];
}

void EpsSeries::set_coeff(int k, const JetPoly& p) {
    if (k < 0 || k > trunc_)
        throw std::out_of_range("EpsSeries::set_coeff: index out of range");
    coeffs_[k] = p;
    jet_cap_ = std::min(jet_cap_, p.jet_cap());
}

bool EpsSeries::is_zero() const {
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

EpsSeries& EpsSeries::operator+=(const EpsSeries& o) {
    trunc_ = std::min(trunc_, o.trunc_);
    jet_cap_ = std::min(jet_cap_, o.jet_cap_);
    coeffs_.resize(trunc_ + 1);
    for (int k = 0; k <= trunc_; ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
}

EpsSeries& EpsSeries::operator-=(const EpsSeries& o) {
    trunc_ = std::min(trunc_, o.trunc_);
    jet_cap_ = std::min(jet_cap_, o.jet_cap_);
    coeffs_.resize(trunc_ + 1);
    for (int k = 0; k <= trunc_; ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
}

EpsSeries EpsSeries::operator-() const {
    EpsSeries r(trunc_, jet_cap_);
    for (int k = 0; k <= trunc_; ++k) r.coeffs_[k] = -coeffs_[k];
    return r;
}

EpsSeries operator*(const EpsSeries& a, const EpsSeries& b) {
    EpsSeries r(std::min(a.trunc_, b.trunc_), std::min(a.jet_cap_, b.jet_cap_));
    for (int i = 0; i <= r.trunc_; ++i)
        for (int j = 0; i + j <= r.trunc_ && j <= b.trunc_; ++j) {
            if (i > a.trunc_) continue;
            r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    return r;
}

EpsSeries operator*(const Rat& c, const EpsSeries& s) {
    EpsSeries r(s.trunc_, s.jet_cap_);
    for (int k = 0; k <= s.trunc_; ++k) r.coeffs_[k] = c * s.coeffs_[k];
    return r;
}

EpsSeries operator*(const JetPoly& p, const EpsSeries& s) {
    EpsSeries r(s.trunc_, std::min(p.jet_cap(), s.jet_cap_));
    for (int k = 0; k <= s.trunc_; ++k) r.coeffs_[k] = p * s.coeffs_[k];
    return r;
}

bool EpsSeries::operator==(const EpsSeries& o) const {
    int n = std::min(trunc_, o.trunc_);
    for (int k = 0; k <= n; ++k)
        if (!(coeffs_[k] == o.coeffs_[k])) return false;
    for (int k = n + 1; k <= trunc_; ++k)
        if (!coeffs_[k].is_zero()) return false;
    for (int k = n + 1; k <= o.trunc_; ++k)
        if (!o.coeffs_[k].is_zero()) return false;
    return true;
}

EpsSeries EpsSeries::shifted(int k) const {
    if (k < 0) throw std::invalid_argument("EpsSeries::shifted: negative k");
    EpsSeries r(trunc_, jet_cap_);
    for (int i = 0; i + k <= trunc_; ++i) r.coeffs_[i + k] = coeffs_[i];
    return r;
}

EpsSeries dx(const EpsSeries& s) {
    EpsSeries r(s.trunc(), s.jet_cap());
    for (int k = 0; k <= s.trunc(); ++k) r.set_coeff(k, dx(s.coeff(k)));
    return r;
}

EpsSeries flow(const EpsSeries& s, const JetPoly& g) {
    EpsSeries r(s.trunc(), s.jet_cap());
    for (int k = 0; k <= s.trunc(); ++k) r.set_coeff(k, flow(s.coeff(k), g));
    return r;
}

EpsSeries eps_compose(const EpsSeries& outer, const EpsSeries& inner) {
    int trunc = std::min(outer.trunc(), inner.trunc());
    int cap = std::min(outer.jet_cap(), inner.jet_cap());
    // Highest jet of the placeholder appearing anywhere in outer.
    int top = 0;
    for (int k = 0; k <= outer.trunc(); ++k)
        for (const auto& [m, c] : outer.coeff(k).terms()) {
            if (m.v1_exp < 0 || m.log_exp != 0 || m.y_exp != 0)
                throw std::invalid_argument(
                    "eps_compose: outer must be polynomial in the jets");
            top = std::max(top, m.max_jet());
        }
    std::vector<EpsSeries> jets(top + 1);
    jets[0] = inner;
    for (int j = 1; j <= top; ++j) jets[j] = dx(jets[j - 1]);

    EpsSeries result(trunc, cap);
    for (int k = 0; k <= trunc; ++k) {
        for (const auto& [m, c] : outer.coeff(k).terms()) {
            JetMonomial carried; // aux slots pass through unchanged
            carried.aux = m.aux;
            EpsSeries term = EpsSeries::from_jetpoly(
                JetPoly::monomial(carried, c, cap), trunc);
            for (int e = 0; e < m.v_exp; ++e) term = term * jets[0];
            for (int e = 0; e < m.v1_exp; ++e) term = term * jets[1];
            for (const auto& [j, ex] : m.higher)
                for (int e = 0; e < ex; ++e) term = term * jets[j];
            result += term.shifted(k);
        }
    }
    return result;
}

EpsSeries eps_exp(const EpsSeries& a) {
    // eps^0 part must be (m/2) v with 2*(m/2) an even... i.e. m an integer.
    const JetPoly& a0 = a.coeff(0);
    int m = 0;
    if (!a0.is_zero()) {
        JetMonomial mv;
        mv.v_exp = 1;
        if (a0.terms().size() != 1 || a0.terms().begin()->first != mv)
            throw std::invalid_argument(
                "eps_exp: eps^0 part must be a multiple of v");
        Rat c = 2 * a0.terms().begin()->second;
        if (c.get_den() != 1)
            throw std::invalid_argument(
                "eps_exp: eps^0 coefficient must be a half-integer");
        m = static_cast<int>(c.get_num().get_si());
    }
    EpsSeries rest = a;
    rest.set_coeff(0, JetPoly(a.jet_cap()));
    // exp(rest): rest has no eps^0 part, so powers beyond trunc vanish.
    EpsSeries sum =
        EpsSeries::from_jetpoly(JetPoly::constant(1, a.jet_cap()), a.trunc());
    EpsSeries pw = sum;
    Rat fact = 1;
    for (int k = 1; k <= a.trunc(); ++k) {
        pw = pw * rest;
        fact *= k;
        sum += Rat(1) / fact * pw;
    }
    return JetPoly::y_pow(m, a.jet_cap()) * sum;
}

EpsSeries lattice_shift(const EpsSeries& a, int dir) {
    if (dir != 1 && dir != -1)
        throw std::invalid_argument("lattice_shift: dir must be +1 or -1");
    EpsSeries r(a.trunc(), a.jet_cap());
    // per source coefficient, so nothing beyond the truncation is ever
    // differentiated (the jet cap stays honest)
    for (int j = 0; j <= a.trunc(); ++j) {
        JetPoly d = a.coeff(j);
        Rat fact = 1;
        for (int mth = 0; j + mth <= a.trunc(); ++mth) {
            if (mth > 0) {
                d = dx(d);
                fact *= mth;
            }
            Rat c = Rat(dir == -1 && mth % 2 == 1 ? -1 : 1) / fact;
            r.set_coeff(j + mth, r.coeff(j + mth) + c * d);
        }
    }
    return r;
}

} // namespace qmiura
