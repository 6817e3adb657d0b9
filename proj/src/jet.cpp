#include "qmiura/jet.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qmiura {

namespace {

using ordered_json = nlohmann::ordered_json;

int slot_get(const std::vector<std::pair<int, int>>& slots, int key) {
    for (const auto& [k, e] : slots)
        if (k == key) return e;
    return 0;
}

// Adds delta to the exponent of `key`, keeping the vector sorted and free of
// zero entries.
void slot_add(std::vector<std::pair<int, int>>& slots, int key, int delta) {
    if (delta == 0) return;
    auto it = std::lower_bound(
        slots.begin(), slots.end(), key,
        [](const std::pair<int, int>& p, int k) { return p.first < k; });
    if (it != slots.end() && it->first == key) {
        it->second += delta;
        if (it->second == 0) slots.erase(it);
    } else {
        slots.insert(it, {key, delta});
    }
}

std::string aux_name(int k) {
    return k == 0 ? std::string("s") : "s" + std::to_string(k);
}

int aux_index(const std::string& name) {
    if (name == "s") return 0;
    if (name.size() < 2 || name[0] != 's')
        throw std::invalid_argument("JetPoly: bad aux name " + name);
    return std::stoi(name.substr(1));
}

} // namespace

int JetMonomial::jet_exponent(int j) const {
    if (j == 0) return v_exp;
    if (j == 1) return v1_exp;
    return slot_get(higher, j);
}

int JetMonomial::max_jet() const {
    if (!higher.empty()) return higher.back().first;
    if (v1_exp != 0 || log_exp != 0) return 1;
    return 0;
}

JetMonomial jet_monomial(std::initializer_list<std::pair<int, int>> jets) {
    JetMonomial m;
    for (const auto& [j, e] : jets) {
        if (j < 0 || (j != 1 && e < 0))
            throw std::invalid_argument("jet_monomial: bad exponent");
        if (j == 0)
            m.v_exp += e;
        else if (j == 1)
            m.v1_exp += e;
        else
            slot_add(m.higher, j, e);
    }
    return m;
}

int mono_deg(const JetMonomial& m) {
    int d = m.v1_exp;
    for (const auto& [j, e] : m.higher) d += j * e;
    return d;
}

int mono_degbar(const JetMonomial& m) {
    int d = 0;
    for (const auto& [j, e] : m.higher) d += (j - 1) * e;
    for (const auto& [k, e] : m.aux) d += (k == 0 ? 1 : 2 * k - 1) * e;
    return d;
}

JetPoly JetPoly::constant(const Rat& c, int cap) {
    JetPoly p(cap);
    p.add_term(JetMonomial{}, c);
    return p;
}

JetPoly JetPoly::v(int cap) { return jet(0, cap); }

JetPoly JetPoly::jet(int j, int cap) {
    JetPoly p(cap);
    JetMonomial m;
    if (j == 0)
        m.v_exp = 1;
    else if (j == 1)
        m.v1_exp = 1;
    else
        m.higher = {{j, 1}};
    p.add_term(m, 1);
    return p;
}

JetPoly JetPoly::v1_pow(int e, int cap) {
    JetPoly p(cap);
    JetMonomial m;
    m.v1_exp = e;
    p.add_term(m, 1);
    return p;
}

JetPoly JetPoly::log_v1(int cap) {
    JetPoly p(cap);
    JetMonomial m;
    m.log_exp = 1;
    p.add_term(m, 1);
    return p;
}

JetPoly JetPoly::y_pow(int mexp, int cap) {
    JetPoly p(cap);
    JetMonomial m;
    m.y_exp = mexp;
    p.add_term(m, 1);
    return p;
}

JetPoly JetPoly::aux(int k, int cap) {
    JetPoly p(cap);
    JetMonomial m;
    m.aux = {{k, 1}};
    p.add_term(m, 1);
    return p;
}

JetPoly JetPoly::monomial(const JetMonomial& m, const Rat& c, int cap) {
    JetPoly p(cap);
    p.add_term(m, c);
    return p;
}

Rat JetPoly::coefficient(const JetMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

void JetPoly::add_term(const JetMonomial& m, const Rat& c) {
    if (c == 0) return;
    if (m.v_exp < 0 || m.log_exp < 0)
        throw std::invalid_argument("JetPoly: negative v or log exponent");
    if (m.max_jet() > jet_cap_)
        throw std::runtime_error("JetPoly: jet index " +
                                 std::to_string(m.max_jet()) +
                                 " exceeds cap " + std::to_string(jet_cap_));
    for (const auto& [j, e] : m.higher)
        if (j < 2 || e <= 0)
            throw std::invalid_argument("JetPoly: malformed higher-jet slot");
    for (const auto& [k, e] : m.aux)
        if (k < 0 || e <= 0)
            throw std::invalid_argument("JetPoly: malformed aux slot");
    Rat cc = c;
    cc.canonicalize();
    auto [it, fresh] = terms_.try_emplace(m, cc);
    if (!fresh) {
        it->second += cc;
        if (it->second == 0) terms_.erase(it);
    }
}

JetPoly& JetPoly::operator+=(const JetPoly& o) {
    jet_cap_ = std::min(jet_cap_, o.jet_cap_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

JetPoly& JetPoly::operator-=(const JetPoly& o) {
    jet_cap_ = std::min(jet_cap_, o.jet_cap_);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

JetPoly JetPoly::operator-() const {
    JetPoly r(jet_cap_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

JetPoly operator*(const JetPoly& a, const JetPoly& b) {
    JetPoly r(std::min(a.jet_cap_, b.jet_cap_));
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            JetMonomial m = ma;
            m.v_exp += mb.v_exp;
            m.v1_exp += mb.v1_exp;
            for (const auto& [j, e] : mb.higher) slot_add(m.higher, j, e);
            m.log_exp += mb.log_exp;
            m.y_exp += mb.y_exp;
            for (const auto& [k, e] : mb.aux) slot_add(m.aux, k, e);
            r.add_term(m, ca * cb);
        }
    return r;
}

JetPoly operator*(const Rat& c, const JetPoly& p) {
    JetPoly r(p.jet_cap_);
    if (c == 0) return r;
    for (const auto& [m, t] : p.terms_) r.terms_.emplace(m, c * t);
    return r;
}

JetPoly JetPoly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("JetPoly::pow: negative exponent");
    JetPoly r = constant(1, jet_cap_);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

int JetPoly::max_jet() const {
    int m = 0;
    for (const auto& [mono, c] : terms_) m = std::max(m, mono.max_jet());
    return m;
}

std::optional<int> JetPoly::homogeneous_deg() const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
        int md = mono_deg(m);
        if (d && *d != md) return std::nullopt;
        d = md;
    }
    return d;
}

std::optional<int> JetPoly::homogeneous_degbar() const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
        int md = mono_degbar(m);
        if (d && *d != md) return std::nullopt;
        d = md;
    }
    return d;
}

std::string JetPoly::to_json() const {
    ordered_json arr = ordered_json::array();
    for (const auto& [m, c] : terms_) {
        ordered_json t;
        t["coeff"] = rat_to_string(c);
        t["v"] = m.v_exp;
        t["v1"] = m.v1_exp;
        ordered_json jets = ordered_json::object();
        for (const auto& [j, e] : m.higher) jets[std::to_string(j)] = e;
        t["jets"] = jets;
        t["log"] = m.log_exp;
        t["y"] = m.y_exp;
        ordered_json aux = ordered_json::object();
        for (const auto& [k, e] : m.aux) aux[aux_name(k)] = e;
        t["aux"] = aux;
        arr.push_back(t);
    }
    return arr.dump();
}

JetPoly JetPoly::from_json(const std::string& text, int cap) {
    auto arr = ordered_json::parse(text);
    JetPoly p(cap);
    for (const auto& t : arr) {
        JetMonomial m;
        m.v_exp = t.value("v", 0);
        m.v1_exp = t.value("v1", 0);
        if (t.contains("jets"))
            for (const auto& [j, e] : t.at("jets").items())
                slot_add(m.higher, std::stoi(j), e.get<int>());
        m.log_exp = t.value("log", 0);
        m.y_exp = t.value("y", 0);
        if (t.contains("aux"))
            for (const auto& [k, e] : t.at("aux").items())
                slot_add(m.aux, aux_index(k), e.get<int>());
        p.add_term(m, rat_from_string(t.at("coeff").get<std::string>()));
    }
    return p;
}

std::string JetPoly::to_latex() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat cc = c;
        if (!first)
            os << (cc > 0 ? " + " : " - ");
        else if (cc < 0)
            os << "-";
        first = false;
        if (cc < 0) cc = -cc;
        std::string cs = cc.get_den() == 1
                             ? cc.get_num().get_str()
                             : "\\frac{" + cc.get_num().get_str() + "}{" +
                                   cc.get_den().get_str() + "}";
        std::vector<std::string> factors;
        auto push_pow = [&](const std::string& base, int e) {
            if (e == 1)
                factors.push_back(base);
            else
                factors.push_back(base + "^{" + std::to_string(e) + "}");
        };
        if (m.v_exp != 0) push_pow("v", m.v_exp);
        if (m.v1_exp != 0) push_pow("v_{1}", m.v1_exp);
        for (const auto& [j, e] : m.higher)
            push_pow("v_{" + std::to_string(j) + "}", e);
        if (m.log_exp != 0) push_pow("\\log(v_{1})", m.log_exp);
        if (m.y_exp != 0) push_pow("\\mathrm{e}^{v/2}", m.y_exp);
        for (const auto& [k, e] : m.aux)
            push_pow(k == 0 ? "s" : "s_{" + std::to_string(k) + "}", e);
        if (factors.empty() || cs != "1") os << cs;
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i > 0 || cs != "1") os << " ";
            os << factors[i];
        }
    }
    return os.str();
}

JetPoly dx(const JetPoly& p) {
    JetPoly r(p.jet_cap());
    for (const auto& [m, c] : p.terms()) {
        if (m.v_exp != 0) { // v -> v1
            JetMonomial n = m;
            n.v_exp -= 1;
            n.v1_exp += 1;
            r.add_term(n, c * m.v_exp);
        }
        if (m.v1_exp != 0) { // v1 -> v2
            JetMonomial n = m;
            n.v1_exp -= 1;
            slot_add(n.higher, 2, 1);
            r.add_term(n, c * m.v1_exp);
        }
        for (const auto& [j, e] : m.higher) { // v_j -> v_{j+1}
            JetMonomial n = m;
            slot_add(n.higher, j, -1);
            slot_add(n.higher, j + 1, 1);
            r.add_term(n, c * e);
        }
        if (m.log_exp != 0) { // log v1 -> v2/v1
            JetMonomial n = m;
            n.log_exp -= 1;
            n.v1_exp -= 1;
            slot_add(n.higher, 2, 1);
            r.add_term(n, c * m.log_exp);
        }
        if (m.y_exp != 0) { // y^k -> (k/2) v1 y^k
            JetMonomial n = m;
            n.v1_exp += 1;
            r.add_term(n, c * m.y_exp / 2);
        }
    }
    return r;
}

JetPoly dx_pow(JetPoly p, int n) {
    for (int i = 0; i < n; ++i) p = dx(p);
    return p;
}

JetPoly flow(const JetPoly& p, const JetPoly& g) {
    for (const auto& [m, c] : g.terms())
        if (m.v1_exp != 0 || !m.higher.empty() || m.log_exp != 0)
            throw std::invalid_argument("flow: g must depend on v and y only");
    int top = 0;
    for (const auto& [m, c] : p.terms()) top = std::max(top, m.max_jet());
    // d[k] = d_s v_k = d_x^k (g(v) v_1)
    std::vector<JetPoly> d(top + 1);
    if (top >= 0) {
        d[0] = g * JetPoly::jet(1, p.jet_cap());
        for (int k = 1; k <= top; ++k) d[k] = dx(d[k - 1]);
    }
    JetPoly r(p.jet_cap());
    for (const auto& [m, c] : p.terms()) {
        if (m.v_exp != 0) {
            JetMonomial n = m;
            n.v_exp -= 1;
            r += JetPoly::monomial(n, c * m.v_exp, p.jet_cap()) * d[0];
        }
        if (m.v1_exp != 0) {
            JetMonomial n = m;
            n.v1_exp -= 1;
            r += JetPoly::monomial(n, c * m.v1_exp, p.jet_cap()) * d[1];
        }
        for (const auto& [j, e] : m.higher) {
            JetMonomial n = m;
            slot_add(n.higher, j, -1);
            r += JetPoly::monomial(n, c * e, p.jet_cap()) * d[j];
        }
        if (m.log_exp != 0) { // d_s log v1 = (d_s v1)/v1
            JetMonomial n = m;
            n.log_exp -= 1;
            n.v1_exp -= 1;
            r += JetPoly::monomial(n, c * m.log_exp, p.jet_cap()) * d[1];
        }
        if (m.y_exp != 0) { // d_s y^k = (k/2)(d_s v) y^k
            r += JetPoly::monomial(m, c * m.y_exp / 2, p.jet_cap()) * d[0];
        }
    }
    return r;
}

} // namespace qmiura
