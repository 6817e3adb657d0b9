// qmiura: command-line surface for the exact quasi-triviality toolkit.
//
// Verbs: qmatrix | intersect | hodge | quasitriv | verify | graphs |
//        burgers-fg | tseries | seed-tables
// Output formats: json | latex | text.  All numbers are exact rationals
// rendered as "p/q" strings; output is deterministic (identical inputs
// produce byte-identical output), and every JSON emitter is re-parsed and
// re-emitted before printing so the emit/load/emit identity is enforced on
// every run.
//
// Exit codes: 0 success, 1 computation/verification error, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qmiura/graphs1d.hpp"
#include "qmiura/hodge.hpp"
#include "qmiura/intersect.hpp"
#include "qmiura/partition.hpp"
#include "qmiura/qmatrix.hpp"
#include "qmiura/quasitriv.hpp"
#include "qmiura/rational.hpp"
#include "qmiura/tseries.hpp"

using namespace qmiura;
using ordered_json = nlohmann::ordered_json;

namespace {

// Enforce the emit -> load -> emit identity before printing any JSON.
std::string roundtrip(const std::string& text,
                      const std::function<std::string(const std::string&)>& reload) {
    std::string again = reload(text);
    if (again != text)
        throw std::logic_error("JSON round-trip identity violated");
    return text;
}

std::string partition_str(const Partition& p) {
    std::string s = "(";
    for (size_t i = 0; i < p.parts().size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p.parts()[i]);
    }
    return s + ")";
}

// ---------------------------------------------------------------- qmatrix

int run_qmatrix(int weight, const std::string& kind, const std::string& fmt) {
    QMatrix m = q_matrix(weight, kind == "inverse" ? QKind::inverse : QKind::direct);
    if (fmt == "json") {
        std::cout << roundtrip(m.to_json(), [](const std::string& t) {
            return QMatrix::from_json(t).to_json();
        }) << "\n";
    } else if (fmt == "latex") {
        std::cout << "\\begin{pmatrix}\n";
        for (size_t i = 0; i < m.entries.size(); ++i) {
            for (size_t j = 0; j < m.entries[i].size(); ++j) {
                if (j) std::cout << " & ";
                std::cout << m.entries[i][j].get_str();
            }
            std::cout << (i + 1 < m.entries.size() ? " \\\\" : "") << "\n";
        }
        std::cout << "\\end{pmatrix}\n";
    } else {
        std::cout << "weight " << m.weight << " kind "
                  << (m.kind == QKind::direct ? "direct" : "inverse") << "\n";
        std::cout << "order:";
        for (const Partition& p : m.order) std::cout << " " << partition_str(p);
        std::cout << "\n";
        for (const auto& row : m.entries) {
            for (size_t j = 0; j < row.size(); ++j) {
                if (j) std::cout << " ";
                std::cout << row[j].get_str();
            }
            std::cout << "\n";
        }
    }
    return 0;
}

// -------------------------------------------------------------- intersect

int run_intersect(std::vector<int> parts, const std::string& fmt) {
    for (int k : parts)
        if (k < 0) throw std::invalid_argument("intersect: indices must be >= 0");
    std::sort(parts.begin(), parts.end(), std::greater<int>());
    std::string prov;
    Rat val;
    bool all_ge2 = !parts.empty();
    int shifted_weight = 0;
    for (int k : parts) {
        if (k < 2) all_ge2 = false;
        shifted_weight += k - 1;
    }
    if (parts.size() == 1 && parts[0] >= 1 && parts[0] % 3 == 1) {
        prov = "closed-form";
        val = tau_onepoint((parts[0] + 2) / 3);
    } else if (all_ge2 && shifted_weight % 3 == 0) {
        prov = "bdy";
        std::vector<int> la;
        for (int k : parts) la.push_back(k - 1);
        val = tau_bdy(Partition(la));
    } else {
        prov = "oracle";
        val = tau_oracle(parts);
    }
    if (fmt == "json") {
        ordered_json j;
        j["parts"] = parts;
        j["value"] = rat_to_string(val);
        j["provenance"] = prov;
        std::cout << roundtrip(j.dump(), [](const std::string& t) {
            auto p = ordered_json::parse(t);
            ordered_json out;
            out["parts"] = p.at("parts").get<std::vector<int>>();
            out["value"] = rat_to_string(rat_from_string(p.at("value").get<std::string>()));
            out["provenance"] = p.at("provenance").get<std::string>();
            return out.dump();
        }) << "\n";
    } else if (fmt == "latex") {
        Rat c = val;
        std::cout << (c.get_den() == 1
                          ? c.get_num().get_str()
                          : "\\frac{" + c.get_num().get_str() + "}{" +
                                c.get_den().get_str() + "}")
                  << "\n";
    } else {
        std::cout << rat_to_string(val) << "\n";
    }
    return 0;
}

// ------------------------------------------------------------------ hodge

int run_hodge(int g, const std::vector<int>& ch, const std::vector<int>& tau,
              const std::string& fmt) {
    Partition phi(ch);
    int W = 0;
    for (int j : ch) {
        if (j < 1) throw std::invalid_argument("hodge: ch indices must be >= 1");
        W += 2 * j - 1;
    }
    const FPTable& table = fp_table(g, W);
    Rat val = table.hodge_integral(g, phi, tau);
    if (fmt == "json") {
        ordered_json j;
        j["g"] = g;
        j["ch"] = ch;
        j["tau"] = tau;
        j["value"] = rat_to_string(val);
        std::cout << roundtrip(j.dump(), [](const std::string& t) {
            auto p = ordered_json::parse(t);
            ordered_json out;
            out["g"] = p.at("g").get<int>();
            out["ch"] = p.at("ch").get<std::vector<int>>();
            out["tau"] = p.at("tau").get<std::vector<int>>();
            out["value"] = rat_to_string(rat_from_string(p.at("value").get<std::string>()));
            return out.dump();
        }) << "\n";
    } else {
        std::cout << rat_to_string(val) << "\n";
    }
    return 0;
}

// -------------------------------------------------- quasitriv / verify

std::string transformation_json(const Transformation& tr) {
    ordered_json j;
    j["target"] = target_name(tr.target);
    j["gmax"] = tr.gmax;
    j["jet_cap"] = tr.body.jet_cap();
    j["trunc"] = tr.body.trunc();
    auto coeffs = ordered_json::array();
    for (int k = 0; k <= tr.body.trunc(); ++k)
        coeffs.push_back(ordered_json::parse(tr.body.coeff(k).to_json()));
    j["coeffs"] = coeffs;
    return j.dump();
}

std::string transformation_reload(const std::string& text) {
    auto p = ordered_json::parse(text);
    Transformation tr;
    tr.target = target_from_name(p.at("target").get<std::string>());
    tr.gmax = p.at("gmax").get<int>();
    int cap = p.at("jet_cap").get<int>();
    int trunc = p.at("trunc").get<int>();
    EpsSeries body(trunc, cap);
    int k = 0;
    for (const auto& c : p.at("coeffs"))
        body.set_coeff(k++, JetPoly::from_json(c.dump(), cap));
    tr.body = body;
    return transformation_json(tr);
}

int run_quasitriv(const std::string& target, int gmax, int jet_cap,
                  const std::string& fmt) {
    Transformation tr = assemble(target_from_name(target), gmax, jet_cap);
    if (fmt == "json") {
        std::cout << roundtrip(transformation_json(tr), transformation_reload)
                  << "\n";
    } else if (fmt == "latex") {
        std::cout << "u = ";
        bool first = true;
        for (int k = 0; k <= tr.body.trunc(); ++k) {
            const JetPoly& c = tr.body.coeff(k);
            if (c.is_zero()) continue;
            if (!first) std::cout << " + ";
            first = false;
            if (k == 0)
                std::cout << c.to_latex();
            else
                std::cout << "\\epsilon^{" << k << "} \\left(" << c.to_latex()
                          << "\\right)";
        }
        if (first) std::cout << "0";
        std::cout << "\n";
    } else {
        std::cout << "target " << target_name(tr.target) << " gmax " << tr.gmax
                  << "\n";
        for (int k = 0; k <= tr.body.trunc(); ++k)
            std::cout << "eps^" << k << ": " << tr.body.coeff(k).to_latex()
                      << "\n";
    }
    return 0;
}

int run_verify(const std::string& target, int gmax, int jet_cap) {
    Target t = target_from_name(target);
    EpsSeries r = residual(t, gmax, jet_cap);
    // the listed orders are the ones the equation populates: every order for
    // burgers, the even orders for the eps^2-graded families
    int step = t == Target::burgers ? 1 : 2;
    std::vector<int> bad;
    for (int k = 0; k <= r.trunc(); ++k)
        if (!r.coeff(k).is_zero()) bad.push_back(k);
    auto list = [&](const std::vector<int>& ks) {
        std::string s;
        for (size_t i = 0; i < ks.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(ks[i]);
        }
        return s;
    };
    if (bad.empty()) {
        std::vector<int> ks;
        for (int k = 0; k <= r.trunc(); k += step) ks.push_back(k);
        std::cout << "orders " << list(ks) << ": zero\n";
        return 0;
    }
    std::cout << "orders " << list(bad) << ": nonzero\n";
    return 1;
}

// ----------------------------------------------------------------- graphs

int run_graphs(int genus, const std::string& fmt) {
    auto gs = enumerate_graphs(genus);
    if (fmt == "json") {
        auto arr = ordered_json::array();
        for (const auto& mg : gs) {
            ordered_json j;
            j["V"] = mg.V;
            j["E"] = mg.E();
            j["lambda"] = mg.lambda().parts();
            j["aut"] = mg.aut_order.get_str();
            auto edges = ordered_json::array();
            for (const auto& [pr, m] : mg.edges)
                edges.push_back({pr.first, pr.second, m});
            j["edges"] = edges;
            arr.push_back(j);
        }
        std::cout << roundtrip(arr.dump(), [](const std::string& t) {
            auto p = ordered_json::parse(t);
            auto out = ordered_json::array();
            for (const auto& e : p) {
                ordered_json j;
                j["V"] = e.at("V").get<int>();
                j["E"] = e.at("E").get<int>();
                j["lambda"] = e.at("lambda").get<std::vector<int>>();
                j["aut"] = Int(e.at("aut").get<std::string>()).get_str();
                auto edges = ordered_json::array();
                for (const auto& tr : e.at("edges"))
                    edges.push_back({tr.at(0).get<int>(), tr.at(1).get<int>(),
                                     tr.at(2).get<int>()});
                j["edges"] = edges;
                out.push_back(j);
            }
            return out.dump();
        }) << "\n";
    } else {
        for (const auto& mg : gs) {
            std::cout << "V=" << mg.V << " E=" << mg.E()
                      << " lambda=" << partition_str(mg.lambda())
                      << " |Aut|=" << mg.aut_order.get_str() << "\n";
        }
    }
    return 0;
}

int run_burgers_fg(int genus, const std::string& fmt) {
    JetPoly f = f_g_1d(genus);
    if (fmt == "json") {
        std::cout << roundtrip(f.to_json(), [](const std::string& t) {
            return JetPoly::from_json(t).to_json();
        }) << "\n";
    } else {
        std::cout << f.to_latex() << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- tseries

int run_tseries(const std::string& what, int m, int nvars, int maxdeg,
                const std::string& fmt) {
    int P = nvars - 1;
    TSeries s;
    if (what == "vtop")
        s = v_top(P, maxdeg);
    else if (what == "jet")
        s = v_top_jet(m, P, maxdeg);
    else if (what == "vms")
        s = vms(m, P, maxdeg);
    else if (what == "iz")
        s = iz_variables(m, P, maxdeg);
    else if (what == "el")
        s = euler_lagrange_residual(P, maxdeg);
    else
        throw std::invalid_argument("tseries: unknown kind " + what);
    if (fmt == "json") {
        std::cout << roundtrip(s.to_json(), [](const std::string& t) {
            return TSeries::from_json(t).to_json();
        }) << "\n";
    } else {
        if (s.is_zero()) {
            std::cout << "0\n";
            return 0;
        }
        bool first = true;
        for (const auto& [e, c] : s.terms()) {
            if (!first) std::cout << " + ";
            first = false;
            std::cout << rat_to_string(c);
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) {
                    std::cout << " t" << i;
                    if (e[i] != 1) std::cout << "^" << e[i];
                }
        }
        std::cout << "\n";
    }
    return 0;
}

// ------------------------------------------------------------ seed-tables

std::string seed_tables_json(int gmax, int sweight, int tau_weight) {
    ordered_json doc;
    doc["schema"] = 1;
    auto taus = ordered_json::array();
    for (int w = 0; w <= tau_weight; ++w)
        for (const Partition& la : partitions_of_weight(w)) {
            std::vector<int> key = la.parts();
            if (tau_genus(key) < 0) continue;
            ordered_json t;
            t["key"] = key;
            t["value"] = rat_to_string(tau_oracle(key));
            taus.push_back(t);
        }
    doc["tau"] = taus;
    const FPTable& fp = fp_table(gmax, sweight);
    ordered_json fpj;
    fpj["gmax"] = fp.gmax;
    fpj["P"] = fp.P;
    fpj["D"] = fp.D;
    fpj["W"] = fp.W;
    auto series = ordered_json::array();
    for (const auto& [key, s] : fp.G) {
        ordered_json e;
        e["g"] = key.first;
        e["phi"] = key.second.parts();
        e["series"] = ordered_json::parse(s.to_json());
        series.push_back(e);
    }
    fpj["series"] = series;
    doc["fp"] = fpj;
    return doc.dump();
}

std::string seed_tables_reload(const std::string& text) {
    auto p = ordered_json::parse(text);
    if (p.at("schema").get<int>() != 1)
        throw std::invalid_argument("seed-tables: unsupported cache schema");
    ordered_json doc;
    doc["schema"] = 1;
    auto taus = ordered_json::array();
    for (const auto& t : p.at("tau")) {
        ordered_json e;
        e["key"] = t.at("key").get<std::vector<int>>();
        e["value"] = rat_to_string(rat_from_string(t.at("value").get<std::string>()));
        taus.push_back(e);
    }
    doc["tau"] = taus;
    const auto& fp = p.at("fp");
    ordered_json fpj;
    fpj["gmax"] = fp.at("gmax").get<int>();
    fpj["P"] = fp.at("P").get<int>();
    fpj["D"] = fp.at("D").get<int>();
    fpj["W"] = fp.at("W").get<int>();
    auto series = ordered_json::array();
    for (const auto& s : fp.at("series")) {
        ordered_json e;
        e["g"] = s.at("g").get<int>();
        e["phi"] = s.at("phi").get<std::vector<int>>();
        e["series"] =
            ordered_json::parse(TSeries::from_json(s.at("series").dump()).to_json());
        series.push_back(e);
    }
    fpj["series"] = series;
    doc["fp"] = fpj;
    return doc.dump();
}

int run_seed_tables(int gmax, int sweight, int tau_weight,
                    const std::string& out, const std::string& load) {
    if (!load.empty()) {
        std::ifstream in(load);
        if (!in) throw std::runtime_error("seed-tables: cannot open " + load);
        std::stringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        if (!text.empty() && text.back() == '\n') text.pop_back();
        std::cout << seed_tables_reload(text) << "\n";
        return 0;
    }
    std::string text =
        roundtrip(seed_tables_json(gmax, sweight, tau_weight), seed_tables_reload);
    if (out.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream os(out);
        if (!os) throw std::runtime_error("seed-tables: cannot write " + out);
        os << text << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qmiura: exact quasi-triviality transformations and their "
                 "combinatorial backbone"};
    app.require_subcommand(1);
    int jobs = 1;
    app.add_option("--jobs", jobs,
                   "reserved; computations run single-threaded and "
                   "deterministically")
        ->check(CLI::PositiveNumber);

    // qmatrix
    auto* c_qm = app.add_subcommand("qmatrix", "change-of-basis matrix of a weight");
    int qm_weight = 0;
    std::string qm_kind = "direct", qm_fmt = "text";
    c_qm->add_option("--weight", qm_weight, "partition weight")
        ->required()
        ->check(CLI::Range(0, 12));
    c_qm->add_option("--kind", qm_kind)->check(CLI::IsMember({"direct", "inverse"}));
    c_qm->add_option("--format", qm_fmt)->check(CLI::IsMember({"json", "latex", "text"}));

    // intersect
    auto* c_in = app.add_subcommand("intersect", "psi-class intersection number");
    std::vector<int> in_parts;
    std::string in_fmt = "text";
    c_in->add_option("--parts", in_parts, "tau indices, comma separated")
        ->required()
        ->delimiter(',');
    c_in->add_option("--format", in_fmt)->check(CLI::IsMember({"json", "latex", "text"}));

    // hodge
    auto* c_ho = app.add_subcommand("hodge", "Hodge integral from the flow table");
    int ho_g = 1;
    std::vector<int> ho_ch, ho_tau;
    std::string ho_fmt = "text";
    c_ho->add_option("--genus", ho_g)->required()->check(CLI::Range(0, 5));
    c_ho->add_option("--ch", ho_ch, "odd Chern character indices j (factor ch_{2j-1})")
        ->delimiter(',');
    c_ho->add_option("--tau", ho_tau, "tau indices, comma separated")->delimiter(',');
    c_ho->add_option("--format", ho_fmt)->check(CLI::IsMember({"json", "text"}));

    // quasitriv
    auto* c_qt = app.add_subcommand("quasitriv", "assemble a transformation");
    std::string qt_target, qt_fmt = "text";
    int qt_gmax = 1, qt_cap = 0;
    c_qt->add_option("--target", qt_target)
        ->required()
        ->check(CLI::IsMember({"kdv", "ilw", "dkdv", "burgers"}));
    c_qt->add_option("--gmax", qt_gmax)->required()->check(CLI::Range(0, 6));
    c_qt->add_option("--jet-cap", qt_cap)->check(CLI::NonNegativeNumber);
    c_qt->add_option("--format", qt_fmt)->check(CLI::IsMember({"json", "latex", "text"}));

    // verify
    auto* c_ve = app.add_subcommand("verify", "substitute and report residual orders");
    std::string ve_target;
    int ve_gmax = 1, ve_cap = 0;
    c_ve->add_option("--target", ve_target)
        ->required()
        ->check(CLI::IsMember({"kdv", "ilw", "dkdv", "burgers"}));
    c_ve->add_option("--gmax", ve_gmax)->required()->check(CLI::Range(0, 6));
    c_ve->add_option("--jet-cap", ve_cap)->check(CLI::NonNegativeNumber);

    // graphs
    auto* c_gr = app.add_subcommand("graphs", "connected multigraph classes");
    int gr_genus = 2;
    std::string gr_fmt = "text";
    c_gr->add_option("--genus", gr_genus)->required()->check(CLI::Range(2, 5));
    c_gr->add_option("--format", gr_fmt)->check(CLI::IsMember({"json", "text"}));

    // burgers-fg
    auto* c_bf = app.add_subcommand("burgers-fg", "genus component of the 1D free energy");
    int bf_genus = 1;
    std::string bf_fmt = "latex";
    c_bf->add_option("--genus", bf_genus)->required()->check(CLI::Range(1, 5));
    c_bf->add_option("--format", bf_fmt)->check(CLI::IsMember({"json", "latex", "text"}));

    // tseries
    auto* c_ts = app.add_subcommand("tseries", "topological-solution series");
    std::string ts_what = "vtop", ts_fmt = "json";
    int ts_m = 1, ts_nvars = 9, ts_maxdeg = 8;
    c_ts->add_option("--kind", ts_what)
        ->check(CLI::IsMember({"vtop", "jet", "vms", "iz", "el"}));
    c_ts->add_option("--m", ts_m, "jet order / IZ index")->check(CLI::NonNegativeNumber);
    c_ts->add_option("--nvars", ts_nvars, "number of t-variables (t_0..t_{n-1})")
        ->check(CLI::PositiveNumber);
    c_ts->add_option("--maxdeg", ts_maxdeg)->check(CLI::NonNegativeNumber);
    c_ts->add_option("--format", ts_fmt)->check(CLI::IsMember({"json", "text"}));

    // seed-tables
    auto* c_se = app.add_subcommand(
        "seed-tables", "precompute and cache the recursion and flow tables");
    int se_gmax = 2, se_sweight = 3, se_tau = 6;
    std::string se_out, se_load;
    c_se->add_option("--gmax", se_gmax)->check(CLI::Range(0, 3));
    c_se->add_option("--sweight", se_sweight)->check(CLI::Range(0, 5));
    c_se->add_option("--tau-weight", se_tau)->check(CLI::Range(0, 12));
    c_se->add_option("--out", se_out, "write the cache to this file");
    c_se->add_option("--load", se_load, "validate a cache file and re-emit it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_qm->parsed()) return run_qmatrix(qm_weight, qm_kind, qm_fmt);
        if (c_in->parsed()) return run_intersect(in_parts, in_fmt);
        if (c_ho->parsed()) return run_hodge(ho_g, ho_ch, ho_tau, ho_fmt);
        if (c_qt->parsed()) return run_quasitriv(qt_target, qt_gmax, qt_cap, qt_fmt);
        if (c_ve->parsed()) return run_verify(ve_target, ve_gmax, ve_cap);
        if (c_gr->parsed()) return run_graphs(gr_genus, gr_fmt);
        if (c_bf->parsed()) return run_burgers_fg(bf_genus, bf_fmt);
        if (c_ts->parsed()) return run_tseries(ts_what, ts_m, ts_nvars, ts_maxdeg, ts_fmt);
        if (c_se->parsed()) return run_seed_tables(se_gmax, se_sweight, se_tau, se_out, se_load);
        std::cerr << "error: no verb selected\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
