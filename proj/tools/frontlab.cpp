// frontlab: singular-curve analysis and Gauss-Bonnet verification for
// parametrized surfaces and maps between 2-manifolds.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "frontlab/catalog.hpp"
#include "frontlab/gaussbonnet.hpp"

using nlohmann::json;
using namespace frontlab;

namespace {

struct RunConfig {
    std::string surface;
    std::map<std::string, double> params;
    Role role = Role::FirstHom;
    int nu = 256, nv = 256;
    double tol = 1e-10;
    bool as_json = false;
    std::string out_path;
    bool strict_beaks = false;
};

json convention_block() {
    return json{{"orientation", "du^dv positive; M+ on the left of singular curves"},
                {"co_orientation", "mu(e1,e2)=+1 on the positive fiber frame"},
                {"a3_sign", "sgn(lambda2)"}};
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw IoError("cannot open output file: " + cfg.out_path);
    f << text;
    if (!f) throw IoError("write failed: " + cfg.out_path);
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json params_json(const std::map<std::string, double>& p) {
    json j = json::object();
    for (const auto& [k, v] : p) j[k] = v;
    return j;
}

json gb_to_json(const GaussBonnetReport& r) {
    json terms = json::object();
    for (const auto& [k, v] : r.terms) terms[k] = v;
    return json{{"surface", r.surface}, {"params", params_json(r.params)},
                {"role", role_name(r.role)}, {"formula", r.formula},
                {"lhs", r.lhs},             {"rhs", r.rhs},
                {"terms", terms},           {"residual", r.residual},
                {"tolerance", r.tolerance}, {"pass", r.pass},
                {"convention", convention_block()}};
}

json thm_to_json(const TheoremReport& r) {
    json terms = json::object();
    for (const auto& [k, v] : r.terms) terms[k] = v;
    json j{{"surface", r.surface}, {"params", params_json(r.params)},
           {"theorem", r.theorem}, {"lhs", r.lhs},
           {"rhs", r.rhs},         {"terms", terms},
           {"residual", r.residual}, {"tolerance", r.tolerance},
           {"pass", r.pass},       {"convention", convention_block()}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

int run_list(const RunConfig& cfg) {
    auto entries = catalog::list();
    if (cfg.as_json) {
        json out = json::array();
        for (const auto& e : entries) {
            json ps = json::object();
            for (const auto& p : e.params)
                ps[p.key] = json{{"default", p.def}, {"min", p.lo}, {"max", p.hi}};
            out.push_back(json{{"name", e.name},
                               {"mode", mode_name(e.mode)},
                               {"ambient", AmbientModel{e.ambient}.name()},
                               {"closed", e.closed},
                               {"params", ps},
                               {"doc", e.doc}});
        }
        emit(cfg, out.dump(2) + "\n");
        return kExitOk;
    }
    std::ostringstream os;
    os << "name                 mode       ambient         closed  doc\n";
    for (const auto& e : entries) {
        char line[256];
        std::snprintf(line, sizeof line, "%-20s %-10s %-15s %-7s %s\n", e.name.c_str(),
                      mode_name(e.mode), AmbientModel{e.ambient}.name(),
                      e.closed ? "yes" : "no", e.doc.c_str());
        os << line;
    }
    emit(cfg, os.str());
    return kExitOk;
}

int run_analyze(const RunConfig& cfg) {
    SurfaceDescriptor s = catalog::build(cfg.surface, cfg.params);
    RoleAnalysis a = analyze_role(s, cfg.role, cfg.nu, cfg.nv, cfg.tol, cfg.strict_beaks);

    double kap_min = 0, kap_max = 0, kap_int = 0;
    bool have_kappa = false;
    try {
        auto [mn, mx] = kappa_extrema(s, a);
        kap_min = mn;
        kap_max = mx;
        have_kappa = true;
    } catch (const HypothesisError&) {
    }
    for (const auto& c : a.curves) kap_int += integrate_curve_density(s, c);

    json curves = json::array();
    for (const auto& c : a.curves) {
        json markers = json::array();
        for (const auto& m : c.markers)
            markers.push_back(json{{"t", m.t},
                                   {"u", m.q.u},
                                   {"v", m.q.v},
                                   {"sign", m.sign},
                                   {"class", sing_class_name(m.cls)}});
        curves.push_back(json{{"closed", c.closed},
                              {"degenerate_circle", c.degenerate},
                              {"length_parameter", c.total},
                              {"n_vertices", c.pts.size()},
                              {"markers", markers}});
    }
    json out{{"surface", s.name},
             {"params", params_json(s.params)},
             {"role", role_name(cfg.role)},
             {"curves", curves},
             {"n_curves", a.curves.size()},
             {"S_plus", a.s_plus},
             {"S_minus", a.s_minus},
             {"chi_plus", a.regions.chi_plus},
             {"chi_minus", a.regions.chi_minus},
             {"int_kappa_dtau", kap_int},
             {"convention", convention_block()}};
    if (have_kappa) {
        out["kappa_min"] = kap_min;
        out["kappa_max"] = kap_max;
    }

    if (cfg.as_json) {
        emit(cfg, out.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << s.name << " (" << role_name(cfg.role) << "): " << a.curves.size()
           << " singular curve(s), S+=" << a.s_plus << " S-=" << a.s_minus
           << ", chi(M+)=" << a.regions.chi_plus << " chi(M-)=" << a.regions.chi_minus << "\n";
        for (std::size_t i = 0; i < a.curves.size(); ++i) {
            const auto& c = a.curves[i];
            os << "  curve " << i << ": " << (c.closed ? "closed" : "open")
               << (c.degenerate ? ", degenerate circle" : "") << ", " << c.markers.size()
               << " A3 marker(s)\n";
            for (const auto& m : c.markers)
                os << "    A3 at (u,v)=(" << fmt(m.q.u) << ", " << fmt(m.q.v)
                   << ") sign=" << (m.sign > 0 ? "+1" : "-1") << "\n";
        }
        if (have_kappa)
            os << "  kappa in [" << fmt(kap_min) << ", " << fmt(kap_max) << "]\n";
        os << "  int kappa dtau = " << fmt(kap_int) << "\n";
        emit(cfg, os.str());
    }
    return kExitOk;
}

int run_verify(const RunConfig& cfg, const std::string& target) {
    SurfaceDescriptor s = catalog::build(cfg.surface, cfg.params);
    const std::vector<std::string> formulas{"1p", "1m", "2p", "2m"};
    const std::vector<std::string> theorems{"a",  "b",  "c",  "d",      "e",  "g",
                                            "add", "c1", "d1", "quine", "id", "levine",
                                            "infty"};
    std::vector<std::string> targets;
    bool run_all = target == "all";
    if (run_all) {
        targets = formulas;
        targets.insert(targets.end(), theorems.begin(), theorems.end());
    } else {
        targets.push_back(target);
    }

    json reports = json::array();
    bool all_pass = true;
    bool any_ran = false;
    for (const std::string& t : targets) {
        try {
            json rep;
            bool is_formula =
                std::find(formulas.begin(), formulas.end(), t) != formulas.end();
            if (is_formula) {
                Role role = t[0] == '1' ? Role::FirstHom : Role::SecondHom;
                rep = gb_to_json(gb_formula(s, role, t, cfg.nu, cfg.nv));
            } else {
                rep = thm_to_json(verify_theorem(s, t, cfg.nu, cfg.nv));
            }
            any_ran = true;
            if (!rep["pass"].get<bool>()) all_pass = false;
            reports.push_back(rep);
        } catch (const UsageError& e) {
            if (!run_all) throw;
            reports.push_back(json{{"target", t}, {"skipped", e.what()}});
        } catch (const HypothesisError& e) {
            if (!run_all) throw;
            reports.push_back(json{{"target", t}, {"skipped", e.what()}});
        }
    }
    if (!any_ran) throw HypothesisError("no applicable checks for this surface");

    if (cfg.as_json) {
        emit(cfg, reports.dump(2) + "\n");
    } else {
        std::ostringstream os;
        for (const auto& rep : reports) {
            if (rep.contains("skipped")) {
                os << "skip " << rep["target"].get<std::string>() << ": "
                   << rep["skipped"].get<std::string>() << "\n";
                continue;
            }
            std::string id = rep.contains("formula") ? rep["formula"].get<std::string>()
                                                     : rep["theorem"].get<std::string>();
            os << (rep["pass"].get<bool>() ? "PASS " : "FAIL ") << id << ": lhs="
               << fmt(rep["lhs"].get<double>()) << " rhs=" << fmt(rep["rhs"].get<double>())
               << " residual=" << fmt(rep["residual"].get<double>()) << "\n";
        }
        emit(cfg, os.str());
    }
    return all_pass ? kExitOk : kExitAccuracy;
}

int run_export(const RunConfig& cfg, const std::string& what) {
    SurfaceDescriptor s = catalog::build(cfg.surface, cfg.params);
    if (what == "curves") {
        auto curves = trace_singular_curves(s, cfg.role, cfg.nu, cfg.nv, cfg.tol,
                                            cfg.strict_beaks);
        std::ostringstream os;
        os << "curve_id,t,u,v,lambda_prime,kappa,density,speed,class\n";
        for (std::size_t i = 0; i < curves.size(); ++i) {
            auto samples = sample_curve(s, curves[i], 128);
            for (const auto& cs : samples) {
                os << i << "," << fmt(cs.t) << "," << fmt(cs.q.u) << "," << fmt(cs.q.v) << ","
                   << fmt(cs.lambda_prime) << ","
                   << (cs.kappa ? fmt(*cs.kappa) : std::string("nan")) << ","
                   << fmt(cs.density) << "," << fmt(cs.speed) << "," << cs.cls << "\n";
            }
        }
        emit(cfg, os.str());
        return kExitOk;
    }
    if (what == "fields") {
        std::ostringstream os;
        os << "u,v,lambda,lambda_sharp,K,K_ext\n";
        const ParamDomain& d = s.domain;
        for (int i = 0; i < cfg.nu; ++i) {
            for (int j = 0; j < cfg.nv; ++j) {
                Point2 q{d.u_min + (i + 0.5) * d.u_len() / cfg.nu,
                         d.v_min + (j + 0.5) * d.v_len() / cfg.nv};
                if (s.mode == SurfaceMode::Map) {
                    double l = jacobian(s, q, Role::FirstHom);
                    os << fmt(q.u) << "," << fmt(q.v) << "," << fmt(l) << ",nan,nan,nan\n";
                    continue;
                }
                CurvatureSample cs = curvature_sample(s, q);
                os << fmt(q.u) << "," << fmt(q.v) << "," << fmt(cs.lambda) << ","
                   << fmt(cs.lambda_sharp) << "," << (cs.K ? fmt(*cs.K) : std::string("nan"))
                   << "," << (cs.K_ext ? fmt(*cs.K_ext) : std::string("nan")) << "\n";
            }
        }
        emit(cfg, os.str());
        return kExitOk;
    }
    if (what == "regions") {
        RegionSummary r = decompose_regions(s, cfg.role, cfg.nu, cfg.nv);
        json out{{"surface", s.name},        {"params", params_json(s.params)},
                 {"role", role_name(r.role)}, {"chi_plus", r.chi_plus},
                 {"chi_minus", r.chi_minus},  {"faces_plus", r.faces_plus},
                 {"faces_minus", r.faces_minus}, {"faces_mixed", r.faces_mixed}};
        emit(cfg, out.dump(2) + "\n");
        return kExitOk;
    }
    throw UsageError("unknown export kind: " + what);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherent tangent bundles, singular curvature, and the "
                 "Gauss-Bonnet formulas for fronts"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<std::string> raw_params;
    std::string grid = "256x256";
    std::string role_str = "phi";
    std::string target = "all";
    std::string what = "curves";

    auto add_common = [&](CLI::App* sub, bool needs_surface) {
        auto* s = sub->add_option("--surface", cfg.surface, "catalog surface name");
        if (needs_surface) s->required();
        sub->add_option("--param", raw_params, "surface parameter k=v (repeatable)");
        sub->add_option("--role", role_str, "homomorphism: phi | psi");
        sub->add_option("--grid", grid, "trace/region grid, e.g. 256x256");
        sub->add_option("--tol", cfg.tol, "curve refinement tolerance");
        sub->add_flag("--json", cfg.as_json, "machine-readable output");
        sub->add_option("--out", cfg.out_path, "write output to a file");
        sub->add_flag("--strict-beaks", cfg.strict_beaks,
                      "classify beaks only for negative-definite Hessians");
    };

    auto* c_list = app.add_subcommand("list", "print the surface catalog");
    add_common(c_list, false);
    auto* c_analyze = app.add_subcommand("analyze", "trace and classify the singular set");
    add_common(c_analyze, true);
    auto* c_verify = app.add_subcommand("verify", "check Gauss-Bonnet formulas and theorems");
    add_common(c_verify, true);
    c_verify->add_option("--target", target,
                         "1p|1m|2p|2m|a|b|c|d|e|g|add|c1|d1|quine|id|levine|infty|all");
    auto* c_export = app.add_subcommand("export", "emit curves/fields/regions data");
    add_common(c_export, true);
    c_export->add_option("--what", what, "curves | fields | regions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        for (const std::string& p : raw_params) {
            auto eq = p.find('=');
            if (eq == std::string::npos) throw UsageError("bad --param, expected k=v: " + p);
            cfg.params[p.substr(0, eq)] = std::stod(p.substr(eq + 1));
        }
        if (role_str == "phi") cfg.role = Role::FirstHom;
        else if (role_str == "psi") cfg.role = Role::SecondHom;
        else throw UsageError("role must be phi or psi");
        auto x = grid.find('x');
        if (x == std::string::npos) throw UsageError("bad --grid, expected NxM");
        cfg.nu = std::stoi(grid.substr(0, x));
        cfg.nv = std::stoi(grid.substr(x + 1));

        if (*c_list) return run_list(cfg);
        if (*c_analyze) return run_analyze(cfg);
        if (*c_verify) return run_verify(cfg, target);
        if (*c_export) return run_export(cfg, what);
        throw UsageError("no subcommand");
    } catch (const UsageError& e) {
        std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
        return kExitUsage;
    } catch (const HypothesisError& e) {
        std::cerr << json{{"error", "hypothesis"}, {"message", e.what()}}.dump() << "\n";
        return kExitHypothesis;
    } catch (const AccuracyError& e) {
        std::cerr << json{{"error", "accuracy"}, {"message", e.what()}}.dump() << "\n";
        return kExitAccuracy;
    } catch (const IoError& e) {
        std::cerr << json{{"error", "io"}, {"message", e.what()}}.dump() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "accuracy"}, {"message", e.what()}}.dump() << "\n";
        return kExitAccuracy;
    }
}
