#include "run_config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace reebtool {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) {
    throw std::invalid_argument("config: " + what);
}

void check_keys(const json& node, const char* where,
                std::initializer_list<const char*> allowed) {
    for (auto it = node.begin(); it != node.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) known = true;
        if (!known) {
            std::ostringstream msg;
            msg << "unknown key \"" << it.key() << "\" in " << where
                << "; allowed:";
            for (const char* k : allowed) msg << ' ' << k;
            bad(msg.str());
        }
    }
}

double get_number(const json& node, const char* name) {
    if (!node.is_number()) bad(std::string(name) + " must be a number");
    return node.get<double>();
}

int get_int(const json& node, const char* name) {
    if (!node.is_number_integer()) bad(std::string(name) + " must be an integer");
    return node.get<int>();
}

std::string get_string(const json& node, const char* name) {
    if (!node.is_string()) bad(std::string(name) + " must be a string");
    return node.get<std::string>();
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        bad(std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) bad("top level must be an object");
    check_keys(doc, "the top level",
               {"lambda", "cutoff", "quad", "sweep", "solver", "grid", "form",
                "out", "csv"});

    RunConfig rc;

    if (doc.contains("lambda")) {
        rc.solve.params.lambda = get_number(doc["lambda"], "lambda");
        rc.solve.params.validate();
        rc.solve.family = reebdbar::default_family(rc.solve.params.lambda);
    }

    if (doc.contains("cutoff")) {
        const json& c = doc["cutoff"];
        if (!c.is_object()) bad("cutoff must be an object");
        check_keys(c, "cutoff", {"R", "eps", "R_out"});
        if (c.contains("R")) rc.solve.family.R = get_number(c["R"], "cutoff.R");
        if (c.contains("eps"))
            rc.solve.family.eps = get_number(c["eps"], "cutoff.eps");
        if (c.contains("R_out"))
            rc.solve.family.R_out = get_number(c["R_out"], "cutoff.R_out");
        rc.solve.family.lambda = rc.solve.params.lambda;
        rc.solve.family.validate();
    }

    if (doc.contains("quad")) {
        const json& q = doc["quad"];
        if (!q.is_object()) bad("quad must be an object");
        check_keys(q, "quad", {"n_r", "n_theta", "r_max"});
        if (q.contains("n_r")) rc.solve.quad.n_r = get_int(q["n_r"], "quad.n_r");
        if (q.contains("n_theta"))
            rc.solve.quad.n_theta = get_int(q["n_theta"], "quad.n_theta");
        if (q.contains("r_max"))
            rc.solve.quad.r_max = get_number(q["r_max"], "quad.r_max");
        rc.solve.quad.validate();
    }

    if (doc.contains("sweep")) {
        const json& s = doc["sweep"];
        if (!s.is_object()) bad("sweep must be an object");
        check_keys(s, "sweep", {"n_r", "n_theta"});
        if (s.contains("n_r"))
            rc.solve.sweep_n_r = get_int(s["n_r"], "sweep.n_r");
        if (s.contains("n_theta"))
            rc.solve.sweep_n_theta = get_int(s["n_theta"], "sweep.n_theta");
    }

    if (doc.contains("solver")) {
        const json& s = doc["solver"];
        if (!s.is_object()) bad("solver must be an object");
        check_keys(s, "solver",
                   {"j_max", "series_tol", "k_mode", "max_terms",
                    "obstruction_tol", "fd_step", "t_window", "n_t_samples",
                    "degree_cap"});
        if (s.contains("j_max"))
            rc.solve.j_max = get_int(s["j_max"], "solver.j_max");
        if (s.contains("series_tol"))
            rc.solve.series_tol = get_number(s["series_tol"], "solver.series_tol");
        if (s.contains("k_mode")) {
            std::string m = get_string(s["k_mode"], "solver.k_mode");
            if (m == "direct")
                rc.solve.k_mode = reebdbar::KMode::direct;
            else if (m == "polyseries")
                rc.solve.k_mode = reebdbar::KMode::polyseries;
            else
                bad("solver.k_mode must be \"direct\" or \"polyseries\"");
        }
        if (s.contains("max_terms"))
            rc.solve.series.max_terms = get_int(s["max_terms"], "solver.max_terms");
        if (s.contains("obstruction_tol"))
            rc.solve.series.obstruction_tol =
                get_number(s["obstruction_tol"], "solver.obstruction_tol");
        if (s.contains("fd_step"))
            rc.solve.fd_step = get_number(s["fd_step"], "solver.fd_step");
        if (s.contains("t_window"))
            rc.solve.t_window = get_number(s["t_window"], "solver.t_window");
        if (s.contains("n_t_samples"))
            rc.solve.n_t_samples = get_int(s["n_t_samples"], "solver.n_t_samples");
        if (s.contains("degree_cap")) {
            int cap = get_int(s["degree_cap"], "solver.degree_cap");
            rc.solve.runge.degree_cap = cap;
            // Keep the dependent windows ahead of the cap so a raised cap
            // stays a one-key change.
            rc.solve.runge.tail_terms = std::max(rc.solve.runge.tail_terms,
                                                 cap + 32);
            rc.solve.shell_terms = std::max(rc.solve.shell_terms, cap + 64);
        }
    }

    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        if (!g.is_object()) bad("grid must be an object");
        check_keys(g, "grid", {"n_sigma", "n_chi", "n_theta"});
        if (g.contains("n_sigma"))
            rc.solve.residual_grid.n_sigma = get_int(g["n_sigma"], "grid.n_sigma");
        if (g.contains("n_chi"))
            rc.solve.residual_grid.n_chi = get_int(g["n_chi"], "grid.n_chi");
        if (g.contains("n_theta"))
            rc.solve.residual_grid.n_theta = get_int(g["n_theta"], "grid.n_theta");
    }

    if (doc.contains("form")) rc.form = get_string(doc["form"], "form");
    if (doc.contains("out")) rc.out = get_string(doc["out"], "out");
    if (doc.contains("csv")) rc.csv = get_string(doc["csv"], "csv");

    rc.solve.validate();
    return rc;
}

RunConfig load_run_config(const std::string& path) {
    if (path.empty()) {
        RunConfig rc;
        rc.solve.validate();
        return rc;
    }
    std::ifstream in(path);
    if (!in) bad("cannot read config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str());
}

}  // namespace reebtool
