#pragma once

#include <string>

#include "reebdbar/solver.hpp"

namespace reebtool {

// One JSON file drives every verb.  All keys are optional; omitted ones
// take the library defaults.  Setting "lambda" without "cutoff" switches
// to the collar geometry that fits that lambda.
//
//   {
//     "lambda": 0.5,
//     "cutoff": {"R": 1.0, "eps": 0.25, "R_out": 1.75},
//     "quad":   {"n_r": 256, "n_theta": 256, "r_max": 4.0},
//     "sweep":  {"n_r": 128, "n_theta": 128},
//     "solver": {"j_max": 5, "series_tol": 1e-6, "k_mode": "direct",
//                "max_terms": 200, "obstruction_tol": 1e-3,
//                "fd_step": 1e-4, "t_window": 1.0, "n_t_samples": 17,
//                "degree_cap": 64},
//     "grid":   {"n_sigma": 4, "n_chi": 8, "n_theta": 5},
//     "form": "2.5*omega0 + 1*exact_g0",
//     "out": "report.json",
//     "csv": "grid.csv"
//   }
struct RunConfig {
    reebdbar::SolveConfig solve;
    std::string form = "omega0";
    std::string out;
    std::string csv;
};

/// Parse a config document.  Unknown keys and mistyped values throw
/// std::invalid_argument naming the offender.
RunConfig parse_run_config(const std::string& json_text);

/// Read and parse `path`; an empty path yields the defaults.
RunConfig load_run_config(const std::string& path);

}  // namespace reebtool
