#pragma once

#include <string>

#include <json.hpp>

#include "hbnqm/constants.hpp"
#include "hbnqm/fom.hpp"
#include "hbnqm/lambda_model.hpp"

namespace hbnqm {

/// Resolved run configuration: physics constants, cavity convention, window
/// policy, integration tolerances and the universal constants (cached
/// values or a request to recompute them). Parsed from a single JSON file,
/// then overridden by CLI flags; the fully resolved form is echoed into
/// every output artifact so runs are reproducible from their outputs.
struct RunConfig {
    PhysicalConstants constants;
    CavityConvention convention;
    WindowPolicy window;
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    UniversalConstants universal;
    bool recompute_kappa_hat = false;
    bool recompute_sigma_delta = false;
    std::string output_dir = ".";
    std::string format = "csv"; // csv | json (tabular outputs; reports always get JSON too)
    unsigned jobs = 0;
    bool timestamp = true;

    static RunConfig from_json(const nlohmann::json& doc);
    static RunConfig from_file(const std::string& path); // IoError on unreadable

    /// Fully resolved echo, embedded into artifacts.
    nlohmann::ordered_json echo() const;
};

} // namespace hbnqm
