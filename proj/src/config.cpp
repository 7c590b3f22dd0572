#include "hbnqm/config.hpp"

#include <fstream>

#include "hbnqm/errors.hpp"

namespace hbnqm {

namespace {

void load_constants(const nlohmann::json& j, PhysicalConstants& k) {
    k.c = j.value("c", k.c);
    k.hbar = j.value("hbar", k.hbar);
    k.eps0 = j.value("eps0", k.eps0);
    k.e_charge = j.value("e_charge", k.e_charge);
    k.m_e = j.value("m_e", k.m_e);
    k.ev_to_joule = j.value("ev_to_joule", k.ev_to_joule);
    k.debye_to_coulomb_m = j.value("debye_to_coulomb_m", k.debye_to_coulomb_m);
    k.hc_ev_nm = j.value("hc_ev_nm", k.hc_ev_nm);
}

void load_convention(const nlohmann::json& j, CavityConvention& c) {
    if (j.contains("preset")) {
        const std::string preset = j.at("preset").get<std::string>();
        if (preset == "calibrated") {
            c = CavityConvention::calibrated();
        } else if (preset == "isotropic_medium") {
            c = CavityConvention::isotropic_medium();
        } else {
            throw std::invalid_argument("unknown convention preset \"" + preset + "\"");
        }
    }
    c.mode_volume_factor = j.value("mode_volume_factor", c.mode_volume_factor);
    c.refractive_index = j.value("refractive_index", c.refractive_index);
    c.orientation_factor = j.value("orientation_factor", c.orientation_factor);
    c.medium_permittivity_exponent =
        j.value("medium_permittivity_exponent", c.medium_permittivity_exponent);
    if (j.contains("mode_volume_factor") || j.contains("orientation_factor") ||
        j.contains("medium_permittivity_exponent") || j.contains("refractive_index")) {
        c.name = j.value("name", "custom");
    }
}

} // namespace

RunConfig RunConfig::from_json(const nlohmann::json& doc) {
    RunConfig cfg;
    if (doc.contains("constants")) load_constants(doc.at("constants"), cfg.constants);
    if (doc.contains("convention")) load_convention(doc.at("convention"), cfg.convention);
    if (doc.contains("window")) {
        cfg.window.p_g = doc.at("window").value("p_g", cfg.window.p_g);
        cfg.window.p_s = doc.at("window").value("p_s", cfg.window.p_s);
    }
    if (doc.contains("integration")) {
        cfg.rel_tol = doc.at("integration").value("rel_tol", cfg.rel_tol);
        cfg.abs_tol = doc.at("integration").value("abs_tol", cfg.abs_tol);
    }
    if (doc.contains("kappa_hat")) {
        if (doc.at("kappa_hat").is_string()) {
            if (doc.at("kappa_hat").get<std::string>() != "recompute") {
                throw std::invalid_argument("kappa_hat must be a number or \"recompute\"");
            }
            cfg.recompute_kappa_hat = true;
        } else {
            cfg.universal.kappa_hat = doc.at("kappa_hat").get<double>();
            cfg.universal.source = "configured";
        }
    }
    if (doc.contains("sigma_delta")) {
        if (doc.at("sigma_delta").is_string()) {
            if (doc.at("sigma_delta").get<std::string>() != "recompute") {
                throw std::invalid_argument("sigma_delta must be a number or \"recompute\"");
            }
            cfg.recompute_sigma_delta = true;
        } else {
            cfg.universal.sigma_delta = doc.at("sigma_delta").get<double>();
            cfg.universal.source = "configured";
        }
    }
    cfg.output_dir = doc.value("output_dir", cfg.output_dir);
    cfg.format = doc.value("format", cfg.format);
    if (cfg.format != "csv" && cfg.format != "json") {
        throw std::invalid_argument("format must be \"csv\" or \"json\"");
    }
    cfg.jobs = doc.value("jobs", cfg.jobs);
    cfg.timestamp = doc.value("timestamp", cfg.timestamp);
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& err) {
        throw IoError("invalid JSON in " + path + ": " + err.what());
    }
    return from_json(doc);
}

nlohmann::ordered_json RunConfig::echo() const {
    nlohmann::ordered_json j;
    j["constants"] = {{"c", constants.c},
                      {"hbar", constants.hbar},
                      {"eps0", constants.eps0},
                      {"e_charge", constants.e_charge},
                      {"m_e", constants.m_e},
                      {"ev_to_joule", constants.ev_to_joule},
                      {"debye_to_coulomb_m", constants.debye_to_coulomb_m},
                      {"hc_ev_nm", constants.hc_ev_nm}};
    j["convention"] = {{"name", convention.name},
                       {"mode_volume_factor", convention.mode_volume_factor},
                       {"refractive_index", convention.refractive_index},
                       {"orientation_factor", convention.orientation_factor},
                       {"medium_permittivity_exponent", convention.medium_permittivity_exponent}};
    j["window"] = {{"p_g", window.p_g}, {"p_s", window.p_s}};
    j["integration"] = {{"rel_tol", rel_tol}, {"abs_tol", abs_tol}};
    j["kappa_hat"] = universal.kappa_hat;
    j["sigma_delta"] = universal.sigma_delta;
    j["universal_constants_source"] = universal.source;
    j["output_dir"] = output_dir;
    j["format"] = format;
    j["jobs"] = jobs;
    j["timestamp"] = timestamp;
    return j;
}

} // namespace hbnqm
