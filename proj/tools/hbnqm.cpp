// Command-line frontend: simulations, universal-constant extraction,
// figure-of-merit batches, database matching/screening, combined reports.
//
// Exit codes: 0 success, 2 usage/validation, 3 numerical failure, 4 I/O.

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "hbnqm/config.hpp"
#include "hbnqm/csv.hpp"
#include "hbnqm/defectdb.hpp"
#include "hbnqm/dynamics.hpp"
#include "hbnqm/errors.hpp"
#include "hbnqm/kernels.hpp"
#include "hbnqm/sha256.hpp"
#include "hbnqm/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace hbnqm;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&tt));
    return buf;
}

/// Common state threaded through every subcommand.
struct Session {
    RunConfig cfg;
    std::map<std::string, std::string> input_digests;

    void record_input(const std::string& path) { input_digests[path] = sha256_file(path); }

    ordered_json meta() const {
        ordered_json m;
        m["tool"] = std::string(kToolName) + " " + kVersion;
        if (cfg.timestamp) m["generated_at"] = iso_timestamp();
        m["config"] = cfg.echo();
        ordered_json inputs = ordered_json::object();
        for (const auto& [path, digest] : input_digests) inputs[path] = "sha256:" + digest;
        m["inputs"] = inputs;
        return m;
    }

    void write_meta_lines(csv::Writer& w) const {
        w.meta("tool", std::string(kToolName) + " " + kVersion);
        if (cfg.timestamp) w.meta("generated_at", iso_timestamp());
        w.meta("config", cfg.echo().dump());
        for (const auto& [path, digest] : input_digests) {
            w.meta("input", path + " sha256:" + digest);
        }
    }

    bool want_csv() const { return cfg.format == "csv"; }

    std::ofstream open_out(const std::string& path) const {
        const fs::path parent = fs::path(path).parent_path();
        if (!parent.empty()) fs::create_directories(parent);
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open output file: " + path);
        return out;
    }

    void write_json(const std::string& path, const ordered_json& doc) const {
        auto out = open_out(path);
        out << doc.dump(2) << "\n";
        std::cout << "wrote " << path << "\n";
    }
};

std::string out_path(const Session& s, const std::string& name) {
    return (fs::path(s.cfg.output_dir) / name).string();
}

UniversalConstants resolve_universal(const Session& s) {
    UniversalConstants uc = s.cfg.universal;
    if (s.cfg.recompute_kappa_hat) {
        const auto result = find_kappa_max(PulseProfile(10.0, 2.0), 1.0, 0.5, s.cfg.window);
        uc.kappa_hat = result.kappa_max;
        uc.source = "recomputed";
    }
    if (s.cfg.recompute_sigma_delta) {
        LambdaSystemSpec spec;
        spec.g = 1.0;
        spec.pulse = PulseProfile(10.0, 2.0);
        spec.kappa = uc.kappa_hat;
        const TimeWindow w = window_times(spec.pulse, spec.g, s.cfg.window);
        IntegrationConfig icfg;
        icfg.t_start = w.t_start;
        icfg.t_end = w.t_end;
        icfg.rel_tol = s.cfg.rel_tol;
        icfg.abs_tol = s.cfg.abs_tol;
        DetuningSweepConfig sweep;
        sweep.jobs = s.cfg.jobs;
        uc.sigma_delta = detuning_hwhm(spec, icfg, sweep).derived;
        uc.source = "recomputed";
    }
    return uc;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(Session& s, double omega0, double T, double g, double kappa, double delta,
                 double delta2, std::size_t samples, const std::string& out_prefix) {
    LambdaSystemSpec spec;
    spec.g = g;
    spec.pulse = PulseProfile(omega0, T);
    spec.kappa = kappa;
    spec.delta_one = delta;
    spec.delta_two = delta2;

    // The policy window needs a finite coupling; a decoupled run borrows
    // the unit-coupling window so the g = 0 diagnostic case still works.
    const double window_g = g > 0.0 ? g : 1.0;
    const TimeWindow w = window_times(spec.pulse, window_g, s.cfg.window);

    IntegrationConfig cfg;
    cfg.t_start = w.t_start;
    cfg.t_end = w.t_end;
    cfg.rel_tol = s.cfg.rel_tol;
    cfg.abs_tol = s.cfg.abs_tol;
    cfg.sample_count = samples;

    const HilbertSpace space(1);
    const DensityMatrix rho0 =
        DensityMatrix::from_pure(StateVector::basis_state(space, Level::g, 1));
    const Trajectory traj = evolve(rho0, spec, cfg);
    const double efficiency =
        traj.final_state()(space.index(Level::s, 0), space.index(Level::s, 0)).real();

    if (s.want_csv()) {
        const std::string csv_path = out_prefix + "_trajectory.csv";
        auto out = s.open_out(csv_path);
        csv::Writer w_csv(out);
        s.write_meta_lines(w_csv);
        std::vector<std::string> header{"t"};
        for (const std::string& label : space.basis_labels()) header.push_back("p_" + label);
        w_csv.header(header);
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            std::vector<std::string> row{csv::format(traj.times[k])};
            for (std::size_t b = 0; b < space.dim(); ++b)
                row.push_back(csv::format(traj.states[k](b, b).real()));
            w_csv.row(row);
        }
        std::cout << "wrote " << csv_path << "\n";
    }

    ordered_json summary;
    summary["meta"] = s.meta();
    summary["model"] = {{"omega0", omega0}, {"T", T},        {"g", g},
                        {"kappa", kappa},   {"delta", delta}, {"delta_two", delta2}};
    summary["window"] = {{"t_start", w.t_start},
                         {"t_end", w.t_end},
                         {"p_g", s.cfg.window.p_g},
                         {"p_s", s.cfg.window.p_s}};
    summary["writing_efficiency"] = efficiency;
    summary["samples"] = traj.times.size();
    if (!s.want_csv()) { // keep the tabular data in the JSON artifact instead
        ordered_json populations = ordered_json::object();
        const auto labels = space.basis_labels();
        for (std::size_t b = 0; b < space.dim(); ++b) {
            ordered_json series = ordered_json::array();
            for (const ComplexMatrix& state : traj.states) series.push_back(state(b, b).real());
            populations["p_" + labels[b]] = series;
        }
        summary["trajectory"] = {{"t", traj.times}, {"populations", populations}};
    }
    s.write_json(out_prefix + "_summary.json", summary);

    std::cout << "writing efficiency: " << efficiency << "\n";
    return 0;
}

// ------------------------------------------------------------------- kappa

int cmd_kappa(Session& s, double omega0, double T, double g, double threshold, double p0) {
    const PulseProfile pulse(omega0, T);
    const KappaMaxResult main_result = find_kappa_max(pulse, g, threshold, s.cfg.window, p0);

    ordered_json report;
    report["meta"] = s.meta();
    report["model"] = {{"omega0", omega0}, {"T", T}, {"g", g}};
    report["survival_threshold"] = threshold;
    report["p0"] = p0;
    report["window_policy"] = {{"p_g", s.cfg.window.p_g}, {"p_s", s.cfg.window.p_s}};
    report["window"] = {{"t_start", main_result.window.t_start},
                        {"t_end", main_result.window.t_end}};
    report["kappa_max"] = main_result.kappa_max;

    // Sensitivity of the extracted rate to the window policy; the start
    // fraction dominates because the pre-transfer plateau sets the exposure.
    ordered_json table = ordered_json::array();
    for (double p_g : {0.99, 0.999, 0.9995, 0.9999}) {
        for (double p_s : {0.95, 0.999}) {
            const WindowPolicy policy{p_g, p_s};
            const KappaMaxResult r = find_kappa_max(pulse, g, threshold, policy, p0);
            table.push_back({{"p_g", p_g},
                             {"p_s", p_s},
                             {"t_start", r.window.t_start},
                             {"t_end", r.window.t_end},
                             {"kappa_max", r.kappa_max}});
        }
    }
    report["window_policy_sensitivity"] = table;

    s.write_json(out_path(s, "kappa_report.json"), report);
    std::cout << "kappa_max = " << main_result.kappa_max << " (units of g_c)\n";
    return 0;
}

// --------------------------------------------------------------- bandwidth

int cmd_bandwidth(Session& s, double omega0, double T, double g, double kappa,
                  double grid_max, double grid_step) {
    LambdaSystemSpec spec;
    spec.g = g;
    spec.pulse = PulseProfile(omega0, T);
    spec.kappa = kappa;

    const TimeWindow w = window_times(spec.pulse, g, s.cfg.window);
    IntegrationConfig cfg;
    cfg.t_start = w.t_start;
    cfg.t_end = w.t_end;
    cfg.rel_tol = s.cfg.rel_tol;
    cfg.abs_tol = s.cfg.abs_tol;

    DetuningSweepConfig sweep;
    sweep.delta_max = grid_max;
    sweep.delta_step = grid_step;
    sweep.both_signs = true;
    sweep.jobs = s.cfg.jobs;
    const SweepResult result = detuning_hwhm(spec, cfg, sweep);

    if (s.want_csv()) {
        const std::string csv_path = out_path(s, "detuning_sweep.csv");
        auto out = s.open_out(csv_path);
        csv::Writer w_csv(out);
        s.write_meta_lines(w_csv);
        w_csv.header({"delta", "efficiency"});
        for (std::size_t i = 0; i < result.parameter.size(); ++i)
            w_csv.row({csv::format(result.parameter[i]), csv::format(result.efficiency[i])});
        std::cout << "wrote " << csv_path << "\n";
    }

    ordered_json report;
    report["meta"] = s.meta();
    report["model"] = {{"omega0", omega0}, {"T", T}, {"g", g}, {"kappa", kappa}};
    report["window"] = {{"t_start", w.t_start}, {"t_end", w.t_end}};
    report["grid"] = {{"delta_max", grid_max}, {"delta_step", grid_step}};
    report["sigma_delta"] = result.derived;
    report["extraction"] = result.convention;
    if (!s.want_csv()) {
        report["sweep"] = {{"delta", result.parameter}, {"efficiency", result.efficiency}};
    }
    s.write_json(out_path(s, "bandwidth_report.json"), report);

    std::cout << "sigma_delta = " << result.derived << " (units of g_c)\n";
    return 0;
}

// --------------------------------------------------------- database common

IngestResult load_db(Session& s, const std::string& path) {
    const IngestResult result = ingest_file(path);
    s.record_input(path);
    for (const Diagnostic& d : result.diagnostics) {
        std::cerr << path << ":" << d.line << ": " << d.message << "\n";
    }
    return result;
}

ordered_json report_to_json(const EvaluatedRecord& entry) {
    ordered_json j;
    j["defect"] = entry.record.label.str();
    j["transition_spin"] = to_string(entry.record.spin);
    j["zpl_nm"] = entry.record.zpl_nm;
    j["source"] = entry.record.source;
    if (!entry.error.empty()) {
        j["error"] = entry.error;
        return j;
    }
    const FigureOfMeritReport& rep = *entry.report;
    j["energy_ev"] = rep.energy_ev;
    j["omega_rad_s"] = rep.omega_rad_s;
    j["mu_debye"] = rep.mu_debye;
    j["mu_source"] = rep.mu_source;
    j["gamma_r_per_s"] = rep.gamma_r_per_s;
    j["tau_ns"] = std::isfinite(rep.tau_ns) ? ordered_json(rep.tau_ns) : ordered_json("inf");
    j["g_c_rad_s"] = rep.g_c_rad_s;
    j["kappa_rad_s"] = rep.kappa_rad_s;
    j["kappa_hat"] = rep.constants.kappa_hat;
    j["sigma_delta"] = rep.constants.sigma_delta;
    j["quality_factor"] =
        std::isfinite(rep.quality) ? ordered_json(rep.quality) : ordered_json("inf");
    j["bandwidth_ghz"] = rep.bandwidth;
    j["flags"] = rep.flags;
    return j;
}

std::vector<std::string> fom_csv_header() {
    return {"defect",         "transition_spin", "zpl_nm",    "energy_ev",   "mu_debye",
            "mu_source",      "gamma_r_per_s",   "tau_ns",    "g_c_rad_s",   "kappa_rad_s",
            "quality_factor", "bandwidth_ghz",   "flags",     "error"};
}

std::vector<std::string> fom_csv_row(const EvaluatedRecord& entry) {
    std::vector<std::string> row;
    row.push_back(entry.record.label.str());
    row.push_back(to_string(entry.record.spin));
    row.push_back(csv::format(entry.record.zpl_nm));
    if (!entry.error.empty()) {
        row.insert(row.end(), 10, "");
        row.push_back(entry.error);
        return row;
    }
    const FigureOfMeritReport& rep = *entry.report;
    row.push_back(csv::format(rep.energy_ev));
    row.push_back(csv::format(rep.mu_debye));
    row.push_back(rep.mu_source);
    row.push_back(csv::format(rep.gamma_r_per_s));
    row.push_back(csv::format(rep.tau_ns));
    row.push_back(csv::format(rep.g_c_rad_s));
    row.push_back(csv::format(rep.kappa_rad_s));
    row.push_back(csv::format(rep.quality));
    row.push_back(csv::format(rep.bandwidth));
    std::string flags;
    for (const std::string& f : rep.flags) flags += (flags.empty() ? "" : ";") + f;
    row.push_back(flags);
    row.push_back("");
    return row;
}

// --------------------------------------------------------------------- fom

int cmd_fom(Session& s, const std::string& db_path) {
    const IngestResult db = load_db(s, db_path);
    const UniversalConstants uc = resolve_universal(s);
    const auto evaluated =
        evaluate_records(db.records, s.cfg.convention, uc, s.cfg.constants, s.cfg.jobs);

    if (s.want_csv()) {
        const std::string csv_path = out_path(s, "fom_report.csv");
        auto out = s.open_out(csv_path);
        csv::Writer w(out);
        s.write_meta_lines(w);
        w.meta("kappa_hat", csv::format(uc.kappa_hat) + " (" + uc.source + ")");
        w.meta("sigma_delta", csv::format(uc.sigma_delta) + " (" + uc.source + ")");
        w.meta("convention", s.cfg.convention.name);
        w.header(fom_csv_header());
        for (const auto& entry : evaluated) w.row(fom_csv_row(entry));
        std::cout << "wrote " << csv_path << "\n";
    }

    ordered_json doc;
    doc["meta"] = s.meta();
    doc["kappa_hat"] = uc.kappa_hat;
    doc["sigma_delta"] = uc.sigma_delta;
    doc["universal_constants_source"] = uc.source;
    ordered_json rows = ordered_json::array();
    for (const auto& entry : evaluated) rows.push_back(report_to_json(entry));
    doc["reports"] = rows;
    s.write_json(out_path(s, "fom_report.json"), doc);
    return 0;
}

// ------------------------------------------------------------------ ingest

int cmd_ingest(Session& s, const std::string& db_path, const std::string& out_json) {
    const IngestResult db = load_db(s, db_path);
    std::cout << db.records.size() << " records, " << db.diagnostics.size()
              << " diagnostics\n";
    if (!out_json.empty()) {
        ordered_json doc;
        doc["meta"] = s.meta();
        ordered_json records = ordered_json::array();
        for (const DefectRecord& rec : db.records) {
            ordered_json r;
            r["host"] = rec.host;
            r["defect_label"] = rec.label.str();
            r["spin_multiplicity"] = to_string(rec.multiplicity);
            r["transition_spin"] = to_string(rec.spin);
            r["zpl_nm"] = rec.zpl_nm;
            if (rec.dipole) {
                r["mu_x_debye"] = rec.dipole->mu_x;
                r["mu_y_debye"] = rec.dipole->mu_y;
                r["mu_z_debye"] = rec.dipole->mu_z;
                r["in_plane"] = rec.dipole->in_plane();
            }
            if (rec.lifetime_ns) r["lifetime_ns"] = *rec.lifetime_ns;
            r["source"] = rec.source;
            records.push_back(r);
        }
        doc["records"] = records;
        ordered_json diags = ordered_json::array();
        for (const Diagnostic& d : db.diagnostics)
            diags.push_back({{"line", d.line}, {"message", d.message}});
        doc["diagnostics"] = diags;
        s.write_json(out_json, doc);
    }
    return 0;
}

// ------------------------------------------------------------------- match

int cmd_match(Session& s, const std::string& db_path, const std::string& targets_path,
              double tol) {
    const IngestResult db = load_db(s, db_path);
    const auto targets = load_targets(targets_path);
    s.record_input(targets_path);
    const auto matches = match_zpl(db.records, targets, tol);

    std::map<std::string, double> target_wavelengths;
    for (const TargetSystem& t : targets) target_wavelengths[t.name] = t.wavelength_nm;

    if (s.want_csv()) {
        const std::string csv_path = out_path(s, "matches.csv");
        auto out = s.open_out(csv_path);
        csv::Writer w(out);
        s.write_meta_lines(w);
        w.meta("tolerance_nm", csv::format(tol));
        w.header({"defect", "transition_spin", "target", "target_wavelength_nm", "zpl_nm",
                  "detuning_nm"});
        for (const MatchResult& m : matches) {
            const double target_nm = target_wavelengths.at(m.target);
            w.row({m.defect, m.transition_spin, m.target, csv::format(target_nm),
                   csv::format(target_nm + m.detuning_nm), csv::format(m.detuning_nm)});
        }
        std::cout << "wrote " << csv_path << "\n";
    }

    ordered_json doc;
    doc["meta"] = s.meta();
    doc["tolerance_nm"] = tol;
    ordered_json rows = ordered_json::array();
    for (const MatchResult& m : matches) {
        rows.push_back({{"defect", m.defect},
                        {"transition_spin", m.transition_spin},
                        {"target", m.target},
                        {"detuning_nm", m.detuning_nm}});
    }
    doc["matches"] = rows;
    s.write_json(out_path(s, "matches.json"), doc);
    std::cout << matches.size() << " matches at +-" << tol << " nm\n";
    return 0;
}

// ------------------------------------------------------------------ screen

int cmd_screen(Session& s, const std::string& db_path, double q_max, bool strict) {
    const IngestResult db = load_db(s, db_path);
    const UniversalConstants uc = resolve_universal(s);
    const auto evaluated =
        evaluate_records(db.records, s.cfg.convention, uc, s.cfg.constants, s.cfg.jobs);
    ScreenOptions opts;
    opts.q_max = q_max;
    opts.comparison = strict ? QualityComparison::strict : QualityComparison::magnitude;
    const ScreenResult result = screen(evaluated, opts);

    ordered_json doc;
    doc["meta"] = s.meta();
    doc["q_max"] = q_max;
    doc["comparison"] = strict ? "strict" : "magnitude";
    ordered_json candidates = ordered_json::array();
    for (std::size_t idx : result.candidates) {
        candidates.push_back({{"defect", evaluated[idx].record.label.str()},
                              {"transition_spin", to_string(evaluated[idx].record.spin)},
                              {"quality_factor", evaluated[idx].report->quality}});
    }
    ordered_json rejected = ordered_json::array();
    for (const Rejection& r : result.rejected) {
        ordered_json entry = {{"defect", evaluated[r.index].record.label.str()},
                              {"transition_spin", to_string(evaluated[r.index].record.spin)},
                              {"reason", r.reason}};
        if (evaluated[r.index].report) {
            const double q = evaluated[r.index].report->quality;
            entry["quality_factor"] = std::isfinite(q) ? ordered_json(q) : ordered_json("inf");
        }
        rejected.push_back(entry);
    }
    doc["candidates"] = candidates;
    doc["rejected"] = rejected;
    s.write_json(out_path(s, "screen_report.json"), doc);

    std::cout << result.candidates.size() << " candidates, " << result.rejected.size()
              << " rejected\n";
    return 0;
}

// ------------------------------------------------------------------ report

int cmd_report(Session& s, const std::string& db_path, const std::string& targets_path,
               double tol, double q_max, bool strict) {
    const IngestResult db = load_db(s, db_path);
    const auto targets = load_targets(targets_path);
    s.record_input(targets_path);
    const UniversalConstants uc = resolve_universal(s);
    const auto evaluated =
        evaluate_records(db.records, s.cfg.convention, uc, s.cfg.constants, s.cfg.jobs);
    const auto matches = match_zpl(db.records, targets, tol);
    ScreenOptions opts;
    opts.q_max = q_max;
    opts.comparison = strict ? QualityComparison::strict : QualityComparison::magnitude;
    const ScreenResult screened = screen(evaluated, opts);

    std::map<std::string, std::string> matched_targets; // defect|spin -> "a;b"
    for (const MatchResult& m : matches) {
        std::string& list = matched_targets[m.defect + "|" + m.transition_spin];
        list += (list.empty() ? "" : ";") + m.target;
    }
    std::map<std::size_t, std::string> rejection_reason;
    for (const Rejection& r : screened.rejected) rejection_reason[r.index] = r.reason;

    if (s.want_csv()) {
        const std::string csv_path = out_path(s, "report.csv");
        auto out = s.open_out(csv_path);
        csv::Writer w(out);
        s.write_meta_lines(w);
        w.meta("kappa_hat", csv::format(uc.kappa_hat) + " (" + uc.source + ")");
        w.meta("sigma_delta", csv::format(uc.sigma_delta) + " (" + uc.source + ")");
        w.meta("tolerance_nm", csv::format(tol));
        w.meta("q_max", csv::format(q_max));
        auto header = fom_csv_header();
        header.push_back("matched_targets");
        header.push_back("screening");
        w.header(header);
        for (std::size_t i = 0; i < evaluated.size(); ++i) {
            auto row = fom_csv_row(evaluated[i]);
            const std::string key =
                evaluated[i].record.label.str() + "|" + to_string(evaluated[i].record.spin);
            row.push_back(matched_targets.count(key) ? matched_targets.at(key) : "");
            row.push_back(rejection_reason.count(i) ? "rejected:" + rejection_reason.at(i)
                                                    : "candidate");
            w.row(row);
        }
        std::cout << "wrote " << csv_path << "\n";
    }

    ordered_json doc;
    doc["meta"] = s.meta();
    doc["kappa_hat"] = uc.kappa_hat;
    doc["sigma_delta"] = uc.sigma_delta;
    doc["universal_constants_source"] = uc.source;
    doc["tolerance_nm"] = tol;
    doc["q_max"] = q_max;
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < evaluated.size(); ++i) {
        ordered_json row = report_to_json(evaluated[i]);
        ordered_json matched = ordered_json::array();
        for (const MatchResult& m : matches) {
            if (m.defect == evaluated[i].record.label.str() &&
                m.transition_spin == to_string(evaluated[i].record.spin)) {
                matched.push_back({{"target", m.target}, {"detuning_nm", m.detuning_nm}});
            }
        }
        row["matched_targets"] = matched;
        row["screening"] =
            rejection_reason.count(i) ? "rejected:" + rejection_reason.at(i) : "candidate";
        rows.push_back(row);
    }
    doc["defects"] = rows;
    s.write_json(out_path(s, "report.json"), doc);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lambda-system quantum memory model and hBN defect screening"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    std::string config_path;
    std::string out_dir = ".";
    std::string format;
    std::string kernels_name;
    unsigned jobs = 0;
    bool no_timestamp = false;
    app.add_option("--config", config_path, "JSON run configuration file");
    app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    app.add_option("--format", format, "tabular output format (csv|json)");
    app.add_option("--jobs", jobs, "worker threads for sweeps and batches (0 = hardware)");
    app.add_flag("--no-timestamp", no_timestamp, "omit timestamps for byte-stable outputs");
    app.add_option("--kernels", kernels_name, "force a kernel backend (scalar|avx2|neon)");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "integrate the master equation once");
    double omega0 = 10.0, T = 2.0, g = 1.0, kappa = 0.0, delta = 0.0, delta2 = 0.0;
    std::size_t samples = 400;
    std::string sim_out = "simulate";
    simulate->add_option("--omega0", omega0, "peak Rabi frequency (g_c)")
        ->check(CLI::PositiveNumber)->capture_default_str();
    simulate->add_option("--T", T, "pulse characteristic time (1/g_c)")
        ->check(CLI::PositiveNumber)->capture_default_str();
    simulate->add_option("--g", g, "signal coupling (g_c)")
        ->check(CLI::NonNegativeNumber)->capture_default_str();
    simulate->add_option("--kappa", kappa, "cavity loss rate (g_c)")
        ->check(CLI::NonNegativeNumber)->capture_default_str();
    simulate->add_option("--delta", delta, "one-photon detuning (g_c)")->capture_default_str();
    simulate->add_option("--delta2", delta2, "two-photon detuning (g_c)")
        ->capture_default_str();
    simulate->add_option("--samples", samples, "trajectory samples")->capture_default_str();
    simulate->add_option("--out", sim_out, "output prefix under --out-dir")
        ->capture_default_str();

    // kappa
    auto* kappa_cmd = app.add_subcommand("kappa", "maximum tolerable cavity decay rate");
    double k_omega0 = 10.0, k_T = 2.0, k_g = 1.0, threshold = 0.5, p0 = 0.999;
    kappa_cmd->add_option("--omega0", k_omega0, "peak Rabi frequency (g_c)")
        ->check(CLI::PositiveNumber)->capture_default_str();
    kappa_cmd->add_option("--T", k_T, "pulse characteristic time (1/g_c)")
        ->check(CLI::PositiveNumber)->capture_default_str();
    kappa_cmd->add_option("--g", k_g, "signal coupling (g_c)")
        ->check(CLI::PositiveNumber)->capture_default_str();
    kappa_cmd->add_option("--threshold", threshold, "dark-state survival threshold")
        ->check(CLI::Range(1e-12, 1.0 - 1e-12))->capture_default_str();
    kappa_cmd->add_option("--p0", p0, "initial dark-state population")
        ->check(CLI::Range(1e-12, 1.0))->capture_default_str();

    // bandwidth
    auto* bandwidth = app.add_subcommand("bandwidth", "detuning half width of the efficiency");
    double b_omega0 = 10.0, b_T = 2.0, b_g = 1.0, b_kappa = 0.06;
    double grid_max = 12.0, grid_step = 0.1;
    bandwidth->add_option("--omega0", b_omega0, "peak Rabi frequency (g_c)")
        ->check(CLI::PositiveNumber)->capture_default_str();
    bandwidth->add_option("--T", b_T, "pulse characteristic time (1/g_c)")
        ->check(CLI::PositiveNumber)->capture_default_str();
    bandwidth->add_option("--g", b_g, "signal coupling (g_c)")
        ->check(CLI::PositiveNumber)->capture_default_str();
    bandwidth->add_option("--kappa", b_kappa, "cavity loss rate (g_c)")
        ->check(CLI::NonNegativeNumber)->capture_default_str();
    bandwidth->add_option("--grid-max", grid_max, "largest detuning (g_c)")
        ->check(CLI::PositiveNumber)->capture_default_str();
    bandwidth->add_option("--grid-step", grid_step, "detuning grid step (g_c)")
        ->check(CLI::PositiveNumber)->capture_default_str();

    // fom / ingest / match / screen / report
    std::string db_path, targets_path, ingest_out;
    double tol = 5.0, q_max = 1e7;
    bool strict = false;

    auto* fom = app.add_subcommand("fom", "figure-of-merit batch over a defect database");
    fom->add_option("--db", db_path, "defect database (csv or json)")->required();

    auto* ingest = app.add_subcommand("ingest", "validate a defect database");
    ingest->add_option("--db", db_path, "defect database (csv or json)")->required();
    ingest->add_option("--out", ingest_out, "write normalized records as JSON");

    auto* match = app.add_subcommand("match", "match ZPLs against target systems");
    match->add_option("--db", db_path, "defect database (csv or json)")->required();
    match->add_option("--targets", targets_path, "target system list (json)")->required();
    match->add_option("--tol", tol, "wavelength tolerance (nm)")
        ->check(CLI::PositiveNumber)->capture_default_str();

    auto* screen_cmd = app.add_subcommand("screen", "screen by quality-factor reachability");
    screen_cmd->add_option("--db", db_path, "defect database (csv or json)")->required();
    screen_cmd->add_option("--qmax", q_max, "quality factor budget")
        ->check(CLI::PositiveNumber)->capture_default_str();
    screen_cmd->add_flag("--strict", strict, "literal Q <= qmax instead of magnitude match");

    auto* report = app.add_subcommand("report", "combined fom + match + screen report");
    report->add_option("--db", db_path, "defect database (csv or json)")->required();
    report->add_option("--targets", targets_path, "target system list (json)")->required();
    report->add_option("--tol", tol, "wavelength tolerance (nm)")
        ->check(CLI::PositiveNumber)->capture_default_str();
    report->add_option("--qmax", q_max, "quality factor budget")
        ->check(CLI::PositiveNumber)->capture_default_str();
    report->add_flag("--strict", strict, "literal Q <= qmax instead of magnitude match");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        app.exit(e);
        return kExitUsage;
    }

    try {
        Session session;
        if (config_path.empty()) {
            if (const char* env = std::getenv("HBNQM_CONFIG")) config_path = env;
        }
        if (!config_path.empty()) {
            session.cfg = RunConfig::from_file(config_path);
            session.record_input(config_path);
        }
        // flag overrides on top of the config file
        if (app.count("--out-dir") != 0 || session.cfg.output_dir.empty()) {
            session.cfg.output_dir = out_dir;
        }
        if (!format.empty()) {
            if (format != "csv" && format != "json") {
                std::cerr << "error: --format must be csv or json\n";
                return kExitUsage;
            }
            session.cfg.format = format;
        }
        if (app.count("--jobs") != 0) session.cfg.jobs = jobs;
        if (no_timestamp) session.cfg.timestamp = false;
        if (!kernels_name.empty() && !kernels::select(kernels_name)) {
            std::cerr << "error: kernel backend \"" << kernels_name << "\" not available (have:";
            for (const auto& n : kernels::available()) std::cerr << " " << n;
            std::cerr << ")\n";
            return kExitUsage;
        }

        if (simulate->parsed()) {
            return cmd_simulate(session, omega0, T, g, kappa, delta, delta2, samples,
                                out_path(session, sim_out));
        }
        if (kappa_cmd->parsed()) return cmd_kappa(session, k_omega0, k_T, k_g, threshold, p0);
        if (bandwidth->parsed()) {
            return cmd_bandwidth(session, b_omega0, b_T, b_g, b_kappa, grid_max, grid_step);
        }
        if (fom->parsed()) return cmd_fom(session, db_path);
        if (ingest->parsed()) return cmd_ingest(session, db_path, ingest_out);
        if (match->parsed()) return cmd_match(session, db_path, targets_path, tol);
        if (screen_cmd->parsed()) return cmd_screen(session, db_path, q_max, strict);
        if (report->parsed()) {
            return cmd_report(session, db_path, targets_path, tol, q_max, strict);
        }
        std::cerr << "error: no subcommand\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
