#include "hbnqm/defectdb.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hbnqm/csv.hpp"
#include "hbnqm/errors.hpp"
#include "hbnqm/parallel.hpp"

namespace hbnqm {

namespace {

constexpr const char* kCsvHeader =
    "host,defect_label,spin_multiplicity,transition_spin,zpl_nm,mu_x_debye,mu_y_debye,"
    "mu_z_debye,lifetime_ns,source";

std::vector<std::string> csv_columns() {
    return csv::split(kCsvHeader);
}

/// Field-level validation shared by the CSV and JSON loaders. Returns an
/// error message, or empty on success, filling `out`.
std::string build_record(const std::string& host, const std::string& label_text,
                         const std::string& multiplicity, const std::string& spin,
                         double zpl_nm, const std::optional<TransitionDipole>& dipole,
                         const std::optional<double>& lifetime_ns, const std::string& source,
                         DefectRecord& out) {
    try {
        out.label = parse_defect_label(label_text);
        out.multiplicity = spin_multiplicity_from_string(multiplicity);
        out.spin = transition_spin_from_string(spin);
    } catch (const std::invalid_argument& err) {
        return err.what();
    }
    if (!(zpl_nm > 0.0)) return "zpl_nm must be positive";
    if (lifetime_ns && !(*lifetime_ns > 0.0)) return "lifetime_ns must be positive";
    out.host = host;
    out.zpl_nm = zpl_nm;
    out.dipole = dipole;
    out.lifetime_ns = lifetime_ns;
    out.source = source;
    return {};
}

void finish_ingest(IngestResult& result) {
    // Reject duplicate (label, transition_spin) pairs; first occurrence wins.
    std::map<std::pair<std::string, std::string>, std::size_t> seen;
    std::vector<DefectRecord> unique;
    std::vector<std::size_t> lines;
    for (std::size_t i = 0; i < result.records.size(); ++i) {
        const auto key = std::make_pair(result.records[i].label.str(),
                                        to_string(result.records[i].spin));
        const std::size_t line = result.records[i].ingest_line;
        auto [it, inserted] = seen.emplace(key, line);
        if (!inserted) {
            std::ostringstream msg;
            msg << "duplicate record (" << key.first << ", " << key.second
                << ") also defined at line " << it->second;
            result.diagnostics.push_back({line, msg.str()});
        } else {
            unique.push_back(std::move(result.records[i]));
        }
    }
    result.records = std::move(unique);
}

} // namespace

std::string to_string(SpinMultiplicity m) {
    switch (m) {
        case SpinMultiplicity::singlet: return "singlet";
        case SpinMultiplicity::doublet: return "doublet";
        case SpinMultiplicity::triplet: return "triplet";
    }
    return "?";
}

std::string to_string(TransitionSpin s) {
    return s == TransitionSpin::up ? "up" : "down";
}

SpinMultiplicity spin_multiplicity_from_string(const std::string& s) {
    if (s == "singlet") return SpinMultiplicity::singlet;
    if (s == "doublet") return SpinMultiplicity::doublet;
    if (s == "triplet") return SpinMultiplicity::triplet;
    throw std::invalid_argument("unknown spin multiplicity \"" + s + "\"");
}

TransitionSpin transition_spin_from_string(const std::string& s) {
    if (s == "up") return TransitionSpin::up;
    if (s == "down") return TransitionSpin::down;
    throw std::invalid_argument("unknown transition spin \"" + s + "\"");
}

IngestResult ingest_csv(std::istream& in) {
    IngestResult result;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    const auto columns = csv_columns();

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto fields = csv::split(line);
        if (!header_seen) {
            if (fields != columns) {
                std::ostringstream msg;
                msg << "bad header, expected: " << kCsvHeader;
                result.diagnostics.push_back({lineno, msg.str()});
                return result;
            }
            header_seen = true;
            continue;
        }
        if (fields.size() != columns.size()) {
            std::ostringstream msg;
            msg << "expected " << columns.size() << " fields, got " << fields.size();
            result.diagnostics.push_back({lineno, msg.str()});
            continue;
        }

        try {
            const bool any_mu = !fields[5].empty() || !fields[6].empty() || !fields[7].empty();
            const bool all_mu = !fields[5].empty() && !fields[6].empty() && !fields[7].empty();
            if (any_mu && !all_mu) {
                result.diagnostics.push_back(
                    {lineno, "dipole columns must be empty or filled as a group"});
                continue;
            }
            std::optional<TransitionDipole> dipole;
            if (all_mu) {
                dipole = TransitionDipole(csv::parse_double(fields[5], "mu_x_debye"),
                                          csv::parse_double(fields[6], "mu_y_debye"),
                                          csv::parse_double(fields[7], "mu_z_debye"));
            }
            std::optional<double> lifetime;
            if (!fields[8].empty()) lifetime = csv::parse_double(fields[8], "lifetime_ns");

            DefectRecord rec;
            const std::string err =
                build_record(fields[0], fields[1], fields[2], fields[3],
                             csv::parse_double(fields[4], "zpl_nm"), dipole, lifetime,
                             fields[9], rec);
            if (!err.empty()) {
                result.diagnostics.push_back({lineno, err});
                continue;
            }
            rec.ingest_line = lineno;
            if (!rec.fom_ready()) {
                result.diagnostics.push_back(
                    {lineno, "no FoM inputs: record has neither dipole nor lifetime"});
            }
            result.records.push_back(std::move(rec));
        } catch (const std::invalid_argument& err) {
            result.diagnostics.push_back({lineno, err.what()});
        }
    }
    finish_ingest(result);
    return result;
}

IngestResult ingest_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open database file: " + path);
    return ingest_csv(in);
}

IngestResult ingest_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open database file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& err) {
        throw IoError("invalid JSON in " + path + ": " + err.what());
    }
    if (!doc.is_array()) throw IoError("database JSON must be an array of records: " + path);

    IngestResult result;
    std::size_t index = 0;
    for (const auto& item : doc) {
        ++index;
        try {
            std::optional<TransitionDipole> dipole;
            if (item.contains("mu_x_debye") || item.contains("mu_y_debye") ||
                item.contains("mu_z_debye")) {
                dipole = TransitionDipole(item.at("mu_x_debye").get<double>(),
                                          item.at("mu_y_debye").get<double>(),
                                          item.at("mu_z_debye").get<double>());
            }
            std::optional<double> lifetime;
            if (item.contains("lifetime_ns") && !item.at("lifetime_ns").is_null()) {
                lifetime = item.at("lifetime_ns").get<double>();
            }
            DefectRecord rec;
            const std::string err = build_record(
                item.value("host", "hBN"), item.at("defect_label").get<std::string>(),
                item.at("spin_multiplicity").get<std::string>(),
                item.at("transition_spin").get<std::string>(),
                item.at("zpl_nm").get<double>(), dipole, lifetime, item.value("source", ""),
                rec);
            if (!err.empty()) {
                result.diagnostics.push_back({index, err});
                continue;
            }
            rec.ingest_line = index;
            if (!rec.fom_ready()) {
                result.diagnostics.push_back(
                    {index, "no FoM inputs: record has neither dipole nor lifetime"});
            }
            result.records.push_back(std::move(rec));
        } catch (const nlohmann::json::exception& err) {
            result.diagnostics.push_back({index, err.what()});
        } catch (const std::invalid_argument& err) {
            result.diagnostics.push_back({index, err.what()});
        }
    }
    finish_ingest(result);
    return result;
}

IngestResult ingest_file(const std::string& path) {
    if (path.size() >= 5 && path.ends_with(".json")) return ingest_json_file(path);
    return ingest_csv_file(path);
}

std::vector<TargetSystem> load_targets(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open target list: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& err) {
        throw IoError("invalid JSON in " + path + ": " + err.what());
    }
    if (!doc.is_array()) throw IoError("target list must be a JSON array: " + path);

    std::vector<TargetSystem> targets;
    for (const auto& item : doc) {
        TargetSystem t;
        try {
            t.name = item.at("name").get<std::string>();
            t.wavelength_nm = item.at("wavelength_nm").get<double>();
            t.application = item.at("application").get<std::string>();
            t.ref = item.value("ref", "");
        } catch (const nlohmann::json::exception& err) {
            throw IoError("bad target entry in " + path + ": " + err.what());
        }
        if (!(t.wavelength_nm > 0.0)) {
            throw IoError("target \"" + t.name + "\" has non-positive wavelength");
        }
        static const std::set<std::string> kApplications{
            "photon source", "memory", "computing", "communication", "Fraunhofer line"};
        if (!kApplications.contains(t.application)) {
            throw IoError("target \"" + t.name + "\" has unknown application \"" +
                          t.application +
                          "\" (expected photon source | memory | computing | communication | "
                          "Fraunhofer line)");
        }
        targets.push_back(std::move(t));
    }
    return targets;
}

std::vector<MatchResult> match_zpl(const std::vector<DefectRecord>& records,
                                   const std::vector<TargetSystem>& targets,
                                   double tolerance_nm) {
    if (!(tolerance_nm > 0.0)) {
        throw std::invalid_argument("match_zpl: tolerance must be positive");
    }
    std::vector<MatchResult> matches;
    for (const DefectRecord& rec : records) {
        for (const TargetSystem& target : targets) {
            const double detuning = rec.zpl_nm - target.wavelength_nm;
            if (std::abs(detuning) <= tolerance_nm) {
                matches.push_back({rec.label.str(), to_string(rec.spin), target.name, detuning});
            }
        }
    }
    return matches;
}

ScreenResult screen(const std::vector<EvaluatedRecord>& evaluated, const ScreenOptions& opts) {
    const double limit = opts.comparison == QualityComparison::magnitude
                             ? opts.q_max * std::sqrt(10.0)
                             : opts.q_max;
    ScreenResult result;
    for (std::size_t i = 0; i < evaluated.size(); ++i) {
        const EvaluatedRecord& entry = evaluated[i];
        if (entry.record.multiplicity != SpinMultiplicity::triplet) {
            result.rejected.push_back({i, kRejectNonTriplet});
            continue;
        }
        if (!entry.report || entry.report->has_flag(kFlagNoLambdaStructure) ||
            !(entry.report->gamma_r_per_s > 0.0)) {
            result.rejected.push_back({i, kRejectNoRadiativeChannel});
            continue;
        }
        if (!(entry.report->quality <= limit)) {
            result.rejected.push_back({i, kRejectQUnreachable});
            continue;
        }
        result.candidates.push_back(i);
    }
    return result;
}

std::vector<EvaluatedRecord> evaluate_records(const std::vector<DefectRecord>& records,
                                              const CavityConvention& conv,
                                              const UniversalConstants& constants,
                                              const PhysicalConstants& k, unsigned jobs) {
    std::vector<EvaluatedRecord> out(records.size());
    parallel_for_index(records.size(), jobs, [&](std::size_t i) {
        out[i].record = records[i];
        try {
            out[i].report = full_report(records[i], conv, constants, k);
        } catch (const std::invalid_argument& err) {
            out[i].error = err.what();
        }
    });
    return out;
}

} // namespace hbnqm
