#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hbnqm/defect_label.hpp"
#include "hbnqm/fom.hpp"

namespace hbnqm {

enum class SpinMultiplicity { singlet, doublet, triplet };
enum class TransitionSpin { up, down };

std::string to_string(SpinMultiplicity m);
std::string to_string(TransitionSpin s);
SpinMultiplicity spin_multiplicity_from_string(const std::string&);
TransitionSpin transition_spin_from_string(const std::string&);

/// One spectroscopic database entry. A record is usable for figure-of-merit
/// evaluation when it carries a dipole or a lifetime; records without
/// either are still valid for wavelength matching.
struct DefectRecord {
    std::string host = "hBN";
    DefectLabel label;
    SpinMultiplicity multiplicity = SpinMultiplicity::triplet;
    TransitionSpin spin = TransitionSpin::up;
    double zpl_nm = 0.0;
    std::optional<TransitionDipole> dipole;
    std::optional<double> lifetime_ns;
    std::string source;
    std::size_t ingest_line = 0; // provenance within the source file

    bool fom_ready() const { return dipole.has_value() || lifetime_ns.has_value(); }
    bool in_plane() const { return dipole && dipole->in_plane(); }
};

struct Diagnostic {
    std::size_t line = 0; // 1-based line (CSV) or element index (JSON)
    std::string message;
};

struct IngestResult {
    std::vector<DefectRecord> records;
    std::vector<Diagnostic> diagnostics;
};

/// CSV schema (exact header, comma separated, UTF-8, LF):
/// host,defect_label,spin_multiplicity,transition_spin,zpl_nm,mu_x_debye,
/// mu_y_debye,mu_z_debye,lifetime_ns,source
/// Dipole columns may be empty as a group; rows failing validation are
/// reported per line and dropped, never silently. Duplicate
/// (label, transition_spin) pairs are rejected with both line numbers.
IngestResult ingest_csv(std::istream& in);
IngestResult ingest_csv_file(const std::string& path);

/// JSON mirror of the CSV schema: an array of objects with the same field
/// names; dipole fields optional.
IngestResult ingest_json_file(const std::string& path);

/// Dispatch on extension (.csv / .json).
IngestResult ingest_file(const std::string& path);

/// Reference quantum system a defect line can couple to.
struct TargetSystem {
    std::string name;
    double wavelength_nm = 0.0;
    std::string application; // photon source | memory | computing | communication | Fraunhofer line
    std::string ref;
};

std::vector<TargetSystem> load_targets(const std::string& path);

struct MatchResult {
    std::string defect;       // canonical label
    std::string transition_spin;
    std::string target;
    double detuning_nm = 0.0; // zpl - target wavelength, signed
};

/// All (record, target) pairs with |zpl - wavelength| <= tolerance. A
/// record may match several targets.
std::vector<MatchResult> match_zpl(const std::vector<DefectRecord>& records,
                                   const std::vector<TargetSystem>& targets,
                                   double tolerance_nm = 5.0);

/// Record plus the outcome of its figure-of-merit evaluation.
struct EvaluatedRecord {
    DefectRecord record;
    std::optional<FigureOfMeritReport> report;
    std::string error; // set when evaluation failed
};

enum class QualityComparison {
    /// Same order of magnitude: Q <= q_max * sqrt(10). This is the reading
    /// under which the published screening keeps defects needing up to
    /// 1.8e7 beneath a 1e7 budget; it is the default.
    magnitude,
    /// Literal Q <= q_max.
    strict,
};

struct ScreenOptions {
    double q_max = 1e7;
    QualityComparison comparison = QualityComparison::magnitude;
};

inline constexpr const char* kRejectQUnreachable = "Q_unreachable";
inline constexpr const char* kRejectNoRadiativeChannel = "no_radiative_channel";
inline constexpr const char* kRejectNonTriplet = "non_triplet";

struct Rejection {
    std::size_t index = 0; // into the input vector
    std::string reason;
};

/// Partition into memory candidates and rejections with machine-readable
/// reasons. candidates and rejected indices are disjoint and exhaustive.
struct ScreenResult {
    std::vector<std::size_t> candidates;
    std::vector<Rejection> rejected;
};

ScreenResult screen(const std::vector<EvaluatedRecord>& evaluated, const ScreenOptions& opts);

/// full_report over a record list; per-record failures become row-level
/// errors instead of aborting the batch.
std::vector<EvaluatedRecord> evaluate_records(const std::vector<DefectRecord>& records,
                                              const CavityConvention& conv,
                                              const UniversalConstants& constants,
                                              const PhysicalConstants& k,
                                              unsigned jobs = 0);

} // namespace hbnqm
