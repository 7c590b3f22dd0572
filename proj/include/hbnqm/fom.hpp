#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hbnqm/constants.hpp"

namespace hbnqm {

struct DefectRecord; // defectdb.hpp

/// Transition dipole moment in Debye. Components are stored as magnitudes;
/// a vanishing out-of-plane component marks a purely in-plane dipole.
struct TransitionDipole {
    double mu_x = 0.0;
    double mu_y = 0.0;
    double mu_z = 0.0;

    TransitionDipole() = default;
    TransitionDipole(double x, double y, double z);
    static TransitionDipole from_modulus(double modulus); // along x, by convention

    double modulus() const;
    bool in_plane() const { return mu_z == 0.0; }
};

/// Knobs of the photon-emitter coupling formula
///   g_c = orientation_factor * mu / n_D^(medium_permittivity_exponent/2)
///         * sqrt(omega / (2 hbar eps0 V)),  V = mode_volume_factor * lambda^3.
///
/// The default is the calibrated convention: no orientation average and
/// vacuum permittivity, which is the unique choice that reproduces the
/// published screening values from lifetime plus wavelength alone. The
/// isotropic-medium variant (orientation 1/sqrt(3), permittivity
/// eps0*n_D^2) is provided for comparison. Every report embeds the
/// convention it was computed under.
struct CavityConvention {
    double mode_volume_factor = 1.76;          // V = n * lambda^3
    double refractive_index = 1.85;            // host index, used by the radiative rate
    double orientation_factor = 1.0;
    double medium_permittivity_exponent = 0.0; // eps = eps0 * n_D^exponent
    std::string name = "calibrated";

    static CavityConvention calibrated() { return {}; }
    static CavityConvention isotropic_medium();
};

/// Universal memory constants extracted from the scaled model: the maximum
/// tolerable cavity decay in units of g_c and the detuning half width in
/// units of g_c. `source` records whether the cached defaults were used or
/// the dynamics module recomputed them.
struct UniversalConstants {
    double kappa_hat = 0.06;
    double sigma_delta = 6.20;
    std::string source = "cached";
};

/// lambda [nm] <-> E [eV]; the same reciprocal formula in both directions.
double zpl_convert(double value, const PhysicalConstants& k = PhysicalConstants::codata());

/// |mu| from a momentum matrix element between orbitals at E_i and E_f:
/// mu = e * hbar * |p| / (|E_f - E_i| * m_e), returned in Debye.
double dipole_from_momentum(double e_i_ev, double e_f_ev, double p_kg_m_per_s,
                            const PhysicalConstants& k = PhysicalConstants::codata());

struct RadiativeRate {
    double gamma_per_s = 0.0;
    double lifetime_ns = 0.0; // +inf when no radiative channel exists
    bool radiative = false;
};

/// Gamma_R = n_D E0^3 mu^2 / (3 pi eps0 hbar^4 c^3); lifetime is the
/// reciprocal. mu = 0 yields the no-radiative-channel sentinel.
RadiativeRate radiative_rate(double e0_ev, double mu_debye, double refractive_index,
                             const PhysicalConstants& k = PhysicalConstants::codata());

/// Inversion of radiative_rate for the dipole modulus.
double mu_from_lifetime(double e0_ev, double tau_ns, double refractive_index,
                        const PhysicalConstants& k = PhysicalConstants::codata());

/// Photon-emitter coupling constant in rad/s for a cavity of mode volume
/// V = n lambda^3. Linear in mu.
double coupling_constant(double mu_debye, double zpl_nm, const CavityConvention& conv,
                         const PhysicalConstants& k = PhysicalConstants::codata());

/// Q = omega / (2 kappa). kappa = 0 returns the +inf sentinel (no cavity
/// requirement computable).
double quality_factor(double omega_rad_s, double kappa_rad_s);

/// Acceptance bandwidth sigma_delta * g_c expressed in GHz on the same
/// angular-frequency footing as g_c (1 GHz = 1e9 1/s).
double bandwidth_ghz(double g_c_rad_s, double sigma_delta);

/// Everything derived for one defect. Q * 2 kappa_hat * g_c = omega holds
/// exactly by construction.
struct FigureOfMeritReport {
    std::string defect;
    std::string transition_spin;
    std::string record_source; // provenance passed through from the record
    double zpl_nm = 0.0;
    double energy_ev = 0.0;
    double omega_rad_s = 0.0;
    double mu_debye = 0.0;
    std::string mu_source;      // "measured" or "inverted_from_lifetime"
    double gamma_r_per_s = 0.0;
    double tau_ns = 0.0;        // from the dipole actually used
    double g_c_rad_s = 0.0;
    double kappa_rad_s = 0.0;   // kappa_hat * g_c
    double quality = 0.0;
    double bandwidth = 0.0;     // GHz
    std::vector<std::string> flags;
    CavityConvention convention;
    UniversalConstants constants;

    bool has_flag(const std::string& f) const;
};

/// Map one spectroscopic record to its figures of merit. When the record
/// carries a lifetime but no dipole, the dipole modulus is inverted from
/// the lifetime (component resolution is impossible from tau alone, which
/// the mu_source field makes visible). Throws std::invalid_argument when
/// the record has neither dipole nor lifetime.
FigureOfMeritReport full_report(const DefectRecord& record, const CavityConvention& conv,
                                const UniversalConstants& constants,
                                const PhysicalConstants& k = PhysicalConstants::codata());

/// Flag set when the transition carries no usable dipole.
inline constexpr const char* kFlagNoLambdaStructure = "no_practical_lambda_structure";

} // namespace hbnqm
