#pragma once

namespace hbnqm {

/// CODATA-2018 values (SI). Immutable by convention: treat instances as
/// read-only after construction; overrides happen by building a modified
/// copy through the run configuration.
struct PhysicalConstants {
    double c = 299792458.0;            // m/s, exact
    double hbar = 1.054571817e-34;     // J s
    double eps0 = 8.8541878128e-12;    // F/m
    double e_charge = 1.602176634e-19; // C, exact
    double m_e = 9.1093837015e-31;     // kg
    double ev_to_joule = 1.602176634e-19;
    double debye_to_coulomb_m = 3.33564e-30;
    double hc_ev_nm = 1239.8420;       // photon energy [eV] * wavelength [nm]

    static PhysicalConstants codata() { return {}; }
};

} // namespace hbnqm
