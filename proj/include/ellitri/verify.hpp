#ifndef ELLITRI_VERIFY_HPP
#define ELLITRI_VERIFY_HPP

#include "ellitri/report.hpp"
#include "ellitri/wdvv.hpp"

// Report builders behind the CLI commands: the full identity/substrate
// verification suite, the vee-system/WDVV report, and the Dunkl report.

namespace ellitri {

// Every functional identity plus the special-function substrate checks
// (quasi-periodicity, modular laws, oracle equivalences, Ramanujan, heat
// equation, inversion laws, polylog round trip).
ResidualReport verify_all(const RunConfig& config);

// Well-distribution, quartic, plane-condition and optional weight-lattice
// verdicts plus WDVV commutator statistics for one system.
ResidualReport wdvv_report(const VeeSystem& sys, const std::string& system_name,
                           const RunConfig& config,
                           const std::vector<std::vector<cplx>>* lattice_basis = nullptr);

// Proposition commutator residuals, the nonvanishing negative control, and
// the rational/trigonometric limit checks.
ResidualReport dunkl_report(const RunConfig& config, double trig_T = 20.0);

}  // namespace ellitri

#endif
