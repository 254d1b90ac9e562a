#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcoh/channels.hpp"
#include "qcoh/coherence.hpp"
#include "qcoh/states.hpp"

namespace qcoh {

struct RecoveryOptions {
    // Diagonal entries of delta_t at or below cutoff * max entry are zeros.
    double kernel_cutoff = 1e-12;
    // Largest off-diagonal modulus still accepted as "diagonal".
    double diagonal_tol = 1e-12;
    double zero_tol = kDefaultZeroTol;
    double completeness_tol = 1e-9;
};

// Recovery map for the pair (channel, delta0):
//   K~_n = delta0^{1/2} K_n^dagger delta_t^{-1/2},  delta_t = channel(delta0),
// with the pseudo-inverse on delta_t's kernel and, when delta_t is singular, the
// extra operator P projecting onto that kernel. Operators that are identically
// zero are dropped.
//
// Throws NotIncoherentChannel if the channel fails the column test and
// NotDiagonal if delta0 or delta_t has off-diagonal entries.
KrausChannel petz_recovery(const KrausChannel& channel, const DensityMatrix& delta0,
                           const RecoveryOptions& opts = {});

enum class Verdict { Frozen, NotFrozen };

const char* to_string(Verdict v) noexcept;

struct CertifyOptions {
    double tol = 1e-8;
    // Skip the strictly-incoherent hypothesis check on the input channel.
    bool allow_non_strict = false;
    RecoveryOptions recovery{};
};

struct FreezingCertificate {
    double cr_initial = 0.0;
    double cr_final = 0.0;
    double cr_deviation = 0.0;
    double l1_initial = 0.0;
    double l1_final = 0.0;
    double l1_deviation = 0.0;
    // S(rho_t || channel(delta0)); sits between cr_final and cr_initial.
    double relative_entropy_final = 0.0;
    // max |channel(delta0) - dephase(rho_t)|
    double dephasing_commutation = 0.0;
    double recovery_residual_state = 0.0;
    double recovery_residual_diag = 0.0;
    double recovery_completeness = 0.0;
    bool recovery_incoherent = false;
    std::optional<ClassWitness> recovery_witness;
    IncoherenceClass channel_class = IncoherenceClass::StrictlyIncoherent;
    Verdict verdict = Verdict::NotFrozen;
    std::vector<std::string> failures;  // names of failed checks
    double tol = 0.0;

    // One `key=value` line per metric.
    std::string to_text() const;
};

// Checks whether every coherence measure of rho0 is unchanged by the channel:
// C_r must be preserved and the recovery map must send both channel(rho0) and
// channel(dephase(rho0)) back while being incoherent itself.
//
// Throws NotStrictlyIncoherent unless the channel is strictly incoherent or
// allow_non_strict is set. A Frozen verdict with C_l1 drifting by more than tol
// is an internal inconsistency and throws NumericalFailure.
FreezingCertificate certify_freezing(const KrausChannel& channel, const DensityMatrix& rho0,
                                     const CertifyOptions& opts = {});

}  // namespace qcoh
