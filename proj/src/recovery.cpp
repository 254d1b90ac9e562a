#include "qcoh/recovery.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "qcoh/entropy.hpp"
#include "qcoh/error.hpp"

namespace qcoh {

namespace {

std::string fmt12(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

KrausChannel petz_recovery(const KrausChannel& channel, const DensityMatrix& delta0,
                           const RecoveryOptions& opts) {
    if (channel.dim() != delta0.dim()) throw Error(ErrorCode::DimensionMismatch, "petz_recovery");
    if (!delta0.is_diagonal(opts.diagonal_tol)) {
        throw Error(ErrorCode::NotDiagonal, "reference state delta0 is not diagonal");
    }
    const ChannelClass cls = classify(channel, opts.zero_tol);
    if (cls.kind == IncoherenceClass::NotIncoherent) {
        throw Error(ErrorCode::NotIncoherentChannel, cls.describe());
    }
    const ComplexMatrix delta_t = apply(channel, delta0.matrix());
    if (delta_t.max_off_diagonal() > opts.diagonal_tol) {
        throw Error(ErrorCode::NotDiagonal, "channel output delta_t is not diagonal");
    }

    const std::size_t n = channel.dim();
    const std::vector<double> d0 = delta0.matrix().real_diagonal();
    const std::vector<double> dt = delta_t.real_diagonal();
    double dt_max = 0.0;
    for (double x : dt) dt_max = std::max(dt_max, x);
    const double cutoff = opts.kernel_cutoff * dt_max;

    std::vector<double> sqrt_d0(n);
    std::vector<double> inv_sqrt_dt(n, 0.0);
    std::vector<std::size_t> kernel;
    for (std::size_t i = 0; i < n; ++i) {
        sqrt_d0[i] = std::sqrt(std::max(d0[i], 0.0));
        if (dt[i] > cutoff) {
            inv_sqrt_dt[i] = 1.0 / std::sqrt(dt[i]);
        } else {
            kernel.push_back(i);
        }
    }

    std::vector<ComplexMatrix> ops;
    ops.reserve(channel.operators().size() + 1);
    for (const auto& k : channel.operators()) {
        ComplexMatrix r(n);
        bool nonzero = false;
        for (std::size_t row = 0; row < n; ++row) {
            if (sqrt_d0[row] == 0.0) continue;
            for (std::size_t col = 0; col < n; ++col) {
                const Complex z = sqrt_d0[row] * std::conj(k(col, row)) * inv_sqrt_dt[col];
                r(row, col) = z;
                nonzero = nonzero || z != Complex{};
            }
        }
        if (nonzero) ops.push_back(std::move(r));
    }
    if (!kernel.empty()) {
        ComplexMatrix projector(n);
        for (std::size_t i : kernel) projector(i, i) = 1.0;
        ops.push_back(std::move(projector));
    }
    return KrausChannel(std::move(ops), "petz-recovery[" + channel.label() + "]", opts.completeness_tol);
}

const char* to_string(Verdict v) noexcept { return v == Verdict::Frozen ? "Frozen" : "NotFrozen"; }

std::string FreezingCertificate::to_text() const {
    std::ostringstream s;
    s << "verdict=" << to_string(verdict) << '\n';
    s << "failures=";
    for (std::size_t i = 0; i < failures.size(); ++i) s << (i ? "," : "") << failures[i];
    s << '\n';
    s << "tol=" << fmt12(tol) << '\n';
    s << "channel_class=" << to_string(channel_class) << '\n';
    s << "cr_initial=" << fmt12(cr_initial) << '\n';
    s << "cr_final=" << fmt12(cr_final) << '\n';
    s << "cr_deviation=" << fmt12(cr_deviation) << '\n';
    s << "l1_initial=" << fmt12(l1_initial) << '\n';
    s << "l1_final=" << fmt12(l1_final) << '\n';
    s << "l1_deviation=" << fmt12(l1_deviation) << '\n';
    s << "relative_entropy_final=" << fmt12(relative_entropy_final) << '\n';
    s << "dephasing_commutation=" << fmt12(dephasing_commutation) << '\n';
    s << "recovery_residual_state=" << fmt12(recovery_residual_state) << '\n';
    s << "recovery_residual_diag=" << fmt12(recovery_residual_diag) << '\n';
    s << "recovery_completeness=" << fmt12(recovery_completeness) << '\n';
    s << "recovery_incoherent=" << (recovery_incoherent ? "true" : "false") << '\n';
    if (recovery_witness) {
        const auto& w = *recovery_witness;
        s << "recovery_witness=operator " << w.op << (w.is_column ? " column " : " row ") << w.line
          << " entries " << w.first << ',' << w.second << '\n';
    }
    return s.str();
}

FreezingCertificate certify_freezing(const KrausChannel& channel, const DensityMatrix& rho0,
                                     const CertifyOptions& opts) {
    if (!(opts.tol > 0.0)) throw Error(ErrorCode::InvalidSpec, "certificate tolerance must be positive");
    if (channel.dim() != rho0.dim()) throw Error(ErrorCode::DimensionMismatch, "certify_freezing");
    const ChannelClass cls = classify(channel, opts.recovery.zero_tol);
    if (cls.kind != IncoherenceClass::StrictlyIncoherent && !opts.allow_non_strict) {
        throw Error(ErrorCode::NotStrictlyIncoherent, cls.describe());
    }

    FreezingCertificate cert;
    cert.tol = opts.tol;
    cert.channel_class = cls.kind;

    const DensityMatrix rho_t = apply(channel, rho0);
    const DensityMatrix delta0 = dephase(rho0);
    const DensityMatrix delta_t = apply(channel, delta0);

    cert.cr_initial = c_rel_ent(rho0);
    cert.cr_final = c_rel_ent(rho_t);
    cert.cr_deviation = std::abs(cert.cr_final - cert.cr_initial);
    cert.l1_initial = c_l1(rho0);
    cert.l1_final = c_l1(rho_t);
    cert.l1_deviation = std::abs(cert.l1_final - cert.l1_initial);
    cert.relative_entropy_final = relative_entropy(rho_t, delta_t);
    cert.dephasing_commutation = max_abs_diff(delta_t.matrix(), dephase(rho_t).matrix());

    constexpr double kInf = std::numeric_limits<double>::infinity();
    try {
        const KrausChannel recovery = petz_recovery(channel, delta0, opts.recovery);
        cert.recovery_residual_state = max_abs_diff(apply(recovery, rho_t.matrix()), rho0.matrix());
        cert.recovery_residual_diag = max_abs_diff(apply(recovery, delta_t.matrix()), delta0.matrix());
        cert.recovery_completeness = recovery.completeness_residual();
        const ChannelClass rc = classify(recovery, opts.recovery.zero_tol);
        cert.recovery_incoherent = rc.kind != IncoherenceClass::NotIncoherent;
        if (!cert.recovery_incoherent) cert.recovery_witness = rc.witness;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotIncoherentChannel && e.code() != ErrorCode::NotDiagonal) throw;
        cert.recovery_residual_state = kInf;
        cert.recovery_residual_diag = kInf;
        cert.recovery_completeness = kInf;
        cert.recovery_incoherent = false;
        cert.failures.emplace_back("recovery_construction");
    }

    if (!(cert.cr_deviation <= opts.tol)) cert.failures.emplace_back("cr_deviation");
    if (!(cert.recovery_residual_state <= opts.tol)) cert.failures.emplace_back("recovery_residual_state");
    if (!(cert.recovery_residual_diag <= opts.tol)) cert.failures.emplace_back("recovery_residual_diag");
    if (!cert.recovery_incoherent) cert.failures.emplace_back("recovery_incoherent");
    cert.verdict = cert.failures.empty() ? Verdict::Frozen : Verdict::NotFrozen;

    if (cert.verdict == Verdict::Frozen && cert.l1_deviation > opts.tol) {
        std::ostringstream msg;
        msg << "recovery round trip succeeded but C_l1 moved by " << cert.l1_deviation;
        throw Error(ErrorCode::NumericalFailure, msg.str());
    }
    return cert;
}

}  // namespace qcoh
