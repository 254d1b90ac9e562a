#include "qcoh/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "qcoh/error.hpp"

namespace qcoh {

namespace {

std::string with_param(const char* name, const char* key, double value) {
    std::ostringstream s;
    s << name << '(' << key << '=' << value << ')';
    return s.str();
}

void check_unit_interval(const char* what, double value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        std::ostringstream msg;
        msg << what << " = " << value << " outside [0, 1]";
        throw Error(ErrorCode::OutOfRange, msg.str());
    }
}

const ComplexMatrix& pauli_x() {
    static const ComplexMatrix m{{0.0, 1.0}, {1.0, 0.0}};
    return m;
}
const ComplexMatrix& pauli_y() {
    static const ComplexMatrix m{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
    return m;
}
const ComplexMatrix& pauli_z() {
    static const ComplexMatrix m{{1.0, 0.0}, {0.0, -1.0}};
    return m;
}

KrausChannel two_op_pauli(const ComplexMatrix& pauli, double q, const char* name) {
    check_unit_interval("q", q);
    return KrausChannel({ComplexMatrix::identity(2) * std::sqrt(1.0 - q), pauli * std::sqrt(q)},
                        with_param(name, "q", q));
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators, std::string label,
                           double completeness_tol)
    : operators_(std::move(operators)), label_(std::move(label)) {
    if (operators_.empty()) throw Error(ErrorCode::InvalidChannel, "channel needs at least one operator");
    dim_ = operators_.front().dim();
    if (dim_ == 0) throw Error(ErrorCode::InvalidChannel, "empty Kraus operator");
    for (const auto& k : operators_) {
        if (k.dim() != dim_) throw Error(ErrorCode::InvalidChannel, "Kraus operators differ in dimension");
        if (!k.is_finite()) throw Error(ErrorCode::InvalidChannel, "non-finite Kraus entry");
    }
    const double residual = completeness_residual(operators_);
    if (residual > completeness_tol) {
        std::ostringstream msg;
        msg << label_ << ": max |sum K^dagger K - I| = " << residual;
        throw Error(ErrorCode::InvalidChannel, msg.str());
    }
}

KrausChannel KrausChannel::identity(std::size_t dim) {
    return KrausChannel({ComplexMatrix::identity(dim)}, "identity");
}

KrausChannel KrausChannel::unitary(const ComplexMatrix& u, std::string label) {
    return KrausChannel({u}, std::move(label));
}

double KrausChannel::completeness_residual(const std::vector<ComplexMatrix>& ops) {
    if (ops.empty()) return std::numeric_limits<double>::infinity();
    const std::size_t n = ops.front().dim();
    ComplexMatrix sum(n);
    for (const auto& k : ops) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t r = 0; r < n; ++r) {
                const Complex kri = std::conj(k(r, i));
                if (kri == Complex{}) continue;
                for (std::size_t j = 0; j < n; ++j) sum(i, j) += kri * k(r, j);
            }
    }
    return max_abs_diff(sum, ComplexMatrix::identity(n));
}

ComplexMatrix apply(const KrausChannel& channel, const ComplexMatrix& m) {
    if (m.dim() != channel.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "channel of dim " + std::to_string(channel.dim()) +
                                                      " applied to dim " + std::to_string(m.dim()));
    }
    ComplexMatrix out(m.dim());
    for (const auto& k : channel.operators()) out += sandwich(k, m);
    return out;
}

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho) {
    StateTolerances tol;
    tol.trace = 1e-9;
    return DensityMatrix::from_matrix(apply(channel, rho.matrix()), tol);
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
    if (second.dim() != first.dim()) throw Error(ErrorCode::DimensionMismatch, "compose");
    std::vector<ComplexMatrix> ops;
    ops.reserve(second.operators().size() * first.operators().size());
    for (const auto& k2 : second.operators())
        for (const auto& k1 : first.operators()) ops.push_back(k2 * k1);
    return KrausChannel(std::move(ops), second.label() + " o " + first.label(), 1e-9);
}

KrausChannel tensor(const std::vector<KrausChannel>& factors) {
    if (factors.empty()) throw Error(ErrorCode::InvalidChannel, "tensor of no channels");
    std::vector<ComplexMatrix> ops = factors.front().operators();
    std::string label = factors.front().label();
    for (std::size_t f = 1; f < factors.size(); ++f) {
        std::vector<ComplexMatrix> next;
        next.reserve(ops.size() * factors[f].operators().size());
        for (const auto& a : ops)
            for (const auto& b : factors[f].operators()) next.push_back(kron(a, b));
        ops = std::move(next);
        label += " x " + factors[f].label();
    }
    return KrausChannel(std::move(ops), std::move(label), 1e-9);
}

const char* to_string(IncoherenceClass c) noexcept {
    switch (c) {
        case IncoherenceClass::NotIncoherent: return "NotIncoherent";
        case IncoherenceClass::IncoherentOnly: return "IncoherentOnly";
        case IncoherenceClass::StrictlyIncoherent: return "StrictlyIncoherent";
    }
    return "Unknown";
}

std::string ChannelClass::describe() const {
    std::ostringstream s;
    s << to_string(kind);
    if (witness) {
        const auto& w = *witness;
        s << ": operator " << w.op << ' ' << (w.is_column ? "column " : "row ") << w.line
          << " has nonzeros at " << (w.is_column ? "rows " : "columns ") << w.first << " and "
          << w.second;
    }
    return s.str();
}

ChannelClass classify(const KrausChannel& channel, double zero_tol) {
    return classify(channel.operators(), zero_tol);
}

ChannelClass classify(const std::vector<ComplexMatrix>& operators, double zero_tol) {
    auto find_pair = [&](const ComplexMatrix& k, bool by_column) -> std::optional<ClassWitness> {
        const std::size_t n = k.dim();
        for (std::size_t line = 0; line < n; ++line) {
            std::optional<std::size_t> seen;
            for (std::size_t pos = 0; pos < n; ++pos) {
                const Complex z = by_column ? k(pos, line) : k(line, pos);
                if (std::abs(z) <= zero_tol) continue;
                if (seen) return ClassWitness{0, by_column, line, *seen, pos};
                seen = pos;
            }
        }
        return std::nullopt;
    };

    for (std::size_t op = 0; op < operators.size(); ++op) {
        if (auto w = find_pair(operators[op], true)) {
            w->op = op;
            return {IncoherenceClass::NotIncoherent, w};
        }
    }
    for (std::size_t op = 0; op < operators.size(); ++op) {
        if (auto w = find_pair(operators[op], false)) {
            w->op = op;
            return {IncoherenceClass::IncoherentOnly, w};
        }
    }
    return {IncoherenceClass::StrictlyIncoherent, std::nullopt};
}

KrausChannel bit_flip(double q) { return two_op_pauli(pauli_x(), q, "bitflip"); }
KrausChannel phase_flip(double q) { return two_op_pauli(pauli_z(), q, "phaseflip"); }
KrausChannel bit_phase_flip(double q) { return two_op_pauli(pauli_y(), q, "bitphaseflip"); }

KrausChannel depolarizing(double q) {
    check_unit_interval("q", q);
    const double a = std::sqrt(1.0 - 0.75 * q);
    const double b = std::sqrt(0.25 * q);
    return KrausChannel({ComplexMatrix::identity(2) * a, pauli_x() * b, pauli_y() * b, pauli_z() * b},
                        with_param("depolarizing", "q", q));
}

KrausChannel phase_damping(double lambda) {
    check_unit_interval("lambda", lambda);
    const double s = std::sqrt(lambda);
    return KrausChannel({ComplexMatrix::identity(2) * std::sqrt(1.0 - lambda),
                         ComplexMatrix{{s, 0.0}, {0.0, 0.0}}, ComplexMatrix{{0.0, 0.0}, {0.0, s}}},
                        with_param("phasedamping", "l", lambda));
}

KrausChannel amplitude_damping(double gamma) {
    check_unit_interval("gamma", gamma);
    return KrausChannel({ComplexMatrix{{1.0, 0.0}, {0.0, std::sqrt(1.0 - gamma)}},
                         ComplexMatrix{{0.0, std::sqrt(gamma)}, {0.0, 0.0}}},
                        with_param("amplitudedamping", "g", gamma));
}

KrausChannel hadamard_channel() {
    return KrausChannel::unitary(ComplexMatrix{{M_SQRT1_2, M_SQRT1_2}, {M_SQRT1_2, -M_SQRT1_2}},
                                 "hadamard");
}

const char* to_string(QubitChannelKind kind) noexcept {
    switch (kind) {
        case QubitChannelKind::Identity: return "identity";
        case QubitChannelKind::BitFlip: return "bitflip";
        case QubitChannelKind::PhaseFlip: return "phaseflip";
        case QubitChannelKind::BitPhaseFlip: return "bitphaseflip";
        case QubitChannelKind::Depolarizing: return "depolarizing";
        case QubitChannelKind::PhaseDamping: return "phasedamping";
        case QubitChannelKind::AmplitudeDamping: return "amplitudedamping";
    }
    return "unknown";
}

QubitChannelKind parse_qubit_channel_kind(const std::string& name) {
    for (auto kind : {QubitChannelKind::Identity, QubitChannelKind::BitFlip, QubitChannelKind::PhaseFlip,
                      QubitChannelKind::BitPhaseFlip, QubitChannelKind::Depolarizing,
                      QubitChannelKind::PhaseDamping, QubitChannelKind::AmplitudeDamping}) {
        if (name == to_string(kind)) return kind;
    }
    throw Error(ErrorCode::InvalidSpec, "unknown qubit channel '" + name + "'");
}

const char* parameter_key(QubitChannelKind kind) noexcept {
    switch (kind) {
        case QubitChannelKind::PhaseDamping: return "l";
        case QubitChannelKind::AmplitudeDamping: return "g";
        default: return "q";
    }
}

KrausChannel make_qubit_channel(QubitChannelKind kind, double parameter) {
    switch (kind) {
        case QubitChannelKind::Identity: return KrausChannel::identity(2);
        case QubitChannelKind::BitFlip: return bit_flip(parameter);
        case QubitChannelKind::PhaseFlip: return phase_flip(parameter);
        case QubitChannelKind::BitPhaseFlip: return bit_phase_flip(parameter);
        case QubitChannelKind::Depolarizing: return depolarizing(parameter);
        case QubitChannelKind::PhaseDamping: return phase_damping(parameter);
        case QubitChannelKind::AmplitudeDamping: return amplitude_damping(parameter);
    }
    throw Error(ErrorCode::InvalidSpec, "unknown qubit channel kind");
}

KrausChannel local_channel(const LocalChannelSpec& spec) {
    if (spec.factors.empty()) throw Error(ErrorCode::InvalidSpec, "local channel needs at least one factor");
    std::vector<KrausChannel> factors;
    factors.reserve(spec.factors.size());
    for (const auto& f : spec.factors) factors.push_back(make_qubit_channel(f.kind, f.parameter));
    return tensor(factors);
}

KrausChannel random_strictly_incoherent(std::size_t dim, std::size_t num_ops, std::uint64_t seed,
                                        double sparsity) {
    if (dim == 0 || num_ops == 0) throw Error(ErrorCode::InvalidSpec, "empty random channel");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    std::vector<std::vector<std::size_t>> perms(num_ops, std::vector<std::size_t>(dim));
    std::vector<std::vector<Complex>> coeffs(num_ops, std::vector<Complex>(dim));
    for (std::size_t n = 0; n < num_ops; ++n) {
        std::iota(perms[n].begin(), perms[n].end(), 0);
        std::shuffle(perms[n].begin(), perms[n].end(), rng);
        for (auto& c : coeffs[n]) {
            c = Complex(gauss(rng), gauss(rng));
            if (unif(rng) < sparsity) c = 0.0;
        }
    }
    // column j of K_n holds coeffs[n][j] at row perms[n][j]
    for (std::size_t j = 0; j < dim; ++j) {
        double w = 0.0;
        for (std::size_t n = 0; n < num_ops; ++n) w += std::norm(coeffs[n][j]);
        if (w == 0.0) {
            coeffs[0][j] = 1.0;
            w = 1.0;
        }
        const double scale = 1.0 / std::sqrt(w);
        for (std::size_t n = 0; n < num_ops; ++n) coeffs[n][j] *= scale;
    }
    std::vector<ComplexMatrix> ops;
    ops.reserve(num_ops);
    for (std::size_t n = 0; n < num_ops; ++n) {
        ComplexMatrix k(dim);
        for (std::size_t j = 0; j < dim; ++j) k(perms[n][j], j) = coeffs[n][j];
        ops.push_back(std::move(k));
    }
    return KrausChannel(std::move(ops), "random-sio(seed=" + std::to_string(seed) + ")");
}

KrausChannel random_measure_prepare(std::size_t dim, std::uint64_t seed) {
    const ComplexMatrix u = random_unitary(dim, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<std::size_t> target(0, dim - 1);
    std::vector<ComplexMatrix> ops;
    ops.reserve(dim);
    for (std::size_t n = 0; n < dim; ++n) {
        // K_n = |r_n><u_n| with u_n the n-th column of U
        ComplexMatrix k(dim);
        const std::size_t r = target(rng);
        for (std::size_t j = 0; j < dim; ++j) k(r, j) = std::conj(u(j, n));
        ops.push_back(std::move(k));
    }
    return KrausChannel(std::move(ops), "random-measure-prepare(seed=" + std::to_string(seed) + ")");
}

}  // namespace qcoh
