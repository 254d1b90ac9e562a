#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcoh/numerics.hpp"
#include "qcoh/states.hpp"

namespace qcoh {

inline constexpr double kCompletenessTol = 1e-10;
inline constexpr double kDefaultZeroTol = 1e-12;

// CPTP map rho -> sum_n K_n rho K_n^dagger, stored as its Kraus operators.
class KrausChannel {
public:
    // Throws InvalidChannel if the list is empty, dims disagree, or
    // max |sum K^dagger K - I| exceeds completeness_tol.
    KrausChannel(std::vector<ComplexMatrix> operators, std::string label,
                 double completeness_tol = kCompletenessTol);

    static KrausChannel identity(std::size_t dim);
    static KrausChannel unitary(const ComplexMatrix& u, std::string label);

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<ComplexMatrix>& operators() const noexcept { return operators_; }
    const std::string& label() const noexcept { return label_; }

    // max |sum K^dagger K - I|
    double completeness_residual() const { return completeness_residual(operators_); }
    static double completeness_residual(const std::vector<ComplexMatrix>& ops);

private:
    std::vector<ComplexMatrix> operators_;
    std::size_t dim_ = 0;
    std::string label_;
};

ComplexMatrix apply(const KrausChannel& channel, const ComplexMatrix& m);
DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho);

// Operators {K2_m K1_n}: first channel then second.
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);
// Kronecker products of all operator combinations, first factor most significant.
KrausChannel tensor(const std::vector<KrausChannel>& factors);

enum class IncoherenceClass { NotIncoherent, IncoherentOnly, StrictlyIncoherent };

const char* to_string(IncoherenceClass c) noexcept;

// Two entries above zero_tol sharing a column (NotIncoherent) or a row
// (IncoherentOnly) of operator `op`.
struct ClassWitness {
    std::size_t op = 0;
    bool is_column = true;
    std::size_t line = 0;  // the shared column or row
    std::size_t first = 0;
    std::size_t second = 0;
};

struct ChannelClass {
    IncoherenceClass kind = IncoherenceClass::StrictlyIncoherent;
    std::optional<ClassWitness> witness;

    std::string describe() const;
};

// Judges the supplied Kraus representation only.
ChannelClass classify(const KrausChannel& channel, double zero_tol = kDefaultZeroTol);
ChannelClass classify(const std::vector<ComplexMatrix>& operators, double zero_tol = kDefaultZeroTol);

// Standard qubit noise channels; parameters outside [0, 1] throw OutOfRange.
KrausChannel bit_flip(double q);
KrausChannel phase_flip(double q);
KrausChannel bit_phase_flip(double q);
KrausChannel depolarizing(double q);
KrausChannel phase_damping(double lambda);
KrausChannel amplitude_damping(double gamma);
KrausChannel hadamard_channel();

enum class QubitChannelKind {
    Identity,
    BitFlip,
    PhaseFlip,
    BitPhaseFlip,
    Depolarizing,
    PhaseDamping,
    AmplitudeDamping,
};

const char* to_string(QubitChannelKind kind) noexcept;
// Name used in constructor lines (e.g. "bitflip"); throws InvalidSpec if unknown.
QubitChannelKind parse_qubit_channel_kind(const std::string& name);
// Parameter key in constructor lines: "q", "l" or "g".
const char* parameter_key(QubitChannelKind kind) noexcept;

KrausChannel make_qubit_channel(QubitChannelKind kind, double parameter);

struct QubitChannelSpec {
    QubitChannelKind kind = QubitChannelKind::Identity;
    double parameter = 0.0;
};

struct LocalChannelSpec {
    std::vector<QubitChannelSpec> factors;  // factor 0 acts on qubit l_1
};

KrausChannel local_channel(const LocalChannelSpec& spec);

// Random strictly incoherent channel: each operator is diag * permutation,
// right-normalised for completeness. sparsity in [0, 1) zeroes entries.
KrausChannel random_strictly_incoherent(std::size_t dim, std::size_t num_ops, std::uint64_t seed,
                                        double sparsity = 0.0);
// Measure in a random orthonormal basis, prepare random basis states. Incoherent,
// generally not strictly.
KrausChannel random_measure_prepare(std::size_t dim, std::uint64_t seed);

}  // namespace qcoh
