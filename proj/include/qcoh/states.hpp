#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcoh/numerics.hpp"

namespace qcoh {

struct StateTolerances {
    double hermiticity = 1e-10;
    double trace = 1e-10;
    double psd = 1e-10;
};

// Hermitian, positive semidefinite, unit-trace matrix over the computational
// basis. Immutable; the spectrum is computed once during validation.
class DensityMatrix {
public:
    // The trivial one-dimensional state [1].
    DensityMatrix() : DensityMatrix(ComplexMatrix::identity(1), Spectrum{{1.0}, ComplexMatrix::identity(1)}) {}

    // Validates m. Eigenvalues in [-tol.psd, 0) are clipped to zero and the
    // trace renormalised; anything further out is rejected with InvalidState.
    static DensityMatrix from_matrix(const ComplexMatrix& m, const StateTolerances& tol = {});

    std::size_t dim() const noexcept { return matrix_.dim(); }
    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    const Spectrum& spectrum() const noexcept { return spectrum_; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return matrix_(row, col); }

    double purity() const;
    bool is_diagonal(double tol = 0.0) const { return matrix_.max_off_diagonal() <= tol; }

private:
    DensityMatrix(ComplexMatrix m, Spectrum s) : matrix_(std::move(m)), spectrum_(std::move(s)) {}

    ComplexMatrix matrix_;
    Spectrum spectrum_;
};

// Bit string l_1 ... l_N, l_1 most significant.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::vector<std::uint8_t> bits);
    // Parses "0101"; throws InvalidSpec on other characters or empty input.
    static BitString parse(std::string_view text);
    static BitString from_index(std::size_t index, std::size_t num_bits);

    std::size_t size() const noexcept { return bits_.size(); }
    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    std::size_t index() const;
    BitString complement() const;
    std::size_t hamming_weight() const;
    bool is_canonical() const { return !bits_.empty() && bits_.front() == 0; }
    std::string str() const;

    friend auto operator<=>(const BitString&, const BitString&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

// All 2^(N-1) strings with l_1 = 0, in increasing index order.
std::vector<BitString> canonical_strings(std::size_t num_qubits);

struct MixedFamilySpec {
    double p = 1.0;                            // weight of the + branch
    std::map<BitString, double> weights;       // over canonical l

    std::size_t num_qubits() const;
    // Throws InvalidSpec / OutOfRange on broken invariants.
    void validate() const;
};

// Uniform weights over the canonical strings of N qubits.
MixedFamilySpec uniform_mixed_family(std::size_t num_qubits, double p);
// Dirichlet(1) weights from a seeded generator.
MixedFamilySpec random_mixed_family(std::size_t num_qubits, double p, std::uint64_t seed);
// p = (1 + c1)/2, p_l = (1 + (-1)^{w(l)} c3) / 2^{N-1}. N must be even.
MixedFamilySpec bromley_family(std::size_t num_qubits, double c1, double c3);

DensityMatrix from_pure(std::span<const Complex> amplitudes, bool normalize = false);
DensityMatrix basis_state(std::size_t dim, std::size_t index);
DensityMatrix maximally_mixed(std::size_t dim);
DensityMatrix dephase(const DensityMatrix& rho);

// Amplitudes of (|l> + sign |l-bar>)/sqrt(2).
std::vector<Complex> phi_amplitudes(const BitString& l, int sign);
DensityMatrix phi_state(const BitString& l, int sign);
DensityMatrix mixed_family(const MixedFamilySpec& spec);

// Normalised G G^dagger with G a dim x rank complex Gaussian matrix.
DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed);
DensityMatrix random_pure(std::size_t dim, std::uint64_t seed);
// Random probability vector on the diagonal, optionally with forced zeros.
DensityMatrix random_diagonal(std::size_t dim, std::uint64_t seed, std::size_t zeros = 0);

// Convex combination w a + (1 - w) b.
DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double w);

std::size_t qubit_count(std::size_t dim);  // throws InvalidSpec unless dim is a power of two

}  // namespace qcoh
