#include "qcoh/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "qcoh/error.hpp"

namespace qcoh {

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix& m, const StateTolerances& tol) {
    if (m.dim() == 0) throw Error(ErrorCode::InvalidState, "empty matrix");
    if (!m.is_finite()) throw Error(ErrorCode::InvalidState, "non-finite entries");

    const double herm = m.hermiticity_deviation();
    if (herm > tol.hermiticity) {
        std::ostringstream msg;
        msg << "not Hermitian (max |rho - rho^dagger| = " << herm << ")";
        throw Error(ErrorCode::InvalidState, msg.str());
    }
    const std::size_t n = m.dim();
    ComplexMatrix h = m;
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
            h(j, i) = std::conj(h(i, j));
        }
    }
    const double tr = h.trace().real();
    if (std::abs(tr - 1.0) > tol.trace) {
        std::ostringstream msg;
        msg << "trace " << tr << " differs from 1";
        throw Error(ErrorCode::InvalidState, msg.str());
    }

    Spectrum spec = hermitian_eig(h, 0.0);
    const double min_eig = spec.eigenvalues.front();
    if (min_eig < -tol.psd) {
        std::ostringstream msg;
        msg << "not positive semidefinite (min eigenvalue " << min_eig << ")";
        throw Error(ErrorCode::InvalidState, msg.str());
    }
    if (min_eig < 0.0) {
        for (double& v : spec.eigenvalues) v = std::max(v, 0.0);
        const double sum = std::accumulate(spec.eigenvalues.begin(), spec.eigenvalues.end(), 0.0);
        for (double& v : spec.eigenvalues) v /= sum;
        if (h.max_off_diagonal() == 0.0) {
            // diagonal input: clip in place so the matrix stays exactly diagonal
            std::vector<double> d = h.real_diagonal();
            for (double& v : d) v = std::max(v, 0.0) / sum;
            h = ComplexMatrix::diagonal(d);
            spec = hermitian_eig(h, 0.0);
        } else {
            h = reconstruct(spec.eigenvectors, spec.eigenvalues);
        }
    }
    return DensityMatrix(std::move(h), std::move(spec));
}

double DensityMatrix::purity() const {
    double s = 0.0;
    for (double v : spectrum_.eigenvalues) s += v * v;
    return s;
}

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) throw Error(ErrorCode::InvalidSpec, "bit string must have at least one bit");
    for (auto b : bits_)
        if (b > 1) throw Error(ErrorCode::InvalidSpec, "bit values must be 0 or 1");
}

BitString BitString::parse(std::string_view text) {
    std::vector<std::uint8_t> bits;
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw Error(ErrorCode::InvalidSpec, "bad bit string '" + std::string(text) + "'");
        }
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return BitString(std::move(bits));
}

BitString BitString::from_index(std::size_t index, std::size_t num_bits) {
    std::vector<std::uint8_t> bits(num_bits);
    for (std::size_t i = 0; i < num_bits; ++i) bits[i] = (index >> (num_bits - 1 - i)) & 1U;
    return BitString(std::move(bits));
}

std::size_t BitString::index() const {
    std::size_t idx = 0;
    for (auto b : bits_) idx = (idx << 1) | b;
    return idx;
}

BitString BitString::complement() const {
    std::vector<std::uint8_t> bits(bits_.size());
    std::transform(bits_.begin(), bits_.end(), bits.begin(),
                   [](std::uint8_t b) { return static_cast<std::uint8_t>(1 - b); });
    return BitString(std::move(bits));
}

std::size_t BitString::hamming_weight() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::string BitString::str() const {
    std::string s;
    for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
    return s;
}

std::vector<BitString> canonical_strings(std::size_t num_qubits) {
    if (num_qubits == 0) throw Error(ErrorCode::InvalidSpec, "need at least one qubit");
    std::vector<BitString> out;
    const std::size_t half = std::size_t{1} << (num_qubits - 1);
    out.reserve(half);
    for (std::size_t i = 0; i < half; ++i) out.push_back(BitString::from_index(i, num_qubits));
    return out;
}

std::size_t MixedFamilySpec::num_qubits() const {
    return weights.empty() ? 0 : weights.begin()->first.size();
}

void MixedFamilySpec::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::OutOfRange, "p must lie in [0, 1]");
    if (weights.empty()) throw Error(ErrorCode::InvalidSpec, "mixed family needs weights");
    const std::size_t n = num_qubits();
    double total = 0.0;
    for (const auto& [l, w] : weights) {
        if (l.size() != n) throw Error(ErrorCode::InvalidSpec, "weight strings differ in length");
        if (!l.is_canonical()) {
            throw Error(ErrorCode::InvalidCanonicalForm, "weight string " + l.str() + " has l1 = 1");
        }
        if (!(w >= 0.0)) throw Error(ErrorCode::OutOfRange, "negative weight for " + l.str());
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "weights sum to " << total;
        throw Error(ErrorCode::InvalidSpec, msg.str());
    }
}

MixedFamilySpec uniform_mixed_family(std::size_t num_qubits, double p) {
    MixedFamilySpec spec{p, {}};
    const auto strings = canonical_strings(num_qubits);
    for (const auto& l : strings) spec.weights[l] = 1.0 / static_cast<double>(strings.size());
    return spec;
}

MixedFamilySpec random_mixed_family(std::size_t num_qubits, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);
    MixedFamilySpec spec{p, {}};
    const auto strings = canonical_strings(num_qubits);
    std::vector<double> w(strings.size());
    for (double& x : w) x = expo(rng);
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    for (std::size_t k = 0; k < strings.size(); ++k) spec.weights[strings[k]] = w[k] / sum;
    return spec;
}

MixedFamilySpec bromley_family(std::size_t num_qubits, double c1, double c3) {
    if (num_qubits == 0 || num_qubits % 2 != 0) {
        throw Error(ErrorCode::InvalidSpec, "Bromley preset needs an even number of qubits");
    }
    if (!(std::abs(c1) <= 1.0 && std::abs(c3) <= 1.0)) {
        throw Error(ErrorCode::OutOfRange, "c1 and c3 must lie in [-1, 1]");
    }
    MixedFamilySpec spec{(1.0 + c1) / 2.0, {}};
    const double norm = std::ldexp(1.0, -static_cast<int>(num_qubits - 1));
    for (const auto& l : canonical_strings(num_qubits)) {
        const double parity = (l.hamming_weight() % 2 == 0) ? 1.0 : -1.0;
        spec.weights[l] = (1.0 + parity * c3) * norm;
    }
    return spec;
}

DensityMatrix from_pure(std::span<const Complex> amplitudes, bool normalize) {
    if (amplitudes.empty()) throw Error(ErrorCode::InvalidState, "empty amplitude vector");
    double norm2 = 0.0;
    for (const auto& a : amplitudes) norm2 += std::norm(a);
    const double norm = std::sqrt(norm2);
    std::vector<Complex> psi(amplitudes.begin(), amplitudes.end());
    if (normalize) {
        if (norm == 0.0) throw Error(ErrorCode::NotNormalized, "zero vector");
        for (auto& a : psi) a /= norm;
    } else if (std::abs(norm - 1.0) > 1e-10) {
        std::ostringstream msg;
        msg << "vector norm " << norm << " differs from 1";
        throw Error(ErrorCode::NotNormalized, msg.str());
    }
    return DensityMatrix::from_matrix(ComplexMatrix::outer(psi, psi));
}

DensityMatrix basis_state(std::size_t dim, std::size_t index) {
    if (index >= dim) throw Error(ErrorCode::OutOfRange, "basis index outside dimension");
    ComplexMatrix m(dim);
    m(index, index) = 1.0;
    return DensityMatrix::from_matrix(m);
}

DensityMatrix maximally_mixed(std::size_t dim) {
    return DensityMatrix::from_matrix(ComplexMatrix::identity(dim) * (1.0 / static_cast<double>(dim)));
}

DensityMatrix dephase(const DensityMatrix& rho) {
    return DensityMatrix::from_matrix(ComplexMatrix::diagonal(rho.matrix().real_diagonal()));
}

std::vector<Complex> phi_amplitudes(const BitString& l, int sign) {
    if (!l.is_canonical()) throw Error(ErrorCode::InvalidCanonicalForm, "l1 must be 0, got " + l.str());
    if (sign != 1 && sign != -1) throw Error(ErrorCode::InvalidSpec, "sign must be +1 or -1");
    std::vector<Complex> psi(std::size_t{1} << l.size());
    psi[l.index()] = M_SQRT1_2;
    psi[l.complement().index()] = sign * M_SQRT1_2;
    return psi;
}

DensityMatrix phi_state(const BitString& l, int sign) {
    phi_amplitudes(l, sign);  // validates
    ComplexMatrix m(std::size_t{1} << l.size());
    const std::size_t a = l.index();
    const std::size_t b = l.complement().index();
    m(a, a) = 0.5;
    m(b, b) = 0.5;
    m(a, b) = 0.5 * sign;
    m(b, a) = 0.5 * sign;
    return DensityMatrix::from_matrix(m);
}

DensityMatrix mixed_family(const MixedFamilySpec& spec) {
    spec.validate();
    const std::size_t n = spec.num_qubits();
    ComplexMatrix m(std::size_t{1} << n);
    // p |phi+><phi+| + (1-p) |phi-><phi-| has coherence (2p - 1)/2 between l and l-bar
    const double coherence = (2.0 * spec.p - 1.0) / 2.0;
    for (const auto& [l, w] : spec.weights) {
        const std::size_t a = l.index();
        const std::size_t b = l.complement().index();
        m(a, a) += 0.5 * w;
        m(b, b) += 0.5 * w;
        m(a, b) += coherence * w;
        m(b, a) += coherence * w;
    }
    return DensityMatrix::from_matrix(m);
}

DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
    if (dim == 0) throw Error(ErrorCode::InvalidState, "dimension must be positive");
    if (rank < 1 || rank > dim) {
        throw Error(ErrorCode::BadRank, "rank " + std::to_string(rank) + " outside [1, " +
                                            std::to_string(dim) + "]");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Complex> g(dim * rank);
    for (auto& z : g) z = Complex(gauss(rng), gauss(rng));
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < rank; ++k) acc += g[i * rank + k] * std::conj(g[j * rank + k]);
            m(i, j) = acc;
        }
    m *= 1.0 / m.trace().real();
    return DensityMatrix::from_matrix(m);
}

DensityMatrix random_pure(std::size_t dim, std::uint64_t seed) { return random_density(dim, 1, seed); }

DensityMatrix random_diagonal(std::size_t dim, std::uint64_t seed, std::size_t zeros) {
    if (zeros >= dim) throw Error(ErrorCode::BadRank, "cannot zero every diagonal entry");
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> d(dim);
    for (double& x : d) x = expo(rng);
    std::vector<std::size_t> idx(dim);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    for (std::size_t k = 0; k < zeros; ++k) d[idx[k]] = 0.0;
    const double sum = std::accumulate(d.begin(), d.end(), 0.0);
    for (double& x : d) x /= sum;
    return DensityMatrix::from_matrix(ComplexMatrix::diagonal(d));
}

DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double w) {
    return DensityMatrix::from_matrix(a.matrix() * w + b.matrix() * (1.0 - w));
}

std::size_t qubit_count(std::size_t dim) {
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw Error(ErrorCode::InvalidSpec, "dimension " + std::to_string(dim) + " is not a power of two");
    }
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    return n;
}

}  // namespace qcoh
