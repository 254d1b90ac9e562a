#include "qcoh/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "qcoh/error.hpp"

namespace qcoh {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::InvalidCanonicalForm: return "InvalidCanonicalForm";
        case ErrorCode::BadRank: return "BadRank";
        case ErrorCode::InvalidState: return "InvalidState";
        case ErrorCode::InvalidChannel: return "InvalidChannel";
        case ErrorCode::NotDiagonal: return "NotDiagonal";
        case ErrorCode::NotIncoherentChannel: return "NotIncoherentChannel";
        case ErrorCode::NotStrictlyIncoherent: return "NotStrictlyIncoherent";
        case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::NumericalFailure: return "NumericalFailure";
    }
    return "Unknown";
}

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != dim_ * dim_) {
        throw Error(ErrorCode::DimensionMismatch,
                    "expected " + std::to_string(dim_ * dim_) + " entries, got " +
                        std::to_string(entries_.size()));
    }
    if (!is_finite()) throw Error(ErrorCode::NumericalFailure, "matrix has non-finite entries");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
    entries_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
        if (row.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket, std::span<const Complex> bra) {
    if (ket.size() != bra.size()) throw Error(ErrorCode::DimensionMismatch, "outer product");
    ComplexMatrix m(ket.size());
    for (std::size_t i = 0; i < ket.size(); ++i)
        for (std::size_t j = 0; j < bra.size(); ++j) m(i, j) = ket[i] * std::conj(bra[j]);
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

std::vector<double> ComplexMatrix::real_diagonal() const {
    std::vector<double> d(dim_);
    for (std::size_t i = 0; i < dim_; ++i) d[i] = (*this)(i, i).real();
    return d;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : entries_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::hermiticity_deviation() const {
    double m = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

double ComplexMatrix::max_off_diagonal() const {
    double m = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            if (i != j) m = std::max(m, std::abs((*this)(i, j)));
    return m;
}

bool ComplexMatrix::is_finite() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (dim_ != other.dim_) throw Error(ErrorCode::DimensionMismatch, "matrix addition");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (dim_ != other.dim_) throw Error(ErrorCode::DimensionMismatch, "matrix subtraction");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
    for (auto& z : entries_) z *= scalar;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.dim_ != rhs.dim_) throw Error(ErrorCode::DimensionMismatch, "matrix product");
    const std::size_t n = lhs.dim_;
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex a = lhs(i, k);
            if (a == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "max_abs_diff");
    double m = 0.0;
    const auto ea = a.entries();
    const auto eb = b.entries();
    for (std::size_t k = 0; k < ea.size(); ++k) m = std::max(m, std::abs(ea[k] - eb[k]));
    return m;
}

ComplexMatrix sandwich(const ComplexMatrix& a, const ComplexMatrix& b) {
    const ComplexMatrix ab = a * b;
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += ab(i, k) * std::conj(a(j, k));
            out(i, j) = acc;
        }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t da = a.dim();
    const std::size_t db = b.dim();
    ComplexMatrix out(da * db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (std::size_t k = 0; k < db; ++k)
                for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
        }
    return out;
}

namespace {

double off_diagonal_norm2(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.dim(); ++p)
        for (std::size_t q = p + 1; q < a.dim(); ++q) s += std::norm(a(p, q));
    return s;
}

double frobenius_norm2(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& z : a.entries()) s += std::norm(z);
    return s;
}

// A <- G^dagger A G, V <- V G for the unitary that zeroes A(p, q).
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const Complex phase = apq / mag;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double tau = (aqq - app) / (2.0 * mag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const Complex g_pq = s * phase;              // G(p, q)
    const Complex g_qp = -s * std::conj(phase);  // G(q, p)

    const std::size_t n = a.dim();
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * c + akq * g_qp;
        a(k, q) = akp * g_pq + akq * c;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = c * apk + std::conj(g_qp) * aqk;
        a(q, k) = std::conj(g_pq) * apk + c * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = vkp * c + vkq * g_qp;
        v(k, q) = vkp * g_pq + vkq * c;
    }
}

}  // namespace

Spectrum hermitian_eig(const ComplexMatrix& m, double hermiticity_tol) {
    const double dev = m.hermiticity_deviation();
    if (!(dev <= hermiticity_tol)) {
        std::ostringstream msg;
        msg << "max |M - M^dagger| = " << dev << " exceeds " << hermiticity_tol;
        throw Error(ErrorCode::NotHermitian, msg.str());
    }
    const std::size_t n = m.dim();
    ComplexMatrix a = m;
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
            a(j, i) = std::conj(a(i, j));
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale2 = frobenius_norm2(a);
    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        const double off = off_diagonal_norm2(a);
        if (off == 0.0 || off <= 1e-30 * scale2) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::norm(a(p, q)) <= 1e-36 * scale2) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                jacobi_rotate(a, v, p, q);
            }
    }
    if (sweep == kMaxSweeps) throw Error(ErrorCode::NumericalFailure, "Jacobi did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });
    Spectrum spec{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t c = 0; c < n; ++c) {
        spec.eigenvalues[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r) spec.eigenvectors(r, c) = v(r, order[c]);
    }
    return spec;
}

ComplexMatrix reconstruct(const ComplexMatrix& eigenvectors, std::span<const double> values) {
    const std::size_t n = eigenvectors.dim();
    if (values.size() != n) throw Error(ErrorCode::DimensionMismatch, "reconstruct");
    ComplexMatrix out(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (values[k] == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vik = values[k] * eigenvectors(i, k);
            for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eigenvectors(j, k));
        }
    }
    return out;
}

ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    // columns as vectors, modified Gram-Schmidt
    std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(dim));
    for (auto& col : cols)
        for (auto& z : col) z = Complex(gauss(rng), gauss(rng));
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t prev = 0; prev < c; ++prev) {
            Complex overlap = 0.0;
            for (std::size_t r = 0; r < dim; ++r) overlap += std::conj(cols[prev][r]) * cols[c][r];
            for (std::size_t r = 0; r < dim; ++r) cols[c][r] -= overlap * cols[prev][r];
        }
        double norm = 0.0;
        for (const auto& z : cols[c]) norm += std::norm(z);
        norm = std::sqrt(norm);
        for (auto& z : cols[c]) z /= norm;
    }
    ComplexMatrix u(dim);
    for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t r = 0; r < dim; ++r) u(r, c) = cols[c][r];
    return u;
}

double entropy_term(double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; }

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::OutOfRange, "binary entropy argument " + std::to_string(p));
    }
    return entropy_term(p) + entropy_term(1.0 - p);
}

double shannon_entropy(std::span<const double> probabilities) {
    double h = 0.0;
    for (double p : probabilities) h += entropy_term(p);
    return h;
}

}  // namespace qcoh
