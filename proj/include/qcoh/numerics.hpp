#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace qcoh {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major. All entries are finite.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra);

    std::size_t dim() const noexcept { return dim_; }
    std::span<const Complex> entries() const noexcept { return entries_; }

    Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    std::vector<double> real_diagonal() const;
    double max_abs() const;
    // max |M - M^dagger|
    double hermiticity_deviation() const;
    // max modulus over entries with row != col
    double max_off_diagonal() const;
    bool is_finite() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scalar);

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
    friend ComplexMatrix operator*(ComplexMatrix lhs, Complex scalar) { return lhs *= scalar; }
    friend ComplexMatrix operator*(Complex scalar, ComplexMatrix rhs) { return rhs *= scalar; }
    friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

// max |A - B| over entries; dims must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// A * B * A^dagger without materialising A^dagger.
ComplexMatrix sandwich(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct Spectrum {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns are orthonormal eigenvectors
};

inline constexpr double kDefaultHermiticityTol = 1e-10;

// Cyclic complex Jacobi. Throws Error(NotHermitian) when max|M - M^dagger|
// exceeds hermiticity_tol; the input is symmetrised before rotation.
Spectrum hermitian_eig(const ComplexMatrix& m, double hermiticity_tol = kDefaultHermiticityTol);

// V diag(values) V^dagger
ComplexMatrix reconstruct(const ComplexMatrix& eigenvectors, std::span<const double> values);

// Haar-ish random unitary from Gram-Schmidt on a complex Gaussian matrix.
ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed);

// -x log2 x with 0 log 0 = 0.
double entropy_term(double x);

// H(p) in bits. Throws OutOfRange outside [0, 1].
double binary_entropy(double p);

// -sum p log2 p over a probability vector.
double shannon_entropy(std::span<const double> probabilities);

}  // namespace qcoh
