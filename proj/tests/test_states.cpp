#include <doctest.h>

#include <cmath>

#include "qcoh/channels.hpp"
#include "qcoh/entropy.hpp"
#include "qcoh/error.hpp"
#include "qcoh/states.hpp"

using namespace qcoh;

namespace {

void check_valid(const DensityMatrix& rho) {
    CHECK(rho.matrix().hermiticity_deviation() <= 1e-10);
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) <= 1e-10);
    CHECK(hermitian_eig(rho.matrix(), 1e-10).eigenvalues.front() >= -1e-10);
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::NumericalFailure;
}

}  // namespace

TEST_CASE("BitString") {
    const BitString l = BitString::parse("0110");
    CHECK(l.size() == 4);
    CHECK(l.index() == 6);
    CHECK(l.complement().str() == "1001");
    CHECK(l.hamming_weight() == 2);
    CHECK(l.is_canonical());
    CHECK_FALSE(l.complement().is_canonical());
    CHECK(BitString::from_index(6, 4) == l);
    CHECK_THROWS_AS(BitString::parse("01a"), Error);
    CHECK_THROWS_AS(BitString::parse(""), Error);
    CHECK(canonical_strings(3).size() == 4);
    CHECK(canonical_strings(3).back().str() == "011");
}

TEST_CASE("from_pure") {
    const std::vector<Complex> zero{1.0, 0.0};
    CHECK(from_pure(zero).matrix() == ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}});

    const std::vector<Complex> plus{M_SQRT1_2, M_SQRT1_2};
    const DensityMatrix p = from_pure(plus);
    for (const auto& z : p.matrix().entries()) CHECK(std::abs(z - 0.5) <= 1e-15);

    const DensityMatrix bell = from_pure(phi_amplitudes(BitString::parse("00"), +1));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const bool corner = (i == 0 || i == 3) && (j == 0 || j == 3);
            CHECK(std::abs(bell(i, j) - (corner ? 0.5 : 0.0)) <= 1e-15);
        }
    CHECK(std::abs(bell.purity() - 1.0) <= 1e-12);

    const std::vector<Complex> unnormalised{1.0, 1.0};
    CHECK(code_of([&] { from_pure(unnormalised); }) == ErrorCode::NotNormalized);
    CHECK(std::abs(from_pure(unnormalised, true)(0, 1) - 0.5) <= 1e-15);
}

TEST_CASE("DensityMatrix validation") {
    CHECK(code_of([] { DensityMatrix::from_matrix(ComplexMatrix{{0.5, 0.1}, {0.2, 0.5}}); }) ==
          ErrorCode::InvalidState);
    CHECK(code_of([] { DensityMatrix::from_matrix(ComplexMatrix{{0.6, 0.0}, {0.0, 0.6}}); }) ==
          ErrorCode::InvalidState);
    CHECK(code_of([] { DensityMatrix::from_matrix(ComplexMatrix{{1.1, 0.0}, {0.0, -0.1}}); }) ==
          ErrorCode::InvalidState);

    // tiny negative eigenvalues are clipped, the trace renormalised
    const DensityMatrix clipped = DensityMatrix::from_matrix(ComplexMatrix{{1.0 + 5e-11, 0.0}, {0.0, -5e-11}});
    CHECK(clipped(1, 1).real() == 0.0);
    CHECK(clipped(0, 0).real() == 1.0);
    CHECK(clipped.is_diagonal());

    const ComplexMatrix u = random_unitary(3, 4);
    const std::vector<double> nearly{-5e-11, 0.3, 0.7 + 5e-11};
    const DensityMatrix rotated = DensityMatrix::from_matrix(u * ComplexMatrix::diagonal(nearly) * u.adjoint());
    CHECK(rotated.spectrum().eigenvalues.front() >= 0.0);
    check_valid(rotated);
}

TEST_CASE("dephase") {
    const std::vector<double> d{0.2, 0.3, 0.5};
    const DensityMatrix diag = DensityMatrix::from_matrix(ComplexMatrix::diagonal(d));
    CHECK(dephase(diag).matrix() == diag.matrix());

    const std::vector<Complex> plus{M_SQRT1_2, M_SQRT1_2};
    CHECK(max_abs_diff(dephase(from_pure(plus)).matrix(), maximally_mixed(2).matrix()) <= 1e-15);

    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const DensityMatrix rho = random_density(4, 1 + seed % 4, seed);
        const DensityMatrix once = dephase(rho);
        CHECK(dephase(once).matrix() == once.matrix());
        CHECK(rho.matrix().real_diagonal() == once.matrix().real_diagonal());
        const KrausChannel sio = random_strictly_incoherent(4, 3, 1000 + seed);
        CHECK(apply(sio, once.matrix()).max_off_diagonal() <= 1e-12);
    }
}

TEST_CASE("dephase minimises relative entropy over incoherent states") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const DensityMatrix rho = random_density(4, 4, 40 + seed);
        const double best = relative_entropy(rho, dephase(rho));
        for (std::uint64_t k = 0; k < 100; ++k) {
            const DensityMatrix delta = random_diagonal(4, 1000 * seed + k);
            CHECK(best <= relative_entropy(rho, delta) + 1e-9);
        }
    }
}

TEST_CASE("phi_state") {
    const DensityMatrix bell = phi_state(BitString::parse("00"), +1);
    CHECK(bell.matrix() == ComplexMatrix{{0.5, 0.0, 0.0, 0.5}, {0.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0}, {0.5, 0.0, 0.0, 0.5}});

    const DensityMatrix psi_minus = phi_state(BitString::parse("01"), -1);
    CHECK(psi_minus(1, 2) == Complex(-0.5));
    CHECK(psi_minus(1, 1) == Complex(0.5));

    const DensityMatrix ghz = phi_state(BitString::parse("000"), +1);
    CHECK(ghz(0, 7) == Complex(0.5));
    CHECK(ghz(7, 7) == Complex(0.5));

    CHECK(code_of([] { phi_state(BitString::parse("10"), +1); }) == ErrorCode::InvalidCanonicalForm);

    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<std::vector<Complex>> kets;
        for (const auto& l : canonical_strings(n))
            for (int sign : {1, -1}) {
                check_valid(phi_state(l, sign));
                kets.push_back(phi_amplitudes(l, sign));
            }
        for (std::size_t a = 0; a < kets.size(); ++a)
            for (std::size_t b = a + 1; b < kets.size(); ++b) {
                Complex overlap = 0.0;
                for (std::size_t i = 0; i < kets[a].size(); ++i) overlap += std::conj(kets[a][i]) * kets[b][i];
                CHECK(std::abs(overlap) <= 1e-12);
            }
    }
}

TEST_CASE("mixed_family") {
    MixedFamilySpec ghz_spec{1.0, {}};
    for (const auto& l : canonical_strings(3)) ghz_spec.weights[l] = l.index() == 0 ? 1.0 : 0.0;
    CHECK(max_abs_diff(mixed_family(ghz_spec).matrix(), phi_state(BitString::parse("000"), +1).matrix()) == 0.0);

    const DensityMatrix even = mixed_family(random_mixed_family(3, 0.5, 2));
    CHECK(even.is_diagonal());

    // By hand for N = 2, c1 = 0.6, c3 = 0.2: p = 0.8, p_00 = 0.6, p_01 = 0.4.
    const DensityMatrix b = mixed_family(bromley_family(2, 0.6, 0.2));
    const ComplexMatrix expected{{0.3, 0.0, 0.0, 0.18}, {0.0, 0.2, 0.12, 0.0}, {0.0, 0.12, 0.2, 0.0}, {0.18, 0.0, 0.0, 0.3}};
    CHECK(max_abs_diff(b.matrix(), expected) <= 1e-15);
    check_valid(b);

    MixedFamilySpec bad{0.5, {{BitString::parse("00"), 0.7}, {BitString::parse("01"), 0.2}}};
    CHECK(code_of([&] { mixed_family(bad); }) == ErrorCode::InvalidSpec);
    bad.weights = {{BitString::parse("10"), 1.0}};
    CHECK(code_of([&] { mixed_family(bad); }) == ErrorCode::InvalidCanonicalForm);
    bad.weights = {{BitString::parse("00"), 1.0}};
    bad.p = 1.2;
    CHECK(code_of([&] { mixed_family(bad); }) == ErrorCode::OutOfRange);
    CHECK(code_of([] { bromley_family(3, 0.1, 0.1); }) == ErrorCode::InvalidSpec);
}

TEST_CASE("random states") {
    CHECK(std::abs(random_density(5, 1, 3).purity() - 1.0) <= 1e-10);
    CHECK(random_density(4, 4, 1).matrix() != random_density(4, 4, 2).matrix());
    CHECK(random_density(4, 4, 1).matrix() == random_density(4, 4, 1).matrix());
    CHECK(code_of([] { random_density(3, 0, 1); }) == ErrorCode::BadRank);
    CHECK(code_of([] { random_density(3, 4, 1); }) == ErrorCode::BadRank);

    ComplexMatrix mean(2);
    for (std::uint64_t seed = 0; seed < 1000; ++seed) mean += random_density(2, 2, seed).matrix();
    mean *= 1.0 / 1000.0;
    CHECK(max_abs_diff(mean, maximally_mixed(2).matrix()) <= 5e-2);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        check_valid(random_density(1 + seed % 8, 1 + seed % (1 + seed % 8), seed));
        check_valid(random_diagonal(6, seed, seed % 5));
    }
}
