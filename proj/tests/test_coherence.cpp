#include <doctest.h>

#include <cmath>

#include "qcoh/coherence.hpp"
#include "qcoh/entropy.hpp"

using namespace qcoh;

TEST_CASE("measure values") {
    const std::vector<Complex> plus{M_SQRT1_2, M_SQRT1_2};
    const CoherenceReport p = measure_panel(from_pure(plus));
    CHECK(std::abs(p.c_l1 - 1.0) <= 1e-15);
    CHECK(std::abs(p.c_rel_ent - 1.0) <= 1e-12);
    CHECK(p.cross_check_residual <= 1e-12);

    const CoherenceReport bell = measure_panel(phi_state(BitString::parse("00"), +1));
    CHECK(std::abs(bell.c_l1 - 1.0) <= 1e-15);
    CHECK(std::abs(bell.c_rel_ent - 1.0) <= 1e-12);

    CHECK(c_l1(maximally_mixed(4)) == 0.0);
    CHECK(c_rel_ent(maximally_mixed(4)) == 0.0);

    // maximally coherent state in dim d: C_l1 = d - 1, C_r = log2 d
    const std::vector<Complex> uniform(8, Complex(1.0 / std::sqrt(8.0)));
    CHECK(std::abs(c_l1(from_pure(uniform)) - 7.0) <= 1e-12);
    CHECK(std::abs(c_rel_ent(from_pure(uniform)) - 3.0) <= 1e-12);

    // sqrt(3)/2 |0> + 1/2 |1>: C_r = H(3/4), C_l1 = sqrt(3)/2
    const std::vector<Complex> tilted{std::sqrt(3.0) / 2.0, 0.5};
    CHECK(std::abs(c_rel_ent(from_pure(tilted)) - 0.8112781244591328) <= 1e-12);
    CHECK(std::abs(c_l1(from_pure(tilted)) - std::sqrt(3.0) / 2.0) <= 1e-15);

    // mixed family with p = 0.9: C_r = 1 - H(0.9), C_l1 = 0.8
    const DensityMatrix m = mixed_family(uniform_mixed_family(2, 0.9));
    CHECK(std::abs(c_rel_ent(m) - 0.5310044064107189) <= 1e-12);
    CHECK(std::abs(c_l1(m) - 0.8) <= 1e-15);
}

TEST_CASE("faithfulness") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const DensityMatrix delta = random_diagonal(2 + seed % 6, seed, seed % 3);
        CHECK(c_l1(delta) == 0.0);
        CHECK(c_rel_ent(delta) <= 1e-12);
        const DensityMatrix rho = random_density(2 + seed % 6, 1 + seed % 2, seed);
        CHECK(c_l1(rho) > 1e-6);
        CHECK(c_rel_ent(rho) > 1e-9);
    }
}

TEST_CASE("convexity") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::size_t dim = 2 + seed % 6;
        const DensityMatrix a = random_density(dim, 1 + seed % dim, 2 * seed);
        const DensityMatrix b = random_density(dim, 1 + (seed / 2) % dim, 2 * seed + 1);
        const double w = 0.1 + 0.8 * static_cast<double>(seed % 9) / 8.0;
        const DensityMatrix m = mix(a, b, w);
        CHECK(c_l1(m) <= w * c_l1(a) + (1 - w) * c_l1(b) + 1e-12);
        CHECK(c_rel_ent(m) <= w * c_rel_ent(a) + (1 - w) * c_rel_ent(b) + 1e-9);
    }
}

TEST_CASE("entropy difference agrees with relative entropy to the dephased state") {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const std::size_t dim = 1 + seed % 16;
        const DensityMatrix rho = random_density(dim, 1 + (seed / 16) % dim, seed);
        const CoherenceReport r = measure_panel(rho);
        CHECK(r.cross_check_residual <= 1e-8);
        CHECK(r.c_rel_ent >= 0.0);
        CHECK(r.c_rel_ent <= std::log2(static_cast<double>(dim)) + 1e-12);
    }
}

TEST_CASE("selective averages do not exceed the input coherence") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t dim = 2 + seed % 7;
        const DensityMatrix rho = random_density(dim, 1 + seed % dim, 7 * seed);
        const KrausChannel sio = random_strictly_incoherent(dim, 1 + seed % 5, 11 * seed, 0.2);
        const SelectiveAverages avg = selective_average(sio, rho);
        CHECK(avg.c_l1 <= c_l1(rho) + 1e-8);
        CHECK(avg.c_rel_ent <= c_rel_ent(rho) + 1e-8);
    }
    // unitary incoherent channel: one outcome, average equals the output
    const DensityMatrix rho = random_density(4, 2, 4);
    const auto avg = selective_average(bit_flip(1.0), random_density(2, 2, 9));
    CHECK(std::abs(avg.c_l1 - c_l1(random_density(2, 2, 9))) <= 1e-12);
    CHECK(selective_average(KrausChannel::identity(4), rho).c_rel_ent == doctest::Approx(c_rel_ent(rho)));
}
