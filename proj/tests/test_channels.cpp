#include <doctest.h>

#include <cmath>

#include "qcoh/channels.hpp"
#include "qcoh/coherence.hpp"
#include "qcoh/error.hpp"
#include "test_support.hpp"

using namespace qcoh;

namespace {

const ComplexMatrix kX{{0.0, 1.0}, {1.0, 0.0}};
const ComplexMatrix kY{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
const ComplexMatrix kZ{{1.0, 0.0}, {0.0, -1.0}};

KrausChannel incoherent_only_channel() {
    const ComplexMatrix k1{{M_SQRT1_2, M_SQRT1_2}, {0.0, 0.0}};
    const ComplexMatrix k2{{0.0, 0.0}, {M_SQRT1_2, -M_SQRT1_2}};
    return KrausChannel({k1, k2}, "io-only");
}

}  // namespace

TEST_CASE("KrausChannel construction") {
    CHECK(KrausChannel::identity(3).completeness_residual() == 0.0);
    CHECK_THROWS_AS(KrausChannel({}, "empty"), Error);
    CHECK_THROWS_AS(KrausChannel({ComplexMatrix::identity(2), ComplexMatrix::identity(3)}, "mixed"), Error);
    CHECK_THROWS_AS(KrausChannel({ComplexMatrix::identity(2) * 0.9}, "lossy"), Error);
    CHECK_THROWS_AS(KrausChannel::unitary(ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}, "shear"), Error);
    for (const auto& ch : {bit_flip(0.1), phase_flip(0.4), bit_phase_flip(0.7), depolarizing(0.3),
                           phase_damping(0.6), amplitude_damping(0.2)}) {
        CHECK(ch.completeness_residual() <= 1e-15);
    }
    CHECK_THROWS_AS(bit_flip(-0.1), Error);
    CHECK_THROWS_AS(amplitude_damping(1.5), Error);
    CHECK(bit_flip(0.3).label() == "bitflip(q=0.3)");
}

TEST_CASE("standard channels on small inputs") {
    const DensityMatrix zero = basis_state(2, 0);
    CHECK(max_abs_diff(apply(bit_flip(1.0), zero).matrix(), basis_state(2, 1).matrix()) <= 1e-15);

    const std::vector<double> dz{0.85, 0.15};
    CHECK(max_abs_diff(apply(depolarizing(0.3), zero).matrix(), ComplexMatrix::diagonal(dz)) <= 1e-15);

    const std::vector<Complex> plus{M_SQRT1_2, M_SQRT1_2};
    const DensityMatrix p = from_pure(plus);
    const ComplexMatrix ad = apply(amplitude_damping(0.36), p).matrix();
    CHECK(std::abs(ad(0, 0) - 0.68) <= 1e-15);
    CHECK(std::abs(ad(1, 1) - 0.32) <= 1e-15);
    CHECK(std::abs(ad(0, 1) - 0.4) <= 1e-15);

    // off-diagonal scales by 1 - lambda
    const ComplexMatrix pd = apply(phase_damping(0.75), p).matrix();
    CHECK(std::abs(pd(0, 1) - 0.125) <= 1e-15);
    CHECK(max_abs_diff(apply(phase_damping(1.0), p).matrix(), maximally_mixed(2).matrix()) <= 1e-15);
    CHECK(std::abs(pd(0, 0) - 0.5) <= 1e-15);

    const ComplexMatrix pf = apply(phase_flip(0.25), p).matrix();
    CHECK(std::abs(pf(0, 1) - 0.25) <= 1e-15);

    // Pauli-form oracles: (1-q) rho + q P rho P
    const DensityMatrix rho = random_density(2, 2, 21);
    const double q = 0.35;
    for (const auto& [ch, pauli] : {std::pair{bit_flip(q), kX}, std::pair{phase_flip(q), kZ}, std::pair{bit_phase_flip(q), kY}}) {
        const ComplexMatrix expected = rho.matrix() * (1 - q) + pauli * rho.matrix() * pauli * q;
        CHECK(max_abs_diff(apply(ch, rho.matrix()), expected) <= 1e-15);
    }
    // (1-q) rho + q I/2
    const ComplexMatrix dep = rho.matrix() * (1 - q) + ComplexMatrix::identity(2) * (q / 2);
    CHECK(max_abs_diff(apply(depolarizing(q), rho.matrix()), dep) <= 1e-15);
    const ComplexMatrix pauli_twirl =
        rho.matrix() * (1 - 0.75 * q) + (kX * rho.matrix() * kX + kY * rho.matrix() * kY + kZ * rho.matrix() * kZ) * (q / 4);
    CHECK(max_abs_diff(dep, pauli_twirl) <= 1e-15);
}

TEST_CASE("compose and tensor") {
    const DensityMatrix rho = random_density(2, 2, 3);
    const KrausChannel both = compose(phase_flip(0.2), amplitude_damping(0.4));
    CHECK(both.operators().size() == 4);
    CHECK(max_abs_diff(apply(both, rho.matrix()),
                       apply(phase_flip(0.2), apply(amplitude_damping(0.4), rho.matrix()))) <= 1e-15);

    const KrausChannel t = tensor({bit_flip(0.1), phase_flip(0.3), amplitude_damping(0.5)});
    CHECK(t.dim() == 8);
    CHECK(t.operators().size() == 8);
    CHECK(t.completeness_residual() <= 1e-14);

    // product input gives product output
    const DensityMatrix a = random_density(2, 2, 5);
    const DensityMatrix b = random_density(2, 1, 6);
    const KrausChannel two = tensor({depolarizing(0.2), phase_damping(0.7)});
    CHECK(max_abs_diff(apply(two, kron(a.matrix(), b.matrix())),
                       kron(apply(depolarizing(0.2), a.matrix()), apply(phase_damping(0.7), b.matrix()))) <= 1e-15);
}

TEST_CASE("local_channel") {
    const LocalChannelSpec spec{{{QubitChannelKind::BitFlip, 0.2}, {QubitChannelKind::PhaseFlip, 0.5}}};
    const KrausChannel ch = local_channel(spec);
    const DensityMatrix rho = random_density(4, 4, 2);
    CHECK(max_abs_diff(apply(ch, rho.matrix()), apply(tensor({bit_flip(0.2), phase_flip(0.5)}), rho.matrix())) == 0.0);
    CHECK(parse_qubit_channel_kind("amplitudedamping") == QubitChannelKind::AmplitudeDamping);
    CHECK(std::string(parameter_key(QubitChannelKind::PhaseDamping)) == "l");
    CHECK_THROWS_AS(parse_qubit_channel_kind("flip"), Error);
}

TEST_CASE("classify") {
    for (const auto& ch : {bit_flip(0.3), phase_flip(0.6), bit_phase_flip(0.2), depolarizing(0.5),
                           phase_damping(0.9), amplitude_damping(0.4)}) {
        CHECK(classify(ch).kind == IncoherenceClass::StrictlyIncoherent);
    }
    CHECK(classify(tensor({bit_flip(0.3), amplitude_damping(0.6), depolarizing(0.1)})).kind ==
          IncoherenceClass::StrictlyIncoherent);

    const ChannelClass h = classify(hadamard_channel());
    CHECK(h.kind == IncoherenceClass::NotIncoherent);
    REQUIRE(h.witness);
    CHECK(h.witness->is_column);
    CHECK(h.witness->line == 0);

    CHECK(classify(KrausChannel::unitary(random_unitary(4, 8), "u")).kind == IncoherenceClass::NotIncoherent);

    const ChannelClass io = classify(incoherent_only_channel());
    CHECK(io.kind == IncoherenceClass::IncoherentOnly);
    REQUIRE(io.witness);
    CHECK_FALSE(io.witness->is_column);
    CHECK(io.witness->line == 0);
    CHECK(io.witness->first == 0);
    CHECK(io.witness->second == 1);

    // zero_tol decides what counts as an entry
    const ComplexMatrix almost{{1.0, 1e-13}, {0.0, 1.0}};
    CHECK(classify(std::vector<ComplexMatrix>{almost}).kind == IncoherenceClass::StrictlyIncoherent);
    CHECK(classify(std::vector<ComplexMatrix>{almost}, 1e-14).kind == IncoherenceClass::NotIncoherent);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        CHECK(classify(random_strictly_incoherent(6, 3, seed, 0.3)).kind == IncoherenceClass::StrictlyIncoherent);
        CHECK(classify(random_measure_prepare(3, seed)).kind != IncoherenceClass::StrictlyIncoherent);
    }
}

TEST_CASE("incoherent channels keep incoherent states incoherent") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::size_t dim = 2 + seed % 7;
        const DensityMatrix delta = random_diagonal(dim, seed, seed % 2);
        const KrausChannel sio = random_strictly_incoherent(dim, 1 + seed % 5, 500 + seed, 0.2);
        CHECK(apply(sio, delta).matrix().max_off_diagonal() <= 1e-14);
        const KrausChannel io = random_measure_prepare(dim, seed);
        CHECK(apply(io, delta).matrix().max_off_diagonal() <= 1e-14);

        // SIO commutes with dephasing
        const DensityMatrix rho = random_density(dim, 1 + seed % dim, 900 + seed);
        CHECK(max_abs_diff(apply(sio, dephase(rho)).matrix(), dephase(apply(sio, rho)).matrix()) <= 1e-12);
    }
    // the incoherent-only example does not commute with dephasing
    const std::vector<Complex> plus{M_SQRT1_2, M_SQRT1_2};
    const DensityMatrix p = from_pure(plus);
    const KrausChannel io = incoherent_only_channel();
    CHECK(max_abs_diff(apply(io, dephase(p)).matrix(), dephase(apply(io, p)).matrix()) > 0.1);
}

TEST_CASE("coherence does not increase under incoherent channels") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t dim = 2 + seed % 7;
        const DensityMatrix rho = random_density(dim, 1 + seed % dim, seed);
        const KrausChannel ch = seed % 2 == 0 ? random_strictly_incoherent(dim, 1 + seed % 4, 300 + seed)
                                              : random_measure_prepare(dim, 300 + seed);
        const DensityMatrix out = apply(ch, rho);
        CHECK(c_rel_ent(out) <= c_rel_ent(rho) + 1e-8);
        if (seed % 2 == 0) CHECK(c_l1(out) <= c_l1(rho) + 1e-8);
    }
}
