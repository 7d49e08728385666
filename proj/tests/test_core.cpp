#include <doctest.h>

#include "lgsim/core.hpp"
#include "test_util.hpp"

using namespace lgsim;
using doctest::Approx;

namespace {
const double kSqrtHalf = 1.0 / std::sqrt(2.0);
}

TEST_CASE("tensor of basis states") {
    StateVector u = StateVector::basis(basis::path(), 0);
    StateVector h = StateVector::basis(basis::pol(), 0);
    StateVector uh = tensor(u, h);
    REQUIRE(uh.dim() == 4);
    CHECK(uh.labels() == std::vector<std::string>{"U,H", "U,V", "D,H", "D,V"});
    CHECK(uh[0] == cdouble{1.0, 0.0});
    CHECK(uh[1] == cdouble{0.0, 0.0});
    CHECK(uh[2] == cdouble{0.0, 0.0});
    CHECK(uh[3] == cdouble{0.0, 0.0});
}

TEST_CASE("tensor of identities is identity") {
    LinearOp i4 = tensor(LinearOp::identity(basis::path()), LinearOp::identity(basis::pol()));
    CHECK(i4.max_abs_diff(LinearOp::identity(i4.labels())) == 0.0);
}

TEST_CASE("sigma_z tensor sigma_y squares to identity") {
    LinearOp a = tensor(sigma_z(basis::path()), sigma_y(basis::pol()));
    LinearOp sq = a * a;  // direct matrix multiplication oracle
    CHECK(sq.max_abs_diff(LinearOp::identity(a.labels())) < 1e-15);
    CHECK(a.is_involutory());
}

TEST_CASE("tensor dimension multiplicativity") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        StateVector a = testutil::random_state(rng, basis::path());
        StateVector b = testutil::random_state(rng, basis::pol());
        CHECK(tensor(a, b).dim() == a.dim() * b.dim());
    }
}

TEST_CASE("apply: identity and M2 action") {
    StateVector u = StateVector::basis(basis::path(), 0);
    CHECK(apply(LinearOp::identity(basis::path()), u)[0] == cdouble{1.0, 0.0});

    StateVector mu = apply(m2_op(), u);
    CHECK(mu[0].real() == Approx(1.0));
    CHECK(mu[1].real() == Approx(0.0));

    StateVector plus = path_state(kSqrtHalf, kSqrtHalf);
    StateVector out = apply(m2_op(), plus);
    CHECK(out[0].real() == Approx(kSqrtHalf));
    CHECK(out[1].real() == Approx(-kSqrtHalf));
}

TEST_CASE("apply rejects basis mismatch") {
    CHECK_THROWS_AS(apply(m2_op(), StateVector::basis(basis::pol(), 0)), BasisMismatch);
}

TEST_CASE("inner products") {
    StateVector u = StateVector::basis(basis::path(), 0);
    StateVector d = StateVector::basis(basis::path(), 1);
    CHECK(inner(u, u).real() == Approx(1.0));
    CHECK(std::abs(inner(u, d)) == Approx(0.0));

    double th = deg2rad(15.0);
    cdouble ov = inner(plus_m3(), psi_pre(th));
    CHECK(ov.real() == Approx((std::cos(th) + std::sin(th)) / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(ov.real() == Approx(0.86603).epsilon(1e-5));
}

TEST_CASE("inner conjugate symmetry on random pairs") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        StateVector a = testutil::random_state(rng, basis::path());
        StateVector b = testutil::random_state(rng, basis::path());
        CHECK(std::abs(inner(a, b) - std::conj(inner(b, a))) < 1e-14);
    }
}

TEST_CASE("exp_involution closed form") {
    LinearOp a = tensor(sigma_z(basis::path()), sigma_y(basis::pol()));

    SUBCASE("gamma = 0 gives identity") {
        CHECK(exp_involution(a, 0.0).max_abs_diff(LinearOp::identity(a.labels())) == 0.0);
    }
    SUBCASE("gamma = pi/2 gives -i A") {
        LinearOp expect = cdouble{0.0, -1.0} * a;
        CHECK(exp_involution(a, kPi / 2.0).max_abs_diff(expect) < 1e-15);
    }
    SUBCASE("unitary at 12 degrees") {
        CHECK(exp_involution(a, deg2rad(12.0)).is_unitary(1e-12));
    }
    SUBCASE("agrees with 30-term Taylor oracle on a 100-point grid") {
        for (int i = 0; i < 100; ++i) {
            double g = -kPi + 2.0 * kPi * i / 99.0;
            CHECK(exp_involution(a, g).max_abs_diff(testutil::expm_taylor(a, g)) < 1e-10);
        }
    }
    SUBCASE("rejects non-involutory input") {
        LinearOp bad(basis::path(), {1.0, 1.0, 0.0, 1.0});
        CHECK_THROWS_AS(exp_involution(bad, 0.3), NotInvolutory);
    }
}

TEST_CASE("projector") {
    LinearOp pu = projector(StateVector::basis(basis::path(), 0));
    CHECK(pu.at(0, 0).real() == Approx(1.0));
    CHECK(pu.at(1, 1).real() == Approx(0.0));

    LinearOp m3 = cdouble{2.0, 0.0} * projector(plus_m3()) - LinearOp::identity(basis::path());
    CHECK(m3.max_abs_diff(sigma_x(basis::path())) < 1e-15);

    std::mt19937_64 rng(5);
    StateVector s = testutil::random_state(rng, basis::path());
    LinearOp p = projector(s);
    CHECK((p * p).max_abs_diff(p) < 1e-14);
    CHECK(p.is_hermitian());

    CHECK_THROWS_AS(projector(path_state(1.0, 1.0)), std::invalid_argument);
}

TEST_CASE("unitary application preserves norm") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 10000; ++t) {
        LinearOp u = testutil::random_unitary2(rng, basis::path());
        StateVector s = testutil::random_state(rng, basis::path());
        CHECK(std::abs(apply(u, s).norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("global phase comparison") {
    StateVector a = path_state(kSqrtHalf, kSqrtHalf);
    cdouble phase = std::exp(cdouble{0.0, 0.7});
    StateVector b = path_state(phase * kSqrtHalf, phase * kSqrtHalf);
    CHECK(equal_up_to_global_phase(a, b));
    CHECK_FALSE(equal_up_to_global_phase(a, minus_m3()));
}

TEST_CASE("constructors reject non-finite amplitudes") {
    double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(path_state(cdouble{inf, 0.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(LinearOp(basis::path(), {std::nan(""), 0.0, 0.0, 1.0}),
                    std::invalid_argument);
}
