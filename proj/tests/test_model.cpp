#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace pointerlab;
using namespace testsupport;

TEST_CASE("qubit and system inits are validated") {
    CHECK_NOTHROW(QubitInit(0.6, 0.8));
    CHECK_THROWS_AS(QubitInit(0.6, 0.6), ValidationError);
    CHECK_THROWS_AS(QubitInit(std::nan(""), 1.0), ValidationError);
    CHECK_THROWS_AS(SystemInit(1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(ApparatusSpec({}, {}), ValidationError);
    CHECK_THROWS_AS(ApparatusSpec({0.1, 0.2}, {QubitInit::up()}), ValidationError);
    CHECK_THROWS_AS(ApparatusSpec({INFINITY}, {QubitInit::up()}), ValidationError);
}

TEST_CASE("ordered equatorial overlap is cos^N(2gt)") {
    const auto spec = ordered(0.1, 3);
    CHECK(availability(spec, 1.0) == doctest::Approx(0.9413838371083508).epsilon(1e-14));
    CHECK(availability(spec, 2.5) == doctest::Approx(0.6758712218347054).epsilon(1e-14));
    CHECK(availability(spec, 0.0) == 1.0);
    const Complex z = overlap(spec, 1.0);
    CHECK(std::abs(z.imag()) < 1e-15);
}

TEST_CASE("overlap of mixed inits matches the exponential form") {
    const ApparatusSpec spec({0.3, 0.7}, {QubitInit(std::sqrt(0.8), std::sqrt(0.2)),
                                          QubitInit::equatorial(1.3)});
    const Complex z = overlap(spec, 1.7);
    CHECK(z.real() == doctest::Approx(-0.37877976334402075).epsilon(1e-12));
    CHECK(z.imag() == doctest::Approx(0.3700217113386443).epsilon(1e-12));
    CHECK(long_time_variance(spec) == doctest::Approx(0.34).epsilon(1e-14));
}

TEST_CASE("random specs agree with the reference overlap") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto spec = random_apparatus(rng, 1 + rng() % 20);
        const double t = uniform(rng, 0.0, 200.0);
        CHECK(std::abs(overlap(spec, t) - ref_overlap(spec, t)) < 1e-12);
    }
}

TEST_CASE("log-domain product matches direct product beyond 64 qubits") {
    std::mt19937_64 rng(5);
    const auto spec = random_apparatus(rng, 80, 0.05);
    for (double t : {0.0, 0.3, 1.1, 4.0}) {
        const Complex direct = ref_overlap(spec, t);
        CHECK(std::abs(overlap(spec, t) - direct) < 1e-12 * std::max(1.0, std::abs(direct)));
    }
    // cos^1000 at t where cos^N underflows only in the tail: stays finite, no NaN.
    const auto big = ordered(0.1, 1000);
    const double a = availability(big, 3.0);
    CHECK(std::isfinite(a));
    CHECK(a == doctest::Approx(std::pow(std::cos(0.6), 1000)).epsilon(1e-9));
}

TEST_CASE("derivative of A^2 matches a central difference") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const auto spec = random_apparatus(rng, 1 + rng() % 8);
        const double t = uniform(rng, 0.01, 50.0);
        const double h = 1e-5;
        const double fd = (std::norm(ref_overlap(spec, t + h)) - std::norm(ref_overlap(spec, t - h))) / (2 * h);
        CHECK(availability_sq_derivative(spec, t) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
    // finite at an exact zero of A
    const auto spec = ordered(0.1, 4);
    CHECK(std::isfinite(availability_sq_derivative(spec, kPi / 0.4)));
}

TEST_CASE("sample_availability validates the grid") {
    const auto spec = ordered(0.1, 2);
    const std::vector<double> good{0.0, 0.5, 1.0};
    const auto s = sample_availability(spec, good);
    REQUIRE(s.size() == 3);
    CHECK(s[1].availability == doctest::Approx(std::pow(std::cos(0.1), 2)));
    const std::vector<double> unsorted{0.0, 1.0, 0.5};
    const std::vector<double> negative{-1.0, 0.0};
    CHECK_THROWS_AS(sample_availability(spec, unsorted), ValidationError);
    CHECK_THROWS_AS(sample_availability(spec, negative), ValidationError);
    CHECK_THROWS_AS(availability(spec, -0.1), ValidationError);
}

TEST_CASE("reduced state and Bloch vector") {
    const auto spec = ordered(0.1, 4);
    const SystemInit plus(std::sqrt(0.5), std::sqrt(0.5));
    for (double t : {0.0, 1.0, 3.0, kPi / 0.4}) {
        const Matrix2 rho = reduced_system_state(spec, plus, t);
        CHECK(std::abs(rho[0][0] + rho[1][1] - 1.0) < 1e-14);
        CHECK(std::abs(rho[0][1] - std::conj(rho[1][0])) < 1e-15);
        const BlochVector r = bloch_vector(spec, plus, t);
        CHECK(r.norm() == doctest::Approx(availability(spec, t)).epsilon(1e-12).scale(1.0));
        const Matrix2 back = density_from_bloch(r);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(std::abs(back[i][j] - rho[i][j]) < 1e-14);
    }
}

TEST_CASE("trivially coherent apparatus keeps A = 1") {
    const ApparatusSpec spec({0.2, 0.5}, {QubitInit::up(), QubitInit::down()});
    for (double t : {0.0, 1.0, 17.0}) CHECK(availability(spec, t) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(long_time_variance(spec) == 1.0);
}

TEST_CASE("perturbative overlap") {
    const double g = 0.1;
    const std::vector<double> deltas{1e-4, -2e-4, 5e-5, 0.0};
    std::vector<double> gs;
    for (double d : deltas) gs.push_back(g + d);
    const ApparatusSpec exact(gs, std::vector<QubitInit>(4, QubitInit::equatorial()));

    // short time: first-order expansion tracks the exact product closely
    const double t = 1.0;
    CHECK(std::abs(perturbative_overlap(g, deltas, t) - overlap(exact, t)) < 1e-6);

    // long time: the expansion is far off
    const double t_long = 200.0;
    REQUIRE(std::abs(std::cos(2 * g * t_long)) > 0.1);
    CHECK(std::abs(perturbative_overlap(g, deltas, t_long) - overlap(exact, t_long)) > 1e-4);

    CHECK_THROWS_AS(perturbative_overlap(g, deltas, kPi / (4 * g)), ValidationError);
}

TEST_CASE("make_apparatus is deterministic and validated") {
    const auto a = make_apparatus(Disordered{0.0, 0.2, 42}, 30, RandomInits{7});
    const auto b = make_apparatus(Disordered{0.0, 0.2, 42}, 30, RandomInits{7});
    CHECK(a.couplings() == b.couplings());
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a.inits()[k].alpha() == b.inits()[k].alpha());
        CHECK(a.couplings()[k] >= 0.0);
        CHECK(a.couplings()[k] < 0.2);
    }
    // coupling k is the k-th draw of the documented generator
    std::mt19937_64 gen(42);
    for (std::size_t k = 0; k < 30; ++k) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        CHECK(a.couplings()[k] == 0.2 * u);
    }
    const auto c = make_apparatus(Disordered{0.0, 0.2, 43}, 30, RandomInits{7});
    CHECK(c.couplings() != a.couplings());
    CHECK_THROWS_AS(make_apparatus(Ordered{0.1}, 0, EquatorialInits{}), ValidationError);
    CHECK_THROWS_AS(make_apparatus(Ordered{0.0}, 3, EquatorialInits{}), ValidationError);
    CHECK_THROWS_AS(make_apparatus(Disordered{0.3, 0.2, 1}, 3, EquatorialInits{}), ValidationError);
}

TEST_CASE("perturbative overlap diverges at long times for dg = 1e-3") {
    const double g = 0.1;
    const std::vector<double> deltas{0.001, -0.001, 0.001, -0.001, 0.001};
    std::vector<double> gs;
    for (double d : deltas) gs.push_back(g + d);
    const ApparatusSpec exact(gs, std::vector<QubitInit>(deltas.size(), QubitInit::equatorial()));
    const double t = 200.0;
    REQUIRE(std::abs(std::cos(2 * g * t)) > 0.1);
    const double err = std::abs(perturbative_overlap(g, deltas, t) - ref_overlap(exact, t));
    CHECK(err > 1e-4);
    CHECK(std::abs(perturbative_overlap(g, deltas, 5.0) - ref_overlap(exact, 5.0)) < 1e-4);
}
