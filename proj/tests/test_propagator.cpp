#include "molens/propagator.hpp"

#include "molens/hamiltonians.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace molens;

namespace {

Mat random_hermitian(long d, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist;
    Mat a(d, d);
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) a(i, j) = Complex(dist(rng), dist(rng));
    return 0.5 * (a + a.adjoint()).eval();
}

}  // namespace

TEST_CASE("zero Hamiltonian leaves the state unchanged") {
    auto space = make_space({ModeSpec::bosonic(3), ModeSpec::two_level()});
    auto psi = basis_state(space, {1, 1});
    EvolutionSpec spec{[&](double) { return Mat::Zero(space.dim(), space.dim()); }, 0.0, 3.0,
                       FixedSteps{10}};
    auto out = evolve(psi, spec);
    CHECK((out.amplitudes - psi.amplitudes).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("constant Hamiltonian matches the series-exponential oracle") {
    const long d = 7;
    Mat h = random_hermitian(d, 11);
    Mat u_oracle = oracles::evolve_oracle(h, 1.7);

    EvolutionSpec spec{[&](double) { return h; }, 0.0, 1.7, FixedSteps{2000}};
    Mat u = propagator_matrix(d, spec);
    CHECK((u - u_oracle).cwiseAbs().maxCoeff() < 1e-8);

    Vec psi0 = Vec::Zero(d);
    psi0[0] = 1.0;
    StateVector sv{make_space({ModeSpec::bosonic(7)}), psi0};
    auto out = evolve(sv, spec);
    CHECK((out.amplitudes - u_oracle.col(0)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("resonant vacuum Rabi transfer") {
    auto space = make_space({ModeSpec::bosonic(4), ModeSpec::two_level()});
    Mat h = h_cpb(space, 0, 1, 1.0, 0.0).entries;
    auto psi = basis_state(space, {0, 1});
    EvolutionSpec spec{[&](double) { return h; }, 0.0, 0.5 * pi, FixedSteps{2000}};
    auto out = evolve(psi, spec);
    long target = space.index_of(std::vector<int>{1, 0});
    CHECK(std::abs(out.amplitudes[target] - Complex(0.0, -1.0)) < 1e-8);
    CHECK(1.0 - std::norm(out.amplitudes[target]) < 1e-8);
}

TEST_CASE("unitarity, determinant and norm preservation over the long sweep") {
    auto space = make_space({ModeSpec::bosonic(4), ModeSpec::two_level()});
    auto sweep = SweepProfile::quadratic(33.05, 0.6664, 58.07);
    EvolutionSpec spec{[&](double t) { return h_cpb(space, 0, 1, 1.0, sweep_value(sweep, t)).entries; },
                       0.0, sweep.duration, FixedSteps{2000}};
    Mat u = propagator_matrix(space.dim(), spec);

    Mat defect = u.adjoint() * u - Mat::Identity(space.dim(), space.dim());
    CHECK(defect.cwiseAbs().maxCoeff() < 1e-8);
    CHECK(std::abs(std::abs(u.determinant()) - 1.0) < 1e-7);

    Vec psi = Vec::Zero(space.dim());
    psi[space.index_of(std::vector<int>{1, 1})] = 1.0;
    StateVector sv{space, psi};
    auto out = evolve(sv, spec);
    CHECK(std::abs(out.amplitudes.norm() - 1.0) < 1e-9);
}

TEST_CASE("composition over subintervals") {
    auto space = make_space({ModeSpec::bosonic(3), ModeSpec::bosonic(3)});
    auto sweep = SweepProfile::cubic(12.0, 8.0);
    auto provider = [&](double t) {
        return h_molecule(space, 0, 1, 1.0, sweep_value(sweep, t)).entries;
    };
    auto psi = basis_state(space, {1, 0});

    EvolutionSpec whole{provider, 0.0, 8.0, FixedSteps{4096}};
    EvolutionSpec first{provider, 0.0, 3.0, FixedSteps{1536}};
    EvolutionSpec second{provider, 3.0, 8.0, FixedSteps{2560}};

    auto direct = evolve(psi, whole);
    auto split = evolve(evolve(psi, first), second);
    CHECK((direct.amplitudes - split.amplitudes).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("step halving converges at second order") {
    auto space = make_space({ModeSpec::bosonic(3), ModeSpec::bosonic(3)});
    auto sweep = SweepProfile::cubic(12.0, 8.0);
    auto provider = [&](double t) {
        return h_molecule(space, 0, 1, 1.0, sweep_value(sweep, t)).entries;
    };
    auto run = [&](int steps) {
        EvolutionSpec spec{provider, 0.0, 8.0, FixedSteps{steps}};
        return propagator_matrix(space.dim(), spec);
    };
    Mat fine = run(4000);
    double err1 = (run(250) - fine).cwiseAbs().maxCoeff();
    double err2 = (run(500) - fine).cwiseAbs().maxCoeff();
    double err3 = (run(1000) - fine).cwiseAbs().maxCoeff();
    CHECK(err1 / err2 > 3.0);
    CHECK(err2 / err3 > 3.0);
}

TEST_CASE("tolerance step control refines and reports failure") {
    auto space = make_space({ModeSpec::bosonic(3), ModeSpec::bosonic(3)});
    auto sweep = SweepProfile::cubic(12.0, 8.0);
    auto provider = [&](double t) {
        return h_molecule(space, 0, 1, 1.0, sweep_value(sweep, t)).entries;
    };
    auto psi = basis_state(space, {1, 0});

    EvolutionSpec ok{provider, 0.0, 8.0, StepTolerance{1e-9, 500, 6}};
    auto out = evolve(psi, ok);
    CHECK(std::abs(out.amplitudes.norm() - 1.0) < 1e-12);

    EvolutionSpec hopeless{provider, 0.0, 8.0, StepTolerance{1e-16, 2, 2}};
    CHECK_THROWS_AS(evolve(psi, hopeless), ConvergenceError);
}

TEST_CASE("non-Hermitian providers are rejected") {
    auto space = make_space({ModeSpec::two_level()});
    Mat bad(2, 2);
    bad << 0.0, 1.0, 0.0, 0.0;
    EvolutionSpec spec{[&](double) { return bad; }, 0.0, 1.0, FixedSteps{4}};
    CHECK_THROWS_AS(evolve(basis_state(space, {0}), spec), ValidationError);
}
