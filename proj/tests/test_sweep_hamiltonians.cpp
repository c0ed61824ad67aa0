#include "molens/hamiltonians.hpp"
#include "molens/propagator.hpp"
#include "molens/sweep.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

using namespace molens;

TEST_CASE("sweep families and symmetry") {
    auto cubic = SweepProfile::cubic(19.24, 20.77);
    CHECK(sweep_value(cubic, 0.0) == doctest::Approx(-19.24));
    CHECK(sweep_value(cubic, 20.77) == doctest::Approx(19.24));
    CHECK(std::abs(sweep_value(cubic, 0.5 * 20.77)) < 1e-12);

    auto quad = SweepProfile::quadratic(33.05, 0.6664, 58.07);
    CHECK(sweep_value(quad, 0.5 * 58.07) == doctest::Approx(0.6664));
    CHECK(sweep_value(quad, 0.0) == doctest::Approx(33.05 + 0.6664));

    // odd: delta(t) + delta(T-t) = 0 ; even: delta(t) - delta(T-t) = 0
    for (double f : {0.0, 0.13, 0.5, 0.71, 1.0}) {
        double t = f * cubic.duration;
        CHECK(std::abs(sweep_value(cubic, t) + sweep_value(cubic, cubic.duration - t)) < 1e-12);
        double tq = f * quad.duration;
        CHECK(std::abs(sweep_value(quad, tq) - sweep_value(quad, quad.duration - tq)) < 1e-12);
    }

    CHECK_THROWS_AS(sweep_value(cubic, -1.0), ValidationError);
    CHECK_THROWS_AS(sweep_value(cubic, 21.0), ValidationError);
}

TEST_CASE("reversed profiles evaluate at T - t") {
    auto fwd = SweepProfile::cubic(5.0, 2.0);
    auto rev = fwd.reversed();
    for (double t : {0.0, 0.3, 1.0, 1.7, 2.0})
        CHECK(sweep_value(rev, t) == sweep_value(fwd, 2.0 - t));
    CHECK(rev.reversed().direction == SweepDirection::forward);
}

TEST_CASE("sampled profiles interpolate linearly") {
    auto prof = SweepProfile::sampled({0.0, 1.0, 3.0}, {-2.0, 0.0, 4.0});
    CHECK(prof.duration == 3.0);
    CHECK(sweep_value(prof, 0.5) == doctest::Approx(-1.0));
    CHECK(sweep_value(prof, 2.0) == doctest::Approx(2.0));
    CHECK(sweep_slope(prof, 0.5) == doctest::Approx(2.0));
    CHECK(sweep_slope(prof, 2.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(SweepProfile::sampled({0.0}, {1.0}), ValidationError);
    CHECK_THROWS_AS(SweepProfile::sampled({0.5, 1.0}, {1.0, 2.0}), ValidationError);
}

TEST_CASE("sweep_slope matches finite differences") {
    auto cubic = SweepProfile::cubic(19.24, 20.77, SweepDirection::reversed);
    auto quad = SweepProfile::quadratic(33.05, 0.6664, 58.07);
    for (const auto& p : {cubic, quad}) {
        for (double f : {0.1, 0.35, 0.62, 0.9}) {
            double t = f * p.duration, h = 1e-6 * p.duration;
            double fd = (sweep_value(p, t + h) - sweep_value(p, t - h)) / (2 * h);
            CHECK(sweep_slope(p, t) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("h_cpb spectrum and structure") {
    auto space = make_space({ModeSpec::bosonic(4), ModeSpec::two_level()});
    SUBCASE("resonant vacuum Rabi splitting") {
        Mat h = h_cpb(space, 0, 1, 1.0, 0.0).entries;
        CHECK(hermiticity_defect(h) < 1e-14);
        // single-excitation block {|0,e>, |1,g>}
        long ie = space.index_of(std::vector<int>{0, 1});
        long ig = space.index_of(std::vector<int>{1, 0});
        Eigen::Matrix2cd block;
        block << h(ie, ie), h(ie, ig), h(ig, ie), h(ig, ig);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(block);
        CHECK(es.eigenvalues()[0] == doctest::Approx(-1.0));
        CHECK(es.eigenvalues()[1] == doctest::Approx(1.0));
    }
    SUBCASE("g = 0 leaves the detuning term only") {
        Mat h = h_cpb(space, 0, 1, 0.0, 2.5).entries;
        Mat n_cpb = number_op(space, 1).entries;
        CHECK((h - 2.5 * n_cpb).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("n = 1 block eigenvalues are +-sqrt(2) g") {
        Mat h = h_cpb(space, 0, 1, 1.0, 0.0).entries;
        long ie = space.index_of(std::vector<int>{1, 1});
        long ig = space.index_of(std::vector<int>{2, 0});
        Eigen::Matrix2cd block;
        block << h(ie, ie), h(ie, ig), h(ig, ie), h(ig, ig);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(block);
        CHECK(es.eigenvalues()[1] == doctest::Approx(std::sqrt(2.0)));
    }
    SUBCASE("mode kind validation") {
        CHECK_THROWS_AS(h_cpb(space, 1, 0, 1.0, 0.0), ValidationError);
    }
}

TEST_CASE("h_molecule conserves excitation and couples with bosonic elements") {
    auto space = make_space({ModeSpec::bosonic(3), ModeSpec::bosonic(4)});
    Mat h = h_molecule(space, 0, 1, 1.0, 0.7).entries;
    CHECK(hermiticity_defect(h) < 1e-14);

    Mat n_total = number_op(space, 0).entries + number_op(space, 1).entries;
    CHECK((h * n_total - n_total * h).cwiseAbs().maxCoeff() < 1e-13);

    // <0_m 2_c| H |1_m 1_c> = g sqrt(2)
    long from = space.index_of(std::vector<int>{1, 1});
    long to = space.index_of(std::vector<int>{0, 2});
    CHECK(std::abs(h(to, from) - std::sqrt(2.0)) < 1e-14);

    CHECK_THROWS_AS(h_molecule(make_space({ModeSpec::two_level(), ModeSpec::bosonic(3)}), 0, 1,
                               1.0, 0.0),
                    ValidationError);
}

TEST_CASE("effective coupling") {
    CHECK(effective_coupling(2.0, 1.0, 4.0, 2.0) == doctest::Approx(1.0));
    CHECK(effective_coupling(2.0, 1.0, 0.0, 2.0) == 0.0);
    double ratio = effective_coupling(1.0, 1.0, 100.0, 1.0) / effective_coupling(1.0, 1.0, 99.0, 1.0);
    CHECK(ratio == doctest::Approx(std::sqrt(100.0 / 99.0)).epsilon(1e-12));
    CHECK_THROWS_AS(effective_coupling(1.0, 1.0, 10.0, 0.0), ValidationError);
}

TEST_CASE("resonant drive pulses") {
    auto space = make_space({ModeSpec::two_level()});
    auto evolve_pulse = [&](double rabi, double phase, double duration, const StateVector& in) {
        DriveSpec d{rabi, phase, duration};
        Mat h = h_drive(space, 0, d).entries;
        CHECK(hermiticity_defect(h) < 1e-14);
        EvolutionSpec spec{[&](double) { return h; }, 0.0, duration, FixedSteps{64}};
        return evolve(in, spec);
    };
    auto g = basis_state(space, {0});

    SUBCASE("pi pulse maps |g> to -i|e>") {
        auto out = evolve_pulse(1.0, 0.0, pi, g);
        CHECK(std::abs(out.amplitudes[1] - Complex(0.0, -1.0)) < 1e-9);
    }
    SUBCASE("2 pi pulse is identity up to global phase -1") {
        auto out = evolve_pulse(1.0, 0.0, 2.0 * pi, g);
        CHECK(std::abs(out.amplitudes[0] + 1.0) < 1e-9);
    }
    SUBCASE("pi/2 pulse makes (|g> - i|e>)/sqrt(2)") {
        auto out = evolve_pulse(1.0, 0.0, 0.5 * pi, g);
        CHECK(std::abs(out.amplitudes[0] - 1.0 / std::sqrt(2.0)) < 1e-9);
        CHECK(std::abs(out.amplitudes[1] - Complex(0.0, -1.0 / std::sqrt(2.0))) < 1e-9);
    }
}
