#include "green_checks.hpp"

#include "wellspec/errors.hpp"
#include "wellspec/model.hpp"
#include "wellspec/oracle.hpp"
#include "wellspec/resolvent.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>

using namespace wellspec;
namespace rv = wellspec::resolvent;

using green_checks::fd_discrepancy;
using green_checks::g_tilde;
using green_checks::one_sided;
using green_checks::pde_residual;

TEST_CASE("convention conversions are inverse") {
    PhysicalScales s;
    s.hbar = 1.3;
    s.mass = 0.7;
    s.omega1 = 1.0;
    const auto g = rv::green_ho(0.2, -0.4, 1.1, s);
    CHECK(g.convention == rv::Convention::g);
    const auto t = rv::to_g_tilde(g, s);
    CHECK(t.convention == rv::Convention::g_tilde);
    CHECK(t.value == doctest::Approx(-s.hbar * s.hbar / (2.0 * s.mass) * g.value).epsilon(1e-15));
    CHECK(rv::to_g(t, s).value == doctest::Approx(g.value).epsilon(1e-15));
    CHECK(rv::to_g(g, s).value == g.value);
}

TEST_CASE("oscillator series agrees with the closed form") {
    const auto f = default_family(FamilyTag::ho);
    for (double e : {0.3, 1.1, 2.0, 3.7}) {
        for (auto [x, xp] : {std::pair{0.3, -0.8}, std::pair{1.2, 0.4}, std::pair{-1.5, 2.0}}) {
            CAPTURE(e);
            CAPTURE(x);
            CAPTURE(xp);
            const double closed = rv::green_ho(x, xp, e, f.scales).value;
            const double s500 = rv::green_ho_series(x, xp, e, f.scales, {500, false}).value;
            const double t500 = rv::green_ho_series(x, xp, e, f.scales, {500, true}).value;
            CHECK(std::abs(s500 - closed) <= 1e-3 * std::max(1.0, std::abs(closed)));
            CHECK(std::abs(t500 - closed) <= 1e-6 * std::max(1.0, std::abs(closed)));
        }
    }
}

TEST_CASE("oscillator series on the diagonal needs the tail correction") {
    const auto f = default_family(FamilyTag::ho);
    for (double e : {0.3, 1.1, 2.0}) {
        for (double x : {0.0, 0.6, -1.1}) {
            const double closed = rv::green_ho(x, x, e, f.scales).value;
            const double s250 = rv::green_ho_series(x, x, e, f.scales, {250, false}).value;
            const double s500 = rv::green_ho_series(x, x, e, f.scales, {500, false}).value;
            const double t250 = rv::green_ho_series(x, x, e, f.scales, {250, true}).value;
            const double t500 = rv::green_ho_series(x, x, e, f.scales, {500, true}).value;
            CAPTURE(e);
            CAPTURE(x);
            // Bare partial sums creep towards the closed form.
            CHECK(std::abs(s500 - closed) < std::abs(s250 - closed));
            CHECK(std::abs(t250 - closed) <= 1e-6 * std::abs(closed));
            CHECK(std::abs(t500 - closed) <= 1e-6 * std::abs(closed));
        }
    }
    CHECK_THROWS_AS(rv::green_ho_series(0.0, 0.0, 1.0, f.scales, {2001, false}), DomainError);
}

TEST_CASE("closed forms are bit-exactly symmetric") {
    std::vector<PotentialFamily> families;
    for (const auto tag : all_tags()) {
        const auto f = default_family(tag);
        if (rv::has_closed_form(f)) {
            families.push_back(f);
        }
    }
    families.push_back(default_family(FamilyTag::delta_decorated, FamilyTag::linear_abs));
    CHECK(families.size() == 6);
    for (const auto& f : families) {
        CAPTURE(f.name());
        for (auto [x, xp] : {std::pair{0.3, -0.8}, std::pair{1.7, 0.2}, std::pair{-2.2, -0.1}}) {
            const auto a = rv::green(f, x, xp, 2.3);
            const auto b = rv::green(f, xp, x, 2.3);
            CHECK(a.value == b.value);
            CHECK(a.x_lt == std::min(x, xp));
            CHECK(a.x_gt == std::max(x, xp));
        }
    }
}

TEST_CASE("even potentials give parity-symmetric Green functions") {
    for (const auto tag : {FamilyTag::ho, FamilyTag::linear_abs, FamilyTag::ho_plus_abs}) {
        const auto f = default_family(tag);
        for (auto [x, xp] : {std::pair{0.3, -0.8}, std::pair{1.7, 0.2}}) {
            CHECK(rv::green(f, -x, -xp, 2.3).value == doctest::Approx(rv::green(f, x, xp, 2.3).value).epsilon(1e-13));
        }
    }
    auto centred = default_family(FamilyTag::delta_decorated, FamilyTag::ho);
    centred.scales.delta_position = 0.0;
    CHECK(rv::green(centred, -0.4, 0.9, 1.3).value ==
          doctest::Approx(rv::green(centred, 0.4, -0.9, 1.3).value).epsilon(1e-13));
}

TEST_CASE("near-pole evaluations throw") {
    const auto ho = default_family(FamilyTag::ho);
    try {
        rv::green_ho(0.1, 0.2, 1.5 + 1e-12, ho.scales);
        FAIL("expected NearPoleError");
    } catch (const NearPoleError& e) {
        CHECK(e.level_index() == 1);
    }
    CHECK_NOTHROW(rv::green_ho(0.1, 0.2, 1.5 + 1e-6, ho.scales));

    const auto lin = default_family(FamilyTag::linear_abs);
    try {
        rv::green_linear(0.1, 0.2, 1.018792971647471, lin.scales);
        FAIL("expected NearPoleError");
    } catch (const NearPoleError& e) {
        CHECK(e.parity() == "even");
    }
    try {
        rv::green_linear(0.1, 0.2, 2.338107410459767, lin.scales);
        FAIL("expected NearPoleError");
    } catch (const NearPoleError& e) {
        CHECK(e.parity() == "odd");
    }
}

TEST_CASE("Stark oscillator is a shifted oscillator") {
    const auto f = default_family(FamilyTag::ho_stark);
    const double a3 = std::pow(*f.scales.alpha1, 3);
    const double w = *f.scales.omega1;
    const double m = f.scales.mass;
    const double x0 = a3 / (m * w * w);
    const double shift = a3 * a3 / (2.0 * m * w * w);
    for (auto [x, xp] : {std::pair{0.3, -0.8}, std::pair{-1.7, 0.2}}) {
        const double stark = rv::green_ho_stark(x, xp, 0.4, f.scales).value;
        const double ho = rv::green_ho(x + x0, xp + x0, 0.4 + shift, f.scales).value;
        CHECK(stark == doctest::Approx(ho).epsilon(1e-13));
    }
}

TEST_CASE("linear well against finite differences") {
    const auto f = default_family(FamilyTag::linear_abs);
    CHECK(fd_discrepancy(f, -0.5, 1.0, {-1.5, -0.5, 0.0, 0.4, 1.2}) <= 1e-4);
    CHECK(fd_discrepancy(f, -0.5, 2.3, {-1.5, -0.5, 0.0, 0.4, 1.2}) <= 1e-4);
}

TEST_CASE("derivative jump across the source is one") {
    for (const auto tag : {FamilyTag::ho, FamilyTag::linear_abs, FamilyTag::ho_plus_abs, FamilyTag::ho_stark}) {
        const auto f = default_family(tag);
        for (double xp : {-0.6, 0.0, 0.9}) {
            CAPTURE(f.name());
            CAPTURE(xp);
            const auto [left, right] = one_sided([&](double x) { return g_tilde(f, x, xp, 1.23); }, xp);
            CHECK(right - left == doctest::Approx(1.0).epsilon(5e-6));
        }
    }
}

TEST_CASE("linear-well Wronskian does not depend on the point") {
    const auto f = default_family(FamilyTag::linear_abs);
    for (double e : {0.7, 2.0, 3.9}) {
        const double w0 = rv::linear_wronskian(0.0, e, f.scales);
        CHECK(rv::linear_wronskian(0.7, e, f.scales) == doctest::Approx(w0).epsilon(1e-12));
        CHECK(rv::linear_wronskian(-1.3, e, f.scales) == doctest::Approx(w0).epsilon(1e-12));
    }
}

TEST_CASE("oscillator-plus-abs reduces to the oscillator for a vanishing slope") {
    auto f = default_family(FamilyTag::ho_plus_abs);
    f.scales.alpha1 = 0.0;
    for (auto [x, xp] : {std::pair{0.3, -0.8}, std::pair{1.1, 1.4}}) {
        CHECK(rv::green_ho_plus_abs(x, xp, 1.3, f.scales).value ==
              doctest::Approx(rv::green_ho(x, xp, 1.3, f.scales).value).epsilon(1e-10));
    }
    f.scales.alpha1 = 1e-5;
    CHECK(rv::green_ho_plus_abs(0.2, 0.5, 1.3, f.scales).value ==
          doctest::Approx(rv::green_ho(0.2, 0.5, 1.3, f.scales).value).epsilon(1e-4));
}

TEST_CASE("oscillator-plus-abs against finite differences") {
    const auto f = default_family(FamilyTag::ho_plus_abs);
    CHECK(fd_discrepancy(f, -0.9, 1.7, {-1.5, -0.9, 0.0, 0.4, 1.2}) <= 1e-4);
    CHECK(fd_discrepancy(f, 0.4, 1.7, {-1.5, -0.9, 0.0, 0.4, 1.2}) <= 1e-4);
}

TEST_CASE("decoration with zero strength is the base resolvent") {
    for (const auto base : {FamilyTag::ho, FamilyTag::linear_abs}) {
        auto f = default_family(FamilyTag::delta_decorated, base);
        f.scales.delta_strength = 0.0;
        const auto b = default_family(base);
        CHECK(rv::green(f, 0.3, -0.5, 1.3).value == doctest::Approx(rv::green(b, 0.3, -0.5, 1.3).value).epsilon(1e-14));
    }
}

TEST_CASE("decorated derivative jump at the delta") {
    for (const auto base : {FamilyTag::ho, FamilyTag::linear_abs}) {
        auto f = default_family(FamilyTag::delta_decorated, base);
        f.scales.delta_strength = -1.0;
        f.scales.delta_position = 0.5;
        const double q = 0.5, xp = -0.4, e = 1.3;
        const auto [left, right] = one_sided([&](double x) { return g_tilde(f, x, xp, e); }, q);
        // -(hbar^2/2m) [G'] + a G(q) = 0, so [G~'] = -a G(q, x').
        const double expected = -(-1.0) * rv::green(f, q, xp, e).value;
        CHECK(right - left == doctest::Approx(expected).epsilon(5e-6));
        const auto [l2, r2] = one_sided([&](double x) { return g_tilde(f, x, xp, e); }, xp);
        CHECK(r2 - l2 == doctest::Approx(1.0).epsilon(5e-6));
    }
}

TEST_CASE("decorated wells against finite differences") {
    for (const auto base : {FamilyTag::ho, FamilyTag::linear_abs}) {
        auto f = default_family(FamilyTag::delta_decorated, base);
        f.scales.delta_strength = -1.0;
        f.scales.delta_position = 0.5;
        CAPTURE(f.name());
        CHECK(fd_discrepancy(f, 0.3, 1.1, {-1.5, -0.6, 0.0, 0.3, 0.5, 1.2}) <= 5e-4);
        CHECK(fd_discrepancy(f, 0.6, 1.1, {-1.5, 0.0, 0.5, 0.6, 1.2}) <= 5e-4);
    }
}

TEST_CASE("closed forms satisfy the Schroedinger equation away from the source") {
    std::vector<PotentialFamily> families;
    for (const auto tag : {FamilyTag::ho, FamilyTag::ho_stark, FamilyTag::linear_abs, FamilyTag::ho_plus_abs}) {
        families.push_back(default_family(tag));
    }
    families.push_back(default_family(FamilyTag::delta_decorated, FamilyTag::ho));
    families.push_back(default_family(FamilyTag::delta_decorated, FamilyTag::linear_abs));
    for (const auto& f : families) {
        CAPTURE(f.name());
        for (double x : {-1.7, -0.35, 0.85, 2.1}) {
            CAPTURE(x);
            CHECK(pde_residual(f, x, 0.15, 1.37) <= 1e-4);
        }
    }
}

TEST_CASE("closed forms decay away from the well") {
    const auto f = default_family(FamilyTag::linear_abs);
    const double near = std::abs(rv::green(f, 1.0, 0.0, 1.3).value);
    const double far = std::abs(rv::green(f, 10.0, 0.0, 1.3).value);
    CHECK(far < 1e-6 * near);
    CHECK_THROWS_AS(rv::green(default_family(FamilyTag::ho_asym), 0.0, 0.1, 1.0), ParameterError);
}
