#include "wellspec/errors.hpp"
#include "wellspec/model.hpp"
#include "wellspec/oracle.hpp"
#include "wellspec/spectrum.hpp"

#include <doctest.h>

#include <cmath>

using namespace wellspec;
namespace sp = wellspec::spectrum;

namespace {

// First zeros of Ai' and Ai, interleaved: the symmetric linear well.
constexpr double linear_levels[] = {1.018792971647471, 2.338107410459767, 3.248197582179837,
                                    4.087949444130971, 4.820099211178736, 5.520559828095551};

std::vector<double> roots_of(const PotentialFamily& f, std::size_t count, double step = 0.005) {
    const auto chi = sp::characteristic(f);
    const auto r = sp::find_roots(chi, chi.default_window, step, count);
    std::vector<double> out;
    for (const auto& root : r.roots) {
        out.push_back(root.value);
    }
    return out;
}

void check_against_oracle(const PotentialFamily& f, std::size_t count, double tolerance) {
    CAPTURE(f.name());
    const auto roots = roots_of(f, count);
    REQUIRE(roots.size() == count);
    const auto oracle = oracle::reference_levels(f, count, 8000, roots.back() + 1.0);
    for (std::size_t k = 0; k < count; ++k) {
        CAPTURE(k);
        CHECK(std::abs(roots[k] - oracle[k]) <= tolerance);
    }
}

} // namespace

TEST_CASE("oscillator characteristic function") {
    CHECK(sp::chi_ho(0.5) == 0.0);
    CHECK(sp::chi_ho(3.5) == 0.0);
    CHECK(sp::chi_ho(1.0) != 0.0);
    CHECK(std::isfinite(sp::chi_ho(-40.0)));
    const auto roots = roots_of(default_family(FamilyTag::ho), 8);
    REQUIRE(roots.size() == 8);
    for (std::size_t k = 0; k < roots.size(); ++k) {
        CHECK(std::abs(roots[k] - (k + 0.5)) <= 1e-12);
    }
}

TEST_CASE("Stark oscillator levels are shifted oscillator levels") {
    for (double a3 : {0.0, 0.4, 1.3}) {
        const auto f = with_parameter(default_family(FamilyTag::ho_stark), "alpha3", a3);
        const auto map = dimensionless(f, 0.0);
        CHECK(sp::levels_ho_stark(0, map) == doctest::Approx(0.5 - a3 * a3 / 2.0).epsilon(1e-13));
        const auto roots = roots_of(f, 6);
        REQUIRE(roots.size() == 6);
        for (unsigned n = 0; n < 6; ++n) {
            CHECK(std::abs(roots[n] - sp::levels_ho_stark(n, map)) <= 1e-9);
        }
    }
}

TEST_CASE("asymmetric oscillator") {
    // Equal frequencies give the plain oscillator.
    const auto sym = with_parameter(default_family(FamilyTag::ho_asym), "lambda", 1.0);
    const auto roots = roots_of(sym, 6);
    REQUIRE(roots.size() == 6);
    for (std::size_t k = 0; k < roots.size(); ++k) {
        CHECK(std::abs(roots[k] - (k + 0.5)) <= 1e-10);
    }
    for (double lam : {0.3, 0.5, 2.0}) {
        check_against_oracle(with_parameter(default_family(FamilyTag::ho_asym), "lambda", lam), 5, 2e-3);
    }
}

TEST_CASE("symmetric linear well") {
    const auto p = sp::chi_linear(linear_levels[0]);
    CHECK(std::abs(p.even) <= 1e-15);
    CHECK(std::abs(p.odd) > 0.1);
    const auto chi = sp::characteristic(default_family(FamilyTag::linear_abs));
    const auto r = sp::find_roots(chi, chi.default_window, 0.005, 6);
    REQUIRE(r.roots.size() == 6);
    for (std::size_t k = 0; k < 6; ++k) {
        CHECK(std::abs(r.roots[k].value - linear_levels[k]) <= 1e-12);
        CHECK(r.roots[k].parity == (k % 2 == 0 ? Parity::even : Parity::odd));
    }
}

TEST_CASE("asymmetric linear well") {
    // beta = 1 is the symmetric well.
    const auto one = roots_of(with_parameter(default_family(FamilyTag::linear_asym), "beta", 1.0), 6);
    REQUIRE(one.size() == 6);
    for (std::size_t k = 0; k < 6; ++k) {
        CHECK(std::abs(one[k] - linear_levels[k]) <= 1e-10);
    }
    // A steep right side acts like a hard wall at the origin: zeros of Ai.
    const auto steep = roots_of(with_parameter(default_family(FamilyTag::linear_asym), "beta", 0.02), 3);
    REQUIRE(steep.size() == 3);
    CHECK(std::abs(steep[0] - 2.338107410459767) <= 0.05);
    CHECK(std::abs(steep[1] - 4.087949444130971) <= 0.08);
    CHECK(steep[0] < 2.338107410459767);
    CHECK(sp::asym_linear_residual(one[0], 1.0) <= 1e-9);
    CHECK(sp::asym_linear_residual(1.5, 1.0) > 0.1);
    check_against_oracle(with_parameter(default_family(FamilyTag::linear_asym), "beta", 0.5), 5, 2e-3);
}

TEST_CASE("half oscillator, half linear well") {
    for (double xi : {0.5, 1.0, 1.414, 2.5}) {
        check_against_oracle(with_parameter(default_family(FamilyTag::half_ho_half_linear), "xi", xi), 5, 2e-3);
    }
}

TEST_CASE("oscillator plus abs") {
    const auto flat = with_parameter(default_family(FamilyTag::ho_plus_abs), "alpha3", 0.0);
    const auto roots = roots_of(flat, 6);
    REQUIRE(roots.size() == 6);
    for (std::size_t k = 0; k < roots.size(); ++k) {
        CHECK(std::abs(roots[k] - (k + 0.5)) <= 1e-10);
    }
    const auto chi = sp::characteristic(default_family(FamilyTag::ho_plus_abs));
    const auto r = sp::find_roots(chi, chi.default_window, 0.005, 6);
    for (std::size_t k = 0; k < r.roots.size(); ++k) {
        CHECK(r.roots[k].parity == (k % 2 == 0 ? Parity::even : Parity::odd));
    }
    for (double a3 : {0.5, 1.0, 2.0}) {
        check_against_oracle(with_parameter(default_family(FamilyTag::ho_plus_abs), "alpha3", a3), 5, 2e-3);
    }
}

TEST_CASE("delta-decorated oscillator") {
    // tau = 0 removes the delta.
    for (double eps : {0.5, 1.5, 2.5}) {
        CHECK(sp::chi_delta_ho(eps, 0.0, 0.7) == 0.0);
    }
    // At p = 0 the odd states do not feel the delta.
    CHECK(std::abs(sp::chi_delta_ho(1.5, -0.8, 0.0)) <= 1e-10);
    CHECK(std::abs(sp::chi_delta_ho(3.5, 2.0, 0.0)) <= 1e-10);
    const auto f = default_family(FamilyTag::delta_decorated, FamilyTag::ho);
    check_against_oracle(f, 5, 5e-3);
    check_against_oracle(with_parameter(f, "tau", 1.0), 5, 5e-3);
    check_against_oracle(with_parameter(with_parameter(f, "tau", -1.1), "p", 1.3), 5, 5e-3);
}

TEST_CASE("delta-decorated linear well") {
    const auto f = default_family(FamilyTag::delta_decorated, FamilyTag::linear_abs);
    const auto bare = roots_of(with_parameter(f, "eta", 0.0), 5);
    REQUIRE(bare.size() == 5);
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(std::abs(bare[k] - linear_levels[k]) <= 1e-10);
    }
    check_against_oracle(f, 5, 5e-3);
    check_against_oracle(with_parameter(f, "eta", -0.8), 5, 5e-3);
    check_against_oracle(with_parameter(with_parameter(f, "eta", 1.5), "zeta_q", 1.2), 5, 5e-3);
}

TEST_CASE("find_roots invariants") {
    for (const auto tag : all_tags()) {
        const auto chi = sp::characteristic(default_family(tag));
        const auto r = sp::find_roots(chi, chi.default_window, 0.01, 6);
        CAPTURE(tag_name(tag));
        CHECK(r.roots.size() == 6);
        for (std::size_t k = 0; k < r.roots.size(); ++k) {
            const auto& root = r.roots[k];
            CHECK(root.index == k);
            CHECK(root.bracket_lo <= root.value);
            CHECK(root.value <= root.bracket_hi);
            CHECK(root.bracket_hi - root.bracket_lo <= 0.01 + 1e-12);
            CHECK(root.residual <= 1e-6);
            if (k > 0) {
                CHECK(root.value > r.roots[k - 1].value);
            }
        }
    }
}

TEST_CASE("find_roots keeps the lowest roots and rejects bad input") {
    const auto chi = sp::characteristic(default_family(FamilyTag::ho));
    const auto three = sp::find_roots(chi, {0.0, 12.0}, 0.01, 3);
    REQUIRE(three.roots.size() == 3);
    CHECK(three.roots.back().value == doctest::Approx(2.5));
    CHECK(sp::find_roots(chi, {0.0, 12.0}, 0.01).roots.size() == 12);
    CHECK_THROWS_AS(sp::find_roots(chi, {0.0, 12.0}, 0.0), ParameterError);
    CHECK_THROWS_AS(sp::find_roots(chi, {3.0, 1.0}, 0.01), ParameterError);
}

TEST_CASE("windows outside the domain are clamped with a warning") {
    const auto chi = sp::characteristic(default_family(FamilyTag::linear_abs));
    const auto r = sp::find_roots(chi, {-40.0, 3.0}, 0.01);
    CHECK(r.scan_window.first == chi.domain.first);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("clamped") != std::string::npos);
    CHECK(r.roots.size() == 2);
    CHECK(sp::find_roots(chi, {0.5, 3.0}, 0.01).warnings.empty());
}

TEST_CASE("attach_oracle pairs levels and reports missing ones") {
    const auto chi = sp::characteristic(default_family(FamilyTag::ho));
    auto r = sp::find_roots(chi, {0.0, 4.0}, 0.01);
    sp::attach_oracle(r, {0.5001, 1.4999, 2.5, 3.5}, 1e-3);
    for (const auto& root : r.roots) {
        REQUIRE(root.oracle_value);
        CHECK(std::abs(*root.oracle_value - root.value) <= 2e-4);
    }
    CHECK(r.warnings.empty());

    // Drop a root to mimic one the scan missed.
    auto coarse = sp::find_roots(chi, {0.0, 4.0}, 0.01);
    coarse.roots.erase(coarse.roots.begin() + 1);
    sp::attach_oracle(coarse, {0.5, 1.5, 2.5, 3.5}, 1e-3);
    REQUIRE(coarse.warnings.size() == 1);
    CHECK(coarse.warnings[0].find("missed root") != std::string::npos);

    auto off = sp::find_roots(chi, {0.0, 2.0}, 0.01);
    sp::attach_oracle(off, {0.51, 1.5}, 1e-3);
    REQUIRE(off.warnings.size() == 1);
    CHECK(off.warnings[0].find("differs") != std::string::npos);
}

TEST_CASE("sweep grid") {
    const auto g = sp::sweep_grid(0.0, 1.0, 0.1);
    CHECK(g.size() == 11);
    CHECK(g.back() == doctest::Approx(1.0));
    CHECK(sp::sweep_grid(0.3, 0.3, 0.1).size() == 1);
    CHECK_THROWS_AS(sp::sweep_grid(1.0, 0.0, 0.1), ParameterError);
    CHECK_THROWS_AS(sp::sweep_grid(0.0, 1.0, 0.0), ParameterError);
}

TEST_CASE("sweeps do not depend on the thread count") {
    const auto f = default_family(FamilyTag::ho_asym);
    sp::SweepOptions one;
    one.threads = 1;
    sp::SweepOptions many;
    many.threads = 4;
    const auto a = sp::sweep(f, "lambda", 0.2, 2.0, 0.05, one);
    const auto b = sp::sweep(f, "lambda", 0.2, 2.0, 0.05, many);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].param_value == b.rows[i].param_value);
        CHECK(a.rows[i].root_index == b.rows[i].root_index);
        CHECK(a.rows[i].value == b.rows[i].value);
    }
    CHECK(a.breaks.empty());
    CHECK(a.rows.size() == a.param_values.size() * 6);
    CHECK_THROWS_AS(sp::sweep(f, "beta", 0.2, 2.0, 0.05), ParameterError);
}

TEST_CASE("sweeps flag curve breaks") {
    // A fixed window lets levels leave the scan as beta grows.
    sp::SweepOptions options;
    options.window = std::pair{0.0, 3.0};
    const auto r = sp::sweep(default_family(FamilyTag::linear_asym), "beta", 0.2, 2.0, 0.05, options);
    CHECK_FALSE(r.breaks.empty());
    const auto smooth = sp::sweep(default_family(FamilyTag::linear_asym), "beta", 0.2, 2.0, 0.05);
    CHECK(smooth.breaks.empty());
}
