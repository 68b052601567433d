#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "sdr/errors.hpp"
#include "sdr/register.hpp"
#include "sdr/waveform.hpp"

using namespace sdr;

namespace {

DotCloud cloud_of(std::vector<Vec2> pts, std::string source = "test") {
    DotCloud c;
    c.points = std::move(pts);
    c.source_ids.assign(c.points.size(), 0);
    c.source = std::move(source);
    c.width = c.height = 64;
    return c;
}

}  // namespace

TEST_CASE("hardware profile defaults and validation") {
    HardwareProfile p;
    CHECK(p.area_width == 75.0);
    CHECK(p.area_height == 76.0);
    CHECK(p.min_spacing == 4.0);
    CHECK(p.max_atoms == 256);
    CHECK(p.omega_max == doctest::Approx(2.0 * kPi * 2.5));
    CHECK(p.delta_abs_max == doctest::Approx(2.0 * kPi * 20.0));
    CHECK(p.t_max == 4.0);
    CHECK(p.c6 == doctest::Approx(5420441.0).epsilon(1e-4));
    CHECK_NOTHROW(p.check());
    p.min_spacing = 0.0;
    CHECK_THROWS_AS(p.check(), InputError);
}

TEST_CASE("embed maps the unit square with uniform scale, pattern centered") {
    const HardwareProfile prof;  // 75 x 76 um

    SUBCASE("the center dot lands at the device center") {
        const AtomRegister reg = embed(cloud_of({{0.5, 0.5}}), prof);
        REQUIRE(reg.size() == 1);
        CHECK(reg.positions[0].x == doctest::Approx(37.5));
        CHECK(reg.positions[0].y == doctest::Approx(38.0));
        CHECK(reg.local_scale == std::vector<double>{1.0});
        CHECK(reg.provenance == "test");
    }
    SUBCASE("a canonical 0.8 pair spans 60 um, centered on both axes") {
        const AtomRegister reg = embed(cloud_of({{0.1, 0.5}, {0.9, 0.5}}), prof);
        REQUIRE(reg.size() == 2);
        CHECK(reg.positions[0].x == doctest::Approx(7.5));
        CHECK(reg.positions[1].x == doctest::Approx(67.5));
        CHECK(reg.positions[0].y == doctest::Approx(38.0));
        CHECK(dist(reg.positions[0], reg.positions[1]) == doctest::Approx(60.0));
    }
    SUBCASE("scale is uniform: both axes use min(area_width, area_height)") {
        const AtomRegister reg = embed(cloud_of({{0.0, 0.0}, {1.0, 1.0}}), prof);
        const double dx = reg.positions[1].x - reg.positions[0].x;
        const double dy = reg.positions[1].y - reg.positions[0].y;
        CHECK(dx == doctest::Approx(75.0));
        CHECK(dy == doctest::Approx(75.0));
        // centered: 0.5 um margin top and bottom on the 76 um axis
        CHECK(reg.positions[0].y == doctest::Approx(0.5));
        CHECK(reg.positions[1].y == doctest::Approx(75.5));
    }
    SUBCASE("a cloud wider than the unit square is rejected") {
        CHECK_THROWS_AS(embed(cloud_of({{-0.2, 0.5}, {0.9, 0.5}}), prof), InputError);
    }
    SUBCASE("an off-center sub-unit cloud still centers its bounding box") {
        // points span [0, 0.4]; bbox center 0.2 -> offset centers it at 37.5
        const AtomRegister reg = embed(cloud_of({{0.0, 0.2}, {0.4, 0.2}}), prof);
        CHECK(0.5 * (reg.positions[0].x + reg.positions[1].x) == doctest::Approx(37.5));
        CHECK(reg.positions[0].y == doctest::Approx(38.0));
    }
    SUBCASE("basic input validation") {
        CHECK_THROWS_AS(embed(cloud_of({}), prof), InputError);
        CHECK_THROWS_AS(embed(cloud_of({{0.5, 0.5}}), prof, 1.5), InputError);
        HardwareProfile tiny = prof;
        tiny.max_atoms = 1;
        CHECK_THROWS_AS(embed(cloud_of({{0.1, 0.5}, {0.9, 0.5}}), tiny), HardwareError);
    }
}

TEST_CASE("embed resolves min-spacing conflicts by policy") {
    const HardwareProfile prof;  // min_spacing 4 um, scale 75

    SUBCASE("merge: closest pair collapses to its midpoint, alphas average") {
        // 0.02 normalized = 1.5 um < 4 um; third point is far away
        DotCloud c = cloud_of({{0.40, 0.5}, {0.42, 0.5}, {0.9, 0.5}});
        const AtomRegister reg = embed(c, prof, 1.0);
        REQUIRE(reg.size() == 2);
        // merged midpoint of 0.40 and 0.42 -> 0.41 normalized
        const double s = 75.0;
        const double expect_x = 0.41 * s + 0.5 * (75.0 - s * (0.40 + 0.90));
        CHECK(reg.positions[0].x == doctest::Approx(expect_x));
        CHECK(validate(reg).empty());
    }
    SUBCASE("merge cascades until every pair is legal") {
        // five dots 1.5 um apart in a row all merge toward the middle
        DotCloud c = cloud_of({{0.40, 0.5}, {0.42, 0.5}, {0.44, 0.5}, {0.46, 0.5}, {0.9, 0.5}});
        const AtomRegister reg = embed(c, prof);
        CHECK(validate(reg).empty());
        CHECK(reg.size() >= 2);
    }
    SUBCASE("strict: the offending pair is named instead") {
        DotCloud c = cloud_of({{0.40, 0.5}, {0.42, 0.5}, {0.9, 0.5}});
        CHECK_THROWS_WITH_AS(embed(c, prof, 1.0, SpacingPolicy::strict),
                             doctest::Contains("below min_spacing"), HardwareError);
    }
    SUBCASE("merge collapse below 2 atoms is an error for 3+ inputs") {
        DotCloud c = cloud_of({{0.50, 0.5}, {0.51, 0.5}, {0.52, 0.5}});
        CHECK_THROWS_WITH_AS(embed(c, prof), doctest::Contains("collapsed"), HardwareError);
    }
    SUBCASE("a lone pair may legally collapse to one atom") {
        DotCloud c = cloud_of({{0.50, 0.5}, {0.51, 0.5}});
        const AtomRegister reg = embed(c, prof);
        CHECK(reg.size() == 1);
    }
}

TEST_CASE("validate reports out-of-area atoms and under-spaced pairs") {
    AtomRegister reg;
    reg.profile = HardwareProfile{};
    reg.positions = {{-1.0, 10.0}, {10.0, 10.0}, {12.0, 10.0}, {40.0, 80.0}};
    reg.local_scale.assign(4, 1.0);

    const auto v = validate(reg);
    REQUIRE(v.size() == 3);
    CHECK(v[0].kind == Violation::Kind::out_of_area);
    CHECK(v[0].index_a == 0);
    CHECK(v[1].kind == Violation::Kind::out_of_area);
    CHECK(v[1].index_a == 3);
    CHECK(v[2].kind == Violation::Kind::spacing);
    CHECK(v[2].index_a == 1);
    CHECK(v[2].index_b == 2);
    CHECK(v[2].measured == doctest::Approx(2.0));

    reg.positions = {{10.0, 10.0}, {20.0, 10.0}};
    reg.local_scale.assign(2, 1.0);
    CHECK(validate(reg).empty());
}

TEST_CASE("interaction matrix follows the c6 / d^6 law") {
    AtomRegister reg;
    reg.profile = HardwareProfile{};
    reg.positions = {{0.0, 0.0}, {4.0, 0.0}, {8.0, 0.0}};
    reg.local_scale.assign(3, 1.0);

    const Eigen::MatrixXd v = interaction_matrix(reg);
    REQUIRE(v.rows() == 3);
    REQUIRE(v.cols() == 3);
    const double c6 = reg.profile.c6;
    CHECK(v(0, 1) == doctest::Approx(c6 / 4096.0));          // 4 um -> 4^6
    CHECK(v(0, 1) == doctest::Approx(1323.35).epsilon(1e-4));  // ~ 2*pi*862690 / 4096
    CHECK(v(0, 2) == doctest::Approx(c6 / 4096.0 / 64.0));   // doubling d divides by 2^6
    CHECK(v(1, 2) == v(0, 1));
    CHECK(v(1, 0) == v(0, 1));
    CHECK(v(0, 0) == 0.0);
    CHECK(v(1, 1) == 0.0);

    reg.positions[1] = reg.positions[0];
    CHECK_THROWS_AS(interaction_matrix(reg), HardwareError);
}

TEST_CASE("blockade radius") {
    CHECK(blockade_radius(64.0, 1.0) == doctest::Approx(2.0));
    const HardwareProfile p;
    const double rb = blockade_radius(p.c6, p.omega_max);
    CHECK(rb == doctest::Approx(std::pow(862690.0 / 2.5, 1.0 / 6.0)));
    CHECK(rb > 8.0);
    CHECK(rb < 9.0);
    // strictly decreasing in omega
    CHECK(blockade_radius(p.c6, 2.0 * p.omega_max) < rb);
    CHECK_THROWS_AS(blockade_radius(0.0, 1.0), InputError);
    CHECK_THROWS_AS(blockade_radius(1.0, -1.0), InputError);
}

TEST_CASE("waveform evaluation is exact at samples and affine between them") {
    Waveform w;
    w.samples = {{0.0, 0.0}, {1.0, 10.0}, {3.0, 4.0}};
    CHECK_NOTHROW(w.check());
    CHECK(eval_waveform(w, 0.0) == 0.0);
    CHECK(eval_waveform(w, 1.0) == 10.0);
    CHECK(eval_waveform(w, 3.0) == 4.0);
    CHECK(eval_waveform(w, 0.5) == doctest::Approx(5.0));
    CHECK(eval_waveform(w, 2.0) == doctest::Approx(7.0));
    // clamped outside the definition window
    CHECK(eval_waveform(w, -1.0) == 0.0);
    CHECK(eval_waveform(w, 99.0) == 4.0);

    Waveform bad;
    bad.samples = {{0.5, 1.0}};
    CHECK_THROWS_AS(bad.check(), InputError);  // must start at t = 0
    bad.samples = {{0.0, 1.0}, {1.0, 2.0}, {1.0, 3.0}};
    CHECK_THROWS_AS(bad.check(), InputError);  // strictly increasing times
    bad.samples = {};
    CHECK_THROWS_AS(bad.check(), InputError);
}

TEST_CASE("default adiabatic schedule respects every hardware bound") {
    const HardwareProfile prof;
    const WaveformSet set = default_adiabatic_waveforms(prof, 4.0);
    CHECK(set.duration == 4.0);
    // 10% ramps
    CHECK(eval_waveform(set.omega, 0.0) == 0.0);
    CHECK(eval_waveform(set.omega, 0.4) == doctest::Approx(prof.omega_max));
    CHECK(eval_waveform(set.omega, 2.0) == doctest::Approx(prof.omega_max));
    CHECK(eval_waveform(set.omega, 3.6) == doctest::Approx(prof.omega_max));
    CHECK(eval_waveform(set.omega, 4.0) == 0.0);
    CHECK(eval_waveform(set.omega, 0.2) == doctest::Approx(0.5 * prof.omega_max));
    // detuning sweep -max/2 -> +max/2
    CHECK(eval_waveform(set.delta_g, 0.0) == doctest::Approx(-0.5 * prof.delta_abs_max));
    CHECK(eval_waveform(set.delta_g, 2.0) == doctest::Approx(0.0));
    CHECK(eval_waveform(set.delta_g, 4.0) == doctest::Approx(0.5 * prof.delta_abs_max));
    CHECK(eval_waveform(set.delta_l, 1.7) == 0.0);
    CHECK(eval_waveform(set.phi, 1.7) == 0.0);
    CHECK_NOTHROW(validate_waveforms(set, prof));
    CHECK_THROWS_AS(default_adiabatic_waveforms(prof, 5.0), InputError);
    CHECK_THROWS_AS(default_adiabatic_waveforms(prof, 0.0), InputError);
}

TEST_CASE("waveform validation enforces drive limits") {
    const HardwareProfile prof;
    WaveformSet set = default_adiabatic_waveforms(prof, 2.0);

    SUBCASE("omega above omega_max") {
        set.omega.samples[1].v = prof.omega_max * 1.01;
        CHECK_THROWS_WITH_AS(validate_waveforms(set, prof),
                             doctest::Contains("omega_max"), InputError);
    }
    SUBCASE("negative omega") {
        set.omega.samples[1].v = -1.0;
        CHECK_THROWS_AS(validate_waveforms(set, prof), InputError);
    }
    SUBCASE("omega must close at both window ends") {
        set.omega.samples.back().v = 0.5;
        CHECK_THROWS_WITH_AS(validate_waveforms(set, prof),
                             doctest::Contains("zero at the start and end"), InputError);
    }
    SUBCASE("detuning magnitude capped, both global and local") {
        set.delta_g.samples[0].v = -prof.delta_abs_max * 1.1;
        CHECK_THROWS_AS(validate_waveforms(set, prof), InputError);
        set = default_adiabatic_waveforms(prof, 2.0);
        set.delta_l.samples = {{0.0, prof.delta_abs_max * 1.1}};
        CHECK_THROWS_AS(validate_waveforms(set, prof), InputError);
    }
    SUBCASE("duration within (0, t_max]") {
        set.duration = prof.t_max * 1.5;
        CHECK_THROWS_AS(validate_waveforms(set, prof), InputError);
        set.duration = 0.0;
        CHECK_THROWS_AS(validate_waveforms(set, prof), InputError);
    }
}
