#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "sinflow/scenario.hpp"

using namespace sinflow;

// Independent scalar route for the loss factor: (lambda / 4 pi d)^2.
static double loss_via_wavelength(double d, double nu) {
    const double lambda = 2.998e8 / nu;
    return std::pow(lambda / (4.0 * std::numbers::pi * d), 2.0);
}

TEST_CASE("free space loss") {
    // frozen from the wavelength-route hand calculation
    CHECK(free_space_loss(1.0e6, 2.2e9) ==
          doctest::Approx(1.175975211598743e-16).epsilon(1e-9));
    CHECK(free_space_loss(1.0e6, 2.2e9) ==
          doctest::Approx(loss_via_wavelength(1.0e6, 2.2e9)).epsilon(1e-12));
    // inverse-square in both distance and frequency
    CHECK(free_space_loss(2.0e6, 2.2e9) / free_space_loss(1.0e6, 2.2e9) ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK(free_space_loss(1.0e6, 4.4e9) / free_space_loss(1.0e6, 2.2e9) ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK(free_space_loss(1.0e6, 2.2e9) < 1.0);
    CHECK_THROWS_AS(free_space_loss(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(free_space_loss(1.0, 0.0), std::domain_error);
}

static LinkBudgetParams table_params() {
    LinkBudgetParams lb;
    lb.s2s = {20.0, std::pow(10.0, 5.2), 2.2e9, std::pow(10.0, -2.3)};
    lb.u2s = {1.0, std::pow(10.0, 4.2), 30e9, std::pow(10.0, -2.3)};
    lb.s2u = {20.0, std::pow(10.0, 4.2), 30e9, std::pow(10.0, -2.3)};
    return lb;
}

TEST_CASE("s2s rate with the experiment constants") {
    const LinkBudgetParams lb = table_params();
    // frozen from the independent scalar script with these exact inputs
    CHECK(s2s_rate_mbit_s(lb, 1.0e6) == doctest::Approx(4.281037938849988).epsilon(1e-9));
    // linear in transmit power
    LinkBudgetParams doubled = lb;
    doubled.s2s.power_w *= 2.0;
    CHECK(s2s_rate_mbit_s(doubled, 1.0e6) ==
          doctest::Approx(2.0 * s2s_rate_mbit_s(lb, 1.0e6)).epsilon(1e-12));
    LinkBudgetParams bad = lb;
    bad.s2s.power_w = 0.0;
    CHECK_THROWS_AS(s2s_rate_mbit_s(bad, 1.0e6), std::domain_error);
}

TEST_CASE("ground link Shannon rate") {
    const LinkBudgetParams lb = table_params();
    // frozen: S2U at 781 km with N0 = kB * 1000 K * 30 MHz
    CHECK(ground_link_rate_mbit_s(lb, 781e3, GroundDirection::S2U) ==
          doctest::Approx(0.17185488838901877).epsilon(1e-9));
    CHECK(ground_link_rate_mbit_s(lb, 781e3, GroundDirection::U2S) ==
          doctest::Approx(0.008608970328417618).epsilon(1e-9));
    // rate vanishes as SNR -> 0 (enormous range)
    CHECK(ground_link_rate_mbit_s(lb, 1e12, GroundDirection::S2U) ==
          doctest::Approx(0.0).epsilon(1e-9));
    // doubling bandwidth at fixed SNR doubles the rate
    LinkBudgetParams wide = lb;
    wide.bandwidth_hz *= 2.0;
    const double snr = ground_snr(lb, 781e3, GroundDirection::S2U);
    CHECK(ground_link_rate_mbit_s(wide, 781e3, GroundDirection::S2U) *
              std::log2(1.0 + snr) ==
          doctest::Approx(2.0 * ground_link_rate_mbit_s(lb, 781e3, GroundDirection::S2U) *
                          std::log2(1.0 + snr))
              .epsilon(1e-9));
}

TEST_CASE("link capacity is rate times slot duration") {
    CHECK(link_capacity_mbit(100.0, 10.0) == doctest::Approx(1000.0));
    CHECK(link_capacity_mbit(0.0, 10.0) == doctest::Approx(0.0));
    const LinkBudgetParams lb = table_params();
    CHECK(link_capacity_mbit(s2s_rate_mbit_s(lb, 1.0e6), 10.0) ==
          doctest::Approx(42.81037938849988).epsilon(1e-9));
    CHECK_THROWS_AS(link_capacity_mbit(-1.0, 10.0), std::domain_error);
}

TEST_CASE("paper-shape generation and validation") {
    const Scenario sc = paper_shape_scenario(1);
    CHECK(sc.satellite_count() == 12);
    CHECK(sc.flow_count() == 4);
    CHECK(sc.horizon == 30);
    CHECK(sc.slot_duration_s == doctest::Approx(10.0));
    CHECK(sc.function_count == 4);
    int fn_nodes = 0;
    for (const auto& sat : sc.satellites)
        if (sat.is_function_node) {
            ++fn_nodes;
            CHECK(sat.offered_functions.size() == 2);
        }
    CHECK(fn_nodes == 6);
    for (const auto& flow : sc.flows) {
        CHECK(flow.sfc.size() == 2);
        for (double beta : flow.scaling_factors) {
            CHECK(beta >= 0.8);
            CHECK(beta <= 1.2);
        }
    }
    CHECK_NOTHROW(validate_scenario(sc));
}

TEST_CASE("generator determinism and minimal instance") {
    const Scenario a = generate_synthetic({5, 2, 3, 2, 4, 42});
    const Scenario b = generate_synthetic({5, 2, 3, 2, 4, 42});
    CHECK(scenario_to_json(a) == scenario_to_json(b));
    const Scenario c = generate_synthetic({5, 2, 3, 2, 4, 43});
    CHECK(scenario_to_json(a) != scenario_to_json(c));

    const Scenario tiny = minimal_scenario();
    CHECK(tiny.satellite_count() == 1);
    CHECK(tiny.flow_count() == 1);
    CHECK(tiny.horizon == 1);
    CHECK(tiny.satellites[0].is_function_node);
    CHECK_NOTHROW(validate_scenario(tiny));

    CHECK_THROWS_AS(generate_synthetic({1, 1, 1, 2, 1, 0}), std::invalid_argument);
}

TEST_CASE("round trip through the JSON form is the identity") {
    const Scenario sc = generate_synthetic({6, 2, 3, 2, 5, 7});
    const std::string once = scenario_to_json(sc);
    const Scenario back = parse_scenario(once);
    CHECK(scenario_to_json(back) == once);
}

TEST_CASE("generated scenarios always pass load validation") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const Scenario sc = generate_synthetic({4 + static_cast<int>(seed % 5), 2, 3, 1,
                                                1 + static_cast<int>(seed % 4), seed});
        CHECK_NOTHROW(parse_scenario(scenario_to_json(sc)));
    }
}

TEST_CASE("validation pinpoints broken scenarios") {
    Scenario sc = generate_synthetic({3, 2, 2, 1, 2, 5});

    SUBCASE("empty SFC") {
        sc.flows[0].sfc.clear();
        sc.flows[0].scaling_factors.clear();
        sc.flows[0].compute_factors.clear();
        CHECK_THROWS_WITH_AS(validate_scenario(sc), doctest::Contains("SFC empty"),
                             ValidationError);
    }
    SUBCASE("lost coverage names the user and slot") {
        for (int s = 0; s < sc.satellite_count(); ++s) {
            sc.visibility.k[sc.visibility.at(sc.source_node(1), sc.sat_node(s), 2)] = 0;
        }
        CHECK_THROWS_WITH_AS(validate_scenario(sc),
                             doctest::Contains("u2 has no visible satellite at slot 2"),
                             ValidationError);
    }
    SUBCASE("zero range on an available link") {
        for (int s = 0; s < sc.satellite_count(); ++s)
            if (sc.visibility.available(sc.source_node(0), sc.sat_node(s), 1)) {
                sc.visibility.range_m[sc.visibility.at(sc.source_node(0), sc.sat_node(s), 1)] =
                    0.0;
                break;
            }
        CHECK_THROWS_AS(validate_scenario(sc), ValidationError);
    }
    SUBCASE("scaling factor count must match the SFC") {
        sc.flows[0].scaling_factors.push_back(1.0);
        CHECK_THROWS_AS(validate_scenario(sc), ValidationError);
    }
}

TEST_CASE("file IO reports missing files and parse errors") {
    CHECK_THROWS_AS(load_scenario("/nonexistent/path.json"), ParseError);
    CHECK_THROWS_AS(parse_scenario("{not json"), ParseError);
    CHECK_THROWS_AS(parse_scenario("{}"), ParseError);
}

TEST_CASE("save then load recovers the scenario") {
    const Scenario sc = generate_synthetic({4, 1, 2, 1, 3, 11});
    const std::string path = "test_scenario_roundtrip.json";
    save_scenario(sc, path);
    const Scenario back = load_scenario(path);
    CHECK(scenario_to_json(back) == scenario_to_json(sc));
    std::remove(path.c_str());
}
