#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "sinflow/benders.hpp"

using namespace sinflow;

namespace {

MilpProblem assemble_scenario(const Scenario& sc) { return assemble(build_mfteg(sc), sc); }

}  // namespace

TEST_CASE("minimal instance has exactly three binaries") {
    const Scenario sc = minimal_scenario();
    const MilpProblem p = assemble_scenario(sc);
    CHECK(p.vars.binary_count() == 3);  // one phi each way plus one lambda
    // continuous: x_u2s, x_s2u, y, z, o for stages 0 and 1
    CHECK(p.vars.continuous_count() == 6);
    CHECK(p.family_rows(RowFamily::U2SCapacity) == 1);
    CHECK(p.family_rows(RowFamily::S2UCapacity) == 1);
    CHECK(p.family_rows(RowFamily::VirtualInCapacity) == 1);
    CHECK(p.family_rows(RowFamily::VirtualOutCapacity) == 1);
    CHECK(p.family_rows(RowFamily::Computation) == 1);
    CHECK(p.family_rows(RowFamily::Storage) == 1);
    CHECK(p.family_rows(RowFamily::ConservationSubNode) == 2);
    CHECK(p.family_rows(RowFamily::Scaling) == 1);
    CHECK(p.family_rows(RowFamily::AvailabilityLimit) == 0);
    CHECK(p.family_rows(RowFamily::CapabilityLimit) == 0);
}

TEST_CASE("row and column counts match an independent recount") {
    const Scenario sc = paper_shape_scenario(1);
    const MilpProblem p = assemble_scenario(sc);

    // recount from the scenario data alone
    int u2s_pairs = 0, s2u_pairs = 0, s2s_pairs = 0;
    for (int t = 1; t <= sc.horizon; ++t) {
        for (int lf = 0; lf < sc.flow_count(); ++lf)
            for (int s = 0; s < sc.satellite_count(); ++s) {
                u2s_pairs += sc.visibility.available(sc.source_node(lf), sc.sat_node(s), t);
                s2u_pairs += sc.visibility.available(sc.sat_node(s), sc.dest_node(lf), t);
            }
        for (int i = 0; i < sc.satellite_count(); ++i)
            for (int j = 0; j < sc.satellite_count(); ++j)
                if (i != j)
                    s2s_pairs += sc.visibility.available(sc.sat_node(i), sc.sat_node(j), t);
    }
    int capable_steps = 0;  // (l, k, capable node) triples
    int stages_total = 0;
    for (const auto& flow : sc.flows) {
        stages_total += flow.chain_length() + 1;
        for (int f : flow.sfc)
            for (const auto& sat : sc.satellites)
                for (int g : sat.offered_functions) capable_steps += f == g;
    }
    int fn_nodes = 0;
    for (const auto& sat : sc.satellites) fn_nodes += sat.is_function_node;

    CHECK(p.family_rows(RowFamily::U2SCapacity) == u2s_pairs);
    CHECK(p.family_rows(RowFamily::S2UCapacity) == s2u_pairs);
    CHECK(p.family_rows(RowFamily::S2SCapacity) == s2s_pairs);
    CHECK(p.family_rows(RowFamily::VirtualInCapacity) == capable_steps * sc.horizon);
    CHECK(p.family_rows(RowFamily::VirtualOutCapacity) == capable_steps * sc.horizon);
    CHECK(p.family_rows(RowFamily::Computation) == fn_nodes * sc.horizon);
    CHECK(p.family_rows(RowFamily::Storage) == sc.satellite_count() * sc.horizon);
    CHECK(p.family_rows(RowFamily::Scaling) == capable_steps * sc.horizon);
    CHECK(p.family_rows(RowFamily::ConservationNonFunction) +
              p.family_rows(RowFamily::ConservationSubNode) ==
          sc.satellite_count() * sc.horizon * stages_total);
    CHECK(p.family_rows(RowFamily::AssocSourceCard) == 2 * sc.flow_count() * sc.horizon);
    CHECK(p.family_rows(RowFamily::AssocDestCard) == 2 * sc.flow_count() * sc.horizon);
    CHECK(p.family_rows(RowFamily::PlacementCard) == 2 * 8);  // 4 flows x 2 steps

    // columns
    int expect_x = u2s_pairs + s2u_pairs;
    for (int t = 1; t <= sc.horizon; ++t)
        for (int i = 0; i < sc.satellite_count(); ++i)
            for (int j = 0; j < sc.satellite_count(); ++j)
                if (i != j && sc.visibility.available(sc.sat_node(i), sc.sat_node(j), t))
                    expect_x += stages_total;
    const int expect_y = capable_steps * sc.horizon;
    const int expect_o = sc.satellite_count() * sc.horizon * stages_total;
    CHECK(p.vars.continuous_count() == expect_x + 2 * expect_y + expect_o);
    CHECK(p.vars.binary_count() == u2s_pairs + s2u_pairs + capable_steps);
}

TEST_CASE("zero flow with any greedy-feasible association is feasible at objective zero") {
    const Scenario sc = generate_synthetic({4, 2, 2, 1, 2, 3});
    const MilpProblem p = assemble_scenario(sc);
    const auto w = initial_w(p, sc);
    std::vector<double> wd(w.begin(), w.end());
    std::vector<double> q(p.vars.continuous_count(), 0.0);
    const Evaluation ev = evaluate(p, q, wd);
    CHECK(ev.feasible);
    CHECK(ev.objective == doctest::Approx(0.0));
}

TEST_CASE("evaluate names the violated association row") {
    const Scenario sc = generate_synthetic({4, 2, 2, 1, 3, 3});
    const MilpProblem p = assemble_scenario(sc);
    std::vector<double> w(p.vars.binary_count(), 0.0);  // all-zero violates sum phi = 1
    const Evaluation ev = evaluate_binary(p, w);
    CHECK_FALSE(ev.feasible);
    bool named = false;
    for (const auto& v : ev.violations)
        named = named || (v.tag.family == RowFamily::AssocSourceCard &&
                          v.tag.detail.find("l=1 t=1") != std::string::npos);
    CHECK(named);
    CHECK_THROWS_AS(
        evaluate_binary(p, std::vector<double>(p.vars.binary_count() + 1, 0.0)),
        std::invalid_argument);
}

TEST_CASE("scaling rows couple y and z with exactly two entries") {
    const Scenario sc = generate_synthetic({5, 2, 3, 2, 2, 12});
    const MilpProblem p = assemble_scenario(sc);
    int scaling_rows = 0;
    for (std::size_t r = 0; r < p.d2.size(); ++r) {
        if (p.tags2[r].family != RowFamily::Scaling) continue;
        ++scaling_rows;
        REQUIRE(p.b2[r].size() == 2);
        const VarKey& a = p.vars.continuous_key(p.b2[r][0].first);
        const VarKey& b = p.vars.continuous_key(p.b2[r][1].first);
        const VarKey& ykey = a.kind == VarKind::Y ? a : b;
        const VarKey& zkey = a.kind == VarKind::Y ? b : a;
        REQUIRE(ykey.kind == VarKind::Y);
        REQUIRE(zkey.kind == VarKind::Z);
        CHECK(zkey.stage == ykey.stage + 1);
        const double y_coeff = a.kind == VarKind::Y ? p.b2[r][0].second : p.b2[r][1].second;
        const double z_coeff = a.kind == VarKind::Y ? p.b2[r][1].second : p.b2[r][0].second;
        CHECK(y_coeff == doctest::Approx(1.0));
        CHECK(z_coeff ==
              doctest::Approx(-sc.flows[ykey.flow].scaling_factors[ykey.stage]));
    }
    CHECK(scaling_rows > 0);
}

TEST_CASE("every binary column sits in a cardinality row") {
    const Scenario sc = generate_synthetic({5, 2, 3, 2, 3, 2});
    const MilpProblem p = assemble_scenario(sc);
    std::set<int> covered;
    for (std::size_t r = 0; r < p.d3.size(); ++r) {
        const RowFamily f = p.tags3[r].family;
        if (f != RowFamily::AssocSourceCard && f != RowFamily::AssocDestCard &&
            f != RowFamily::PlacementCard)
            continue;
        for (const auto& [j, v] : p.g3[r]) covered.insert(j);
    }
    CHECK(static_cast<int>(covered.size()) == p.vars.binary_count());
}

TEST_CASE("assembly is deterministic") {
    const Scenario sc = generate_synthetic({5, 2, 3, 1, 3, 21});
    const MilpProblem a = assemble_scenario(sc);
    const MilpProblem b = assemble_scenario(sc);
    CHECK(export_milp(a) == export_milp(b));
}

TEST_CASE("hand-traced route on the minimal instance") {
    const Scenario sc = minimal_scenario();
    const MilpProblem p = assemble_scenario(sc);
    const double beta = sc.flows[0].scaling_factors[0];

    // route a small volume end to end: u -> sat -> function -> sat -> u
    const double v = 1e-3;
    std::vector<double> q(p.vars.continuous_count(), 0.0);
    auto set = [&](VarKind kind, int stage, int a, int b, double value) {
        const int col = p.vars.continuous_column({kind, 0, stage, 1, a, b});
        REQUIRE(col >= 0);
        q[col] = value;
    };
    set(VarKind::X, 0, sc.source_node(0), sc.sat_node(0), v);
    set(VarKind::Y, 0, 0, 0, v);
    set(VarKind::Z, 1, 0, 0, v / beta);
    set(VarKind::X, 1, sc.sat_node(0), sc.dest_node(0), v / beta);

    const auto w = initial_w(p, sc);
    std::vector<double> wd(w.begin(), w.end());
    const Evaluation ev = evaluate(p, q, wd);
    CHECK(ev.feasible);
    CHECK(ev.objective == doctest::Approx(v / beta));

    const SolutionReport rep = decode_solution(p, sc, q, wd);
    CHECK(rep.objective_mbit == doctest::Approx(v / beta));
    CHECK(rep.delivered_per_flow[0] == doctest::Approx(v / beta));
    CHECK(rep.source_assoc[0][0] == 0);
    CHECK(rep.dest_assoc[0][0] == 0);
    CHECK(rep.placement[0][0] == std::pair<int, int>{0, 0});
    CHECK(rep.link_flows.size() == 4);

    // zero solution decodes to an empty report
    std::vector<double> zero(p.vars.continuous_count(), 0.0);
    const SolutionReport empty = decode_solution(p, sc, zero, wd);
    CHECK(empty.objective_mbit == doctest::Approx(0.0));
    CHECK(empty.link_flows.empty());

    // infeasible input is rejected with the violation list
    q[0] = -1.0;
    CHECK_THROWS_AS(decode_solution(p, sc, q, wd), ValidationError);
}

TEST_CASE("baseline restrictions") {
    const Scenario sc = generate_synthetic({6, 2, 3, 2, 3, 17});
    const MilpProblem p = assemble_scenario(sc);

    SUBCASE("lvnf keeps only the first offered function") {
        const MilpProblem r = restrict_baseline(p, BaselineScheme::LVNF, sc);
        for (std::size_t row = 0; row < r.d3.size(); ++row) {
            if (r.tags3[row].family != RowFamily::BaselineFix) continue;
            const VarKey& k = r.vars.binary_key(r.g3[row][0].first);
            CHECK(k.kind == VarKind::Lambda);
            CHECK(k.b != 0);  // only non-first offerings get dropped
        }
        // the dropped nodes' virtual links are deactivated
        int zeroed = 0;
        for (std::size_t row = 0; row < r.d1.size(); ++row) {
            if (r.tags1[row].family != RowFamily::VirtualInCapacity &&
                r.tags1[row].family != RowFamily::VirtualOutCapacity)
                continue;
            const VarKey& vk = r.vars.continuous_key(r.b1[row][0].first);
            if (vk.b != 0) {
                CHECK(r.g1[row].empty());
                ++zeroed;
            }
        }
        CHECK(zeroed > 0);
    }

    SUBCASE("fvnf pins every step and rotates across flows") {
        const MilpProblem r = restrict_baseline(p, BaselineScheme::FVNF, sc);
        int pinned = 0;
        for (std::size_t row = 0; row < r.d3.size(); ++row)
            if (r.tags3[row].family == RowFamily::BaselineFix) ++pinned;
        int steps = 0;
        for (const auto& flow : sc.flows) steps += flow.chain_length();
        CHECK(pinned == steps);
        // pinning stays feasible
        CHECK_NOTHROW(initial_w(r, sc));
    }

    SUBCASE("hu pins the strongest-signal satellite per slot") {
        const MilpProblem r = restrict_baseline(p, BaselineScheme::HU, sc);
        const auto w_hu = initial_w(r, sc);
        const auto w_free = initial_w(p, sc);
        // the greedy start shares the association rule with the HU scheme
        for (int c = 0; c < p.vars.binary_count(); ++c) {
            const VarKey& k = p.vars.binary_key(c);
            if (k.kind == VarKind::PhiU2S || k.kind == VarKind::PhiS2U)
                CHECK(static_cast<int>(w_hu[c]) == static_cast<int>(w_free[c]));
        }
    }
}

TEST_CASE("objective bound dominates hand-routed solutions") {
    const Scenario sc = generate_synthetic({4, 2, 2, 1, 2, 8});
    const MilpProblem p = assemble_scenario(sc);
    const double bound = objective_upper_bound(p, sc);
    CHECK(bound > 0.0);
    const auto w = initial_w(p, sc);
    std::vector<double> wd(w.begin(), w.end());
    const SubproblemOutcome sub = solve_subproblem(p, wd);
    REQUIRE(sub.kind == SubproblemOutcome::Kind::OptimalityCut);
    CHECK(-sub.theta_hat <= bound + 1e-6);
}
