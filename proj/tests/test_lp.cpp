#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sinflow/common.hpp"
#include "sinflow/lp.hpp"
#include "support/tableau_lp.hpp"

using namespace sinflow;

namespace {

LpStandardForm make_lp(int n, const std::vector<std::pair<std::vector<double>, double>>& ineq,
                       const std::vector<std::pair<std::vector<double>, double>>& eq,
                       const std::vector<double>& c) {
    LpStandardForm p;
    p.num_vars = n;
    p.objective = c;
    for (const auto& [row, b] : ineq) {
        SparseVec r;
        for (int j = 0; j < n; ++j)
            if (row[j] != 0.0) r.emplace_back(j, row[j]);
        p.a_ineq.push_back(r);
        p.b_ineq.push_back(b);
    }
    for (const auto& [row, b] : eq) {
        SparseVec r;
        for (int j = 0; j < n; ++j)
            if (row[j] != 0.0) r.emplace_back(j, row[j]);
        p.a_eq.push_back(r);
        p.b_eq.push_back(b);
    }
    return p;
}

}  // namespace

TEST_CASE("one-dimensional maximum against a single row") {
    // min -x s.t. x <= 5
    const LpStandardForm p = make_lp(1, {{{1.0}, 5.0}}, {}, {-1.0});
    const LpOutcome out = solve_lp(p);
    REQUIRE(out.status == LpOutcome::Status::Optimal);
    CHECK(out.x[0] == doctest::Approx(5.0));
    CHECK(out.objective == doctest::Approx(-5.0));
    CHECK(out.duals_ineq[0] == doctest::Approx(-1.0));
}

TEST_CASE("contradictory bounds produce a verified Farkas ray") {
    // x <= 1 and -x <= -2 cannot both hold
    const LpStandardForm p = make_lp(1, {{{1.0}, 1.0}, {{-1.0}, -2.0}}, {}, {0.0});
    const LpOutcome out = solve_lp(p);
    REQUIRE(out.status == LpOutcome::Status::Infeasible);
    const auto& y = out.farkas_ineq;
    REQUIRE(y.size() == 2);
    CHECK(y[0] >= 0.0);
    CHECK(y[1] >= 0.0);
    // A'Y >= 0 and b'Y < 0
    CHECK(y[0] * 1.0 + y[1] * -1.0 >= -1e-9);
    CHECK(y[0] * 1.0 + y[1] * -2.0 < -1e-9);
}

TEST_CASE("unbounded direction is reported with a ray") {
    const LpStandardForm p = make_lp(1, {}, {}, {-1.0});
    const LpOutcome out = solve_lp(p);
    REQUIRE(out.status == LpOutcome::Status::Unbounded);
    CHECK(out.primal_ray[0] > 0.0);
}

TEST_CASE("degenerate equality plus bounds") {
    // min x0 + x1 s.t. x0 + x1 = 1
    const LpStandardForm p = make_lp(2, {}, {{{1.0, 1.0}, 1.0}}, {1.0, 1.0});
    const LpOutcome out = solve_lp(p);
    REQUIRE(out.status == LpOutcome::Status::Optimal);
    CHECK(out.objective == doctest::Approx(1.0));
    CHECK(out.duals_eq[0] == doctest::Approx(1.0));
}

TEST_CASE("upper bounds participate in optimum and duals") {
    // min -x0 - x1 s.t. x0 + x1 <= 3, x0 <= 1 (bound), x1 <= 5 (bound)
    LpStandardForm p = make_lp(2, {{{1.0, 1.0}, 3.0}}, {}, {-1.0, -1.0});
    p.upper = {1.0, 5.0};
    const LpOutcome out = solve_lp(p);
    REQUIRE(out.status == LpOutcome::Status::Optimal);
    CHECK(out.objective == doctest::Approx(-3.0));
    CHECK(out.x[0] + out.x[1] == doctest::Approx(3.0));
    // strong duality with bound multipliers
    double dual = out.duals_ineq[0] * 3.0;
    for (int j = 0; j < 2; ++j) dual += out.bound_duals[j] * p.upper[j];
    CHECK(dual == doctest::Approx(-3.0).epsilon(1e-7));
}

TEST_CASE("random dense LPs match the tableau oracle") {
    Rng rng(20240817);
    int optimal_seen = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(6));
        const int m_ineq = 1 + static_cast<int>(rng.below(6));
        const int m_eq = static_cast<int>(rng.below(3));
        std::vector<std::vector<double>> rows;
        std::vector<double> rhs, c;
        std::vector<std::pair<std::vector<double>, double>> ineq, eq;
        for (int r = 0; r < m_ineq + m_eq; ++r) {
            std::vector<double> row(n);
            double pos = 0.0;
            for (int j = 0; j < n; ++j) {
                row[j] = std::round(rng.uniform(-3.0, 5.0));
                pos += std::max(0.0, row[j]);
            }
            // keep a healthy chance of feasibility: rhs at a convex point
            const double b = rng.uniform(0.5, 1.0) * (pos + 1.0) * 0.5;
            if (r < m_ineq)
                ineq.emplace_back(row, b);
            else
                eq.emplace_back(row, b * 0.5);
        }
        for (int j = 0; j < n; ++j) c.push_back(std::round(rng.uniform(-4.0, 4.0)));
        // bound the feasible set so unbounded cases stay rare
        std::vector<double> box(n, 1.0);
        ineq.emplace_back(box, 10.0);

        const LpStandardForm p = make_lp(n, ineq, eq, c);
        const LpOutcome mine = solve_lp(p);

        std::vector<std::vector<double>> a;
        std::vector<double> b;
        for (const auto& [row, bb] : ineq) {
            a.push_back(row);
            b.push_back(bb);
        }
        for (const auto& [row, bb] : eq) {
            a.push_back(row);
            b.push_back(bb);
        }
        const auto ref = oracle::tableau_simplex(a, b, c, static_cast<int>(ineq.size()));

        if (ref.status == oracle::TableauResult::Status::Optimal) {
            ++optimal_seen;
            REQUIRE(mine.status == LpOutcome::Status::Optimal);
            CHECK(mine.objective ==
                  doctest::Approx(ref.objective).epsilon(1e-7).scale(1.0 + std::fabs(ref.objective)));
        } else if (ref.status == oracle::TableauResult::Status::Infeasible) {
            REQUIRE(mine.status == LpOutcome::Status::Infeasible);
        } else {
            REQUIRE(mine.status == LpOutcome::Status::Unbounded);
        }
    }
    CHECK(optimal_seen >= 50);  // the generator must actually exercise the optimal path
}

TEST_CASE("strong duality and complementary slackness on random feasible LPs") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(5));
        const int m = 2 + static_cast<int>(rng.below(5));
        std::vector<std::pair<std::vector<double>, double>> ineq;
        std::vector<double> c;
        for (int r = 0; r < m; ++r) {
            std::vector<double> row(n);
            for (int j = 0; j < n; ++j) row[j] = rng.uniform(0.0, 3.0);
            ineq.emplace_back(row, rng.uniform(1.0, 6.0));
        }
        for (int j = 0; j < n; ++j) c.push_back(rng.uniform(-3.0, 1.0));
        const LpStandardForm p = make_lp(n, ineq, {}, c);
        const LpOutcome out = solve_lp(p);
        REQUIRE(out.status == LpOutcome::Status::Optimal);
        double dual = 0.0;
        for (int r = 0; r < m; ++r) {
            CHECK(out.duals_ineq[r] <= 1e-9);
            dual += out.duals_ineq[r] * p.b_ineq[r];
            // complementary slackness: dual zero or row active
            const double slack = p.b_ineq[r] - dot(p.a_ineq[r], out.x);
            CHECK(std::fabs(out.duals_ineq[r] * slack) <= 1e-7 * (1.0 + std::fabs(out.objective)));
        }
        CHECK(std::fabs(dual - out.objective) <= 1e-7 * (1.0 + std::fabs(out.objective)));
    }
}

TEST_CASE("deterministic across repeated solves") {
    Rng rng(99);
    std::vector<std::pair<std::vector<double>, double>> ineq;
    std::vector<double> c;
    const int n = 6;
    for (int r = 0; r < 5; ++r) {
        std::vector<double> row(n);
        for (int j = 0; j < n; ++j) row[j] = rng.uniform(-1.0, 2.0);
        ineq.emplace_back(row, rng.uniform(1.0, 4.0));
    }
    for (int j = 0; j < n; ++j) c.push_back(rng.uniform(-2.0, 1.0));
    const LpStandardForm p = make_lp(n, ineq, {}, c);
    const LpOutcome a = solve_lp(p);
    const LpOutcome b = solve_lp(p);
    REQUIRE(a.status == LpOutcome::Status::Optimal);
    CHECK(a.objective == b.objective);
    CHECK(a.x == b.x);
    CHECK(a.pivots == b.pivots);
}
