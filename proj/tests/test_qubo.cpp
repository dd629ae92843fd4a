#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sinflow/qubo.hpp"
#include "sinflow/sampler.hpp"
#include "sinflow/common.hpp"

using namespace sinflow;

namespace {

// master over bare binaries: n w-columns, rows sum(w) <= 1 and >= 1
MilpProblem toy_master(int n) {
    MilpProblem p;
    std::vector<VarKey> bins;
    for (int i = 0; i < n; ++i) bins.push_back({VarKind::PhiU2S, 0, -1, 1, i, -1});
    p.vars.build({}, bins);
    SparseVec up, dn;
    for (int i = 0; i < n; ++i) {
        up.emplace_back(i, 1.0);
        dn.emplace_back(i, -1.0);
    }
    p.g3 = {up, dn};
    p.d3 = {1.0, -1.0};
    p.tags3 = {{RowFamily::AssocSourceCard, "toy ub"}, {RowFamily::AssocSourceCard, "toy lb"}};
    return p;
}

std::vector<std::uint8_t> bits_of(std::uint64_t mask, int n) {
    std::vector<std::uint8_t> b(n);
    for (int i = 0; i < n; ++i) b[i] = (mask >> i) & 1;
    return b;
}

}  // namespace

TEST_CASE("theta encoding splits and decodes") {
    const ThetaEncoding enc = encode_theta(-511.0, 1023.0, 20);
    CHECK(enc.neg_bits == 9);
    CHECK(enc.pos_bits == 9);
    CHECK(enc.frac_bits == 1);
    CHECK(enc.total_bits() == 20);
    CHECK(enc.resolution() == doctest::Approx(0.5));
    CHECK(enc.min_value() <= -511.0);
    CHECK(enc.max_value() >= 1023.0);

    std::vector<std::uint8_t> zero(20, 0);
    CHECK(enc.decode(zero) == doctest::Approx(0.0));

    // random assignments decode to the independent weighted sum
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::uint8_t> v(20);
        for (auto& b : v) b = rng.next() & 1;
        double expect = 0.0;
        for (int i = 0; i <= enc.frac_bits + enc.pos_bits; ++i)
            if (v[i]) expect += std::ldexp(1.0, i - enc.frac_bits);
        for (int j = 0; j < enc.neg_bits; ++j)
            if (v[1 + enc.frac_bits + enc.pos_bits + j]) expect -= std::ldexp(1.0, j);
        CHECK(enc.decode(v) == doctest::Approx(expect).epsilon(1e-12));
    }

    CHECK_THROWS_AS(encode_theta(-1e9, 1e9, 4), std::invalid_argument);
    CHECK_THROWS_AS(encode_theta(1.0, 0.0, 8), std::invalid_argument);
}

TEST_CASE("inequality penalty enumerated on a two-variable row") {
    QuboModel model(2);
    add_inequality_penalty(model, {{0, 1.0}, {1, 1.0}}, 1.0, 10.0, true, "pair");
    REQUIRE(model.num_bits() == 3);  // one slack bit
    REQUIRE(model.penalties().size() == 1);
    // feasible assignments reach zero with the right slack; (1,1) costs eta
    double best_11 = 1e300;
    for (std::uint64_t m = 0; m < 8; ++m) {
        const auto b = bits_of(m, 3);
        const double e = model.energy(b);
        if (b[0] && b[1]) best_11 = std::min(best_11, e);
        if (!b[0] && !b[1] && b[2]) CHECK(e == doctest::Approx(0.0));  // 0+0-1+1 = 0
        if (b[0] != b[1] && !b[2]) CHECK(e == doctest::Approx(0.0));
    }
    CHECK(best_11 == doctest::Approx(10.0));
}

TEST_CASE("trivial and unsatisfiable rows") {
    QuboModel model(1);
    add_inequality_penalty(model, {}, 0.0, 5.0, true, "0 <= 0");
    CHECK(model.num_bits() == 1);  // no slack added
    CHECK(model.penalties().back().terms.empty());
    CHECK_THROWS_AS(add_inequality_penalty(model, {}, -1.0, 5.0, true, "0 <= -1"),
                    std::invalid_argument);
}

TEST_CASE("equality pairs only vanish at exact equality") {
    // w0 + w1 = 1 as a <=-pair
    QuboModel model(2);
    add_inequality_penalty(model, {{0, 1.0}, {1, 1.0}}, 1.0, 7.0, true, "ub");
    add_inequality_penalty(model, {{0, -1.0}, {1, -1.0}}, -1.0, 7.0, true, "lb");
    const int n = model.num_bits();
    for (std::uint64_t m = 0; m < (1ULL << n); ++m) {
        const auto b = bits_of(m, n);
        const int ones = b[0] + b[1];
        if (model.energy(b) < 1e-9) CHECK(ones == 1);
    }
    // both feasible settings reach zero with the right slack
    double best01 = 1e300, best10 = 1e300, best00 = 1e300, best11 = 1e300;
    for (std::uint64_t m = 0; m < (1ULL << n); ++m) {
        const auto b = bits_of(m, n);
        const double e = model.energy(b);
        if (!b[0] && b[1]) best01 = std::min(best01, e);
        if (b[0] && !b[1]) best10 = std::min(best10, e);
        if (!b[0] && !b[1]) best00 = std::min(best00, e);
        if (b[0] && b[1]) best11 = std::min(best11, e);
    }
    CHECK(best01 == doctest::Approx(0.0));
    CHECK(best10 == doctest::Approx(0.0));
    CHECK(best00 >= 7.0 - 1e-9);
    CHECK(best11 >= 7.0 - 1e-9);
}

TEST_CASE("master with no cuts grounds at the encoding minimum over feasible w") {
    const MilpProblem master = toy_master(2);
    std::vector<CutData> feas, opt;
    MasterProblem mp{&master, &feas, &opt, -4.0, 0.0};
    const ThetaEncoding enc = encode_theta(-4.0, 0.0, 8);
    const QuboModel model = build_master_qubo(mp, {}, enc);
    const auto [bits, energy] = brute_force(model);
    const DecodedSample d = decode(model, bits);
    CHECK(d.master_feasible);
    CHECK(d.w[0] + d.w[1] == 1);
    CHECK(d.theta == doctest::Approx(enc.min_value()));
}

TEST_CASE("one optimality cut reproduces the enumerated master optimum") {
    const MilpProblem master = toy_master(2);
    std::vector<CutData> feas, opt;
    CutData cut;
    cut.optimality = true;
    cut.rhs_term = -1.0;
    cut.w_coeffs = {{0, -2.0}, {1, -0.5}};  // theta >= -1 + 2 w0 + 0.5 w1
    opt.push_back(cut);
    MasterProblem mp{&master, &feas, &opt, -8.0, 0.0};
    const ThetaEncoding enc = encode_theta(-8.0, 0.0, 10);
    const QuboModel model = build_master_qubo(mp, {}, enc);

    // enumerate w over the cardinality-feasible set, theta analytic
    double best_theta = 1e300;
    std::vector<int> best_w;
    for (int w0 = 0; w0 <= 1; ++w0)
        for (int w1 = 0; w1 <= 1; ++w1) {
            if (w0 + w1 != 1) continue;
            std::vector<double> wd{double(w0), double(w1)};
            const double theta = std::max(-8.0, cut.value_at(wd));
            if (theta < best_theta) {
                best_theta = theta;
                best_w = {w0, w1};
            }
        }

    const auto [bits, energy] = brute_force(model);
    const DecodedSample d = decode(model, bits);
    CHECK(d.master_feasible);
    CHECK(static_cast<int>(d.w[0]) == best_w[0]);
    CHECK(static_cast<int>(d.w[1]) == best_w[1]);
    CHECK(std::fabs(d.theta - best_theta) <= enc.resolution() + 1e-9);
}

TEST_CASE("decode flags violated cardinality with eta k^2 residual") {
    const MilpProblem master = toy_master(3);
    std::vector<CutData> none;
    MasterProblem mp{&master, &none, &none, -2.0, 0.0};
    const ThetaEncoding enc = encode_theta(-2.0, 0.0, 6);
    PenaltyConfig cfg;
    cfg.eta1 = 11.0;
    const QuboModel model = build_master_qubo(mp, cfg, enc);

    // w = (1,1,1): violates sum w <= 1 by k = 2 with best slack
    std::vector<std::uint8_t> bits(model.num_bits(), 0);
    bits[0] = bits[1] = bits[2] = 1;
    const DecodedSample d = decode(model, bits);
    CHECK_FALSE(d.master_feasible);
    CHECK(d.penalty_residual >= 11.0 * 4.0 - 1e-9);  // eta * k^2 at the zero slack
    // feasible assignment decodes cleanly and round-trips w
    std::vector<std::uint8_t> ok(model.num_bits(), 0);
    ok[1] = 1;
    const DecodedSample good = decode(model, ok);
    CHECK(good.master_feasible);
    CHECK(good.w == std::vector<std::uint8_t>{0, 1, 0});
    CHECK_THROWS_AS(decode(model, std::vector<std::uint8_t>(model.num_bits() + 1, 0)),
                    std::invalid_argument);
}

TEST_CASE("energy equals theta plus penalties by recomputation") {
    const MilpProblem master = toy_master(2);
    std::vector<CutData> feas, opt;
    CutData cut;
    cut.optimality = true;
    cut.rhs_term = -2.5;
    cut.w_coeffs = {{0, 1.25}};
    opt.push_back(cut);
    MasterProblem mp{&master, &feas, &opt, -6.0, 0.0};
    const ThetaEncoding enc = encode_theta(-6.0, 0.0, 9);
    const QuboModel model = build_master_qubo(mp, {}, enc);
    Rng rng(33);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::uint8_t> bits(model.num_bits());
        for (auto& b : bits) b = rng.next() & 1;
        double expect = enc.decode(std::span<const std::uint8_t>(bits).subspan(2));
        for (const auto& g : model.penalties()) {
            const double r = g.residual(bits);
            expect += g.weight * r * r;
        }
        CHECK(model.energy(bits) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("ising conversion") {
    SUBCASE("single diagonal term") {
        QuboModel model(1);
        model.add_linear(0, 2.0);
        const IsingModel ising = to_ising(model);
        CHECK(ising.h[0] == doctest::Approx(1.0));
        CHECK(ising.offset == doctest::Approx(1.0));
    }
    SUBCASE("empty model") {
        const IsingModel ising = to_ising(QuboModel(0));
        CHECK(ising.num_spins == 0);
        CHECK(ising.offset == doctest::Approx(0.0));
    }
    SUBCASE("random six-bit model agrees on all assignments and round-trips") {
        Rng rng(17);
        QuboModel model(6);
        for (int i = 0; i < 6; ++i) model.add_linear(i, rng.uniform(-2.0, 2.0));
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j)
                if (rng.next() & 1) model.add_quadratic(i, j, rng.uniform(-1.5, 1.5));
        model.add_offset(0.7);
        const IsingModel ising = to_ising(model);
        const QuboModel back = from_ising(ising);
        for (std::uint64_t m = 0; m < 64; ++m) {
            const auto b = bits_of(m, 6);
            std::vector<std::int8_t> s(6);
            for (int i = 0; i < 6; ++i) s[i] = b[i] ? 1 : -1;
            CHECK(model.energy(b) == doctest::Approx(ising.energy(s)).epsilon(1e-12));
            CHECK(model.energy(b) == doctest::Approx(back.energy(b)).epsilon(1e-12));
        }
    }
}

TEST_CASE("expanded upper-triangular form matches the grouped energies") {
    const MilpProblem master = toy_master(2);
    std::vector<CutData> feas, opt;
    MasterProblem mp{&master, &feas, &opt, -2.0, 0.0};
    const QuboModel model = build_master_qubo(mp, {}, encode_theta(-2.0, 0.0, 6));
    auto [q, offset] = model.upper_triangular();
    for (std::uint64_t m = 0; m < (1ULL << model.num_bits()); ++m) {
        const auto b = bits_of(m, model.num_bits());
        double expect = offset;
        for (const auto& [ij, v] : q)
            if (b[ij.first] && b[ij.second]) expect += v;
        CHECK(model.energy(b) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("coordinate text export round-trips energies") {
    Rng rng(23);
    QuboModel model(8);
    for (int i = 0; i < 8; ++i) model.add_linear(i, rng.uniform(-1.0, 1.0));
    model.add_quadratic(0, 3, 1.25);
    model.add_quadratic(2, 7, -0.5);
    model.add_offset(3.25);
    const QuboModel back = parse_qubo(export_qubo(model));
    REQUIRE(back.num_bits() == 8);
    for (std::uint64_t m = 0; m < 256; ++m) {
        const auto b = bits_of(m, 8);
        CHECK(model.energy(b) == doctest::Approx(back.energy(b)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(parse_qubo("0 0 1.0"), ParseError);
}
