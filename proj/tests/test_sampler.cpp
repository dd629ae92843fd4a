#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "sinflow/sampler.hpp"
#include "sinflow/common.hpp"

using namespace sinflow;

namespace {

QuboModel random_model(int bits, std::uint64_t seed, double density = 0.5) {
    Rng rng(seed);
    QuboModel model(bits);
    for (int i = 0; i < bits; ++i) model.add_linear(i, rng.uniform(-2.0, 2.0));
    for (int i = 0; i < bits; ++i)
        for (int j = i + 1; j < bits; ++j)
            if (rng.uniform() < density) model.add_quadratic(i, j, rng.uniform(-1.5, 1.5));
    return model;
}

}  // namespace

TEST_CASE("a single penalized bit always lands at zero") {
    QuboModel model(1);
    model.add_linear(0, 5.0);
    const SampleSet set = anneal(model, {20, 50, 0, 0}, 7);
    for (const auto& s : set.entries) {
        CHECK(s.bits[0] == 0);
        CHECK(s.energy == doctest::Approx(0.0));
    }
}

TEST_CASE("brute force basics") {
    const auto [empty_bits, empty_energy] = brute_force(QuboModel(0));
    CHECK(empty_bits.empty());
    CHECK(empty_energy == doctest::Approx(0.0));

    QuboModel diag(2);
    diag.add_linear(0, 1.0);
    diag.add_linear(1, -1.0);
    const auto [bits, energy] = brute_force(diag);
    CHECK(bits == std::vector<std::uint8_t>{0, 1});
    CHECK(energy == doctest::Approx(-1.0));

    CHECK_THROWS_AS(brute_force(QuboModel(27)), std::invalid_argument);
}

TEST_CASE("annealing finds the exact ground state almost always at 12 bits") {
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const QuboModel model = random_model(12, 1000 + seed);
        const auto [best_bits, best_energy] = brute_force(model);
        const SampleSet set = anneal(model, {10, 2000, 0, 0}, seed);
        CHECK(set.best().energy >= best_energy - 1e-9);  // never below the true minimum
        if (set.best().energy <= best_energy + 1e-9) ++hits;
    }
    CHECK(hits >= 95);
}

TEST_CASE("same seed twice gives identical sample sets, any thread count") {
    const QuboModel model = random_model(16, 5);
    const SampleSet a = anneal(model, {40, 200, 0, 0}, 11, 1);
    const SampleSet b = anneal(model, {40, 200, 0, 0}, 11, 1);
    const SampleSet c = anneal(model, {40, 200, 0, 0}, 11, 4);
    REQUIRE(a.entries.size() == b.entries.size());
    REQUIRE(a.entries.size() == c.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].bits == b.entries[i].bits);
        CHECK(a.entries[i].energy == b.entries[i].energy);
        CHECK(a.entries[i].bits == c.entries[i].bits);
        CHECK(a.entries[i].count == c.entries[i].count);
    }
    const SampleSet d = anneal(model, {40, 200, 0, 0}, 12, 1);
    bool differs = d.entries.size() != a.entries.size();
    for (std::size_t i = 0; !differs && i < a.entries.size(); ++i)
        differs = a.entries[i].bits != d.entries[i].bits || a.entries[i].count != d.entries[i].count;
    CHECK(differs);
}

TEST_CASE("sample sets are sorted ascending with recomputed energies") {
    const QuboModel model = random_model(10, 77);
    const SampleSet set = anneal(model, {50, 100, 0, 0}, 3);
    for (std::size_t i = 0; i < set.entries.size(); ++i) {
        CHECK(model.energy(set.entries[i].bits) ==
              doctest::Approx(set.entries[i].energy).epsilon(1e-9));
        if (i > 0) {
            const auto& prev = set.entries[i - 1];
            const auto& cur = set.entries[i];
            CHECK((prev.energy < cur.energy ||
                   (prev.energy == cur.energy && prev.bits < cur.bits)));
        }
    }
}

TEST_CASE("median best energy does not worsen as sweeps double") {
    const QuboModel model = random_model(16, 321, 0.4);
    std::vector<double> medians;
    for (int sweeps : {25, 50, 100, 200}) {
        std::vector<double> best;
        for (std::uint64_t seed = 0; seed < 20; ++seed)
            best.push_back(anneal(model, {4, sweeps, 0, 0}, 9000 + seed).best().energy);
        std::sort(best.begin(), best.end());
        medians.push_back((best[9] + best[10]) / 2.0);
    }
    for (std::size_t i = 1; i < medians.size(); ++i) CHECK(medians[i] <= medians[i - 1] + 1e-9);
}

TEST_CASE("extract candidates filters to distinct feasible w") {
    // two binaries under an exactly-one constraint
    MilpProblem master;
    std::vector<VarKey> bins{{VarKind::PhiU2S, 0, -1, 1, 0, -1},
                             {VarKind::PhiU2S, 0, -1, 1, 1, -1}};
    master.vars.build({}, bins);
    master.g3 = {{{0, 1.0}, {1, 1.0}}, {{0, -1.0}, {1, -1.0}}};
    master.d3 = {1.0, -1.0};
    master.tags3 = {{RowFamily::AssocSourceCard, "ub"}, {RowFamily::AssocSourceCard, "lb"}};
    std::vector<CutData> none;
    MasterProblem mp{&master, &none, &none, -2.0, 0.0};
    const QuboModel model = build_master_qubo(mp, {}, encode_theta(-2.0, 0.0, 6));

    const SampleSet set = anneal(model, {200, 60, 0, 0}, 5);
    const auto three = extract_candidates(set, model, 3);
    CHECK(!three.empty());
    CHECK(three.size() <= 3);
    for (std::size_t i = 0; i < three.size(); ++i) {
        CHECK(three[i].master_feasible);
        CHECK(three[i].w[0] + three[i].w[1] == 1);
        for (std::size_t j = i + 1; j < three.size(); ++j) CHECK(three[i].w != three[j].w);
    }
    const auto one = extract_candidates(set, model, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].w == three[0].w);

    // a set with no feasible decodes signals empty
    SampleSet bad;
    bad.entries.push_back({std::vector<std::uint8_t>(model.num_bits(), 1),
                           model.energy(std::vector<std::uint8_t>(model.num_bits(), 1)), 1});
    CHECK(extract_candidates(bad, model, 2).empty());
    CHECK_THROWS_AS(extract_candidates(set, model, 0), std::invalid_argument);
}

TEST_CASE("csv export lists bitstring, energy, count") {
    QuboModel model(2);
    model.add_linear(0, 1.0);
    const SampleSet set = anneal(model, {5, 10, 0, 0}, 1);
    const std::string csv = samples_to_csv(set);
    CHECK(csv.find("bitstring,energy,count\n") == 0);
    CHECK(csv.find(',') != std::string::npos);
}

TEST_CASE("external sampler adapter round-trips through files") {
    QuboModel model(3);
    model.add_linear(0, 2.0);
    model.add_linear(1, -1.0);
    model.add_quadratic(0, 2, 0.5);
    // fake solver: emit two fixed bitstrings
    const std::string script = "test_ext_sampler.sh";
    {
        std::ofstream out(script);
        out << "#!/bin/sh\nprintf '010\\n110\\n010\\n' > \"$2\"\n";
    }
    std::system(("chmod +x ./" + script).c_str());
    const ExternalSampler ext("./" + script);
    const SampleSet set = ext.sample(model, ".");
    REQUIRE(set.entries.size() == 2);
    CHECK(set.entries[0].bits == std::vector<std::uint8_t>{0, 1, 0});
    CHECK(set.entries[0].energy == doctest::Approx(-1.0));
    CHECK(set.entries[0].count == 2);
    std::remove(script.c_str());
    std::remove("./model.qubo");
    std::remove("./samples.txt");
}
