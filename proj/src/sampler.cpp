#include "sinflow/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace sinflow {

namespace {

/// Flip-oriented view of a QuboModel: adjacency for pairwise terms and
/// membership lists for the squared penalty groups.
struct CompiledModel {
    int bits;
    std::vector<double> linear;
    std::vector<std::vector<std::pair<int, double>>> adj;        // pairwise
    std::vector<std::vector<std::pair<int, double>>> member;     // (group, coeff)
    std::vector<double> eta;
    std::vector<double> rhs;

    explicit CompiledModel(const QuboModel& m) : bits(m.num_bits()), linear(m.linear()) {
        adj.resize(bits);
        member.resize(bits);
        for (const auto& [ij, v] : m.quadratic()) {
            adj[ij.first].emplace_back(ij.second, v);
            adj[ij.second].emplace_back(ij.first, v);
        }
        for (std::size_t g = 0; g < m.penalties().size(); ++g) {
            const auto& group = m.penalties()[g];
            eta.push_back(group.weight);
            rhs.push_back(group.rhs);
            for (const auto& [j, v] : group.terms)
                member[j].emplace_back(static_cast<int>(g), v);
        }
    }

    std::vector<double> residuals(const std::vector<std::uint8_t>& x) const {
        std::vector<double> r(eta.size());
        for (std::size_t g = 0; g < r.size(); ++g) r[g] = -rhs[g];
        for (int i = 0; i < bits; ++i)
            if (x[i])
                for (const auto& [g, v] : member[i]) r[g] += v;
        return r;
    }

    double flip_delta(const std::vector<std::uint8_t>& x, const std::vector<double>& r,
                      int i) const {
        const double s = x[i] ? -1.0 : 1.0;
        double d = s * linear[i];
        for (const auto& [j, v] : adj[i])
            if (x[j]) d += s * v;
        for (const auto& [g, v] : member[i]) {
            const double a = s * v;
            d += eta[g] * (2.0 * r[g] * a + a * a);
        }
        return d;
    }

    void apply_flip(std::vector<std::uint8_t>& x, std::vector<double>& r, int i) const {
        const double s = x[i] ? -1.0 : 1.0;
        for (const auto& [g, v] : member[i]) r[g] += s * v;
        x[i] ^= 1;
    }
};

double auto_t_start(const CompiledModel& cm, std::uint64_t seed) {
    Rng rng(seed ^ 0xa02bdbf7bb3c0a7ULL);
    std::vector<std::uint8_t> x(cm.bits);
    for (int i = 0; i < cm.bits; ++i) x[i] = rng.next() & 1;
    auto r = cm.residuals(x);
    std::vector<double> mags;
    mags.reserve(1000);
    for (int probe = 0; probe < 1000; ++probe) {
        const int i = static_cast<int>(rng.below(cm.bits));
        mags.push_back(std::fabs(cm.flip_delta(x, r, i)));
        cm.apply_flip(x, r, i);  // keep wandering so the sample is not local
    }
    std::sort(mags.begin(), mags.end());
    const double p90 = mags[static_cast<std::size_t>(0.9 * (mags.size() - 1))];
    return p90 > 0.0 ? p90 : 1.0;
}

void run_read(const CompiledModel& cm, const AnnealSchedule& sched, double t_start,
              double t_end, std::uint64_t read_seed, std::vector<std::uint8_t>& out_bits) {
    Rng rng(read_seed);
    std::vector<std::uint8_t> x(cm.bits);
    for (int i = 0; i < cm.bits; ++i) x[i] = rng.next() & 1;
    auto r = cm.residuals(x);
    const int sweeps = std::max(1, sched.sweeps);
    const double ratio = t_end / t_start;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        const double temp =
            sweeps == 1 ? t_end : t_start * std::pow(ratio, static_cast<double>(sweep) /
                                                                (sweeps - 1));
        const double inv_t = 1.0 / temp;
        for (int i = 0; i < cm.bits; ++i) {
            const double d = cm.flip_delta(x, r, i);
            if (d <= 0.0 || rng.uniform() < std::exp(-d * inv_t)) cm.apply_flip(x, r, i);
        }
    }
    out_bits = std::move(x);
}

}  // namespace

SampleSet anneal(const QuboModel& model, const AnnealSchedule& sched, std::uint64_t seed,
                 int jobs) {
    if (model.num_bits() == 0) throw std::invalid_argument("anneal: empty model");
    const CompiledModel cm(model);
    const double t_start = sched.t_start > 0.0 ? sched.t_start : auto_t_start(cm, seed);
    const double t_end = sched.t_end > 0.0 ? sched.t_end : 1e-3 * t_start;

    const int reads = std::max(1, sched.reads);
    std::vector<std::vector<std::uint8_t>> results(reads);
    auto read_batch = [&](int from, int step) {
        for (int read = from; read < reads; read += step) {
            std::uint64_t s = seed + 0x9e3779b97f4a7c15ULL * (read + 1);
            run_read(cm, sched, t_start, t_end, splitmix64(s), results[read]);
        }
    };
    const int workers = std::clamp(jobs, 1, reads);
    if (workers == 1) {
        read_batch(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(read_batch, t, workers);
        for (auto& th : pool) th.join();
    }

    std::map<std::vector<std::uint8_t>, int> tally;
    for (auto& bits : results) ++tally[std::move(bits)];
    SampleSet set;
    set.seed = seed;
    for (auto& [bits, count] : tally)
        set.entries.push_back({bits, model.energy(bits), count});
    std::sort(set.entries.begin(), set.entries.end(), [](const Sample& a, const Sample& b) {
        return a.energy != b.energy ? a.energy < b.energy : a.bits < b.bits;
    });
    return set;
}

std::pair<std::vector<std::uint8_t>, double> brute_force(const QuboModel& model) {
    const int n = model.num_bits();
    if (n > 26) throw std::invalid_argument("brute_force: guard exceeded (bits > 26)");
    std::vector<std::uint8_t> x(n, 0);
    if (n == 0) return {x, model.constant_offset()};
    const CompiledModel cm(model);
    auto r = cm.residuals(x);
    double energy = model.energy(x);
    std::vector<std::uint8_t> best = x;
    double best_energy = energy;
    const std::uint64_t total = 1ULL << n;
    for (std::uint64_t step = 1; step < total; ++step) {
        const int bit = std::countr_zero(step);  // Gray-code flip position
        energy += cm.flip_delta(x, r, bit);
        cm.apply_flip(x, r, bit);
        if (energy < best_energy - 1e-15 ||
            (std::fabs(energy - best_energy) <= 1e-15 && x < best)) {
            best_energy = energy;
            best = x;
        }
    }
    return {best, model.energy(best)};  // recompute to shed accumulation error
}

std::vector<DecodedSample> extract_candidates(const SampleSet& samples, const QuboModel& model,
                                              int rho) {
    if (rho < 1) throw std::invalid_argument("extract_candidates: rho must be >= 1");
    std::vector<DecodedSample> out;
    std::vector<std::vector<std::uint8_t>> seen;
    for (const auto& sample : samples.entries) {
        DecodedSample d = decode(model, sample.bits);
        if (!d.master_feasible) continue;
        if (std::find(seen.begin(), seen.end(), d.w) != seen.end()) continue;
        seen.push_back(d.w);
        out.push_back(std::move(d));
        if (static_cast<int>(out.size()) == rho) break;
    }
    return out;
}

std::string samples_to_csv(const SampleSet& samples) {
    std::ostringstream out;
    out.precision(17);
    out << "bitstring,energy,count\n";
    for (const auto& s : samples.entries) {
        for (std::uint8_t b : s.bits) out << (b ? '1' : '0');
        out << "," << s.energy << "," << s.count << "\n";
    }
    return out.str();
}

SampleSet ExternalSampler::sample(const QuboModel& model, const std::string& workdir) const {
    const std::string qfile = workdir + "/model.qubo";
    const std::string rfile = workdir + "/samples.txt";
    {
        std::ofstream out(qfile);
        out << export_qubo(model);
    }
    const std::string cmd = command_ + " " + qfile + " " + rfile;
    if (std::system(cmd.c_str()) != 0)
        throw std::runtime_error("external sampler command failed: " + cmd);
    std::ifstream in(rfile);
    if (!in) throw std::runtime_error("external sampler produced no result file");
    std::map<std::vector<std::uint8_t>, int> tally;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::uint8_t> bits;
        for (char c : line)
            if (c == '0' || c == '1') bits.push_back(c == '1');
        if (static_cast<int>(bits.size()) != model.num_bits())
            throw ParseError("external sampler bitstring length mismatch: " + line);
        ++tally[bits];
    }
    SampleSet set;
    for (auto& [bits, count] : tally)
        set.entries.push_back({bits, model.energy(bits), count});
    std::sort(set.entries.begin(), set.entries.end(), [](const Sample& a, const Sample& b) {
        return a.energy != b.energy ? a.energy < b.energy : a.bits < b.bits;
    });
    return set;
}

}  // namespace sinflow
