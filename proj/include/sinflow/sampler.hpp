#pragma once

#include "sinflow/qubo.hpp"

namespace sinflow {

struct AnnealSchedule {
    int reads = 1000;
    int sweeps = 1000;
    double t_start = 0.0;  // 0: auto-tuned to the 90th percentile of random flip |dE|
    double t_end = 0.0;    // 0: 1e-3 * t_start
};

struct Sample {
    std::vector<std::uint8_t> bits;
    double energy = 0.0;
    int count = 1;
};

/// Ascending by energy, ties by lexicographic bitstring; one entry per
/// distinct bitstring with its multiplicity.
struct SampleSet {
    std::vector<Sample> entries;
    std::uint64_t seed = 0;
    const Sample& best() const { return entries.at(0); }
};

/// Single-bit-flip Metropolis over a geometric temperature ladder.
/// Deterministic for fixed (model, schedule, seed) regardless of `jobs`:
/// each read owns a seed derived from (seed, read index).
SampleSet anneal(const QuboModel& model, const AnnealSchedule& sched, std::uint64_t seed,
                 int jobs = 1);

/// Exact minimum by Gray-code enumeration; guard at 26 bits. Ties go to the
/// lexicographically smallest bitstring.
std::pair<std::vector<std::uint8_t>, double> brute_force(const QuboModel& model);

/// Scan ascending energy, decode, keep distinct master-feasible w; at most
/// rho entries. An empty result is the EmptyCandidates signal.
std::vector<DecodedSample> extract_candidates(const SampleSet& samples, const QuboModel& model,
                                              int rho);

std::string samples_to_csv(const SampleSet& samples);

/// Adapter for out-of-process solvers: writes the coordinate-format QUBO,
/// runs `command <qubo-file> <result-file>`, reads one bitstring per line.
class ExternalSampler {
  public:
    explicit ExternalSampler(std::string command) : command_(std::move(command)) {}
    SampleSet sample(const QuboModel& model, const std::string& workdir) const;

  private:
    std::string command_;
};

}  // namespace sinflow
