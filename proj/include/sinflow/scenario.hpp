#pragma once

#include <string>
#include <vector>

#include "sinflow/common.hpp"

namespace sinflow {

/// Per-class carrier parameters. Gains and losses are linear (not dB);
/// the combined gain is the product of the transmit and receive gains.
struct LinkClassParams {
    double power_w = 0.0;
    double combined_gain = 1.0;
    double frequency_hz = 0.0;
    double line_loss = 1.0;
};

struct LinkBudgetParams {
    LinkClassParams s2s;
    LinkClassParams u2s;
    LinkClassParams s2u;
    // S2S link equation terms
    double boltzmann_j_per_k = 1.38e-23;
    double noise_temperature_k = 1000.0;
    double link_margin = 3.1622776601683795;  // 5 dB
    double eb_n0 = 10.0;                      // 10 dB
    // U2S/S2U Shannon terms
    double bandwidth_hz = 30e6;
    double noise_power_w = 4.14e-13;  // k_B * T_s * B by default
};

struct SatelliteSpec {
    std::string id;
    bool is_function_node = false;
    std::vector<int> offered_functions;  // ordered list f_{i,1}..f_{i,N_i}, 1-based ids
    double compute_capacity_mbit_s = 1500.0;
    double storage_capacity_mbit = 50.0;
    int max_source_users = 2;  // C_i^{U2S}
    int max_dest_users = 2;    // C_i^{S2U}
};

struct TaskFlowSpec {
    int id = 0;
    std::string source_user;
    std::string dest_user;
    std::vector<int> sfc;                  // ordered required functions, 1-based ids
    std::vector<double> scaling_factors;   // beta_k: data(stage k-1) = beta_k * data(stage k)
    std::vector<double> compute_factors;   // kappa_k
    int chain_length() const { return static_cast<int>(sfc.size()); }
};

/// Dense per-slot connectivity over the canonical node order
/// [source users (flow order) | dest users (flow order) | satellites].
struct ConnectivityTable {
    std::vector<std::string> nodes;
    int horizon = 0;
    std::vector<std::uint8_t> k;  // [i][j][t]
    std::vector<double> range_m;  // [i][j][t]

    int size() const { return static_cast<int>(nodes.size()); }
    std::size_t at(int i, int j, int t) const {
        return (static_cast<std::size_t>(i) * nodes.size() + j) * horizon + (t - 1);
    }
    bool available(int i, int j, int t) const { return k[at(i, j, t)] != 0; }
    double range(int i, int j, int t) const { return range_m[at(i, j, t)]; }
};

struct Scenario {
    int horizon = 1;              // T
    double slot_duration_s = 1.0; // delta
    int function_count = 0;       // F
    std::vector<SatelliteSpec> satellites;
    std::vector<TaskFlowSpec> flows;
    ConnectivityTable visibility;
    LinkBudgetParams link_budget;
    double virtual_link_capacity_mbit = 1e4;

    int flow_count() const { return static_cast<int>(flows.size()); }
    int satellite_count() const { return static_cast<int>(satellites.size()); }
    // canonical node indices in the visibility table
    int source_node(int flow) const { return flow; }
    int dest_node(int flow) const { return flow_count() + flow; }
    int sat_node(int sat) const { return 2 * flow_count() + sat; }
};

/// Parameters of the synthetic three-ring sweep constellation.
struct SyntheticSpec {
    int n_sats = 1;
    int n_flows = 1;
    int n_functions = 1;
    int sfc_len = 1;
    int horizon = 1;
    std::uint64_t seed = 0;
};

enum class GroundDirection { U2S, S2U };

/// (c / (4 pi d nu))^2 with c = 2.998e8 m/s; a linear gain factor < 1.
double free_space_loss(double distance_m, double frequency_hz);

/// S2S achievable rate P*G*Lfsl*Ll / (kB*Ts*M*(Eb/N0)) in Mbit/s.
double s2s_rate_mbit_s(const LinkBudgetParams& params, double distance_m);

/// Shannon rate B*log2(1+SNR) in Mbit/s for a ground link.
double ground_link_rate_mbit_s(const LinkBudgetParams& params, double distance_m,
                               GroundDirection direction);

/// Data volume transferable in one slot: rate * delta, in Mbit.
double link_capacity_mbit(double rate_mbit_s, double slot_duration_s);

/// Rate of the transmission link between canonical nodes i -> j at slot t,
/// classified as U2S/S2S/S2U from the node kinds. Mbit/s.
double pair_rate_mbit_s(const Scenario& sc, int node_i, int node_j, int t);

/// SNR of a ground link (used for max-SNR association rules).
double ground_snr(const LinkBudgetParams& params, double distance_m, GroundDirection direction);

void validate_scenario(const Scenario& sc);

Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& json_text);
std::string scenario_to_json(const Scenario& sc);
void save_scenario(const Scenario& sc, const std::string& path);

Scenario generate_synthetic(const SyntheticSpec& spec);

/// The 12-satellite / 4-flow / 4-function / SFC-2 / 30-slot experiment shape.
Scenario paper_shape_scenario(std::uint64_t seed);

/// Smallest valid instance: one dual-role satellite, one flow, one function.
Scenario minimal_scenario();

}  // namespace sinflow
