#include "sinflow/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

namespace sinflow {

namespace {

constexpr double kLightSpeed = 2.998e8;  // m/s

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::domain_error(std::string(name) + " must be positive, got " +
                                std::to_string(v));
    }
}

}  // namespace

double free_space_loss(double distance_m, double frequency_hz) {
    require_positive(distance_m, "distance");
    require_positive(frequency_hz, "frequency");
    const double x = kLightSpeed / (4.0 * std::numbers::pi * distance_m * frequency_hz);
    return x * x;
}

double s2s_rate_mbit_s(const LinkBudgetParams& params, double distance_m) {
    const LinkClassParams& p = params.s2s;
    require_positive(p.power_w, "s2s power");
    require_positive(p.combined_gain, "s2s gain");
    require_positive(p.line_loss, "s2s line loss");
    require_positive(params.noise_temperature_k, "noise temperature");
    require_positive(params.link_margin, "link margin");
    require_positive(params.eb_n0, "Eb/N0");
    const double lfsl = free_space_loss(distance_m, p.frequency_hz);
    const double bits =
        p.power_w * p.combined_gain * lfsl * p.line_loss /
        (params.boltzmann_j_per_k * params.noise_temperature_k * params.link_margin * params.eb_n0);
    return bits / 1e6;
}

double ground_snr(const LinkBudgetParams& params, double distance_m, GroundDirection direction) {
    const LinkClassParams& p = direction == GroundDirection::U2S ? params.u2s : params.s2u;
    require_positive(p.power_w, "ground power");
    require_positive(p.combined_gain, "ground gain");
    require_positive(p.line_loss, "ground line loss");
    require_positive(params.noise_power_w, "noise power");
    const double lfsl = free_space_loss(distance_m, p.frequency_hz);
    return p.power_w * p.combined_gain * lfsl * p.line_loss / params.noise_power_w;
}

double ground_link_rate_mbit_s(const LinkBudgetParams& params, double distance_m,
                               GroundDirection direction) {
    require_positive(params.bandwidth_hz, "bandwidth");
    const double snr = ground_snr(params, distance_m, direction);
    return params.bandwidth_hz * std::log2(1.0 + snr) / 1e6;
}

double link_capacity_mbit(double rate_mbit_s, double slot_duration_s) {
    if (rate_mbit_s < 0.0) throw std::domain_error("rate must be nonnegative");
    require_positive(slot_duration_s, "slot duration");
    return rate_mbit_s * slot_duration_s;
}

double pair_rate_mbit_s(const Scenario& sc, int node_i, int node_j, int t) {
    const int l = sc.flow_count();
    const double d = sc.visibility.range(node_i, node_j, t);
    const bool i_sat = node_i >= 2 * l;
    const bool j_sat = node_j >= 2 * l;
    if (i_sat && j_sat) return s2s_rate_mbit_s(sc.link_budget, d);
    if (!i_sat && j_sat) return ground_link_rate_mbit_s(sc.link_budget, d, GroundDirection::U2S);
    if (i_sat && !j_sat) return ground_link_rate_mbit_s(sc.link_budget, d, GroundDirection::S2U);
    throw std::invalid_argument("user-to-user pairs carry no link");
}

// ---------------------------------------------------------------------------
// Validation

void validate_scenario(const Scenario& sc) {
    auto fail = [](const std::string& msg) { throw ValidationError(msg); };

    if (sc.horizon < 1) fail("horizon T must be >= 1");
    if (!(sc.slot_duration_s > 0.0)) fail("slot_duration_s must be > 0");
    if (sc.function_count < 1) fail("function catalog must be nonempty");
    if (sc.satellites.empty()) fail("scenario needs at least one satellite");
    if (sc.flows.empty()) fail("scenario needs at least one task flow");
    if (!(sc.virtual_link_capacity_mbit > 0.0)) fail("virtual link capacity must be > 0");

    std::set<std::string> sat_ids;
    for (const auto& sat : sc.satellites) {
        if (!sat_ids.insert(sat.id).second) fail("duplicate satellite id " + sat.id);
        if (sat.is_function_node) {
            if (sat.offered_functions.empty())
                fail("function node " + sat.id + " offers no functions");
            std::set<int> seen;
            for (int f : sat.offered_functions) {
                if (f < 1 || f > sc.function_count)
                    fail("satellite " + sat.id + " offers unknown function " + std::to_string(f));
                if (!seen.insert(f).second)
                    fail("satellite " + sat.id + " offers function " + std::to_string(f) +
                         " twice");
            }
        } else if (!sat.offered_functions.empty()) {
            fail("non-function node " + sat.id + " must offer no functions");
        }
        if (sat.compute_capacity_mbit_s < 0.0 || sat.storage_capacity_mbit < 0.0 ||
            sat.max_source_users < 0 || sat.max_dest_users < 0)
            fail("satellite " + sat.id + " has a negative capacity");
    }

    std::set<std::string> user_names;
    std::set<int> flow_ids;
    for (const auto& flow : sc.flows) {
        const std::string tag = "flow " + std::to_string(flow.id);
        if (!flow_ids.insert(flow.id).second) fail("duplicate " + tag);
        if (flow.sfc.empty()) fail(tag + ": SFC empty");
        if (!user_names.insert(flow.source_user).second)
            fail(tag + ": user " + flow.source_user + " already used by another flow");
        if (!user_names.insert(flow.dest_user).second)
            fail(tag + ": user " + flow.dest_user + " already used by another flow");
        int prev = 0;
        for (int f : flow.sfc) {
            if (f < 1 || f > sc.function_count)
                fail(tag + ": SFC names unknown function " + std::to_string(f));
            if (f <= prev) fail(tag + ": SFC must be an ordered subsequence of the catalog");
            prev = f;
            bool offered = false;
            for (const auto& sat : sc.satellites)
                for (int g : sat.offered_functions) offered = offered || g == f;
            if (!offered)
                fail(tag + ": no function node offers required function " + std::to_string(f));
        }
        if (flow.scaling_factors.size() != flow.sfc.size())
            fail(tag + ": needs one scaling factor per SFC step");
        if (flow.compute_factors.size() != flow.sfc.size())
            fail(tag + ": needs one compute factor per SFC step");
        for (double b : flow.scaling_factors)
            if (!(b > 0.0)) fail(tag + ": scaling factors must be > 0");
        for (double kx : flow.compute_factors)
            if (!(kx > 0.0)) fail(tag + ": compute factors must be > 0");
    }

    const int n = 2 * sc.flow_count() + sc.satellite_count();
    const auto& vis = sc.visibility;
    if (vis.size() != n) fail("visibility table covers wrong node count");
    if (vis.horizon != sc.horizon) fail("visibility horizon differs from scenario horizon");
    const std::size_t cells = static_cast<std::size_t>(n) * n * sc.horizon;
    if (vis.k.size() != cells || vis.range_m.size() != cells)
        fail("visibility arrays have wrong size");
    for (int lf = 0; lf < sc.flow_count(); ++lf) {
        if (vis.nodes[sc.source_node(lf)] != sc.flows[lf].source_user ||
            vis.nodes[sc.dest_node(lf)] != sc.flows[lf].dest_user)
            fail("visibility node order must be [source users | dest users | satellites]");
    }
    for (int s = 0; s < sc.satellite_count(); ++s)
        if (vis.nodes[sc.sat_node(s)] != sc.satellites[s].id)
            fail("visibility node order must be [source users | dest users | satellites]");

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int t = 1; t <= sc.horizon; ++t)
                if (vis.available(i, j, t) && !(vis.range(i, j, t) > 0.0))
                    fail("slant range must be positive on available link " + vis.nodes[i] +
                         " -> " + vis.nodes[j] + " at slot " + std::to_string(t));

    // Single-association equalities are infeasible without coverage.
    for (int lf = 0; lf < sc.flow_count(); ++lf) {
        for (int t = 1; t <= sc.horizon; ++t) {
            bool src = false, dst = false;
            for (int s = 0; s < sc.satellite_count(); ++s) {
                src = src || vis.available(sc.source_node(lf), sc.sat_node(s), t);
                dst = dst || vis.available(sc.sat_node(s), sc.dest_node(lf), t);
            }
            if (!src)
                fail("user " + sc.flows[lf].source_user + " has no visible satellite at slot " +
                     std::to_string(t) + " (single-association equality infeasible)");
            if (!dst)
                fail("user " + sc.flows[lf].dest_user + " has no visible satellite at slot " +
                     std::to_string(t) + " (single-association equality infeasible)");
        }
    }

    const LinkBudgetParams& lb = sc.link_budget;
    for (const LinkClassParams* p : {&lb.s2s, &lb.u2s, &lb.s2u}) {
        if (!(p->power_w > 0.0 && p->combined_gain > 0.0 && p->frequency_hz > 0.0 &&
              p->line_loss > 0.0))
            fail("link budget parameters must be positive");
    }
    if (!(lb.boltzmann_j_per_k > 0.0 && lb.noise_temperature_k > 0.0 && lb.link_margin > 0.0 &&
          lb.eb_n0 > 0.0 && lb.bandwidth_hz > 0.0 && lb.noise_power_w > 0.0))
        fail("link budget parameters must be positive");
}

// ---------------------------------------------------------------------------
// JSON serialization

using nlohmann::json;

namespace {

json class_to_json(const LinkClassParams& p) {
    return json{{"power_w", p.power_w},
                {"combined_gain", p.combined_gain},
                {"frequency_hz", p.frequency_hz},
                {"line_loss", p.line_loss}};
}

LinkClassParams class_from_json(const json& j) {
    LinkClassParams p;
    p.power_w = j.at("power_w").get<double>();
    p.combined_gain = j.at("combined_gain").get<double>();
    p.frequency_hz = j.at("frequency_hz").get<double>();
    p.line_loss = j.at("line_loss").get<double>();
    return p;
}

}  // namespace

std::string scenario_to_json(const Scenario& sc) {
    json j;
    j["schema_version"] = "1";
    j["horizon"] = sc.horizon;
    j["slot_duration_s"] = sc.slot_duration_s;
    j["functions"] = sc.function_count;

    json sats = json::array();
    for (const auto& sat : sc.satellites) {
        sats.push_back(json{{"id", sat.id},
                            {"is_function_node", sat.is_function_node},
                            {"offered_functions", sat.offered_functions},
                            {"compute_capacity_mbit_s", sat.compute_capacity_mbit_s},
                            {"storage_capacity_mbit", sat.storage_capacity_mbit},
                            {"max_source_users", sat.max_source_users},
                            {"max_dest_users", sat.max_dest_users}});
    }
    j["satellites"] = std::move(sats);

    json flows = json::array();
    for (const auto& flow : sc.flows) {
        flows.push_back(json{{"id", flow.id},
                             {"source_user", flow.source_user},
                             {"dest_user", flow.dest_user},
                             {"sfc", flow.sfc},
                             {"scaling_factors", flow.scaling_factors},
                             {"compute_factors", flow.compute_factors}});
    }
    j["flows"] = std::move(flows);

    const auto& vis = sc.visibility;
    const int n = vis.size();
    json karr = json::array(), rarr = json::array();
    for (int i = 0; i < n; ++i) {
        json ki = json::array(), ri = json::array();
        for (int jn = 0; jn < n; ++jn) {
            json kt = json::array(), rt = json::array();
            for (int t = 1; t <= vis.horizon; ++t) {
                kt.push_back(static_cast<int>(vis.k[vis.at(i, jn, t)]));
                rt.push_back(vis.range_m[vis.at(i, jn, t)]);
            }
            ki.push_back(std::move(kt));
            ri.push_back(std::move(rt));
        }
        karr.push_back(std::move(ki));
        rarr.push_back(std::move(ri));
    }
    j["visibility"] = json{{"nodes", vis.nodes}, {"k", std::move(karr)},
                           {"ranges_m", std::move(rarr)}};

    const auto& lb = sc.link_budget;
    j["link_budget"] = json{{"s2s", class_to_json(lb.s2s)},
                            {"u2s", class_to_json(lb.u2s)},
                            {"s2u", class_to_json(lb.s2u)},
                            {"boltzmann_j_per_k", lb.boltzmann_j_per_k},
                            {"noise_temperature_k", lb.noise_temperature_k},
                            {"link_margin", lb.link_margin},
                            {"eb_n0", lb.eb_n0},
                            {"bandwidth_hz", lb.bandwidth_hz},
                            {"noise_power_w", lb.noise_power_w}};
    j["defaults"] = json{{"virtual_link_capacity_mbit", sc.virtual_link_capacity_mbit}};
    return j.dump(2) + "\n";
}

Scenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scenario parse error: ") + e.what());
    }
    Scenario sc;
    try {
        const std::string version = j.at("schema_version").get<std::string>();
        if (version != "1") throw ParseError("unsupported schema_version " + version);
        sc.horizon = j.at("horizon").get<int>();
        sc.slot_duration_s = j.at("slot_duration_s").get<double>();
        sc.function_count = j.at("functions").get<int>();
        for (const auto& js : j.at("satellites")) {
            SatelliteSpec sat;
            sat.id = js.at("id").get<std::string>();
            sat.is_function_node = js.at("is_function_node").get<bool>();
            sat.offered_functions = js.at("offered_functions").get<std::vector<int>>();
            sat.compute_capacity_mbit_s = js.at("compute_capacity_mbit_s").get<double>();
            sat.storage_capacity_mbit = js.at("storage_capacity_mbit").get<double>();
            sat.max_source_users = js.at("max_source_users").get<int>();
            sat.max_dest_users = js.at("max_dest_users").get<int>();
            sc.satellites.push_back(std::move(sat));
        }
        for (const auto& jf : j.at("flows")) {
            TaskFlowSpec flow;
            flow.id = jf.at("id").get<int>();
            flow.source_user = jf.at("source_user").get<std::string>();
            flow.dest_user = jf.at("dest_user").get<std::string>();
            flow.sfc = jf.at("sfc").get<std::vector<int>>();
            flow.scaling_factors = jf.at("scaling_factors").get<std::vector<double>>();
            flow.compute_factors = jf.at("compute_factors").get<std::vector<double>>();
            sc.flows.push_back(std::move(flow));
        }
        const auto& jv = j.at("visibility");
        auto& vis = sc.visibility;
        vis.nodes = jv.at("nodes").get<std::vector<std::string>>();
        vis.horizon = sc.horizon;
        const int n = vis.size();
        vis.k.assign(static_cast<std::size_t>(n) * n * sc.horizon, 0);
        vis.range_m.assign(static_cast<std::size_t>(n) * n * sc.horizon, 0.0);
        const auto& karr = jv.at("k");
        const auto& rarr = jv.at("ranges_m");
        if (static_cast<int>(karr.size()) != n || static_cast<int>(rarr.size()) != n)
            throw ParseError("visibility.k and visibility.ranges_m must have one row per node");
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(karr[i].size()) != n || static_cast<int>(rarr[i].size()) != n)
                throw ParseError("visibility arrays must be square over the node list");
            for (int jn = 0; jn < n; ++jn) {
                if (static_cast<int>(karr[i][jn].size()) != sc.horizon ||
                    static_cast<int>(rarr[i][jn].size()) != sc.horizon)
                    throw ParseError("visibility arrays must cover every slot 1..T");
                for (int t = 1; t <= sc.horizon; ++t) {
                    vis.k[vis.at(i, jn, t)] =
                        karr[i][jn][t - 1].get<int>() != 0 ? std::uint8_t{1} : std::uint8_t{0};
                    vis.range_m[vis.at(i, jn, t)] = rarr[i][jn][t - 1].get<double>();
                }
            }
        }
        const auto& jl = j.at("link_budget");
        auto& lb = sc.link_budget;
        lb.s2s = class_from_json(jl.at("s2s"));
        lb.u2s = class_from_json(jl.at("u2s"));
        lb.s2u = class_from_json(jl.at("s2u"));
        lb.boltzmann_j_per_k = jl.at("boltzmann_j_per_k").get<double>();
        lb.noise_temperature_k = jl.at("noise_temperature_k").get<double>();
        lb.link_margin = jl.at("link_margin").get<double>();
        lb.eb_n0 = jl.at("eb_n0").get<double>();
        lb.bandwidth_hz = jl.at("bandwidth_hz").get<double>();
        lb.noise_power_w = jl.at("noise_power_w").get<double>();
        if (j.contains("defaults") && j["defaults"].contains("virtual_link_capacity_mbit"))
            sc.virtual_link_capacity_mbit =
                j["defaults"]["virtual_link_capacity_mbit"].get<double>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("scenario field error: ") + e.what());
    }
    validate_scenario(sc);
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

void save_scenario(const Scenario& sc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scenario file " + path);
    out << scenario_to_json(sc);
}

// ---------------------------------------------------------------------------
// Synthetic generation: three rings sweeping over two cities.

namespace {

double circ_dist(double a, double b) {
    double d = std::fabs(a - b);
    d -= std::floor(d);
    return std::min(d, 1.0 - d);
}

constexpr double kAltitudeM = 781e3;
constexpr double kGroundScaleM = 1.2e7;  // meters of ground track per unit of sweep circle
constexpr double kSourceCityPos = 0.10;
constexpr double kDestCityPos = 0.55;
constexpr double kCoverageRadius = 0.12;

double slant_range(double dist_circ) {
    const double g = dist_circ * kGroundScaleM;
    return std::sqrt(kAltitudeM * kAltitudeM + g * g);
}

}  // namespace

Scenario generate_synthetic(const SyntheticSpec& spec) {
    if (spec.n_sats < 1 || spec.n_flows < 1 || spec.n_functions < 1 || spec.sfc_len < 1 ||
        spec.horizon < 1)
        throw std::invalid_argument("synthetic generator: all counts must be >= 1");
    if (spec.sfc_len > spec.n_functions)
        throw std::invalid_argument("synthetic generator: sfc_len exceeds function catalog");

    Rng rng(spec.seed * 0x9e3779b97f4a7c15ULL + 0x5851f42d4c957f2dULL);

    Scenario sc;
    sc.horizon = spec.horizon;
    sc.slot_duration_s = 10.0;
    sc.function_count = spec.n_functions;

    // Table defaults; gains and losses stored linear.
    sc.link_budget.s2s = {20.0, std::pow(10.0, 5.2), 2.2e9, std::pow(10.0, -2.3)};
    sc.link_budget.u2s = {1.0, std::pow(10.0, 4.2), 30e9, std::pow(10.0, -2.3)};
    sc.link_budget.s2u = {20.0, std::pow(10.0, 4.2), 30e9, std::pow(10.0, -2.3)};
    sc.link_budget.noise_power_w = sc.link_budget.boltzmann_j_per_k *
                                   sc.link_budget.noise_temperature_k *
                                   sc.link_budget.bandwidth_hz;

    // Function nodes: half the satellites (rounded up), seeded pick, two
    // functions each. The first offered function cycles through the catalog
    // so every needed function keeps a provider under the one-function
    // baseline restriction.
    const int n_fn = (spec.n_sats + 1) / 2;
    std::vector<int> order(spec.n_sats);
    for (int i = 0; i < spec.n_sats; ++i) order[i] = i;
    for (int i = spec.n_sats - 1; i > 0; --i)
        std::swap(order[i], order[rng.below(static_cast<std::uint64_t>(i + 1))]);
    std::vector<bool> is_fn(spec.n_sats, false);
    std::vector<int> fn_rank(spec.n_sats, -1);
    for (int q = 0; q < n_fn; ++q) {
        is_fn[order[q]] = true;
        fn_rank[order[q]] = q;
    }

    std::set<int> offered_union;
    for (int s = 0; s < spec.n_sats; ++s) {
        SatelliteSpec sat;
        sat.id = "s" + std::to_string(s + 1);
        sat.is_function_node = is_fn[s];
        if (is_fn[s]) {
            const int q = fn_rank[s];
            const int first = q % spec.n_functions + 1;
            sat.offered_functions.push_back(first);
            if (spec.n_functions > 1) {
                const int step = 1 + (q / spec.n_functions) % (spec.n_functions - 1);
                sat.offered_functions.push_back((first - 1 + step) % spec.n_functions + 1);
            }
            for (int f : sat.offered_functions) offered_union.insert(f);
        }
        sc.satellites.push_back(std::move(sat));
    }
    if (static_cast<int>(offered_union.size()) < spec.sfc_len)
        throw std::invalid_argument(
            "synthetic generator: too few function nodes to cover an SFC of length " +
            std::to_string(spec.sfc_len));
    const std::vector<int> offered(offered_union.begin(), offered_union.end());

    for (int lf = 0; lf < spec.n_flows; ++lf) {
        TaskFlowSpec flow;
        flow.id = lf + 1;
        flow.source_user = "u" + std::to_string(lf + 1);
        flow.dest_user = "u" + std::to_string(spec.n_flows + lf + 1);
        // ascending random subset of the offered catalog
        std::vector<int> pool = offered;
        for (int i = static_cast<int>(pool.size()) - 1; i > 0; --i)
            std::swap(pool[i], pool[rng.below(static_cast<std::uint64_t>(i + 1))]);
        pool.resize(spec.sfc_len);
        std::sort(pool.begin(), pool.end());
        flow.sfc = pool;
        for (int k = 0; k < spec.sfc_len; ++k) {
            flow.scaling_factors.push_back(rng.uniform(0.8, 1.2));
            flow.compute_factors.push_back(1.0);
        }
        sc.flows.push_back(std::move(flow));
    }

    // Ring geometry: up to three rings, satellites evenly phased, each ring
    // sweeping at its own rate.
    const int rings = std::min(3, spec.n_sats);
    std::vector<int> ring_of(spec.n_sats), idx_in_ring(spec.n_sats), ring_size(rings, 0);
    for (int s = 0; s < spec.n_sats; ++s) {
        ring_of[s] = s % rings;
        idx_in_ring[s] = ring_size[s % rings]++;
    }
    auto position = [&](int s, int t) {
        const int r = ring_of[s];
        const double speed = 0.023 + 0.011 * r;
        const double phase0 = 0.07 * r;
        const double within = static_cast<double>(idx_in_ring[s]) / ring_size[r];
        double p = phase0 + within + speed * (t - 1);
        return p - std::floor(p);
    };

    const int l_count = spec.n_flows;
    const int n = 2 * l_count + spec.n_sats;
    auto& vis = sc.visibility;
    vis.horizon = spec.horizon;
    for (const auto& flow : sc.flows) vis.nodes.push_back(flow.source_user);
    for (const auto& flow : sc.flows) vis.nodes.push_back(flow.dest_user);
    for (const auto& sat : sc.satellites) vis.nodes.push_back(sat.id);
    vis.k.assign(static_cast<std::size_t>(n) * n * spec.horizon, 0);
    vis.range_m.assign(static_cast<std::size_t>(n) * n * spec.horizon, 0.0);

    auto set_pair = [&](int i, int j, int t, double d) {
        vis.k[vis.at(i, j, t)] = 1;
        vis.range_m[vis.at(i, j, t)] = d;
    };

    for (int t = 1; t <= spec.horizon; ++t) {
        // city coverage, mirrored for every user of the city
        for (int side = 0; side < 2; ++side) {
            const double city = side == 0 ? kSourceCityPos : kDestCityPos;
            std::vector<std::pair<double, int>> by_dist;
            for (int s = 0; s < spec.n_sats; ++s)
                by_dist.emplace_back(circ_dist(position(s, t), city), s);
            std::sort(by_dist.begin(), by_dist.end());
            // visible set: everything inside the footprint, then forced
            // extras until the association capacities can hold every flow
            int needed = (l_count + 1) / 2;  // with C^{U2S} = C^{S2U} = 2
            std::vector<int> chosen;
            for (const auto& [d, s] : by_dist)
                if (d <= kCoverageRadius) chosen.push_back(s);
            for (const auto& [d, s] : by_dist) {
                if (static_cast<int>(chosen.size()) >= std::max(1, needed)) break;
                if (d > kCoverageRadius) chosen.push_back(s);
            }
            for (int s : chosen) {
                const double d = slant_range(circ_dist(position(s, t), city));
                for (int lf = 0; lf < l_count; ++lf) {
                    if (side == 0)
                        set_pair(sc.source_node(lf), sc.sat_node(s), t, d);
                    else
                        set_pair(sc.sat_node(s), sc.dest_node(lf), t, d);
                }
            }
        }
        // inter-satellite links: intra-ring cycle plus a ladder between
        // neighboring rings at equal in-ring index
        for (int s = 0; s < spec.n_sats; ++s) {
            const int r = ring_of[s];
            for (int s2 = 0; s2 < spec.n_sats; ++s2) {
                if (s2 == s) continue;
                const int r2 = ring_of[s2];
                bool linked = false;
                if (r2 == r && ring_size[r] > 1) {
                    const int diff =
                        (idx_in_ring[s] - idx_in_ring[s2] + ring_size[r]) % ring_size[r];
                    linked = diff == 1 || diff == ring_size[r] - 1;
                } else if (std::abs(r2 - r) == 1) {
                    linked = idx_in_ring[s] == idx_in_ring[s2];
                }
                if (!linked) continue;
                const double along = circ_dist(position(s, t), position(s2, t)) * kGroundScaleM;
                const double across = 8e5 * std::abs(r2 - r);
                const double d = std::max(3e5, std::hypot(along, across));
                set_pair(sc.sat_node(s), sc.sat_node(s2), t, d);
            }
        }
    }

    validate_scenario(sc);
    return sc;
}

Scenario paper_shape_scenario(std::uint64_t seed) {
    return generate_synthetic({12, 4, 4, 2, 30, seed});
}

Scenario minimal_scenario() { return generate_synthetic({1, 1, 1, 1, 1, 0}); }

}  // namespace sinflow
