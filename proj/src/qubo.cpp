#include "sinflow/qubo.hpp"

#include <algorithm>
#include <sstream>

namespace sinflow {

ThetaEncoding encode_theta(double lo, double hi, int bits) {
    if (!(lo < hi)) throw std::invalid_argument("encode_theta: lo must be below hi");
    if (bits < 2) throw std::invalid_argument("encode_theta: need at least 2 bits");
    ThetaEncoding enc;
    enc.lo = lo;
    enc.hi = hi;
    enc.neg_bits = lo < 0.0 ? static_cast<int>(std::ceil(std::log2(-lo + 1.0))) : 0;
    enc.pos_bits =
        hi > 0.0 ? std::max(0, static_cast<int>(std::ceil(std::log2(hi + 1.0))) - 1) : 0;
    enc.frac_bits = bits - 1 - enc.pos_bits - enc.neg_bits;
    if (enc.frac_bits < 0)
        throw std::invalid_argument("encode_theta: range [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "] not representable with " +
                                    std::to_string(bits) + " bits");
    if (enc.frac_bits > 10) {  // spend surplus on headroom instead of precision
        enc.pos_bits += enc.frac_bits - 10;
        enc.frac_bits = 10;
    }
    return enc;
}

double PenaltyGroup::violation(std::span<const std::uint8_t> bits) const {
    double lhs = 0.0;
    for (const auto& [j, v] : terms) {
        if (slack_offset >= 0 && j >= slack_offset && j < slack_offset + slack_count) continue;
        if (bits[j]) lhs += v;
    }
    return std::max(0.0, lhs - rhs);
}

double PenaltyGroup::residual(std::span<const std::uint8_t> bits) const {
    double lhs = -rhs;
    for (const auto& [j, v] : terms)
        if (bits[j]) lhs += v;
    return lhs;
}

double IsingModel::energy(std::span<const std::int8_t> s) const {
    double e = offset;
    for (int i = 0; i < num_spins; ++i) e += h[i] * s[i];
    for (const auto& [ij, v] : j) e += v * s[ij.first] * s[ij.second];
    return e;
}

void QuboModel::add_quadratic(int i, int j, double v) {
    if (i == j) {
        add_linear(i, v);  // x^2 = x on binaries
        return;
    }
    if (i > j) std::swap(i, j);
    quad_[{i, j}] += v;
}

double QuboModel::energy(std::span<const std::uint8_t> bits) const {
    if (static_cast<int>(bits.size()) != bits_)
        throw std::invalid_argument("energy: bit vector length mismatch");
    double e = offset_;
    for (int i = 0; i < bits_; ++i)
        if (bits[i]) e += linear_[i];
    for (const auto& [ij, v] : quad_)
        if (bits[ij.first] && bits[ij.second]) e += v;
    for (const auto& g : groups_) {
        const double r = g.residual(bits);
        e += g.weight * r * r;
    }
    return e;
}

std::pair<std::map<std::pair<int, int>, double>, double> QuboModel::upper_triangular(
    std::size_t max_terms) const {
    std::size_t budget = quad_.size() + bits_;
    for (const auto& g : groups_) budget += g.terms.size() * g.terms.size();
    if (budget > max_terms)
        throw std::runtime_error("upper_triangular: expansion of " + std::to_string(budget) +
                                 " terms exceeds the guard");
    std::map<std::pair<int, int>, double> q = quad_;
    double offset = offset_;
    for (int i = 0; i < bits_; ++i)
        if (linear_[i] != 0.0) q[{i, i}] += linear_[i];
    for (const auto& g : groups_) {
        offset += g.weight * g.rhs * g.rhs;
        for (std::size_t a = 0; a < g.terms.size(); ++a) {
            const auto& [i, vi] = g.terms[a];
            q[{i, i}] += g.weight * vi * (vi - 2.0 * g.rhs);
            for (std::size_t b = a + 1; b < g.terms.size(); ++b) {
                const auto& [j, vj] = g.terms[b];
                auto key = i < j ? std::make_pair(i, j) : std::make_pair(j, i);
                q[key] += 2.0 * g.weight * vi * vj;
            }
        }
    }
    std::erase_if(q, [](const auto& kv) { return kv.second == 0.0; });
    return {std::move(q), offset};
}

int add_inequality_penalty(QuboModel& model, SparseVec row, double rhs, double eta,
                           bool integer_row, std::string tag) {
    double lowest = 0.0;  // min of row . x over the binary box
    for (const auto& [j, v] : row) lowest += std::min(0.0, v);
    const double slack_range = rhs - lowest;
    if (slack_range < (integer_row ? -1e-9 : -1e-12))
        throw std::invalid_argument("penalty row unsatisfiable: " + tag);

    PenaltyGroup g;
    g.weight = eta;
    g.rhs = rhs;
    g.terms = std::move(row);
    g.fractional = !integer_row;
    int ladder = 0;
    if (slack_range >= 1.0 - 1e-9)
        ladder = static_cast<int>(std::ceil(std::log2(slack_range + 1.0) - 1e-12));
    const int extra = integer_row ? 0 : 1;
    if (ladder + extra > 0) {
        g.slack_offset = model.add_bits(ladder + extra);
        g.slack_count = ladder + extra;
        for (int b = 0; b < ladder; ++b)
            g.terms.emplace_back(g.slack_offset + b, std::ldexp(1.0, b));
        if (extra) g.terms.emplace_back(g.slack_offset + ladder, 0.5);
    }
    g.tag = std::move(tag);
    model.add_penalty(std::move(g));
    return static_cast<int>(model.penalties().size()) - 1;
}

QuboModel build_master_qubo(const MasterProblem& master, const PenaltyConfig& cfg,
                            const ThetaEncoding& enc) {
    const MilpProblem& p = *master.milp;
    const int n0 = p.vars.binary_count();
    QuboModel model(n0 + enc.total_bits());
    model.layout.w_count = n0;
    model.layout.theta_offset = n0;
    model.layout.theta = enc;

    for (int i = 0; i < enc.total_bits(); ++i) model.add_linear(n0 + i, enc.weight(i));

    const double width = master.theta_hi - master.theta_lo;
    const double eta1 = cfg.eta1 > 0.0 ? cfg.eta1 : 2.0 * std::max(1.0, width);
    const double eta2 = cfg.eta2 > 0.0 ? cfg.eta2 : eta1;
    const double eta3 =
        cfg.eta3 > 0.0 ? cfg.eta3 : std::max(eta1, 1.0 / enc.resolution());

    for (std::size_t r = 0; r < p.d3.size(); ++r) {
        if (p.g3[r].empty() && p.d3[r] >= 0.0) continue;
        add_inequality_penalty(model, p.g3[r], p.d3[r], eta1, /*integer_row=*/true,
                               std::string(family_name(p.tags3[r].family)) + " " +
                                   p.tags3[r].detail);
    }
    if (master.feasibility_cuts) {
        for (std::size_t i = 0; i < master.feasibility_cuts->size(); ++i) {
            const CutData& cut = (*master.feasibility_cuts)[i];
            SparseVec row;
            for (const auto& [j, v] : cut.w_coeffs) row.emplace_back(j, -v);
            const int g = add_inequality_penalty(model, std::move(row), -cut.rhs_term, eta2,
                                                 /*integer_row=*/false,
                                                 "feasibility_cut " + std::to_string(i));
            model.penalty_tolerance(g, 1e-3);
        }
    }
    if (master.optimality_cuts) {
        // the ground state trades theta against the squared penalty; the
        // drift it can buy is 1/(2 eta), so widen the tolerance accordingly
        const double opt_tol = std::max(1e-3, 0.5 / eta3 + enc.resolution());
        for (std::size_t i = 0; i < master.optimality_cuts->size(); ++i) {
            const CutData& cut = (*master.optimality_cuts)[i];
            SparseVec row;
            for (const auto& [j, v] : cut.w_coeffs) row.emplace_back(j, -v);
            for (int b = 0; b < enc.total_bits(); ++b)
                row.emplace_back(n0 + b, -enc.weight(b));
            const int g = add_inequality_penalty(model, std::move(row), -cut.rhs_term, eta3,
                                                 /*integer_row=*/false,
                                                 "optimality_cut " + std::to_string(i));
            model.penalty_tolerance(g, opt_tol);
        }
    }
    return model;
}

DecodedSample decode(const QuboModel& model, std::span<const std::uint8_t> bits) {
    if (static_cast<int>(bits.size()) != model.num_bits())
        throw std::invalid_argument("decode: bit vector length mismatch");
    DecodedSample out;
    out.w.assign(bits.begin(), bits.begin() + model.layout.w_count);
    if (model.layout.theta_offset >= 0)
        out.theta = model.layout.theta.decode(bits.subspan(model.layout.theta_offset));
    out.master_feasible = true;
    for (const auto& g : model.penalties()) {
        const double r = g.residual(bits);
        out.penalty_residual += g.weight * r * r;
        const double v = g.violation(bits);
        out.violations.push_back(v);
        if (v > g.tol) out.master_feasible = false;
    }
    return out;
}

IsingModel to_ising(const QuboModel& model) {
    auto [q, offset] = model.upper_triangular();
    IsingModel ising;
    ising.num_spins = model.num_bits();
    ising.h.assign(ising.num_spins, 0.0);
    ising.offset = offset;
    for (const auto& [ij, v] : q) {
        const auto [i, j] = ij;
        if (i == j) {
            ising.h[i] += v / 2.0;
            ising.offset += v / 2.0;
        } else {
            ising.j[{i, j}] += v / 4.0;
            ising.h[i] += v / 4.0;
            ising.h[j] += v / 4.0;
            ising.offset += v / 4.0;
        }
    }
    std::erase_if(ising.j, [](const auto& kv) { return kv.second == 0.0; });
    return ising;
}

QuboModel from_ising(const IsingModel& ising) {
    QuboModel model(ising.num_spins);
    double offset = ising.offset;
    for (int i = 0; i < ising.num_spins; ++i) {
        model.add_linear(i, 2.0 * ising.h[i]);
        offset -= ising.h[i];
    }
    for (const auto& [ij, v] : ising.j) {
        model.add_quadratic(ij.first, ij.second, 4.0 * v);
        model.add_linear(ij.first, -2.0 * v);
        model.add_linear(ij.second, -2.0 * v);
        offset += v;
    }
    model.add_offset(offset);
    return model;
}

std::string export_qubo(const QuboModel& model) {
    auto [q, offset] = model.upper_triangular();
    std::ostringstream out;
    out.precision(17);
    out << "# qubo v1 bits=" << model.num_bits() << " offset=" << offset << "\n";
    out << "# layout w=" << model.layout.w_count
        << " theta_offset=" << model.layout.theta_offset << " theta_bits="
        << (model.layout.theta_offset >= 0 ? model.layout.theta.total_bits() : 0) << "\n";
    for (const auto& [ij, v] : q) out << ij.first << " " << ij.second << " " << v << "\n";
    return out.str();
}

QuboModel parse_qubo(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int bits = -1;
    double offset = 0.0;
    QuboModel model;
    bool sized = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::size_t at = line.find(" bits=");
            if (at != std::string::npos) bits = std::stoi(line.substr(at + 6));
            at = line.find(" offset=");
            if (at != std::string::npos) offset = std::stod(line.substr(at + 8));
            continue;
        }
        if (!sized) {
            if (bits < 0) throw ParseError("qubo file missing bits= header");
            model = QuboModel(bits);
            model.add_offset(offset);
            sized = true;
        }
        std::istringstream row(line);
        int i, j;
        double v;
        if (!(row >> i >> j >> v)) throw ParseError("bad qubo line: " + line);
        if (i < 0 || j < 0 || i >= bits || j >= bits)
            throw ParseError("qubo index out of range: " + line);
        if (i == j)
            model.add_linear(i, v);
        else
            model.add_quadratic(i, j, v);
    }
    if (!sized) {
        if (bits < 0) throw ParseError("qubo file missing bits= header");
        model = QuboModel(bits);
        model.add_offset(offset);
    }
    return model;
}

}  // namespace sinflow
