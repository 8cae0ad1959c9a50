#include "eds/reduction.hpp"

#include <algorithm>
#include <cmath>

namespace eds {

namespace {

bool widths_integral(std::size_t n, std::size_t gamma, unsigned t) {
    if (gamma == 0) return false;
    std::size_t w0 = n / (2 * gamma);
    if (w0 * 2 * gamma != n) return false;
    return (w0 >> t) << t == w0 && (w0 >> t) >= 1;
}

}  // namespace

ReductionParams reduction_params(std::size_t n, double k, unsigned s) {
    if (k < 1.0 || k > static_cast<double>(n))
        throw error(errc::parameter, "reduction_params: require 1 <= k <= n");
    ReductionParams p;
    p.n = n;
    p.k = k;
    p.s = s;
    double ratio = std::log2(static_cast<double>(n) / k);
    p.t_formula = static_cast<unsigned>(std::floor(std::log2(4.0 * static_cast<double>(n) / k)));
    p.eps = std::pow(2.0, -k / 2.0);
    double denom = 20.0 * static_cast<double>(s) * std::max(1.0, ratio);
    p.gamma_formula = static_cast<std::size_t>(std::floor(k / denom));
    if (p.gamma_formula < 1)
        throw error(errc::entropy, "reduction_params: Gamma = floor(k / (20 s max(1, log2(n/k)))) = " +
                                       std::to_string(p.gamma_formula) +
                                       " < 1; entropy too small for the reduction at these parameters");
    // Round Gamma down until every width n/(2 Gamma) 2^-tau is integral, then
    // cap t so the smallest width stays >= 1.
    std::size_t gamma = p.gamma_formula;
    unsigned t = p.t_formula;
    while (gamma >= 1 && !widths_integral(n, gamma, 0)) --gamma;
    if (gamma < 1)
        throw error(errc::parameter, "reduction_params: no Gamma >= 1 gives integral slice widths");
    while (t > 0 && !widths_integral(n, gamma, t)) --t;
    if (!widths_integral(n, gamma, t))
        throw error(errc::parameter, "reduction_params: slice widths not integral even at t = 0");
    p.gamma = gamma;
    p.t = t;
    return p;
}

ReductionParams make_reduction_params(std::size_t n, double k, unsigned s, std::size_t gamma,
                                      unsigned t, double eps) {
    if (gamma < 1) throw error(errc::entropy, "make_reduction_params: Gamma must be >= 1");
    if (!widths_integral(n, gamma, t))
        throw error(errc::parameter,
                    "make_reduction_params: slice width n/(2 Gamma) 2^-tau must be a positive "
                    "integer for every tau <= t");
    ReductionParams p;
    p.n = n;
    p.k = k;
    p.s = s;
    p.t = t;
    p.eps = eps;
    p.gamma = gamma;
    p.t_formula = t;
    p.gamma_formula = gamma;
    return p;
}

namespace {

struct FixingContext {
    const BranchingProgram& bp;
    const ReductionParams& p;
    std::vector<FixingLeaf>& leaves;
    // layer -> fixed node (index 0..n; 0 unused)
    std::vector<std::optional<unsigned>> fixed;

    std::optional<unsigned> node_at(std::size_t layer) const {
        if (layer == 0) return 0;  // start node, not an L-value
        return fixed[layer];
    }

    SliceInfo slice_info(std::size_t a, std::size_t b) const {
        auto [mass, dist] = bp_slice_conditional(bp, a, a == 0 ? std::nullopt : node_at(a), b,
                                                 node_at(b));
        SliceInfo s;
        s.a = a;
        s.b = b;
        if (mass <= 0.0) {
            s.max_prob = 1.0;
            s.entropy = 0.0;
            return s;
        }
        s.max_prob = *std::max_element(dist.p.begin(), dist.p.end());
        s.entropy = -std::log2(s.max_prob);
        return s;
    }

    // Probability of the whole current fixing.
    double fixing_probability() const {
        double prob = 1.0;
        std::size_t prev_layer = 0;
        std::optional<unsigned> prev_node;  // nullopt = start
        for (std::size_t layer = 1; layer <= bp.n; ++layer) {
            if (!fixed[layer].has_value()) continue;
            auto [mass, dist] =
                bp_slice_conditional(bp, prev_layer, prev_node, layer, fixed[layer]);
            prob *= mass;
            if (prob == 0.0) return 0.0;
            prev_layer = layer;
            prev_node = fixed[layer];
        }
        return prob;
    }

    // Entropy order: larger entropy first; ties broken by larger left endpoint.
    static bool slice_greater(const SliceInfo& x, const SliceInfo& y) {
        if (x.max_prob != y.max_prob) return x.max_prob < y.max_prob;
        return x.a > y.a;
    }

    void emit_leaf(FixingTranscript tr, double prob, int case_label) {
        FixingLeaf leaf;
        leaf.probability = prob;
        tr.case_label = case_label;
        leaf.transcript = std::move(tr);
        if (prob > 0.0) {
            std::vector<std::size_t> idx;
            std::vector<unsigned> val;
            for (std::size_t layer = 1; layer <= bp.n; ++layer) {
                if (fixed[layer].has_value()) {
                    idx.push_back(layer);
                    val.push_back(*fixed[layer]);
                }
            }
            auto [mass, dist] = condition_on_layers(bp, idx, val);
            leaf.conditional = std::move(dist);
        }
        leaves.push_back(std::move(leaf));
    }

    // Branch over node values at the given (sorted) layers, then continue.
    void enumerate_round(FixingTranscript tr, const std::vector<std::size_t>& layers,
                         const std::vector<SliceInfo>& prev_A, unsigned tau) {
        unsigned w = bp.width();
        std::size_t tuples = 1;
        for (std::size_t i = 0; i < layers.size(); ++i) {
            tuples *= w;
            if (tuples > (std::size_t{1} << 22))
                throw error(errc::size, "run_fixing_procedure: too many fixing branches");
        }
        for (std::size_t code = 0; code < tuples; ++code) {
            std::vector<unsigned> values(layers.size());
            std::size_t c = code;
            for (std::size_t j = 0; j < layers.size(); ++j) {
                values[j] = static_cast<unsigned>(c % w);
                c /= w;
            }
            for (std::size_t j = 0; j < layers.size(); ++j) fixed[layers[j]] = values[j];

            FixingTranscript cur = tr;
            cur.tau_star = tau;
            cur.index_sets.push_back(layers);
            cur.fixed_values.push_back(values);

            double prob = fixing_probability();
            if (prob <= 0.0) {
                emit_leaf(std::move(cur), 0.0, 0);
            } else {
                // Build B^(tau): round 0 splits [0, n] at the grid; later rounds
                // halve the previous A-slices.
                std::vector<SliceInfo> Bs;
                if (tau == 0) {
                    std::size_t width0 = p.n / (2 * p.gamma);
                    for (std::size_t j = 0; j < 2 * p.gamma; ++j)
                        Bs.push_back(slice_info(j * width0, (j + 1) * width0));
                } else {
                    for (const auto& sl : prev_A) {
                        std::size_t mid = (sl.a + sl.b) / 2;
                        Bs.push_back(slice_info(sl.a, mid));
                        Bs.push_back(slice_info(mid, sl.b));
                    }
                }
                std::vector<SliceInfo> sorted = Bs;
                std::stable_sort(sorted.begin(), sorted.end(), slice_greater);
                std::vector<SliceInfo> As(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(p.gamma));
                cur.B.push_back(Bs);
                cur.A.push_back(As);

                bool all_good = std::all_of(As.begin(), As.end(), [](const SliceInfo& s) {
                    return s.max_prob <= 0.5 + 1e-12;
                });
                if (all_good) {
                    emit_leaf(std::move(cur), prob, 1);
                } else if (tau == p.t) {
                    emit_leaf(std::move(cur), prob, 2);
                } else {
                    std::vector<std::size_t> next_layers;
                    for (const auto& sl : As) next_layers.push_back((sl.a + sl.b) / 2);
                    std::sort(next_layers.begin(), next_layers.end());
                    enumerate_round(std::move(cur), next_layers, As, tau + 1);
                }
            }
            for (auto layer : layers) fixed[layer] = std::nullopt;
        }
    }
};

}  // namespace

std::vector<FixingLeaf> run_fixing_procedure(const BranchingProgram& bp, const ReductionParams& p) {
    bp.validate();
    if (bp.n != p.n) throw error(errc::config, "run_fixing_procedure: params built for different n");
    if (bp.s != p.s) throw error(errc::config, "run_fixing_procedure: params built for different s");
    if (bp.n > 20 || bp.s > 2)
        throw error(errc::size, "run_fixing_procedure: exact mode limited to n <= 20, s <= 2");
    if (!widths_integral(p.n, p.gamma, p.t))
        throw error(errc::parameter, "run_fixing_procedure: non-integral slice width");

    std::vector<FixingLeaf> leaves;
    FixingContext ctx{bp, p, leaves, std::vector<std::optional<unsigned>>(bp.n + 1)};
    std::size_t width0 = p.n / (2 * p.gamma);
    std::vector<std::size_t> grid;
    for (std::size_t j = 1; j <= 2 * p.gamma - 1; ++j) grid.push_back(j * width0);
    ctx.enumerate_round(FixingTranscript{}, grid, {}, 0);
    return leaves;
}

IssWitness assemble_iss(const BranchingProgram& bp, const FixingLeaf& leaf) {
    if (leaf.transcript.case_label != 1)
        throw error(errc::classification, "assemble_iss: leaf is not Case 1");
    // Rebuild the fixing map.
    std::vector<std::optional<unsigned>> fixed(bp.n + 1);
    for (std::size_t r = 0; r < leaf.transcript.index_sets.size(); ++r)
        for (std::size_t j = 0; j < leaf.transcript.index_sets[r].size(); ++j)
            fixed[leaf.transcript.index_sets[r][j]] = leaf.transcript.fixed_values[r][j];

    // The final slice partition: the unselected slices of every round plus the
    // last round's selection. No slice contains an interior fixed layer, so
    // each conditional needs endpoint conditioning only.
    const auto& tr = leaf.transcript;
    std::vector<SliceInfo> slices;
    for (std::size_t r = 0; r < tr.B.size(); ++r) {
        bool last_round = r + 1 == tr.B.size();
        for (const auto& sl : tr.B[r]) {
            bool selected = false;
            for (const auto& al : tr.A[r])
                if (al.a == sl.a && al.b == sl.b) selected = true;
            if (!selected || last_round) slices.push_back(sl);
        }
    }
    std::sort(slices.begin(), slices.end(),
              [](const SliceInfo& x, const SliceInfo& y) { return x.a < y.a; });

    std::vector<bool> good(slices.size(), false);
    for (std::size_t i = 0; i < slices.size(); ++i)
        for (const auto& al : tr.A.back())
            if (al.a == slices[i].a && al.b == slices[i].b) good[i] = true;

    // Each good slice absorbs everything since the previous good slice; the
    // last good slice also absorbs the tail.
    std::size_t last_good = 0;
    for (std::size_t i = 0; i < slices.size(); ++i)
        if (good[i]) last_good = i;

    IssWitness w;
    Dist block_acc;
    bool have_acc = false;
    std::size_t block_start = 0;
    for (std::size_t i = 0; i < slices.size(); ++i) {
        auto u = slices[i].a == 0 ? std::optional<unsigned>{} : fixed[slices[i].a];
        auto [mass, dist] = bp_slice_conditional(bp, slices[i].a, u, slices[i].b, fixed[slices[i].b]);
        if (mass <= 0.0) throw error(errc::config, "assemble_iss: zero-mass slice");
        block_acc = have_acc ? product(block_acc, dist) : dist;
        have_acc = true;
        // cut after each good slice; the last good slice absorbs the tail
        bool cut = (good[i] && i != last_good) || i + 1 == slices.size();
        if (cut) {
            w.blocks.emplace_back(block_start, slices[i].b);
            w.block_dists.push_back(block_acc);
            w.block_entropies.push_back(min_entropy(block_acc));
            block_start = slices[i].b;
            have_acc = false;
        }
    }
    if (w.blocks.size() != tr.A.back().size())
        throw error(errc::config, "assemble_iss: block count != Gamma");
    return w;
}

BitblockDecomposition decompose_to_bitblock(const BranchingProgram& bp, const ReductionParams& p) {
    auto leaves = run_fixing_procedure(bp, p);
    BitblockDecomposition out;
    double log_inv_eps = -std::log2(p.eps);
    double lhs = p.k - (static_cast<double>(p.t) + 2.0) * p.s * static_cast<double>(p.gamma) -
                 log_inv_eps;
    double rhs = static_cast<double>(p.gamma) * p.t +
                 static_cast<double>(p.n) * std::pow(2.0, -static_cast<double>(p.t));
    out.crossover_contradicted = lhs >= rhs;

    for (const auto& leaf : leaves) {
        if (leaf.probability <= 0.0) continue;
        ++out.transcripts;
        if (leaf.transcript.case_label == 2) {
            ++out.case2_leaves;
            out.mixture.residual += leaf.probability;
            continue;
        }
        ++out.case1_leaves;
        IssWitness w = assemble_iss(bp, leaf);
        // Flat-decompose each block, then take the product mixture.
        std::vector<MixtureDecomposition> per_block;
        for (const auto& bd : w.block_dists) per_block.push_back(flat_decompose_entropy1(bd));
        std::vector<std::size_t> pick(per_block.size(), 0);
        while (true) {
            double weight = leaf.probability;
            std::vector<std::pair<BitVec, BitVec>> pairs;
            for (std::size_t b = 0; b < per_block.size(); ++b) {
                weight *= per_block[b].weights[pick[b]];
                const AffineSource& c = per_block[b].components[pick[b]];
                BitVec first = c.shift();
                BitVec second = c.shift();
                second ^= c.basis()[0];
                pairs.emplace_back(first, second);
            }
            out.mixture.weights.push_back(weight);
            out.mixture.components.push_back(assemble_simple_bitblock(pairs));
            // odometer
            std::size_t b = 0;
            while (b < pick.size()) {
                if (++pick[b] < per_block[b].weights.size()) break;
                pick[b] = 0;
                ++b;
            }
            if (b == pick.size()) break;
        }
    }
    return out;
}

GridReduction grid_reduction_7(const BranchingProgram& bp, double alpha, double k) {
    bp.validate();
    if (alpha <= 0.0 || alpha > 0.25)
        throw error(errc::parameter, "grid_reduction_7: alpha must be in (0, 1/4]");
    // s = 0 sources carry no state; treat them as s = 1 for the chunk count.
    unsigned s_eff = bp.s == 0 ? 1 : bp.s;
    double r_real = alpha * k / static_cast<double>(s_eff);
    auto r = static_cast<std::size_t>(std::llround(r_real));
    if (r < 1 || std::abs(r_real - static_cast<double>(r)) > 1e-9)
        throw error(errc::parameter, "grid_reduction_7: r = alpha k / s = " + std::to_string(r_real) +
                                         " is not a positive integer");
    if (bp.n % r != 0)
        throw error(errc::parameter, "grid_reduction_7: l = n/r is not integral (n = " +
                                         std::to_string(bp.n) + ", r = " + std::to_string(r) + ")");
    std::size_t l = bp.n / r;

    GridReduction out;
    out.r = r;
    out.l = l;
    out.k = k;

    std::vector<std::size_t> grid;
    for (std::size_t i = 1; i < r; ++i) grid.push_back(i * l);
    unsigned w = bp.width();
    std::size_t tuples = 1;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        tuples *= w;
        if (tuples > (std::size_t{1} << 22))
            throw error(errc::size, "grid_reduction_7: too many fixings");
    }

    for (std::size_t code = 0; code < tuples; ++code) {
        GridFixing fx;
        fx.values.resize(grid.size());
        std::size_t c = code;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            fx.values[j] = static_cast<unsigned>(c % w);
            c /= w;
        }
        fx.probability = 1.0;
        for (std::size_t i = 0; i < r && fx.probability > 0.0; ++i) {
            std::size_t a = i * l, b = (i + 1) * l;
            std::optional<unsigned> u = i == 0 ? std::optional<unsigned>{} : fx.values[i - 1];
            std::optional<unsigned> v = (i + 1 < r) ? std::optional<unsigned>{fx.values[i]}
                                                    : std::optional<unsigned>{};
            auto [mass, dist] = bp_slice_conditional(bp, a, u, b, v);
            fx.probability *= mass;
            if (mass > 0.0) {
                fx.gamma_realized += min_entropy(dist);
                fx.slices.push_back(std::move(dist));
            }
        }
        if (fx.probability <= 0.0) {
            fx.probability = 0.0;
            fx.slices.clear();
            fx.gamma_realized = 0.0;
        } else if (fx.gamma_realized < k / 2.0 - 1e-9) {
            out.failure_mass += fx.probability;
        }
        out.fixings.push_back(std::move(fx));
    }
    return out;
}

BarrierReport barrier_check(std::size_t n, double k, unsigned s) {
    BarrierReport rep;
    rep.n = n;
    rep.k = k;
    rep.s = s;
    for (std::size_t r = 1; r <= n; ++r) {
        if (n % r != 0) continue;
        BarrierCase bc;
        bc.r = r;
        bc.l = n / r;
        bool trap = static_cast<double>(bc.l) > k;  // one slice can hold all the entropy
        bool drained = static_cast<double>(r) * s >= k;  // grid fixing costs rs >= k bits
        if (trap && drained) {
            bc.failure = "single-slice trap; grid fixing drains all entropy";
        } else if (trap) {
            bc.failure = "single-slice trap (l > k)";
        } else if (drained) {
            bc.failure = "grid fixing drains all entropy (r s >= k)";
        } else {
            bc.viable = true;
            rep.any_viable = true;
        }
        rep.cases.push_back(std::move(bc));
    }
    return rep;
}

}  // namespace eds
