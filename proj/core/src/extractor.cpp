#include "eds/extractor.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace eds {

LreSpec gip_lre(unsigned r, std::size_t n) {
    if (r < 2 || n < 1) throw error(errc::parameter, "gip_lre: require r >= 2, n >= 1");
    LreSpec spec;
    spec.r = r;
    spec.s = r - 1;
    spec.n = n;
    spec.m = 1;
    spec.label = "GIP-substitute";
    spec.eval = [r, n](const std::vector<std::uint64_t>& xs) -> std::uint64_t {
        std::uint64_t acc = xs[0];
        for (unsigned i = 1; i < r; ++i) acc &= xs[i];
        (void)n;
        return static_cast<std::uint64_t>(std::popcount(acc) & 1);
    };
    return spec;
}

LreSpec xor_lre(unsigned r, std::size_t n) {
    if (r < 1 || n < 1) throw error(errc::parameter, "xor_lre: require r >= 1, n >= 1");
    LreSpec spec;
    spec.r = r;
    spec.s = 1;
    spec.n = n;
    spec.m = n;
    spec.label = "XOR";
    spec.eval = [r](const std::vector<std::uint64_t>& xs) -> std::uint64_t {
        std::uint64_t acc = 0;
        for (unsigned i = 0; i < r; ++i) acc ^= xs[i];
        return acc;
    };
    return spec;
}

namespace {

// k-subsets of {0, ..., m-1}.
std::vector<std::vector<unsigned>> subsets_of_size(unsigned m, unsigned k) {
    std::vector<std::vector<unsigned>> out;
    if (k > m) return out;
    std::vector<unsigned> comb(k);
    for (unsigned i = 0; i < k; ++i) comb[i] = i;
    while (true) {
        out.push_back(comb);
        if (k == 0) break;
        unsigned i = k;
        while (i > 0 && comb[i - 1] == m - (k - i) - 1) --i;
        if (i == 0) break;
        ++comb[i - 1];
        for (unsigned j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
    if (k == 0 && out.empty()) out.push_back({});
    return out;
}

}  // namespace

LreVerifyReport verify_lre_exhaustive(const LreSpec& spec, double k) {
    if (spec.m != 1) throw error(errc::size, "verify_lre_exhaustive: m must be 1");
    if (spec.r * spec.n > 6) throw error(errc::size, "verify_lre_exhaustive: r*n > 6");
    if (spec.s < 1 || spec.s > spec.r)
        throw error(errc::parameter, "verify_lre_exhaustive: require 1 <= s <= r");
    std::size_t domain = std::size_t{1} << spec.n;
    auto support = static_cast<std::size_t>(std::ceil(std::pow(2.0, k)));
    if (support < 1 || support > domain)
        throw error(errc::parameter, "verify_lre_exhaustive: entropy k out of range for n");

    auto leak_sets = subsets_of_size(spec.r, spec.s - 1);
    std::size_t leak_bits = spec.n * (spec.s - 1);  // input bits per leak
    if (leak_bits > 16) throw error(errc::size, "verify_lre_exhaustive: leak domain too large");
    std::size_t leak_domain = std::size_t{1} << leak_bits;
    double table_count = std::pow(2.0, static_cast<double>(leak_domain));
    double collections = std::pow(table_count, static_cast<double>(leak_sets.size()));

    // One support combination per source.
    auto supports = subsets_of_size(static_cast<unsigned>(domain), static_cast<unsigned>(support));
    double combos = std::pow(static_cast<double>(supports.size()), spec.r);
    double inputs = std::pow(static_cast<double>(support), spec.r);
    double work = combos * collections * inputs * std::max<std::size_t>(1, leak_sets.size());
    if (work > 2e8) throw error(errc::size, "verify_lre_exhaustive: adversary grid too large");

    LreVerifyReport rep;
    rep.source_grids = static_cast<std::uint64_t>(combos);
    rep.leak_collections = static_cast<std::uint64_t>(collections);

    std::size_t joint_bits = 1 + leak_sets.size();
    std::vector<double> d1(std::size_t{1} << joint_bits);
    std::vector<double> d2(std::size_t{1} << joint_bits);

    std::vector<std::size_t> src_pick(spec.r, 0);
    struct InputRow {
        std::uint64_t lre;
        std::vector<std::size_t> leak_inputs;  // per leak set, packed input
    };
    while (true) {
        // Precompute per-input-tuple data for this source combination.
        std::vector<InputRow> rows;
        std::vector<std::size_t> idx(spec.r, 0);
        double prob = 1.0 / inputs;
        while (true) {
            std::vector<std::uint64_t> xs(spec.r);
            for (unsigned i = 0; i < spec.r; ++i)
                xs[i] = supports[src_pick[i]][idx[i]];
            InputRow row;
            row.lre = spec.eval(xs) & 1;
            for (const auto& T : leak_sets) {
                std::size_t packed = 0;
                for (std::size_t j = 0; j < T.size(); ++j)
                    packed |= static_cast<std::size_t>(xs[T[j]]) << (j * spec.n);
                row.leak_inputs.push_back(packed);
            }
            rows.push_back(std::move(row));
            unsigned i = 0;
            while (i < spec.r) {
                if (++idx[i] < support) break;
                idx[i] = 0;
                ++i;
            }
            if (i == spec.r) break;
        }

        // Enumerate leak collections: one truth table per leak set, packed into
        // a single odometer of leak_domain-bit tables.
        std::vector<std::uint64_t> tables(leak_sets.size(), 0);
        while (true) {
            std::fill(d1.begin(), d1.end(), 0.0);
            std::fill(d2.begin(), d2.end(), 0.0);
            for (const auto& row : rows) {
                std::size_t leak_bits_val = 0;
                for (std::size_t t = 0; t < tables.size(); ++t) {
                    std::size_t bit = (tables[t] >> row.leak_inputs[t]) & 1;
                    leak_bits_val |= bit << t;
                }
                d1[(leak_bits_val << 1) | row.lre] += prob;
                d2[(leak_bits_val << 1) | 0] += prob / 2.0;
                d2[(leak_bits_val << 1) | 1] += prob / 2.0;
            }
            double dist = 0.0;
            for (std::size_t i = 0; i < d1.size(); ++i) dist += std::abs(d1[i] - d2[i]);
            dist /= 2.0;
            rep.epsilon = std::max(rep.epsilon, dist);

            std::size_t t = 0;
            while (t < tables.size()) {
                tables[t] = (tables[t] + 1) & ((std::uint64_t{1} << leak_domain) - 1);
                if (tables[t] != 0) break;
                ++t;
            }
            if (t == tables.size()) break;
            if (tables.empty()) break;
        }
        if (leak_sets.empty()) {
            // no leaks at all: single empty collection handled above via empty tables
        }

        unsigned i = 0;
        while (i < spec.r) {
            if (++src_pick[i] < supports.size()) break;
            src_pick[i] = 0;
            ++i;
        }
        if (i == spec.r) break;
    }
    return rep;
}

BitVec xor_design_extract(const Design& d, const LreSpec& spec, const std::vector<BitVec>& x) {
    if (d.r != spec.r) throw error(errc::config, "xor_design_extract: design r != LRE r");
    if (d.edges.empty())
        throw error(errc::config, "xor_design_extract: design has no edges; extraction undefined");
    if (x.size() != d.n) throw error(errc::dimension, "xor_design_extract: need one input per vertex");
    for (const auto& xi : x)
        if (xi.size() != spec.n)
            throw error(errc::dimension, "xor_design_extract: component length != LRE n");
    if (spec.m > 63) throw error(errc::size, "xor_design_extract: m > 63");
    std::uint64_t acc = 0;
    std::vector<std::uint64_t> packed(spec.r);
    for (const auto& e : d.edges) {
        for (unsigned i = 0; i < spec.r; ++i) packed[i] = x[e[i] - 1].extract(1, spec.n);
        acc ^= spec.eval(packed);
    }
    return index_to_bitvec(acc, spec.m);
}

namespace {

std::uint64_t sample_index(const Dist& d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double u = unif(rng);
    double acc = 0.0;
    for (std::size_t i = 0; i < d.p.size(); ++i) {
        acc += d.p[i];
        if (u < acc) return i;
    }
    return d.p.size() - 1;
}

unsigned pick_even_r(double delta) {
    if (delta <= 0.0) throw error(errc::parameter, "delta must be positive");
    for (unsigned r = 2; r <= 64; r += 2)
        if (2.0 / r < delta) return r;
    throw error(errc::parameter, "delta too small: required r exceeds 64");
}

}  // namespace

std::pair<BitVec, AdversarialReport> adversarial_extract(const AdversarialSource& src, double delta,
                                                         std::uint64_t seed) {
    AdversarialReport rep;
    rep.seed = seed;
    rep.r_design = pick_even_r(delta);
    if (rep.r_design > src.N)
        throw error(errc::parameter, "adversarial_extract: N = " + std::to_string(src.N) +
                                         " too small for design uniformity r = " +
                                         std::to_string(rep.r_design));
    rep.design = build_design(src.N, rep.r_design, rep.r_design - 1);
    rep.alpha = independence_number_exact(rep.design);
    rep.good_count = src.good_set.size();
    if (rep.good_count <= rep.alpha.alpha)
        throw error(errc::entropy, "adversarial_extract: good sources K = " +
                                       std::to_string(rep.good_count) +
                                       " <= design independence number alpha = " +
                                       std::to_string(rep.alpha.alpha));

    // Witness: first edge contained in the good set.
    std::vector<bool> good(src.N + 1, false);
    for (auto g : src.good_set) good[g] = true;
    for (const auto& e : rep.design.edges) {
        bool inside = std::all_of(e.begin(), e.end(), [&](std::size_t v) { return good[v]; });
        if (inside) {
            rep.witness_edge = e;
            break;
        }
    }
    if (rep.witness_edge.empty())
        throw error(errc::config, "adversarial_extract: no activated edge despite K > alpha");

    LreSpec lre = gip_lre(rep.r_design, src.n);
    rep.lre_label = lre.label;

    std::mt19937_64 rng(seed);
    std::vector<BitVec> sample;
    sample.reserve(src.N);
    for (const auto& c : src.components) sample.push_back(index_to_bitvec(sample_index(c, rng), src.n));
    BitVec out = xor_design_extract(rep.design, lre, sample);

    if (src.N * src.n <= 22) {
        Dist joint = src.components[0];
        for (std::size_t i = 1; i < src.N; ++i) joint = product(joint, src.components[i]);
        const Design& dz = rep.design;
        std::size_t n = src.n;
        Dist outd = pushforward(joint, lre.m, [&](std::uint64_t idx) -> std::uint64_t {
            std::uint64_t acc = 0;
            std::vector<std::uint64_t> packed(lre.r);
            std::uint64_t mask = (std::uint64_t{1} << n) - 1;
            for (const auto& e : dz.edges) {
                for (unsigned i = 0; i < lre.r; ++i)
                    packed[i] = (idx >> ((e[i] - 1) * n)) & mask;
                acc ^= lre.eval(packed);
            }
            return acc;
        });
        rep.output_dist_from_uniform = stat_dist_from_uniform(outd);
    }
    return {out, rep};
}

namespace {

void add_check(ParamPlan& plan, const std::string& name, bool pass, const std::string& detail) {
    plan.checks.push_back({name, pass, detail});
}

void finish_plan(ParamPlan& plan) {
    plan.case_r_ge_l = plan.r >= plan.l;
    plan.k_bucket = std::pow(static_cast<double>(plan.n_bucket), plan.delta / 2.0);
    if (plan.K == 0)
        plan.K = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(plan.N), plan.delta / 2.0)));

    add_check(plan, "chunking", plan.r * plan.l == plan.n,
              "r*l = " + std::to_string(plan.r * plan.l) + " vs n = " + std::to_string(plan.n));
    add_check(plan, "bucket-multiple", plan.l > 0 && plan.n_bucket % plan.l == 0 && plan.N * plan.n_bucket == plan.n,
              "n_bucket = " + std::to_string(plan.n_bucket) + ", l = " + std::to_string(plan.l));
    double lhs = plan.k / 2.0;
    double sqrt_req = std::pow(static_cast<double>(plan.n), 0.5 + plan.delta);
    add_check(plan, "entropy-vs-sqrt", lhs >= sqrt_req,
              "k/2 = " + std::to_string(lhs) + " vs (rl)^(1/2+delta) = " + std::to_string(sqrt_req));
    double chunk_req = std::pow(static_cast<double>(plan.r), plan.delta) * static_cast<double>(plan.l);
    add_check(plan, "entropy-vs-chunk", lhs >= chunk_req,
              "k/2 = " + std::to_string(lhs) + " vs r^delta*l = " + std::to_string(chunk_req));
    double bucket_lhs = static_cast<double>(plan.K * plan.n_bucket) +
                        static_cast<double>(plan.N) * plan.k_bucket;
    add_check(plan, "bucketing-inequality", bucket_lhs <= lhs,
              "K*n_bucket + N*k_bucket = " + std::to_string(bucket_lhs) + " vs Gamma = k/2 = " +
                  std::to_string(lhs));
    plan.feasible = std::all_of(plan.checks.begin(), plan.checks.end(),
                                [](const PlanCheck& c) { return c.pass; });
}

}  // namespace

ParamPlan plan_params(std::size_t n, double k, unsigned s, double delta, double alpha) {
    if (alpha <= 0.0 || alpha > 0.25)
        throw error(errc::parameter, "plan_params: alpha must be in (0, 1/4]");
    if (delta <= 0.0 || delta > 1.0) throw error(errc::parameter, "plan_params: delta must be in (0, 1]");
    if (s < 1) throw error(errc::parameter, "plan_params: s must be >= 1");
    ParamPlan plan;
    plan.delta = delta;
    plan.alpha = alpha;
    plan.n = n;
    plan.k = k;
    plan.s = s;
    double r_real = alpha * k / static_cast<double>(s);
    double l_real = static_cast<double>(n) * s / (alpha * k);
    auto r = static_cast<std::size_t>(std::llround(r_real));
    auto l = static_cast<std::size_t>(std::llround(l_real));
    if (r < 1 || std::abs(r_real - static_cast<double>(r)) > 1e-9)
        throw error(errc::parameter, "plan_params: r = alpha*k/s = " + std::to_string(r_real) +
                                         " is not a positive integer");
    if (l < 1 || std::abs(l_real - static_cast<double>(l)) > 1e-9)
        throw error(errc::parameter, "plan_params: l = n*s/(alpha*k) = " + std::to_string(l_real) +
                                         " is not a positive integer");
    plan.r = r;
    plan.l = l;
    if (r >= l) {
        auto nb = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(r * l))));
        bool exact = nb * nb == r * l;
        add_check(plan, "sqrt-integral", exact,
                  "sqrt(rl) = " + std::to_string(std::sqrt(static_cast<double>(r * l))));
        plan.N = plan.n_bucket = nb;
    } else {
        plan.N = r;
        plan.n_bucket = l;
    }
    finish_plan(plan);
    return plan;
}

ParamPlan explicit_plan(std::size_t n, double k, unsigned s, double delta, std::size_t r,
                        std::size_t N, std::size_t K) {
    if (r < 1 || n % r != 0)
        throw error(errc::parameter, "explicit_plan: r must divide n");
    if (N < 1 || n % N != 0)
        throw error(errc::parameter, "explicit_plan: N must divide n");
    ParamPlan plan;
    plan.delta = delta;
    plan.n = n;
    plan.k = k;
    plan.s = s;
    plan.r = r;
    plan.l = n / r;
    plan.N = N;
    plan.n_bucket = n / N;
    plan.K = K;
    plan.alpha = static_cast<double>(r) * s / k;
    plan.forced = true;
    finish_plan(plan);
    return plan;
}

namespace {

std::pair<BitVec, LowErrReport> run_lowerr(const BranchingProgram& bp, double k,
                                           const ParamPlan& plan, std::uint64_t seed, bool force) {
    bp.validate();
    if (bp.n != plan.n) throw error(errc::config, "small_space_extract_lowerr: plan built for different n");
    LowErrReport rep;
    rep.plan = plan;
    if (!plan.feasible && !force) {
        std::string failing;
        for (const auto& c : plan.checks)
            if (!c.pass) failing += (failing.empty() ? "" : ", ") + c.name;
        throw error(errc::parameter, "small_space_extract_lowerr: plan infeasible (" + failing + ")");
    }

    unsigned r_design = pick_even_r(plan.delta);
    if (r_design > plan.N)
        throw error(errc::parameter, "small_space_extract_lowerr: N too small for design r");
    rep.design_view.r_design = r_design;
    rep.design_view.design = build_design(plan.N, r_design, r_design - 1);
    rep.design_view.alpha = independence_number_exact(rep.design_view.design);
    rep.design_view.good_count = plan.K;
    rep.design_view.seed = seed;
    if (plan.K <= rep.design_view.alpha.alpha && !force)
        throw error(errc::entropy, "small_space_extract_lowerr: K = " + std::to_string(plan.K) +
                                       " <= alpha = " + std::to_string(rep.design_view.alpha.alpha));

    LreSpec lre = gip_lre(r_design, plan.n_bucket);
    rep.design_view.lre_label = lre.label;

    auto bucket_split = [&](const BitVec& x) {
        std::vector<BitVec> buckets;
        buckets.reserve(plan.N);
        for (std::size_t i = 0; i < plan.N; ++i) {
            BitVec b(plan.n_bucket);
            for (std::size_t j = 1; j <= plan.n_bucket; ++j)
                if (x.get(i * plan.n_bucket + j)) b.set(j);
            buckets.push_back(std::move(b));
        }
        return buckets;
    };

    auto sample = bp_sample(bp, seed, 1);
    BitVec out = xor_design_extract(rep.design_view.design, lre, bucket_split(sample[0]));

    if (bp.n <= 20) {
        Dist dist = bp_exact_dist(bp);
        const Design& dz = rep.design_view.design;
        std::uint64_t mask = (std::uint64_t{1} << plan.n_bucket) - 1;
        Dist outd = pushforward(dist, lre.m, [&](std::uint64_t idx) -> std::uint64_t {
            std::uint64_t acc = 0;
            std::vector<std::uint64_t> packed(lre.r);
            for (const auto& e : dz.edges) {
                for (unsigned i = 0; i < lre.r; ++i)
                    packed[i] = (idx >> ((e[i] - 1) * plan.n_bucket)) & mask;
                acc ^= lre.eval(packed);
            }
            return acc;
        });
        rep.output_dist_from_uniform = stat_dist_from_uniform(outd);
        rep.design_view.output_dist_from_uniform = rep.output_dist_from_uniform;
        for (std::size_t i = 0; i < plan.N; ++i) {
            Dist m = marginal_range(dist, i * plan.n_bucket, plan.n_bucket);
            rep.bucket_marginal_entropies.push_back(min_entropy(m));
        }
        rep.realized_good = static_cast<std::size_t>(
            std::count_if(rep.bucket_marginal_entropies.begin(), rep.bucket_marginal_entropies.end(),
                          [&](double h) { return h >= plan.k_bucket - 1e-9; }));
    }
    (void)k;
    return {out, rep};
}

}  // namespace

std::pair<BitVec, LowErrReport> small_space_extract_lowerr(const BranchingProgram& bp, double k,
                                                           const ParamPlan& plan,
                                                           std::uint64_t seed, bool force) {
    return run_lowerr(bp, k, plan, seed, force);
}

std::pair<BitVec, LowErrReport> small_space_extract_lowerr(const BranchingProgram& bp, double k,
                                                           double delta, double alpha,
                                                           std::uint64_t seed) {
    ParamPlan plan = plan_params(bp.n, k, bp.s == 0 ? 1 : bp.s, delta, alpha);
    return run_lowerr(bp, k, plan, seed, false);
}

void TruthTable::set(std::uint64_t x, bool v) {
    if (v)
        words[x >> 6] |= std::uint64_t{1} << (x & 63);
    else
        words[x >> 6] &= ~(std::uint64_t{1} << (x & 63));
}

TruthTable TruthTable::make(std::size_t n) {
    if (n > 20) throw error(errc::size, "TruthTable: n > 20");
    TruthTable t;
    t.n = n;
    t.words.assign(((std::size_t{1} << n) + 63) / 64, 0);
    return t;
}

namespace {

double gaussian_binomial(unsigned n, unsigned k) {
    double v = 1.0;
    for (unsigned i = 0; i < k; ++i)
        v *= (std::pow(2.0, n - i) - 1.0) / (std::pow(2.0, k - i) - 1.0);
    return v;
}

// Enumerates RREF bases of dimension d over F_2^n (vectors as index masks) and
// calls fn(rows). Returns false if fn ever returns false (early stop).
bool for_each_rref_basis(unsigned n, unsigned d,
                         const std::function<bool(const std::vector<std::uint32_t>&)>& fn) {
    std::vector<unsigned> pivots(d);
    for (unsigned i = 0; i < d; ++i) pivots[i] = i;
    while (true) {
        std::vector<bool> is_pivot(n, false);
        for (auto p : pivots) is_pivot[p] = true;
        std::vector<std::pair<unsigned, unsigned>> free_cells;
        for (unsigned i = 0; i < d; ++i)
            for (unsigned c = pivots[i] + 1; c < n; ++c)
                if (!is_pivot[c]) free_cells.emplace_back(i, c);
        std::size_t fills = std::size_t{1} << free_cells.size();
        for (std::size_t f = 0; f < fills; ++f) {
            std::vector<std::uint32_t> rows(d);
            for (unsigned i = 0; i < d; ++i) rows[i] = std::uint32_t{1} << pivots[i];
            for (std::size_t b = 0; b < free_cells.size(); ++b)
                if ((f >> b) & 1) rows[free_cells[b].first] |= std::uint32_t{1} << free_cells[b].second;
            if (!fn(rows)) return false;
        }
        unsigned i = d;
        while (i > 0 && pivots[i - 1] == n - (d - i) - 1) --i;
        if (i == 0) break;
        ++pivots[i - 1];
        for (unsigned j = i; j < d; ++j) pivots[j] = pivots[j - 1] + 1;
    }
    return true;
}

}  // namespace

double verify_affine_extractor(const TruthTable& f, unsigned k) {
    unsigned n = static_cast<unsigned>(f.n);
    if (n > 12) throw error(errc::size, "verify_affine_extractor: n > 12");
    if (k < 1 || k > n) throw error(errc::parameter, "verify_affine_extractor: require 1 <= k <= n");
    double work = gaussian_binomial(n, k) * std::pow(2.0, n);
    if (work > 2e8) throw error(errc::size, "verify_affine_extractor: coset scan too large");

    std::size_t points = std::size_t{1} << n;
    std::size_t coset_size = std::size_t{1} << k;
    double max_bias = 0.0;
    std::vector<std::uint32_t> elems(coset_size);
    std::vector<bool> visited(points);
    for_each_rref_basis(n, k, [&](const std::vector<std::uint32_t>& rows) {
        elems[0] = 0;
        for (std::size_t g = 1; g < coset_size; ++g)
            elems[g] = elems[g - 1] ^ rows[static_cast<std::size_t>(std::countr_zero(g))];
        std::fill(visited.begin(), visited.end(), false);
        for (std::size_t y = 0; y < points; ++y) {
            if (visited[y]) continue;
            std::size_t ones = 0;
            for (auto e : elems) {
                std::size_t x = y ^ e;
                visited[x] = true;
                ones += f.get(x);
            }
            double bias = std::abs(static_cast<double>(ones) / static_cast<double>(coset_size) - 0.5);
            max_bias = std::max(max_bias, bias);
        }
        return max_bias < 0.5;  // stop early at the ceiling
    });
    return max_bias;
}

AffineSearchResult find_affine_extractor(std::size_t n, unsigned k, double eps, std::uint64_t seed,
                                         unsigned tries) {
    if (n > 10) throw error(errc::size, "find_affine_extractor: n > 10");
    AffineSearchResult res;
    std::mt19937_64 rng(seed);
    std::size_t points = std::size_t{1} << n;
    std::vector<std::uint64_t> order(points);
    for (std::size_t i = 0; i < points; ++i) order[i] = i;
    for (unsigned attempt = 1; attempt <= tries; ++attempt) {
        std::shuffle(order.begin(), order.end(), rng);
        TruthTable t = TruthTable::make(n);
        for (std::size_t i = 0; i < points / 2; ++i) t.set(order[i], true);
        double e = verify_affine_extractor(t, k);
        res.tries_used = attempt;
        res.best_epsilon = std::min(res.best_epsilon, e);
        if (e <= eps + 1e-12) {
            res.found = AffineCertificate{std::move(t), k, e, seed, attempt};
            return res;
        }
    }
    return res;
}

std::pair<bool, PolylogReport> small_space_extract_polylog(const BranchingProgram& bp,
                                                           const ReductionParams& params,
                                                           const AffineCertificate& aff,
                                                           std::uint64_t seed) {
    bp.validate();
    if (aff.table.n != bp.n)
        throw error(errc::config, "small_space_extract_polylog: certificate over different n");
    if (aff.k > params.gamma)
        throw error(errc::config, "small_space_extract_polylog: certificate entropy k = " +
                                      std::to_string(aff.k) + " exceeds the reduction's Gamma = " +
                                      std::to_string(params.gamma));
    PolylogReport rep;
    rep.params = params;
    rep.aff_k = aff.k;
    rep.aff_epsilon = aff.epsilon;
    rep.seed = seed;

    auto dec = decompose_to_bitblock(bp, params);
    rep.residual = dec.mixture.residual;
    rep.components = dec.mixture.components.size();
    rep.transcripts = dec.transcripts;

    auto sample = bp_sample(bp, seed, 1);
    bool out = aff.table.get(bitvec_to_index(sample[0]));

    if (bp.n <= 20) {
        Dist dist = bp_exact_dist(bp);
        Dist outd = pushforward(dist, 1, [&](std::uint64_t idx) -> std::uint64_t {
            return aff.table.get(idx) ? 1 : 0;
        });
        rep.output_dist_from_uniform = stat_dist_from_uniform(outd);
    }
    return {out, rep};
}

}  // namespace eds
