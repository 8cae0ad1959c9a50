#include "eds/source.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace eds {

std::uint64_t bitvec_to_index(const BitVec& x) {
    if (x.size() > 63) throw error(errc::size, "bitvec_to_index: n > 63");
    return x.extract(1, x.size());
}

BitVec index_to_bitvec(std::uint64_t idx, std::size_t n) {
    BitVec v(n);
    for (std::size_t i = 0; i < n; ++i)
        if ((idx >> i) & 1) v.set(i + 1);
    return v;
}

Dist Dist::uniform(std::size_t n) {
    Dist d;
    d.n = n;
    d.p.assign(std::size_t{1} << n, 1.0 / static_cast<double>(std::size_t{1} << n));
    return d;
}

Dist Dist::point_mass(const BitVec& x) {
    Dist d;
    d.n = x.size();
    d.p.assign(std::size_t{1} << d.n, 0.0);
    d.p[bitvec_to_index(x)] = 1.0;
    return d;
}

Dist Dist::from_probs(std::size_t n, std::vector<double> probs) {
    if (n > kMaxExactBits) throw error(errc::size, "Dist: n > 24");
    if (probs.size() != (std::size_t{1} << n)) throw error(errc::dimension, "Dist: wrong vector size");
    Dist d;
    d.n = n;
    d.p = std::move(probs);
    d.validate();
    return d;
}

void Dist::validate() const {
    if (n > kMaxExactBits) throw error(errc::size, "Dist: n > 24");
    if (p.size() != (std::size_t{1} << n)) throw error(errc::dimension, "Dist: wrong vector size");
    double sum = 0.0;
    for (double v : p) {
        if (v < 0.0) throw error(errc::parameter, "Dist: negative probability");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw error(errc::parameter, "Dist: probabilities sum to " + std::to_string(sum));
}

double min_entropy(const Dist& d) {
    d.validate();
    double mx = *std::max_element(d.p.begin(), d.p.end());
    return -std::log2(mx);
}

double stat_dist(const Dist& a, const Dist& b) {
    if (a.n != b.n) throw error(errc::dimension, "stat_dist: lengths differ");
    double s = 0.0;
    for (std::size_t i = 0; i < a.p.size(); ++i) s += std::abs(a.p[i] - b.p[i]);
    return s / 2.0;
}

double stat_dist_from_uniform(const Dist& a) {
    double u = 1.0 / static_cast<double>(a.p.size());
    double s = 0.0;
    for (double v : a.p) s += std::abs(v - u);
    return s / 2.0;
}

Dist push_xor(const Dist& d, const BitVec& c) {
    if (c.size() != d.n) throw error(errc::dimension, "push_xor: lengths differ");
    std::uint64_t ci = bitvec_to_index(c);
    Dist out;
    out.n = d.n;
    out.p.assign(d.p.size(), 0.0);
    for (std::size_t i = 0; i < d.p.size(); ++i) out.p[i ^ ci] = d.p[i];
    return out;
}

Dist product(const Dist& a, const Dist& b) {
    if (a.n + b.n > kMaxExactBits) throw error(errc::size, "product: combined length > 24");
    Dist out;
    out.n = a.n + b.n;
    out.p.assign(std::size_t{1} << out.n, 0.0);
    for (std::size_t j = 0; j < b.p.size(); ++j) {
        if (b.p[j] == 0.0) continue;
        for (std::size_t i = 0; i < a.p.size(); ++i)
            out.p[(j << a.n) | i] = a.p[i] * b.p[j];
    }
    return out;
}

Dist pushforward(const Dist& d, std::size_t m,
                 const std::function<std::uint64_t(std::uint64_t)>& f) {
    Dist out;
    out.n = m;
    out.p.assign(std::size_t{1} << m, 0.0);
    for (std::size_t i = 0; i < d.p.size(); ++i) {
        if (d.p[i] == 0.0) continue;
        std::uint64_t y = f(i);
        if (y >= out.p.size()) throw error(errc::index, "pushforward: image out of range");
        out.p[y] += d.p[i];
    }
    return out;
}

Dist marginal_range(const Dist& d, std::size_t offset, std::size_t len) {
    if (offset + len > d.n) throw error(errc::index, "marginal_range: out of range");
    Dist out;
    out.n = len;
    out.p.assign(std::size_t{1} << len, 0.0);
    std::uint64_t mask = (len == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << len) - 1);
    for (std::size_t i = 0; i < d.p.size(); ++i) out.p[(i >> offset) & mask] += d.p[i];
    return out;
}

void BranchingProgram::validate() const {
    if (n < 1) throw error(errc::parameter, "BranchingProgram: n must be >= 1");
    if (tr.size() != n) throw error(errc::dimension, "BranchingProgram: need n transition layers");
    if (tr[0].size() != 1) throw error(errc::parameter, "BranchingProgram: layer 0 must have one node");
    unsigned w = width();
    for (std::size_t i = 0; i < n; ++i) {
        if (tr[i].size() > w) throw error(errc::parameter, "BranchingProgram: too many nodes in a layer");
        for (const auto& edges : tr[i])
            for (const auto& e : edges)
                if (e.next >= w) throw error(errc::parameter, "BranchingProgram: edge target out of range");
    }
    auto reach = reachable();
    for (std::size_t i = 0; i < n; ++i) {
        for (unsigned v = tr[i].size(); v < w; ++v)
            if (reach[i][v])
                throw error(errc::parameter, "BranchingProgram: reachable node " + std::to_string(v) +
                                                 " at layer " + std::to_string(i) +
                                                 " has no transitions");
        for (std::size_t v = 0; v < tr[i].size(); ++v) {
            if (!reach[i][v]) continue;
            double sum = 0.0;
            for (const auto& e : tr[i][v]) sum += e.prob.value();
            if (std::abs(sum - 1.0) > 1e-12)
                throw error(errc::parameter, "BranchingProgram: outgoing probabilities at layer " +
                                                 std::to_string(i) + " node " + std::to_string(v) +
                                                 " sum to " + std::to_string(sum));
        }
    }
}

std::vector<std::vector<bool>> BranchingProgram::reachable() const {
    unsigned w = width();
    std::vector<std::vector<bool>> reach(n + 1, std::vector<bool>(w, false));
    reach[0][0] = true;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t v = 0; v < tr[i].size(); ++v) {
            if (!reach[i][v]) continue;
            for (const auto& e : tr[i][v])
                if (e.prob.num != 0) reach[i + 1][e.next] = true;
        }
    }
    return reach;
}

namespace {

void check_exact_gate(const BranchingProgram& bp) {
    if (bp.n > kMaxExactBits)
        throw error(errc::size, "exact mode limited to n <= 24; use bp_sample instead");
    if ((std::size_t{1} << bp.n) * bp.width() > (std::size_t{1} << 27))
        throw error(errc::size, "exact mode state too large; use bp_sample instead");
}

// Forward DP over (emitted prefix, node), with optional per-layer node masks.
// masks[i] (1-indexed layer) restricts the node at layer i when present.
std::vector<double> bp_forward(const BranchingProgram& bp,
                               const std::vector<std::optional<unsigned>>& fixed) {
    unsigned w = bp.width();
    std::vector<double> cur(w, 0.0);
    cur[0] = 1.0;
    for (std::size_t i = 0; i < bp.n; ++i) {
        std::size_t prefixes = std::size_t{1} << i;
        std::vector<double> nxt((prefixes << 1) * w, 0.0);
        for (std::size_t pre = 0; pre < prefixes; ++pre) {
            for (std::size_t v = 0; v < bp.tr[i].size(); ++v) {
                double mass = cur[pre * w + v];
                if (mass == 0.0) continue;
                for (const auto& e : bp.tr[i][v]) {
                    std::size_t npre = pre | (static_cast<std::size_t>(e.bit) << i);
                    nxt[npre * w + e.next] += mass * e.prob.value();
                }
            }
        }
        if (fixed[i + 1].has_value()) {
            unsigned keep = *fixed[i + 1];
            for (std::size_t pre = 0; pre < (prefixes << 1); ++pre)
                for (unsigned v = 0; v < w; ++v)
                    if (v != keep) nxt[pre * w + v] = 0.0;
        }
        cur = std::move(nxt);
    }
    return cur;  // size 2^n * w
}

}  // namespace

Dist bp_exact_dist(const BranchingProgram& bp) {
    bp.validate();
    check_exact_gate(bp);
    std::vector<std::optional<unsigned>> fixed(bp.n + 1);
    auto cur = bp_forward(bp, fixed);
    unsigned w = bp.width();
    Dist d;
    d.n = bp.n;
    d.p.assign(std::size_t{1} << bp.n, 0.0);
    for (std::size_t pre = 0; pre < d.p.size(); ++pre)
        for (unsigned v = 0; v < w; ++v) d.p[pre] += cur[pre * w + v];
    return d;
}

std::vector<BitVec> bp_sample(const BranchingProgram& bp, std::uint64_t seed, std::size_t count) {
    bp.validate();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<BitVec> out;
    out.reserve(count);
    for (std::size_t c = 0; c < count; ++c) {
        BitVec x(bp.n);
        unsigned node = 0;
        for (std::size_t i = 0; i < bp.n; ++i) {
            double u = unif(rng);
            double acc = 0.0;
            const auto& edges = bp.tr[i][node];
            const BpEdge* chosen = &edges.back();
            for (const auto& e : edges) {
                acc += e.prob.value();
                if (u < acc) {
                    chosen = &e;
                    break;
                }
            }
            if (chosen->bit) x.set(i + 1);
            node = chosen->next;
        }
        out.push_back(std::move(x));
    }
    return out;
}

std::pair<double, Dist> condition_on_layers(const BranchingProgram& bp,
                                            const std::vector<std::size_t>& indices,
                                            const std::vector<unsigned>& values) {
    bp.validate();
    check_exact_gate(bp);
    if (indices.size() != values.size())
        throw error(errc::dimension, "condition_on_layers: indices/values size mismatch");
    if (!std::is_sorted(indices.begin(), indices.end()))
        throw error(errc::parameter, "condition_on_layers: indices must be sorted");
    std::vector<std::optional<unsigned>> fixed(bp.n + 1);
    for (std::size_t j = 0; j < indices.size(); ++j) {
        if (indices[j] < 1 || indices[j] > bp.n)
            throw error(errc::index, "condition_on_layers: layer out of range");
        if (values[j] >= bp.width())
            throw error(errc::parameter, "condition_on_layers: node id out of range");
        fixed[indices[j]] = values[j];
    }
    auto cur = bp_forward(bp, fixed);
    unsigned w = bp.width();
    Dist d;
    d.n = bp.n;
    d.p.assign(std::size_t{1} << bp.n, 0.0);
    double mass = 0.0;
    for (std::size_t pre = 0; pre < d.p.size(); ++pre) {
        for (unsigned v = 0; v < w; ++v) d.p[pre] += cur[pre * w + v];
        mass += d.p[pre];
    }
    if (mass <= 0.0) return {0.0, Dist{bp.n, {}}};
    for (auto& v : d.p) v /= mass;
    return {mass, d};
}

std::pair<double, Dist> bp_slice_conditional(const BranchingProgram& bp, std::size_t a,
                                             std::optional<unsigned> u, std::size_t b,
                                             std::optional<unsigned> v) {
    if (a >= b || b > bp.n) throw error(errc::parameter, "bp_slice_conditional: need 0 <= a < b <= n");
    if ((a == 0) == u.has_value())
        throw error(errc::parameter, "bp_slice_conditional: start node required iff a > 0");
    std::size_t len = b - a;
    if (len > kMaxExactBits) throw error(errc::size, "bp_slice_conditional: slice too long");
    unsigned w = bp.width();
    std::vector<double> cur(w, 0.0);
    cur[a == 0 ? 0 : *u] = 1.0;
    for (std::size_t j = 0; j < len; ++j) {
        std::size_t prefixes = std::size_t{1} << j;
        std::vector<double> nxt((prefixes << 1) * w, 0.0);
        for (std::size_t pre = 0; pre < prefixes; ++pre) {
            for (std::size_t node = 0; node < bp.tr[a + j].size(); ++node) {
                double mass = cur[pre * w + node];
                if (mass == 0.0) continue;
                for (const auto& e : bp.tr[a + j][node]) {
                    std::size_t npre = pre | (static_cast<std::size_t>(e.bit) << j);
                    nxt[npre * w + e.next] += mass * e.prob.value();
                }
            }
        }
        cur = std::move(nxt);
    }
    Dist d;
    d.n = len;
    d.p.assign(std::size_t{1} << len, 0.0);
    double mass = 0.0;
    for (std::size_t pre = 0; pre < d.p.size(); ++pre) {
        if (v.has_value()) {
            d.p[pre] = cur[pre * w + *v];
        } else {
            for (unsigned node = 0; node < w; ++node) d.p[pre] += cur[pre * w + node];
        }
        mass += d.p[pre];
    }
    if (mass <= 0.0) return {0.0, Dist{len, {}}};
    for (auto& x : d.p) x /= mass;
    return {mass, d};
}

bool chain_rule_check(const BranchingProgram& bp, const std::vector<std::size_t>& indices,
                      double eps) {
    if (indices.empty()) return true;
    double h = min_entropy(bp_exact_dist(bp));
    unsigned w = bp.width();
    std::size_t tuples = 1;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        tuples *= w;
        if (tuples > (std::size_t{1} << 20))
            throw error(errc::size, "chain_rule_check: too many fixings");
    }
    // First pass: support size of the fixing variable.
    std::vector<double> probs(tuples, 0.0);
    std::vector<Dist> dists(tuples);
    std::size_t support = 0;
    for (std::size_t code = 0; code < tuples; ++code) {
        std::vector<unsigned> values(indices.size());
        std::size_t c = code;
        for (std::size_t j = 0; j < indices.size(); ++j) {
            values[j] = static_cast<unsigned>(c % w);
            c /= w;
        }
        auto [p, d] = condition_on_layers(bp, indices, values);
        probs[code] = p;
        dists[code] = std::move(d);
        if (p > 0.0) ++support;
    }
    double threshold = h - std::log2(static_cast<double>(support)) - std::log2(1.0 / eps);
    double bad_mass = 0.0;
    for (std::size_t code = 0; code < tuples; ++code) {
        if (probs[code] == 0.0) continue;
        double hc = min_entropy(dists[code]);
        if (hc < threshold - 1e-9) bad_mass += probs[code];
    }
    return bad_mass <= eps + 1e-12;
}

TotalEntropyView classify_total_entropy(const std::vector<Dist>& components) {
    TotalEntropyView v;
    if (components.empty()) return v;
    v.r = components.size();
    v.len = components[0].n;
    for (const auto& c : components) {
        if (c.n != v.len) throw error(errc::dimension, "classify_total_entropy: mixed lengths");
        v.gamma += min_entropy(c);
    }
    return v;
}

AdversarialSource make_adversarial(std::vector<Dist> components, double k) {
    AdversarialSource src;
    src.N = components.size();
    if (src.N == 0) throw error(errc::parameter, "make_adversarial: no components");
    src.n = components[0].n;
    for (const auto& c : components)
        if (c.n != src.n) throw error(errc::dimension, "make_adversarial: mixed lengths");
    src.k = k;
    for (std::size_t i = 0; i < components.size(); ++i)
        if (min_entropy(components[i]) >= k - 1e-9) src.good_set.push_back(i + 1);
    src.components = std::move(components);
    return src;
}

BucketedSource bucket_to_adversarial(const std::vector<Dist>& components, std::size_t N,
                                     std::size_t n, double k) {
    auto view = classify_total_entropy(components);
    if (N * n != view.r * view.len)
        throw error(errc::parameter, "bucket_to_adversarial: N*n != r*l");
    if (view.len == 0 || n % view.len != 0)
        throw error(errc::parameter, "bucket_to_adversarial: n must be a multiple of l");
    std::size_t group = n / view.len;
    std::vector<Dist> buckets;
    std::vector<double> entropies;
    for (std::size_t b = 0; b < N; ++b) {
        Dist acc = components[b * group];
        double h = min_entropy(components[b * group]);
        for (std::size_t j = 1; j < group; ++j) {
            acc = product(acc, components[b * group + j]);
            h += min_entropy(components[b * group + j]);
        }
        buckets.push_back(std::move(acc));
        entropies.push_back(h);
    }
    BucketedSource out;
    out.src = make_adversarial(std::move(buckets), k);
    out.bucket_entropies = std::move(entropies);
    // Largest K with K*n + N*k <= Gamma.
    std::size_t K = 0;
    for (std::size_t cand = 0; cand <= N; ++cand) {
        if (static_cast<double>(cand * n) + static_cast<double>(N) * k <= view.gamma + 1e-9) K = cand;
    }
    out.guaranteed_K = K;
    if (out.src.good_set.size() < K)
        throw error(errc::config, "bucket_to_adversarial: realized good count below guarantee");
    return out;
}

AffineSource::AffineSource(BitVec shift, std::vector<BitVec> basis)
    : shift_(std::move(shift)), basis_(std::move(basis)) {
    for (const auto& b : basis_)
        if (b.size() != shift_.size())
            throw error(errc::dimension, "AffineSource: basis/shift length mismatch");
    if (!basis_.empty() && rref(shift_.size(), basis_).dim() != basis_.size())
        throw error(errc::parameter, "AffineSource: basis vectors not linearly independent");
}

bool AffineSource::bit_block() const {
    BitVec seen(shift_.size());
    std::size_t total = 0;
    for (const auto& v : basis_) {
        total += v.weight();
        seen ^= v;
    }
    // disjoint supports iff the XOR has as many ones as the weight sum
    return seen.weight() == total;
}

bool AffineSource::simple() const {
    if (!bit_block()) return false;
    std::size_t prev_max = 0;
    for (const auto& v : basis_) {
        auto supp = v.support();
        if (supp.empty()) return false;
        if (supp.front() <= prev_max) return false;
        prev_max = supp.back();
    }
    return true;
}

Dist AffineSource::exact_dist() const {
    if (n() > kMaxExactBits || dim() > kMaxExactBits)
        throw error(errc::size, "AffineSource::exact_dist: too large");
    Dist d;
    d.n = n();
    d.p.assign(std::size_t{1} << n(), 0.0);
    double w = 1.0 / static_cast<double>(std::size_t{1} << dim());
    BitVec cur = shift_;
    d.p[bitvec_to_index(cur)] += w;
    for (std::uint64_t g = 1; g < (std::uint64_t{1} << dim()); ++g) {
        cur ^= basis_[static_cast<std::size_t>(std::countr_zero(g))];
        d.p[bitvec_to_index(cur)] += w;
    }
    return d;
}

BitVec AffineSource::sample(std::mt19937_64& rng) const {
    BitVec x = shift_;
    for (const auto& v : basis_)
        if (rng() & 1) x ^= v;
    return x;
}

Dist MixtureDecomposition::mixture_dist(std::size_t n) const {
    Dist acc;
    acc.n = n;
    acc.p.assign(std::size_t{1} << n, 0.0);
    for (std::size_t i = 0; i < components.size(); ++i) {
        Dist cd = components[i].exact_dist();
        if (cd.n != n) throw error(errc::dimension, "mixture_dist: component length mismatch");
        for (std::size_t j = 0; j < cd.p.size(); ++j) acc.p[j] += weights[i] * cd.p[j];
    }
    return acc;
}

MixtureDecomposition flat_decompose_entropy1(const Dist& d) {
    d.validate();
    if (min_entropy(d) < 1.0 - 1e-12)
        throw error(errc::entropy, "flat_decompose_entropy1: min-entropy below 1");

    struct Entry {
        std::uint64_t idx;
        double mass;
    };
    std::vector<Entry> entries;
    double total = 0.0;
    for (std::size_t i = 0; i < d.p.size(); ++i) {
        if (d.p[i] > 0.0) {
            entries.push_back({i, d.p[i]});
            total += d.p[i];
        }
    }
    MixtureDecomposition out;
    std::size_t guard = 4 * entries.size() + 16;
    while (total > 1e-12 && entries.size() >= 2 && guard-- > 0) {
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            if (a.mass != b.mass) return a.mass > b.mass;
            return a.idx < b.idx;
        });
        double p2 = entries[1].mass;
        double p3 = entries.size() >= 3 ? entries[2].mass : 0.0;
        double lambda = std::min(2.0 * p2, total - 2.0 * p3);
        BitVec a = index_to_bitvec(entries[0].idx, d.n);
        BitVec b = index_to_bitvec(entries[1].idx, d.n);
        out.weights.push_back(lambda);
        out.components.push_back(lift_flat_to_affine(a, b));
        entries[0].mass -= lambda / 2.0;
        entries[1].mass -= lambda / 2.0;
        total -= lambda;
        entries.erase(std::remove_if(entries.begin(), entries.end(),
                                     [](const Entry& e) { return e.mass <= 1e-15; }),
                      entries.end());
    }
    if (total > 1e-9)
        throw error(errc::config, "flat_decompose_entropy1: peeling failed to terminate");
    out.residual = 0.0;
    return out;
}

AffineSource lift_flat_to_affine(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size()) throw error(errc::dimension, "lift_flat_to_affine: lengths differ");
    if (a == b) throw error(errc::degenerate, "lift_flat_to_affine: identical strings");
    BitVec v = a;
    v ^= b;
    return AffineSource(a, {v});
}

namespace {

BitVec concat_bits(const BitVec& a, const BitVec& b) {
    BitVec out(a.size() + b.size());
    for (std::size_t i = 1; i <= a.size(); ++i)
        if (a.get(i)) out.set(i);
    for (std::size_t i = 1; i <= b.size(); ++i)
        if (b.get(i)) out.set(a.size() + i);
    return out;
}

}  // namespace

AffineSource assemble_simple_bitblock(const std::vector<std::pair<BitVec, BitVec>>& blocks) {
    if (blocks.empty()) throw error(errc::parameter, "assemble_simple_bitblock: no blocks");
    std::size_t n = 0;
    for (const auto& [a, b] : blocks) {
        if (a.size() != b.size())
            throw error(errc::dimension, "assemble_simple_bitblock: pair lengths differ");
        if (a == b) throw error(errc::degenerate, "assemble_simple_bitblock: identical strings");
        n += a.size();
    }
    BitVec shift(n);
    std::vector<BitVec> basis;
    std::size_t offset = 0;
    for (const auto& [a, b] : blocks) {
        BitVec v(n);
        for (std::size_t i = 1; i <= a.size(); ++i) {
            if (a.get(i)) shift.set(offset + i);
            if (a.get(i) != b.get(i)) v.set(offset + i);
        }
        basis.push_back(std::move(v));
        offset += a.size();
    }
    AffineSource src(shift, basis);
    if (!src.simple())
        throw error(errc::config, "assemble_simple_bitblock: result not simple");
    return src;
}

BranchingProgram bitblock_to_bp(const AffineSource& a) {
    if (!a.simple()) throw error(errc::parameter, "bitblock_to_bp: simple flag not set");
    std::size_t n = a.n();
    // Per-coordinate block memberships.
    struct Span {
        std::size_t lo, hi;
        const BitVec* v;
    };
    std::vector<Span> spans;
    bool need_memory = false;
    for (const auto& v : a.basis()) {
        auto supp = v.support();
        spans.push_back({supp.front(), supp.back(), &v});
        if (supp.front() != supp.back()) need_memory = true;
    }
    BranchingProgram bp;
    bp.s = need_memory ? 1 : 0;
    bp.n = n;
    bp.tr.assign(n, {});
    unsigned w = bp.width();
    std::size_t span_idx = 0;
    for (std::size_t j = 1; j <= n; ++j) {
        while (span_idx < spans.size() && spans[span_idx].hi < j) ++span_idx;
        bool in_span = span_idx < spans.size() && spans[span_idx].lo <= j && j <= spans[span_idx].hi;
        std::size_t nodes = (j == 1) ? 1 : w;
        bp.tr[j - 1].assign(nodes, {});
        bool sj = a.shift().get(j);
        if (!in_span) {
            for (std::size_t q = 0; q < nodes; ++q)
                bp.tr[j - 1][q].push_back({Frac(1, 1), sj, 0});
            continue;
        }
        const Span& sp = spans[span_idx];
        if (j == sp.lo) {
            // branch on the fresh block bit; remember it iff the span continues
            unsigned keep0 = 0, keep1 = (sp.hi > sp.lo) ? 1u : 0u;
            bp.tr[j - 1][0].push_back({Frac(1, 2), sj, keep0});
            bp.tr[j - 1][0].push_back({Frac(1, 2), !sj, keep1});
            // other nodes unreachable at a span start; give them a stub loop
            for (std::size_t q = 1; q < nodes; ++q)
                bp.tr[j - 1][q].push_back({Frac(1, 1), sj, 0});
        } else {
            bool vj = sp.v->get(j);
            for (std::size_t q = 0; q < nodes; ++q) {
                bool bit = sj ^ (q == 1 && vj);
                unsigned next = (j == sp.hi) ? 0u : static_cast<unsigned>(q);
                bp.tr[j - 1][q].push_back({Frac(1, 1), bit, next});
            }
        }
    }
    bp.validate();
    return bp;
}

}  // namespace eds
