#include "eds/design.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <unordered_map>

namespace eds {

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // result * (n - k + i) / i, capped to avoid overflow
        if (result > cap) return cap + 1;
        __uint128_t next = static_cast<__uint128_t>(result) * (n - k + i) / i;
        if (next > cap) return cap + 1;
        result = static_cast<std::uint64_t>(next);
    }
    return result;
}

std::vector<BitVec> codeword_slice(const BchCode& code, unsigned r) {
    if (r < 1 || r > code.n) throw error(errc::parameter, "codeword_slice: require 1 <= r <= n");
    constexpr std::uint64_t kBudget = 1'000'000'000;
    std::uint64_t count = binomial_capped(code.n, r, kBudget);
    if (count > kBudget) {
        throw error(errc::size, "codeword_slice: (n choose r) exceeds 10^9 with n=" +
                                    std::to_string(code.n) + ", r=" + std::to_string(r));
    }
    std::vector<BitVec> out;
    for_each_weight_r_word(code, r, [&](const std::vector<std::size_t>& supp, bool member) {
        if (member) out.push_back(BitVec::from_support(code.n, supp));
    });
    return out;
}

namespace {

// Weight-r slice of one block, emitted as global edges. A block of size 2^i
// hosts a code of length 2^i - 1; the last vertex stays isolated. t = 0 means
// the full space (no syndrome constraint), which arises when s = r.
void emit_block_edges(std::size_t offset, std::size_t block_size, unsigned r, unsigned t,
                      std::vector<std::vector<std::size_t>>& edges, DesignBlock& blk) {
    std::size_t code_len = block_size - 1;  // block_size = 2^i
    unsigned m = 0;
    {
        std::size_t p = block_size;
        while (p > 1) {
            p >>= 1;
            ++m;
        }
    }
    blk.m = 0;
    blk.t = t;
    if (code_len < r) return;  // too short to host any weight-r word

    auto push_edge = [&](const std::vector<std::size_t>& supp) {
        std::vector<std::size_t> e;
        e.reserve(supp.size());
        for (auto p : supp) e.push_back(offset + p);
        edges.push_back(std::move(e));
    };

    if (t == 0) {
        // s = r: every weight-r word qualifies.
        blk.m = m;
        std::vector<std::size_t> idx(r);
        for (unsigned i = 0; i < r; ++i) idx[i] = i + 1;
        while (true) {
            push_edge(idx);
            // next combination
            int i = static_cast<int>(r) - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == code_len - (r - 1 - static_cast<std::size_t>(i)))
                --i;
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
            for (auto j = static_cast<std::size_t>(i) + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
        }
        return;
    }

    if (m < 2) return;                                     // no GF(2^m) field this small
    if (static_cast<std::size_t>(m) * t >= code_len) return;  // code would be trivial
    BchCode code(m, t);
    blk.m = m;
    for_each_weight_r_word(code, r, [&](const std::vector<std::size_t>& supp, bool member) {
        if (member) push_edge(supp);
    });
}

Design build_design_even(std::size_t n, unsigned r, unsigned s) {
    Design d;
    d.n = n;
    d.r = r;
    d.s = s;
    d.provenance.kind = Provenance::Kind::bch;
    unsigned t = r - s;

    // n = 2^m - 1: one code block, no isolated vertex. n = 2^m and general n:
    // blocks of size 2^i in descending order, each with one isolated vertex.
    bool pow2m1 = ((n + 1) & n) == 0;  // n + 1 is a power of two
    if (pow2m1) {
        DesignBlock blk{0, n + 1, 0, t};
        emit_block_edges(0, n + 1, r, t, d.edges, blk);
        blk.size = n;  // no isolated vertex in this form
        d.provenance.blocks.push_back(blk);
    } else {
        std::size_t offset = 0;
        for (int i = 63; i >= 0; --i) {
            std::size_t p = std::size_t{1} << i;
            if ((n & p) == 0) continue;
            DesignBlock blk{offset, p, 0, t};
            if (p >= 2) {
                emit_block_edges(offset, p, r, t, d.edges, blk);
            }
            d.provenance.blocks.push_back(blk);
            offset += p;
        }
    }
    std::sort(d.edges.begin(), d.edges.end());
    return d;
}

}  // namespace

Design build_design(std::size_t n, unsigned r, unsigned s) {
    if (r < 2 || r > n) throw error(errc::parameter, "build_design: require 2 <= r <= n");
    if (s < 1 || s > r) throw error(errc::parameter, "build_design: require 1 <= s <= r");
    if (r % 2 == 0) return build_design_even(n, r, s);

    // Odd r: build an (n, r+1, s)-design, delete the lexicographically smallest
    // vertex of each edge, merge duplicates.
    if (r + 1 > n) throw error(errc::parameter, "build_design: odd r needs r + 1 <= n");
    Design base = build_design_even(n, r + 1, s);
    Design d;
    d.n = n;
    d.r = r;
    d.s = s;
    d.provenance = base.provenance;
    d.provenance.odd_reduced = true;
    for (auto& e : base.edges) {
        d.edges.emplace_back(e.begin() + 1, e.end());
    }
    std::sort(d.edges.begin(), d.edges.end());
    auto last = std::unique(d.edges.begin(), d.edges.end());
    d.provenance.merged_duplicates =
        static_cast<std::size_t>(std::distance(last, d.edges.end()));
    d.edges.erase(last, d.edges.end());
    return d;
}

namespace {

std::vector<BitVec> edge_indicators(const Design& d) {
    std::vector<BitVec> out;
    out.reserve(d.edges.size());
    for (const auto& e : d.edges) out.push_back(BitVec::from_support(d.n, e));
    return out;
}

std::size_t intersection_size(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::size_t i = 0, j = 0, c = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) ++c, ++i, ++j;
        else if (a[i] < b[j]) ++i;
        else ++j;
    }
    return c;
}

}  // namespace

VerifyResult verify_design_report(const Design& d) {
    VerifyResult res;
    // Uniformity and sortedness.
    for (std::size_t i = 0; i < d.edges.size(); ++i) {
        const auto& e = d.edges[i];
        if (e.size() != d.r) {
            res.ok = false;
            res.reason = "edge " + std::to_string(i) + " has size " + std::to_string(e.size());
            return res;
        }
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] < 1 || e[j] > d.n || (j > 0 && e[j] <= e[j - 1])) {
                res.ok = false;
                res.reason = "edge " + std::to_string(i) + " is not a sorted subset of [n]";
                return res;
            }
        }
        if (i > 0 && !(d.edges[i - 1] < e)) {
            res.ok = false;
            res.reason = "edges not in sorted order or duplicated at index " + std::to_string(i);
            return res;
        }
    }

    std::size_t E = d.edges.size();
    // Full quadratic scan checks the set view and the code view independently.
    bool quadratic = E <= 1 || E * E * d.r <= 4'000'000'000ULL;
    if (quadratic) {
        res.pairwise_scanned = true;
        auto ind = edge_indicators(d);
        for (std::size_t i = 0; i < E; ++i) {
            for (std::size_t j = i + 1; j < E; ++j) {
                std::size_t inter = intersection_size(d.edges[i], d.edges[j]);
                bool set_ok = inter < d.s;
                std::size_t dist = hamming_distance(ind[i], ind[j]);
                bool code_ok = dist > 2 * (d.r - d.s);
                if (set_ok != code_ok) {
                    // Impossible for r-uniform edges; kept as a hard internal check.
                    throw error(errc::config, "verify_design: set view and code view disagree");
                }
                if (!set_ok) {
                    res.ok = false;
                    res.bad_pair = {i, j};
                    res.reason = "edges " + std::to_string(i) + " and " + std::to_string(j) +
                                 " share " + std::to_string(inter) + " >= s vertices";
                    return res;
                }
            }
        }
        return res;
    }

    // At scale: two edges intersect in >= s vertices iff they share an
    // s-subset. Bucket every s-subset of every edge.
    std::unordered_map<std::uint64_t, std::size_t> seen;
    seen.reserve(E * 4);
    std::vector<std::size_t> comb(d.s);
    for (std::size_t ei = 0; ei < E; ++ei) {
        const auto& e = d.edges[ei];
        // enumerate s-subsets of e
        for (std::size_t i = 0; i < d.s; ++i) comb[i] = i;
        while (true) {
            std::uint64_t key = 0;
            for (std::size_t i = 0; i < d.s; ++i) key = key * (d.n + 1) + e[comb[i]];
            auto [it, inserted] = seen.emplace(key, ei);
            if (!inserted && it->second != ei) {
                std::size_t other = it->second;
                std::size_t inter = intersection_size(d.edges[other], e);
                std::size_t dist = 2 * d.r - 2 * inter;
                if (!(inter < d.s) != !(dist <= 2 * (d.r - d.s))) {
                    throw error(errc::config, "verify_design: set view and code view disagree");
                }
                res.ok = false;
                res.bad_pair = {other, ei};
                res.reason = "edges " + std::to_string(other) + " and " + std::to_string(ei) +
                             " share " + std::to_string(inter) + " >= s vertices";
                return res;
            }
            // next s-combination of indices into e
            std::size_t i = d.s;
            while (i > 0 && comb[i - 1] == d.r - (d.s - i) - 1) --i;
            if (i == 0) break;
            ++comb[i - 1];
            for (std::size_t j = i; j < d.s; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    return res;
}

bool verify_design(const Design& d) { return verify_design_report(d).ok; }

namespace {

struct AlphaSolver {
    std::size_t n;
    std::vector<std::uint64_t> edges;  // bitmasks, n <= 64
    std::uint64_t best_mask = 0;
    std::size_t best = 0;
    std::uint64_t nodes = 0;
    std::chrono::steady_clock::time_point deadline;
    bool timed_out = false;

    // Greedy packing of pairwise-disjoint alive edges: each costs at least one
    // vertex from the candidate set.
    std::size_t disjoint_penalty(std::uint64_t avail, std::uint64_t chosen) const {
        std::uint64_t used = 0;
        std::size_t count = 0;
        std::uint64_t closed = chosen | avail;
        for (auto e : edges) {
            if ((e & ~closed) != 0) continue;  // already broken
            if ((e & used) != 0) continue;
            if ((e & avail) == 0) continue;
            used |= e;
            ++count;
        }
        return count;
    }

    void run(std::uint64_t chosen, std::uint64_t avail, std::size_t chosen_count) {
        if ((++nodes & 0xFFF) == 0 && std::chrono::steady_clock::now() > deadline) {
            timed_out = true;
        }
        if (timed_out) return;

        // Find an alive edge fully inside chosen|avail with undecided vertices.
        std::uint64_t closed = chosen | avail;
        std::uint64_t pick_edge = 0;
        for (auto e : edges) {
            if ((e & ~closed) != 0) continue;
            std::uint64_t und = e & avail;
            if (und == 0) return;  // edge fully chosen: infeasible branch
            pick_edge = pick_edge == 0 ? e : pick_edge;
        }
        std::size_t avail_count = static_cast<std::size_t>(std::popcount(avail));
        if (pick_edge == 0) {
            // No alive edge: take everything.
            std::size_t total = chosen_count + avail_count;
            if (total > best) {
                best = total;
                best_mask = chosen | avail;
            }
            return;
        }
        if (chosen_count + avail_count <= best) return;
        if (chosen_count + avail_count - disjoint_penalty(avail, chosen) <= best) return;

        // Branch on the maximum-degree undecided vertex of the picked edge,
        // ties to the lowest index.
        std::uint64_t und = pick_edge & avail;
        int branch_v = -1;
        std::size_t branch_deg = 0;
        std::uint64_t u = und;
        while (u != 0) {
            int v = std::countr_zero(u);
            u &= u - 1;
            std::uint64_t vb = std::uint64_t{1} << v;
            std::size_t deg = 0;
            for (auto e : edges) {
                if ((e & ~closed) != 0) continue;
                if (e & vb) ++deg;
            }
            if (branch_v < 0 || deg > branch_deg) {
                branch_v = v;
                branch_deg = deg;
            }
        }
        std::uint64_t vb = std::uint64_t{1} << branch_v;
        run(chosen, avail & ~vb, chosen_count);        // v excluded
        run(chosen | vb, avail & ~vb, chosen_count + 1);  // v included
    }
};

}  // namespace

AlphaReport independence_number_exact(const Design& d, std::int64_t budget_ms) {
    if (d.n > 64) throw error(errc::size, "independence_number_exact: n > 64");
    AlphaReport rep;
    rep.bound_value = std::pow(static_cast<double>(d.n),
                               2.0 * (static_cast<double>(d.r) - d.s) / static_cast<double>(d.r));
    AlphaSolver solver;
    solver.n = d.n;
    for (const auto& e : d.edges) {
        std::uint64_t mask = 0;
        for (auto v : e) mask |= std::uint64_t{1} << (v - 1);
        solver.edges.push_back(mask);
    }
    solver.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(budget_ms);
    std::uint64_t all = d.n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << d.n) - 1;
    solver.run(0, all, 0);

    rep.alpha = solver.best;
    rep.exact = !solver.timed_out;
    rep.nodes_visited = solver.nodes;
    rep.ratio = rep.bound_value > 0 ? static_cast<double>(rep.alpha) / rep.bound_value : 0.0;
    if (rep.exact) {
        for (std::size_t v = 1; v <= d.n; ++v)
            if (solver.best_mask & (std::uint64_t{1} << (v - 1))) rep.witness.push_back(v);
    }
    return rep;
}

bool subcube_avoidance_check(const Design& d, std::size_t ell) {
    if (ell > d.n) throw error(errc::parameter, "subcube_avoidance_check: ell > n");
    constexpr std::uint64_t kBudget = 100'000'000;
    if (binomial_capped(d.n, ell, kBudget) > kBudget)
        throw error(errc::size, "subcube_avoidance_check: (n choose ell) exceeds budget");
    if (d.n > 64) throw error(errc::size, "subcube_avoidance_check: n > 64");
    if (ell == 0) return false;  // the dim-0 subcube {0} never contains an edge indicator
    std::vector<std::uint64_t> edges;
    edges.reserve(d.edges.size());
    for (const auto& e : d.edges) {
        std::uint64_t mask = 0;
        for (auto v : e) mask |= std::uint64_t{1} << (v - 1);
        edges.push_back(mask);
    }
    // Every ell-subset S of [n] must contain some edge.
    std::vector<std::size_t> comb(ell);
    for (std::size_t i = 0; i < ell; ++i) comb[i] = i;
    while (true) {
        std::uint64_t smask = 0;
        for (auto c : comb) smask |= std::uint64_t{1} << c;
        bool hit = false;
        for (auto e : edges) {
            if ((e & ~smask) == 0) {
                hit = true;
                break;
            }
        }
        if (!hit) return false;
        std::size_t i = ell;
        while (i > 0 && comb[i - 1] == d.n - (ell - i) - 1) --i;
        if (i == 0) break;
        ++comb[i - 1];
        for (std::size_t j = i; j < ell; ++j) comb[j] = comb[j - 1] + 1;
    }
    return true;
}

Design random_design_baseline(std::size_t n, unsigned r, unsigned s, std::uint64_t seed) {
    if (r < 2) throw error(errc::parameter, "random_design_baseline: require r >= 2");
    if (s < 1 || s > r) throw error(errc::parameter, "random_design_baseline: require 1 <= s <= r");
    Design d;
    d.n = n;
    d.r = r;
    d.s = s;
    d.provenance.kind = Provenance::Kind::random_baseline;
    d.provenance.seed = seed;
    if (n < r) return d;

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i + 1;
    std::vector<std::uint64_t> kept_masks;
    constexpr unsigned kStall = 2000;
    unsigned stall = 0;
    bool wide = n > 64;
    std::vector<std::set<std::size_t>> kept_sets;  // used when n > 64
    while (stall < kStall) {
        // partial Fisher-Yates draw of r distinct vertices
        for (std::size_t i = 0; i < r; ++i) {
            std::uniform_int_distribution<std::size_t> dist(i, n - 1);
            std::swap(pool[i], pool[dist(rng)]);
        }
        std::vector<std::size_t> cand(pool.begin(), pool.begin() + r);
        std::sort(cand.begin(), cand.end());
        bool ok = true;
        if (!wide) {
            std::uint64_t mask = 0;
            for (auto v : cand) mask |= std::uint64_t{1} << (v - 1);
            for (auto km : kept_masks) {
                if (static_cast<unsigned>(std::popcount(km & mask)) >= s) {
                    ok = false;
                    break;
                }
            }
            if (ok) kept_masks.push_back(mask);
        } else {
            std::set<std::size_t> cs(cand.begin(), cand.end());
            for (const auto& ks : kept_sets) {
                std::size_t inter = 0;
                for (auto v : cs)
                    if (ks.count(v)) ++inter;
                if (inter >= s) {
                    ok = false;
                    break;
                }
            }
            if (ok) kept_sets.push_back(std::move(cs));
        }
        if (ok) {
            d.edges.push_back(std::move(cand));
            stall = 0;
        } else {
            ++stall;
        }
    }
    std::sort(d.edges.begin(), d.edges.end());
    d.edges.erase(std::unique(d.edges.begin(), d.edges.end()), d.edges.end());
    return d;
}

}  // namespace eds
