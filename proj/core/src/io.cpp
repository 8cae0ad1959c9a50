#include "eds/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace eds {

Frac Frac::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Frac(std::stoull(s), 1);
        return Frac(std::stoull(s.substr(0, slash)), std::stoull(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw error(errc::io, "bad fraction: '" + s + "'");
    }
}

Frac Frac::from_double(double v) {
    if (v < 0.0 || !std::isfinite(v)) throw error(errc::parameter, "Frac::from_double: need finite v >= 0");
    if (v == 0.0) return Frac(0, 1);
    int e = 0;
    double m = std::frexp(v, &e);  // v = m * 2^e, m in [0.5, 1)
    std::uint64_t num = 0;
    int shift = 0;
    while (shift < 63 && m != std::floor(m)) {
        m *= 2.0;
        ++shift;
    }
    if (m != std::floor(m) || m > 9e18)
        throw error(errc::parameter, "Frac::from_double: not exactly representable");
    num = static_cast<std::uint64_t>(m);
    int den_exp = shift - e;
    if (den_exp < 0) {
        // integer value
        if (-den_exp > 62) throw error(errc::parameter, "Frac::from_double: too large");
        return Frac(num << -den_exp, 1);
    }
    if (den_exp > 62) throw error(errc::parameter, "Frac::from_double: denominator exceeds 2^62");
    return Frac(num, std::uint64_t{1} << den_exp);
}

namespace {

// Reads the next content line (skipping blanks and '#' comments).
bool next_line(std::istream& is, std::string& line) {
    while (std::getline(is, line)) {
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '#') continue;
        return true;
    }
    return false;
}

[[noreturn]] void bad(const std::string& what) { throw error(errc::io, what); }

}  // namespace

void write_design(std::ostream& os, const Design& d) {
    // Header carries the code identity only for a single pure BCH block.
    unsigned hm = 0, ht = 0;
    if (d.provenance.kind == Provenance::Kind::bch && d.provenance.blocks.size() == 1) {
        hm = d.provenance.blocks[0].m;
        ht = d.provenance.blocks[0].t;
    }
    os << "# eds design file\n";
    if (d.provenance.kind == Provenance::Kind::random_baseline) {
        os << "# provenance: random-baseline seed=" << d.provenance.seed << "\n";
    } else {
        os << "# provenance: bch blocks=";
        for (std::size_t i = 0; i < d.provenance.blocks.size(); ++i) {
            const auto& b = d.provenance.blocks[i];
            if (i) os << ",";
            os << b.offset << "+" << b.size << ":m" << b.m << ":t" << b.t;
            if (b.m >= 2) os << ":mod" << Gf2mField::table_modulus(b.m);
        }
        os << "\n";
        if (d.provenance.odd_reduced)
            os << "# provenance: odd-reduced merged_duplicates=" << d.provenance.merged_duplicates
               << "\n";
    }
    os << d.n << " " << d.r << " " << d.s << " " << hm << " " << ht << "\n";
    for (const auto& e : d.edges) {
        for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i];
        os << "\n";
    }
}

Design read_design(std::istream& is) {
    std::string line;
    if (!next_line(is, line)) bad("design file: missing header");
    std::istringstream hs(line);
    Design d;
    unsigned hm = 0, ht = 0;
    if (!(hs >> d.n >> d.r >> d.s >> hm >> ht)) bad("design file: bad header '" + line + "'");
    if (hm >= 2) {
        d.provenance.blocks.push_back({0, d.n + 1, hm, ht});
    }
    while (next_line(is, line)) {
        std::istringstream es(line);
        std::vector<std::size_t> e;
        std::size_t v;
        while (es >> v) e.push_back(v);
        if (e.size() != d.r) bad("design file: edge of size " + std::to_string(e.size()));
        d.edges.push_back(std::move(e));
    }
    return d;
}

void write_bp(std::ostream& os, const BranchingProgram& bp) {
    os << "# eds branching program\n";
    os << bp.s << " " << bp.n << "\n";
    for (std::size_t i = 0; i < bp.n; ++i) {
        for (std::size_t v = 0; v < bp.tr[i].size(); ++v) {
            if (bp.tr[i][v].empty()) continue;
            os << i << " " << v << " ->";
            for (const auto& e : bp.tr[i][v])
                os << " (" << e.prob.str() << "," << (e.bit ? 1 : 0) << "," << e.next << ")";
            os << "\n";
        }
    }
}

BranchingProgram read_bp(std::istream& is) {
    std::string line;
    if (!next_line(is, line)) bad("bp file: missing header");
    std::istringstream hs(line);
    BranchingProgram bp;
    if (!(hs >> bp.s >> bp.n)) bad("bp file: bad header '" + line + "'");
    if (bp.n < 1 || bp.n > (std::size_t{1} << 20)) bad("bp file: bad length");
    bp.tr.assign(bp.n, {});
    while (next_line(is, line)) {
        std::istringstream ls(line);
        std::size_t layer, node;
        std::string arrow;
        if (!(ls >> layer >> node >> arrow) || arrow != "->") bad("bp file: bad line '" + line + "'");
        if (layer >= bp.n) bad("bp file: layer out of range");
        unsigned max_nodes = layer == 0 ? 1 : bp.width();
        if (node >= max_nodes) bad("bp file: node out of range");
        if (bp.tr[layer].size() < max_nodes) bp.tr[layer].resize(layer == 0 ? 1 : bp.width());
        std::string tok;
        while (ls >> tok) {
            // (a/b,bit,next)
            if (tok.size() < 7 || tok.front() != '(' || tok.back() != ')')
                bad("bp file: bad edge token '" + tok + "'");
            std::string body = tok.substr(1, tok.size() - 2);
            auto c1 = body.find(',');
            auto c2 = body.find(',', c1 + 1);
            if (c1 == std::string::npos || c2 == std::string::npos)
                bad("bp file: bad edge token '" + tok + "'");
            BpEdge e;
            e.prob = Frac::parse(body.substr(0, c1));
            std::string bitstr = body.substr(c1 + 1, c2 - c1 - 1);
            if (bitstr != "0" && bitstr != "1") bad("bp file: bad bit '" + bitstr + "'");
            e.bit = bitstr == "1";
            e.next = static_cast<unsigned>(std::stoul(body.substr(c2 + 1)));
            bp.tr[layer][node].push_back(e);
        }
    }
    bp.validate();
    return bp;
}

void write_dist(std::ostream& os, const Dist& d) {
    os << "# eds distribution, " << d.n << " bits\n";
    for (std::size_t i = 0; i < d.p.size(); ++i) {
        if (d.p[i] == 0.0) continue;
        os << index_to_bitvec(i, d.n).to_string() << " " << Frac::from_double(d.p[i]).str() << "\n";
    }
}

Dist read_dist(std::istream& is) {
    std::string line;
    std::vector<std::pair<std::string, Frac>> rows;
    while (next_line(is, line)) {
        std::istringstream ls(line);
        std::string bits, frac;
        if (!(ls >> bits >> frac)) bad("dist file: bad line '" + line + "'");
        rows.emplace_back(bits, Frac::parse(frac));
    }
    if (rows.empty()) bad("dist file: empty");
    std::size_t n = rows[0].first.size();
    Dist d;
    d.n = n;
    d.p.assign(std::size_t{1} << n, 0.0);
    for (const auto& [bits, frac] : rows) {
        if (bits.size() != n) bad("dist file: mixed lengths");
        d.p[bitvec_to_index(BitVec::parse(bits))] += frac.value();
    }
    d.validate();
    return d;
}

void write_truth_table(std::ostream& os, const AffineCertificate& cert) {
    os << "# eds affine extractor certificate\n";
    os << cert.table.n << " " << cert.k << " " << cert.epsilon << " " << cert.seed << "\n";
    static const char* hex = "0123456789abcdef";
    std::size_t points = std::size_t{1} << cert.table.n;
    std::string out;
    for (std::size_t i = 0; i < points; i += 4) {
        unsigned nib = 0;
        for (std::size_t j = 0; j < 4 && i + j < points; ++j)
            nib |= static_cast<unsigned>(cert.table.get(i + j)) << j;
        out.push_back(hex[nib]);
    }
    os << out << "\n";
}

AffineCertificate read_truth_table(std::istream& is) {
    std::string line;
    if (!next_line(is, line)) bad("truth table file: missing header");
    std::istringstream hs(line);
    AffineCertificate cert;
    std::size_t n;
    if (!(hs >> n >> cert.k >> cert.epsilon >> cert.seed)) bad("truth table file: bad header");
    cert.table = TruthTable::make(n);
    if (!next_line(is, line)) bad("truth table file: missing table");
    std::size_t points = std::size_t{1} << n;
    if (line.size() != (points + 3) / 4) bad("truth table file: wrong table length");
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        unsigned nib;
        if (c >= '0' && c <= '9') nib = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') nib = static_cast<unsigned>(c - 'a' + 10);
        else bad("truth table file: bad hex");
        for (std::size_t j = 0; j < 4 && i * 4 + j < points; ++j)
            if ((nib >> j) & 1) cert.table.set(i * 4 + j, true);
    }
    return cert;
}

namespace {

std::string transcript_str(const FixingTranscript& tr) {
    std::string out;
    for (std::size_t r = 0; r < tr.index_sets.size(); ++r) {
        if (r) out += ";";
        for (std::size_t j = 0; j < tr.index_sets[r].size(); ++j) {
            if (j) out += ",";
            out += std::to_string(tr.index_sets[r][j]) + ":" +
                   std::to_string(tr.fixed_values[r][j]);
        }
    }
    return out;
}

struct ParsedLeaf {
    Frac prob;
    int case_label = 0;
    std::vector<std::size_t> layers;
    std::vector<unsigned> values;
    std::vector<std::vector<unsigned>> rounds_values;  // grouped per round
};

ParsedLeaf parse_leaf_line(const std::string& line) {
    std::istringstream ls(line);
    std::string kw, prob, casekw, fixkw, fixings;
    int case_label;
    ParsedLeaf leaf;
    if (!(ls >> kw >> prob >> casekw >> case_label >> fixkw)) bad("dump: bad leaf line '" + line + "'");
    if (kw != "leaf" || casekw != "case" || fixkw != "fixings") bad("dump: bad leaf line '" + line + "'");
    leaf.prob = Frac::parse(prob);
    leaf.case_label = case_label;
    if (!(ls >> fixings)) fixings = "";
    std::istringstream fs(fixings);
    std::string round;
    while (std::getline(fs, round, ';')) {
        std::istringstream rs(round);
        std::string pair;
        std::vector<unsigned> round_vals;
        while (std::getline(rs, pair, ',')) {
            auto colon = pair.find(':');
            if (colon == std::string::npos) bad("dump: bad fixing '" + pair + "'");
            leaf.layers.push_back(std::stoull(pair.substr(0, colon)));
            unsigned v = static_cast<unsigned>(std::stoul(pair.substr(colon + 1)));
            leaf.values.push_back(v);
            round_vals.push_back(v);
        }
        leaf.rounds_values.push_back(std::move(round_vals));
    }
    return leaf;
}

}  // namespace

void write_decomposition_dump(std::ostream& os, const BranchingProgram& bp,
                              const ReductionParams& p, const BitblockDecomposition& dec,
                              const std::vector<FixingLeaf>& leaves) {
    os << "# eds decomposition dump\n";
    os << "params " << p.n << " " << p.k << " " << p.s << " " << p.t << " " << p.eps << " "
       << p.gamma << "\n";
    os << "bp-begin\n";
    write_bp(os, bp);
    os << "bp-end\n";
    for (const auto& leaf : leaves) {
        os << "leaf " << Frac::from_double(leaf.probability).str() << " case "
           << leaf.transcript.case_label << " fixings " << transcript_str(leaf.transcript) << "\n";
    }
    os << "residual " << Frac::from_double(dec.mixture.residual).str() << "\n";
    os << "components " << dec.mixture.components.size() << "\n";
    for (std::size_t i = 0; i < dec.mixture.components.size(); ++i) {
        const auto& c = dec.mixture.components[i];
        os << "component " << Frac::from_double(dec.mixture.weights[i]).str() << " shift "
           << c.shift().to_string() << " basis ";
        for (std::size_t b = 0; b < c.basis().size(); ++b)
            os << (b ? "," : "") << c.basis()[b].to_string();
        os << "\n";
    }
}

DumpVerifyResult verify_decomposition_dump(std::istream& is) {
    DumpVerifyResult res;
    auto fail = [&](const std::string& msg) {
        res.ok = false;
        res.failures.push_back(msg);
    };

    std::string line;
    if (!next_line(is, line)) bad("dump: missing params");
    std::istringstream ps(line);
    std::string kw;
    ReductionParams p;
    if (!(ps >> kw >> p.n >> p.k >> p.s >> p.t >> p.eps >> p.gamma) || kw != "params")
        bad("dump: bad params line");

    if (!next_line(is, line) || line != "bp-begin") bad("dump: missing bp-begin");
    std::string bp_text;
    while (std::getline(is, line)) {
        if (line == "bp-end") break;
        bp_text += line + "\n";
    }
    std::istringstream bs(bp_text);
    BranchingProgram bp = read_bp(bs);

    std::vector<ParsedLeaf> leaves;
    double residual = -1.0;
    std::vector<double> comp_weights;
    std::vector<AffineSource> comps;
    while (next_line(is, line)) {
        if (line.rfind("leaf ", 0) == 0) {
            leaves.push_back(parse_leaf_line(line));
        } else if (line.rfind("residual ", 0) == 0) {
            residual = Frac::parse(line.substr(9)).value();
        } else if (line.rfind("components ", 0) == 0) {
            // count line; informative only
        } else if (line.rfind("component ", 0) == 0) {
            std::istringstream cs(line);
            std::string w, shift_kw, shift_bits, basis_kw, basis_bits;
            cs >> kw >> w >> shift_kw >> shift_bits >> basis_kw;
            if (shift_kw != "shift" || basis_kw != "basis") bad("dump: bad component line");
            cs >> basis_bits;
            std::vector<BitVec> basis;
            std::istringstream bb(basis_bits);
            std::string one;
            while (std::getline(bb, one, ',')) basis.push_back(BitVec::parse(one));
            comp_weights.push_back(Frac::parse(w).value());
            comps.emplace_back(BitVec::parse(shift_bits), std::move(basis));
        } else {
            bad("dump: unexpected line '" + line + "'");
        }
    }
    if (residual < 0.0) bad("dump: missing residual line");

    // (a) leaf probabilities sum to 1
    double total = 0.0;
    for (const auto& l : leaves) total += l.prob.value();
    if (std::abs(total - 1.0) > 1e-9) fail("leaf probabilities sum to " + std::to_string(total));

    // (b) transcript prefix-freeness over the fixed value strings
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        for (std::size_t j = 0; j < leaves.size(); ++j) {
            if (i == j) continue;
            const auto& a = leaves[i].values;
            const auto& b = leaves[j].values;
            if (a.size() < b.size() && std::equal(a.begin(), a.end(), b.begin()))
                fail("transcript " + std::to_string(i) + " is a prefix of " + std::to_string(j));
        }
    }

    // (c) positive-probability transcript count within the support bound
    std::size_t positive = 0;
    for (const auto& l : leaves)
        if (l.prob.num > 0) ++positive;
    double bound = std::pow(2.0, (static_cast<double>(p.t) + 2.0) * p.s * static_cast<double>(p.gamma));
    if (static_cast<double>(positive) > bound)
        fail("transcript count " + std::to_string(positive) + " exceeds 2^((t+2)sGamma)");

    // (d) component weights + residual account for all probability
    double wsum = residual;
    for (double w : comp_weights) wsum += w;
    if (std::abs(wsum - 1.0) > 1e-9) fail("component weights + residual sum to " + std::to_string(wsum));

    // (e) component structure: simple bit-block with dim = gamma
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (!comps[i].simple()) fail("component " + std::to_string(i) + " is not simple bit-block");
        if (comps[i].dim() != p.gamma)
            fail("component " + std::to_string(i) + " has min-entropy " +
                 std::to_string(comps[i].dim()) + " != Gamma");
    }

    // (f) reconstruction: leaf-conditional mixture equals the exact distribution,
    // and the affine mixture matches the case-1 part.
    if (bp.n <= 20) {
        Dist exact = bp_exact_dist(bp);
        std::vector<double> recon(exact.p.size(), 0.0);
        std::vector<double> case1(exact.p.size(), 0.0);
        for (const auto& l : leaves) {
            if (l.prob.num == 0) continue;
            auto [prob, cond] = condition_on_layers(bp, l.layers, l.values);
            if (std::abs(prob - l.prob.value()) > 1e-9)
                fail("leaf probability mismatch: dump says " + l.prob.str());
            if (prob <= 0.0) continue;
            for (std::size_t i = 0; i < recon.size(); ++i) {
                recon[i] += l.prob.value() * cond.p[i];
                if (l.case_label == 1) case1[i] += l.prob.value() * cond.p[i];
            }
        }
        double err = 0.0;
        for (std::size_t i = 0; i < recon.size(); ++i) err += std::abs(recon[i] - exact.p[i]);
        if (err > 1e-9) fail("total-probability reconstruction off by " + std::to_string(err));

        std::vector<double> mix(exact.p.size(), 0.0);
        for (std::size_t c = 0; c < comps.size(); ++c) {
            Dist cd = comps[c].exact_dist();
            for (std::size_t i = 0; i < mix.size(); ++i) mix[i] += comp_weights[c] * cd.p[i];
        }
        double err2 = 0.0;
        for (std::size_t i = 0; i < mix.size(); ++i) err2 += std::abs(mix[i] - case1[i]);
        if (err2 > 1e-9) fail("affine mixture does not reconstruct the case-1 mass, off by " +
                              std::to_string(err2));
    }
    return res;
}

std::string slurp_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw error(errc::io, "cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void spit_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw error(errc::io, "cannot write " + path);
    f << content;
}

}  // namespace eds
