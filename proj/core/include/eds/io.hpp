#pragma once

// Text file formats. All probabilities are exact fractions "a/b"; bit strings
// are '0'/'1' with coordinate 1 leftmost. Writers and parsers round-trip
// byte-for-byte.

#include <iosfwd>
#include <string>

#include "eds/design.hpp"
#include "eds/extractor.hpp"
#include "eds/reduction.hpp"
#include "eds/source.hpp"

namespace eds {

void write_design(std::ostream& os, const Design& d);
Design read_design(std::istream& is);

void write_bp(std::ostream& os, const BranchingProgram& bp);
BranchingProgram read_bp(std::istream& is);

void write_dist(std::ostream& os, const Dist& d);
Dist read_dist(std::istream& is);

void write_truth_table(std::ostream& os, const AffineCertificate& cert);
AffineCertificate read_truth_table(std::istream& is);

// Decomposition dump: parameters, the program itself, one line per leaf, the
// residual, and every simple bit-block component. Self-contained so that the
// verifier can re-run the invariant checks from the dump alone.
void write_decomposition_dump(std::ostream& os, const BranchingProgram& bp,
                              const ReductionParams& p, const BitblockDecomposition& dec,
                              const std::vector<FixingLeaf>& leaves);

struct DumpVerifyResult {
    bool ok = true;
    std::vector<std::string> failures;
};

DumpVerifyResult verify_decomposition_dump(std::istream& is);

// File helpers.
std::string slurp_file(const std::string& path);
void spit_file(const std::string& path, const std::string& content);

}  // namespace eds
