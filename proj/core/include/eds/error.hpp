#pragma once

#include <stdexcept>
#include <string>

namespace eds {

// Structured error kinds. The CLI maps verification failures to exit 1 and
// everything else here to exit 2.
enum class errc {
    dimension,       // mismatched lengths / ambient dimensions
    index,           // coordinate out of range
    parameter,       // invalid or non-integral parameter combination
    size,            // enumeration gate exceeded
    config,          // inconsistent objects wired together
    entropy,         // entropy precondition not met
    degenerate,      // degenerate input (e.g. identical pair)
    classification,  // operation applied to the wrong case label
    io,              // file format violation
};

class error : public std::runtime_error {
  public:
    error(errc kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    errc kind() const { return kind_; }

  private:
    errc kind_;
};

inline const char* errc_name(errc k) {
    switch (k) {
        case errc::dimension: return "dimension";
        case errc::index: return "index";
        case errc::parameter: return "parameter";
        case errc::size: return "size";
        case errc::config: return "config";
        case errc::entropy: return "entropy";
        case errc::degenerate: return "degenerate";
        case errc::classification: return "classification";
        case errc::io: return "io";
    }
    return "unknown";
}

}  // namespace eds
