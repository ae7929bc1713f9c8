#pragma once

#include <iosfwd>

#include "genring/arith.hpp"
#include "genring/plane.hpp"

namespace genring {

// name[:arg(,arg)*] with arg = key=value or value; FM takes the rest of the text as a path.
struct RingSpec {
    std::string name;
    std::vector<std::pair<std::string, std::string>> args;  // key empty for positional values
};
RingSpec parse_ring_spec(std::string_view text);

struct RingHandle {
    RingPtr ring;
    std::shared_ptr<IdealTheory> ideals;  // null when the ring has no ideal model here
    bool tree = false;                    // Δ or Υ
};
// Throws ParseError on unknown names or bad arguments.
RingHandle make_ring(const RingSpec& spec, int ideal_bound = 2);
// An element of A_[1] from a short token: an integer or rational for G-rings, a monoid word for F[M].
Element parse_scalar(const Ring& R, std::string_view token);

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2, kUnknown = 3 };

// The command-line entry point; writes reports to out and diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace genring
