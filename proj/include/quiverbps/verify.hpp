#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quiverbps/kac.hpp"
#include "quiverbps/quiver.hpp"

namespace qbps {

// Cap used by the CLI and the acceptance suite when the user supplies none.
// Chosen above 3^18 so the largest bundled enumeration cell (two loops,
// dimension 3, p = 3) runs without flags; the library default stays small.
inline constexpr long long kDefaultCliCap = 450'000'000;

struct VerifyOptions {
    std::string corpus_dir;
    // Restricts every degree loop of a check to d <= box whenever the box rank
    // matches the check's quiver; checks on other ranks are unaffected.
    std::optional<DimVector> box;
    CountingConfig counting;

    VerifyOptions() { counting.cap = kDefaultCliCap; }
};

struct VerificationCheck {
    int criterion = 0;  // 1..9, the acceptance numbering
    std::string name;
    bool pass = false;
    std::string expected;
    std::string computed;
    double seconds = 0.0;
};

struct VerificationOutcome {
    std::vector<VerificationCheck> checks;
    bool all_pass() const;
};

// suite: all | kac | lie | bps.  Individual check failures (including thrown
// engine errors) are recorded, never propagated.
VerificationOutcome run_verification(const std::string& suite, const VerifyOptions& opt);

// One line per check: "[PASS] 3 vanishing-beyond-arrows/kronecker (0.01s)",
// failures followed by indented expected/computed lines, then a total.
std::string render_verification(const VerificationOutcome& outcome);

// One line per acceptance criterion present in the outcome, aggregated over
// its checks, with the slowest-path elapsed total.
std::string render_criterion_summary(const VerificationOutcome& outcome);

}  // namespace qbps
