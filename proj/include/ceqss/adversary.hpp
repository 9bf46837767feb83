// adversary.hpp
// Closed catalogue of participant behaviors shared by both schemes, so
// experiments can name strategies declaratively. The catalogue covers
// exactly the behaviors the protocols analyze; arbitrary-unitary attacks
// are out of scope.

#pragma once

#include <optional>
#include <string>

#include "ceqss/cdpke.hpp"
#include "ceqss/ghz.hpp"
#include "ceqss/rng.hpp"

namespace ceqss {

enum class Strategy { Honest, MeasureEarly, FabricateCertificate, Absent };

// Names used verbatim in config files and reports.
std::string strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

// A party's answer to a deletion request in the certified-deletion schemes.
struct CertResponse {
    std::optional<DeletionCertificate> certificate;  // empty on refusal
};

// Dispatch for the certified-deletion schemes: honest parties measure in
// the Fourier basis; early measurers do the computational measurement first
// and then follow the protocol on the collapsed register; fabricators skip
// deletion and answer with uniform digits; absentees refuse.
CertResponse apply_strategy(Strategy strategy, CDCiphertext& share, Rng& rng);

// A party's pre-seal behavior in the entangled-state scheme.
struct GhzResponse {
    std::optional<DigitString> early_outcome;  // bits observed by an early measurer
    bool returns_share = true;                 // false means the seal check cannot run
};

// FabricateCertificate has no meaning here (there is no certificate to
// forge); asking for it is a strategy/scheme mismatch.
GhzResponse apply_strategy(Strategy strategy, GhzDeal& deal, std::size_t party, Rng& rng);

} // namespace ceqss
