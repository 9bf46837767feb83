#include "ceqss/adversary.hpp"

#include <stdexcept>

namespace ceqss {

std::string strategy_name(Strategy s) {
    switch (s) {
    case Strategy::Honest:
        return "honest";
    case Strategy::MeasureEarly:
        return "measure-early";
    case Strategy::FabricateCertificate:
        return "fabricate-certificate";
    case Strategy::Absent:
        return "absent";
    }
    throw std::logic_error("strategy_name: unreachable");
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "honest") {
        return Strategy::Honest;
    }
    if (name == "measure-early") {
        return Strategy::MeasureEarly;
    }
    if (name == "fabricate-certificate") {
        return Strategy::FabricateCertificate;
    }
    if (name == "absent") {
        return Strategy::Absent;
    }
    throw std::invalid_argument("unknown strategy: " + name);
}

CertResponse apply_strategy(Strategy strategy, CDCiphertext& share, Rng& rng) {
    switch (strategy) {
    case Strategy::Honest:
        return CertResponse{cd_delete(share, rng)};
    case Strategy::MeasureEarly:
        cd_tamper_measure(share, rng);
        return CertResponse{cd_delete(share, rng)};
    case Strategy::FabricateCertificate:
        return CertResponse{DeletionCertificate{
            DigitString::random(static_cast<std::size_t>(share.length), share.radix, rng)}};
    case Strategy::Absent:
        return CertResponse{std::nullopt};
    }
    throw std::logic_error("apply_strategy: unreachable");
}

GhzResponse apply_strategy(Strategy strategy, GhzDeal& deal, std::size_t party, Rng& rng) {
    switch (strategy) {
    case Strategy::Honest:
        return GhzResponse{std::nullopt, true};
    case Strategy::MeasureEarly:
        return GhzResponse{cheat_measure_early(deal, {party}, rng), true};
    case Strategy::Absent:
        return GhzResponse{std::nullopt, false};
    case Strategy::FabricateCertificate:
        throw std::invalid_argument("apply_strategy: fabricate-certificate does not apply to the ghz scheme");
    }
    throw std::logic_error("apply_strategy: unreachable");
}

} // namespace ceqss
