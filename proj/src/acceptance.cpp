#include "ceqss/acceptance.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>
#include <vector>

#include "ceqss/cdscheme.hpp"
#include "ceqss/experiment.hpp"

namespace ceqss {

namespace {

// chi-square critical values at alpha = 0.001
constexpr double kChi2Crit1 = 10.8276;
constexpr double kChi2Crit5 = 20.5150;

bool in_band(double rate, double p, std::int64_t trials) {
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    return std::abs(rate - p) <= 3.0 * sigma;
}

struct Line {
    bool pass = false;
    std::string text;
};

ExperimentConfig base_config(SchemeKind scheme, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.scheme = scheme;
    cfg.seed = seed;
    if (scheme == SchemeKind::Cd) {
        cfg.n = 5;
    }
    if (scheme == SchemeKind::Threshold) {
        cfg.n = 5;
        cfg.d = 7;
        cfg.t = 3;
        cfg.m = 4;
    }
    return cfg;
}

// --- criterion 1: ghz full-quorum reconstruction is exact -----------------

Line criterion_ghz_full_quorum(Rng& seeds) {
    ExperimentConfig cfg = base_config(SchemeKind::Ghz, seeds.next_u64());
    cfg.phases = Phases::Reconstruct;
    cfg.trials = 20000;
    const auto report = run_experiment(cfg);
    const auto& metric = report.metrics.at("reconstruction_success");
    std::ostringstream text;
    text << "ghz full-quorum reconstruction: " << metric.count << "/" << metric.trials
         << " successes (exact)";
    return Line{metric.count == metric.trials, text.str()};
}

// --- criterion 2: ghz 2^-k decay, Monte Carlo bands + exhaustive -----------

// Enumerates every measurement branch (x or x-bar) and every guess over the
// absent positions, checking success through the real decoder. Exactly 2 of
// the 2^(k+1) equally likely atoms must succeed for the 2^-k claim to hold.
bool ghz_decay_exhaustive() {
    for (int n = 2; n <= 6; ++n) {
        for (std::uint64_t s = 0; s < (1ull << (n - 1)); ++s) {
            const Secret secret{DigitString::from_index(s, static_cast<std::size_t>(n) - 1, 2)};
            const DigitString codeword = encode_secret(secret, 0);
            const DigitString branches[2] = {codeword, codeword.negated()};
            for (int k = 1; k <= n - 2; ++k) {
                for (std::uint64_t absent = 0; absent < (1ull << n); ++absent) {
                    if (std::popcount(absent) != k) {
                        continue;
                    }
                    int successes = 0;
                    for (const auto& branch : branches) {
                        for (std::uint64_t guess = 0; guess < (1ull << k); ++guess) {
                            DigitString y = branch;
                            int bit = 0;
                            for (int party = 0; party < n; ++party) {
                                if (absent & (1ull << party)) {
                                    y.set(static_cast<std::size_t>(party),
                                          static_cast<int>((guess >> bit++) & 1));
                                }
                            }
                            successes += decode_codeword(y).bits == secret.bits;
                        }
                    }
                    if (successes != 2) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

Line criterion_ghz_decay(Rng& seeds) {
    bool pass = true;
    std::ostringstream text;
    text << "ghz collaboration decay:";
    for (int k = 1; k <= 3; ++k) {
        ExperimentConfig cfg = base_config(SchemeKind::Ghz, seeds.next_u64());
        cfg.phases = Phases::Reconstruct;
        cfg.trials = 20000;
        cfg.missing = k;
        const auto report = run_experiment(cfg);
        const auto& metric = report.metrics.at("reconstruction_success");
        const double expect = std::pow(2.0, -k);
        const bool ok = in_band(metric.rate(), expect, metric.trials);
        pass = pass && ok;
        text << " k=" << k << " rate=" << metric.rate() << (ok ? "" : " OUT-OF-BAND");
    }
    const bool exhaustive = ghz_decay_exhaustive();
    pass = pass && exhaustive;
    text << "; exhaustive n<=6 " << (exhaustive ? "exact" : "FAILED");
    return Line{pass, text.str()};
}

// --- criterion 3: ghz seal bound --------------------------------------------

Line criterion_ghz_seal(Rng& seeds) {
    ExperimentConfig cheat = base_config(SchemeKind::Ghz, seeds.next_u64());
    cheat.phases = Phases::Seal;
    cheat.trials = 20000;
    cheat.strategies[0] = Strategy::MeasureEarly;
    const auto cheat_report = run_experiment(cheat);
    const auto& detect = cheat_report.metrics.at("cheat_detection");
    const bool band_ok = in_band(detect.rate(), 0.5, detect.trials);

    ExperimentConfig honest = base_config(SchemeKind::Ghz, seeds.next_u64());
    honest.phases = Phases::Seal;
    honest.trials = 20000;
    const auto honest_report = run_experiment(honest);
    const auto& honest_detect = honest_report.metrics.at("cheat_detection");
    const bool honest_ok = honest_detect.count == 0;

    std::ostringstream text;
    text << "ghz seal bound: detection rate=" << detect.rate() << (band_ok ? "" : " OUT-OF-BAND")
         << "; honest false detections " << honest_detect.count << "/" << honest_detect.trials;
    return Line{band_ok && honest_ok, text.str()};
}

// --- criterion 4: cd reconstruction ------------------------------------------

Line criterion_cd_reconstruction(Rng& seeds) {
    ExperimentConfig full = base_config(SchemeKind::Cd, seeds.next_u64());
    full.phases = Phases::Reconstruct;
    full.trials = 10000;
    const auto full_report = run_experiment(full);
    const auto& full_metric = full_report.metrics.at("reconstruction_success");
    bool pass = full_metric.count == full_metric.trials;

    std::ostringstream text;
    text << "cd reconstruction: full quorum " << full_metric.count << "/" << full_metric.trials;
    for (int k = 1; k <= 3; ++k) {
        ExperimentConfig cfg = base_config(SchemeKind::Cd, seeds.next_u64());
        cfg.phases = Phases::Reconstruct;
        cfg.trials = 20000;
        cfg.missing = k;
        const auto report = run_experiment(cfg);
        const auto& metric = report.metrics.at("reconstruction_success");
        const bool ok = in_band(metric.rate(), std::pow(2.0, -k), metric.trials);
        pass = pass && ok;
        text << ", k=" << k << " rate=" << metric.rate() << (ok ? "" : " OUT-OF-BAND");
    }
    return Line{pass, text.str()};
}

// --- criterion 5: cd seal detection + traceability ---------------------------

// Counting oracle over the full certificate space: after a computational
// measurement every Fourier-basis site yields a uniform digit, so each of
// the d^m certificates is equally likely; the real verifier must accept
// exactly the d^(m-w) of them that match at the w Fourier positions.
bool cd_escape_exhaustive(Rng& rng) {
    for (int m = 2; m <= 8; ++m) {
        for (int rep = 0; rep < 3; ++rep) {
            const CipherKey key = make_cipher_key(static_cast<std::uint64_t>(m), rng);
            auto [ct, record] = cd_encrypt(rep % 2, m, 2, key, rng);
            int w = 0;
            for (std::size_t i = 0; i < record.bases.size(); ++i) {
                w += record.bases.at(i);
            }
            std::uint64_t accepted = 0;
            const std::uint64_t total = 1ull << m;
            for (std::uint64_t c = 0; c < total; ++c) {
                const DeletionCertificate cert{
                    DigitString::from_index(c, static_cast<std::size_t>(m), 2)};
                accepted += cd_verify(record, cert) == CertVerdict::Accepted;
            }
            if (accepted << w != total) {
                return false;
            }
        }
    }
    return true;
}

Line criterion_cd_seal(Rng& seeds) {
    ExperimentConfig cfg = base_config(SchemeKind::Cd, seeds.next_u64());
    cfg.phases = Phases::Seal;
    cfg.trials = 20000;
    cfg.strategies[0] = Strategy::MeasureEarly;
    const auto report = run_experiment(cfg);
    const auto& cheater = report.metrics.at("per_party_rejection.0");
    const double expect = 1.0 - std::pow(2.0, -8);
    const bool band_ok = in_band(cheater.rate(), expect, cheater.trials);
    std::int64_t honest_rejections = 0;
    for (int party = 1; party < cfg.n; ++party) {
        honest_rejections += report.metrics.at("per_party_rejection." + std::to_string(party)).count;
    }
    Rng oracle_rng = Rng::derive(seeds.next_u64(), 0);
    const bool exhaustive = cd_escape_exhaustive(oracle_rng);

    std::ostringstream text;
    text << "cd seal detection: cheater rejection rate=" << cheater.rate() << " (expect ~" << expect
         << ")" << (band_ok ? "" : " OUT-OF-BAND") << "; honest rejections " << honest_rejections
         << "; exhaustive m<=8 " << (exhaustive ? "exact" : "FAILED");
    return Line{band_ok && honest_rejections == 0 && exhaustive, text.str()};
}

// --- criterion 6: certified-deletion hiding ----------------------------------

using HidingKey = std::tuple<std::uint64_t, std::uint64_t, int>;  // cert, bases, masked

// Exact post-deletion distribution of (certificate, bases, masked payload)
// as integer weights over equally weighted branches: Fourier-encoded sites
// certify deterministically, computational sites come out uniform.
std::map<HidingKey, std::uint64_t> hiding_distribution(int m, int payload, BasisPolicy policy) {
    std::map<HidingKey, std::uint64_t> dist;
    for (std::uint64_t theta = 0; theta < (1ull << m); ++theta) {
        const int w = std::popcount(theta);
        if (w == 0 || w == m) {
            continue;  // degenerate strings are never sampled
        }
        if (policy == BasisPolicy::FixedHalf && w != (m + 1) / 2) {
            continue;
        }
        const int zeros = m - w;
        // Common-denominator weight so atoms with different certificate
        // branch counts stay exactly comparable.
        const std::uint64_t weight = 1ull << w;  // = 2^m / 2^zeros
        for (std::uint64_t x = 0; x < (1ull << m); ++x) {
            int masked = payload;
            for (int i = 0; i < m; ++i) {
                if (!(theta & (1ull << i))) {
                    masked ^= static_cast<int>((x >> i) & 1);
                }
            }
            for (std::uint64_t free = 0; free < (1ull << zeros); ++free) {
                std::uint64_t cert = 0;
                int free_bit = 0;
                for (int i = 0; i < m; ++i) {
                    const std::uint64_t bit = (theta & (1ull << i))
                                                  ? (x >> i) & 1
                                                  : (free >> free_bit++) & 1;
                    cert |= bit << i;
                }
                dist[{cert, theta, masked}] += weight;
            }
        }
    }
    return dist;
}

Line criterion_hiding(Rng&) {
    bool pass = true;
    for (int m = 2; m <= 6 && pass; ++m) {
        for (const BasisPolicy policy : {BasisPolicy::FixedHalf, BasisPolicy::IidNondegenerate}) {
            pass = pass && hiding_distribution(m, 0, policy) == hiding_distribution(m, 1, policy);
        }
    }
    std::ostringstream text;
    text << "certified-deletion hiding: payload 0 and 1 distributions "
         << (pass ? "identical (exact, m<=6, both basis policies)" : "DIFFER");
    return Line{pass, text.str()};
}

// --- criterion 7: mutually unbiased bases ------------------------------------

Line criterion_mub(Rng&) {
    bool pass = true;
    double worst = 0.0;
    for (const int d : {2, 3, 5, 6, 7}) {
        for (int i = 0; i < d; ++i) {
            const PureState fourier = basis_vector(i, Basis::Fourier, d);
            for (int j = 0; j < d; ++j) {
                const PureState comp = basis_vector(j, Basis::Computational, d);
                const double overlap = std::norm(inner_product(fourier, comp));
                worst = std::max(worst, std::abs(overlap - 1.0 / d));
            }
        }
    }
    pass = worst <= 1e-9;
    std::ostringstream text;
    text << "mutually unbiased bases: max ||<i-hat|j>|^2 - 1/d| = " << worst
         << " over d in {2,3,5,6,7}";
    return Line{pass, text.str()};
}

// --- criterion 8: Shamir + threshold revocation -------------------------------

// Every degree <= t-1 polynomial over Z_p consistent with the given shares,
// bucketed by its constant term.
std::vector<int> polynomial_census(const std::vector<ShamirShare>& shares, int t, std::uint32_t p) {
    std::vector<int> counts(p, 0);
    std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(t), 0);
    std::uint64_t total = 1;
    for (int i = 0; i < t; ++i) {
        total *= p;
    }
    for (std::uint64_t enc = 0; enc < total; ++enc) {
        std::uint64_t e = enc;
        for (int i = 0; i < t; ++i) {
            coeffs[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(e % p);
            e /= p;
        }
        bool consistent = true;
        for (const auto& share : shares) {
            std::uint64_t value = 0;
            for (int c = t - 1; c >= 0; --c) {
                value = (value * share.index + coeffs[static_cast<std::size_t>(c)]) % p;
            }
            if (value != share.value) {
                consistent = false;
                break;
            }
        }
        if (consistent) {
            ++counts[coeffs[0]];
        }
    }
    return counts;
}

Line criterion_shamir(Rng& seeds) {
    Rng rng(seeds.next_u64());
    const std::uint32_t p = 7;
    const int t = 3;
    const int n = 5;
    bool subsets_ok = true;
    bool privacy_ok = true;

    for (int rep = 0; rep < 100 && subsets_ok; ++rep) {
        const auto secret = static_cast<std::uint32_t>(rng.next_below(p));
        const auto shares = shamir_split(secret, t, n, p, rng);
        for (int a = 0; a < n && subsets_ok; ++a) {
            for (int b = a + 1; b < n && subsets_ok; ++b) {
                for (int c = b + 1; c < n && subsets_ok; ++c) {
                    subsets_ok = shamir_reconstruct({shares[a], shares[b], shares[c]}, t, p) == secret;
                }
            }
        }
    }

    {
        const auto secret = static_cast<std::uint32_t>(rng.next_below(p));
        const auto shares = shamir_split(secret, t, n, p, rng);
        for (int a = 0; a < n && privacy_ok; ++a) {
            for (int b = a + 1; b < n && privacy_ok; ++b) {
                const auto counts = polynomial_census({shares[a], shares[b]}, t, p);
                for (std::uint32_t s = 0; s < p; ++s) {
                    privacy_ok = privacy_ok && counts[s] == counts[0] && counts[s] > 0;
                }
            }
        }
    }

    bool revocation_ok = true;
    for (int rep = 0; rep < 20 && revocation_ok; ++rep) {
        const auto secret = static_cast<std::uint32_t>(rng.next_below(p));
        ThresholdDeal d = threshold_deal(secret, t, n, p, 4, rng);
        const auto revocation = threshold_revoke(d, {0, 1, 2, 3, 4}, {}, rng);
        for (const auto& [party, verdict] : revocation.report.verdicts) {
            revocation_ok = revocation_ok && verdict == CertVerdict::Accepted;
        }
        revocation_ok = revocation_ok && revocation.revoked;
    }

    std::ostringstream text;
    text << "shamir p=7 t=3 n=5: 3-subsets " << (subsets_ok ? "reconstruct" : "FAIL")
         << "; 2-subset census " << (privacy_ok ? "uniform" : "FAIL") << "; honest revocation "
         << (revocation_ok ? "all-accepted+revoked" : "FAIL");
    return Line{subsets_ok && privacy_ok && revocation_ok, text.str()};
}

// --- criterion 9: Born-rule soundness -----------------------------------------

double chi_square(const std::vector<std::int64_t>& observed, const std::vector<double>& expected) {
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double diff = static_cast<double>(observed[i]) - expected[i];
        stat += diff * diff / expected[i];
    }
    return stat;
}

Line criterion_born_rule(Rng& seeds) {
    const std::int64_t samples = 50000;
    bool pass = true;
    std::ostringstream text;
    text << "born-rule chi-square:";

    {  // |+> measured computationally: uniform over {0,1}
        Rng rng(seeds.next_u64());
        const PureState plus = encode_string(DigitString::from_text("0"), DigitString::from_text("1"), 2);
        std::vector<std::int64_t> counts(2, 0);
        for (std::int64_t i = 0; i < samples; ++i) {
            ++counts[static_cast<std::size_t>(measure_sites(plus, {0}, Basis::Computational, rng).outcome.at(0))];
        }
        const double stat = chi_square(counts, {samples / 2.0, samples / 2.0});
        pass = pass && stat < kChi2Crit1;
        text << " plus-state=" << stat;
    }

    {  // the 10-party entangled state: half/half on the two codewords
        Rng rng(seeds.next_u64());
        const DigitString codeword = DigitString::from_text("0011100101");
        const PureState state = ghz_like(codeword);
        std::vector<std::size_t> sites(10);
        for (std::size_t i = 0; i < 10; ++i) {
            sites[i] = i;
        }
        std::int64_t on_x = 0;
        std::int64_t on_xbar = 0;
        for (std::int64_t i = 0; i < samples; ++i) {
            const auto outcome = measure_sites(state, sites, Basis::Computational, rng).outcome;
            if (outcome == codeword) {
                ++on_x;
            } else if (outcome == codeword.negated()) {
                ++on_xbar;
            }
        }
        const bool support_ok = on_x + on_xbar == samples;
        const double stat = chi_square({on_x, on_xbar}, {samples / 2.0, samples / 2.0});
        pass = pass && support_ok && stat < kChi2Crit1;
        text << " ghz10=" << stat << (support_ok ? "" : " OFF-SUPPORT");
    }

    {  // |2-hat> at d=6 measured computationally: uniform over six digits
        Rng rng(seeds.next_u64());
        const PureState state = basis_vector(2, Basis::Fourier, 6);
        std::vector<std::int64_t> counts(6, 0);
        for (std::int64_t i = 0; i < samples; ++i) {
            ++counts[static_cast<std::size_t>(measure_sites(state, {0}, Basis::Computational, rng).outcome.at(0))];
        }
        const double stat = chi_square(counts, std::vector<double>(6, samples / 6.0));
        pass = pass && stat < kChi2Crit5;
        text << " fourier-d6=" << stat;
    }

    text << " (crit " << kChi2Crit1 << " df1, " << kChi2Crit5 << " df5)";
    return Line{pass, text.str()};
}

} // namespace

int acceptance_suite(std::ostream& out, std::uint64_t master_seed) {
    Rng seeds(master_seed);
    using CriterionFn = Line (*)(Rng&);
    const std::pair<const char*, CriterionFn> criteria[] = {
        {"1", criterion_ghz_full_quorum}, {"2", criterion_ghz_decay},
        {"3", criterion_ghz_seal},        {"4", criterion_cd_reconstruction},
        {"5", criterion_cd_seal},         {"6", criterion_hiding},
        {"7", criterion_mub},             {"8", criterion_shamir},
        {"9", criterion_born_rule},
    };
    int failures = 0;
    for (const auto& [id, fn] : criteria) {
        const Line line = fn(seeds);
        failures += line.pass ? 0 : 1;
        out << "[" << id << "/9] " << (line.pass ? "PASS" : "FAIL") << " " << line.text << "\n"
            << std::flush;
    }
    out << (failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " (" << (9 - failures)
        << "/9 criteria)\n";
    return failures == 0 ? 0 : 2;
}

} // namespace ceqss
