#pragma once

#include "threebox/ontic.hpp"
#include "threebox/quantum.hpp"
#include "threebox/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace threebox {

// Which measurement plays which part in the wager protocol.
struct BoxRole {
    std::string measurement;  // label Bob may play, e.g. "M1"
    std::string seen;         // outcome meaning "ball found", e.g. "1"
    std::string not_seen;     // its complement, e.g. "not1"
};

struct Roles {
    std::vector<BoxRole> boxes;
    std::string final_measurement;  // Alice's post-selection measurement
    std::string post_outcome;       // the outcome she bets on, e.g. "A"
    std::string no_post_outcome;
    std::string do_nothing = "N";
    // preparation names for "ball definitely in box i", aligned with boxes,
    // last entry for the never-opened rest box; empty when the model has none
    std::vector<std::string> eigen_preparations;
};

// Joint table of one intervening measurement with the post-selection.
struct BoxTable {
    std::string measurement;
    std::string seen, not_seen;
    Rational seen_post, seen_no_post, not_seen_post, not_seen_no_post;

    Rational post_marginal() const { return seen_post + not_seen_post; }
    Rational seen_marginal() const { return seen_post + seen_no_post; }
    Rational total() const {
        return seen_post + seen_no_post + not_seen_post + not_seen_no_post;
    }
};

struct OperationalStats {
    std::vector<BoxTable> boxes;
    std::string post_outcome, no_post_outcome;
    Rational no_measurement_post;  // P(post outcome) with the boxes untouched
    // extra sequences keyed by comma-joined labels, then comma-joined outcomes
    std::map<std::string, std::map<std::string, Rational>> extras;
};

using RationalDistribution = ontic::Distribution;

std::string join_labels(const std::vector<std::string>& labels);

// Snaps every probability of a float-valued distribution to an exact
// rational (small denominator when one is within 1e-9, exact dyadic
// otherwise).
RationalDistribution rationalize(const quantum::Distribution& d);

OperationalStats stats_from_ontic(const ontic::Model& m, const ontic::Preparation& prep,
                                  const Roles& roles);
OperationalStats stats_from_quantum(const quantum::Scenario& s, const quantum::Ket& initial,
                                    const Roles& roles);

}  // namespace threebox
