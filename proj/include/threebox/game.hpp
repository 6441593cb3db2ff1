#pragma once

#include "threebox/classicality.hpp"
#include "threebox/model.hpp"
#include "threebox/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace threebox::game {

// What Bob does in one round before Alice's final measurement. An empty
// label list means he leaves the boxes alone. double_check marks the
// both-boxes protocol whose rounds settle immediately.
struct Play {
    std::vector<std::string> labels;
    bool double_check = false;

    std::string choice_key() const;  // "M1", "N", "M1,M2", ...
};

// A weighted distribution over plays. The named constructors cover the
// wager protocols; weights must be in [0,1] and sum to 1.
class Strategy {
public:
    // open box 1 with probability p, box 2 otherwise
    static Strategy random_box(double p_first, const std::string& first = "M1",
                               const std::string& second = "M2");
    // always play one label; the do-nothing label gives probe rounds
    static Strategy fixed(const std::string& label);
    // both boxes in order [1,2] with probability q, [2,1] otherwise
    static Strategy cheat_check(double q, const std::string& first = "M1",
                                const std::string& second = "M2");
    // box 1 / box 2 / nothing with equal weight, for umpire runs
    static Strategy uniform_probe(const std::string& first = "M1",
                                  const std::string& second = "M2");

    const std::vector<std::pair<double, Play>>& options() const { return options_; }
    const std::string& description() const { return description_; }

    const Play& sample(SplitMix64& rng) const;

private:
    Strategy(std::string description, std::vector<std::pair<double, Play>> options);
    std::string description_;
    std::vector<std::pair<double, Play>> options_;
};

struct Round {
    std::uint64_t index = 0;
    std::string choice;                      // Play::choice_key of what Bob did
    std::vector<std::string> bob_outcomes;   // one per label he played
    std::string alice_outcome;               // empty when settled before her turn
    bool post_selected = false;              // alice_outcome was the post outcome
    bool bet_placed = false;
    bool alice_won = false;                  // meaningful when bet_placed
    std::string immediate_winner;            // "", "alice" or "bob"
};

struct Transcript {
    std::string model;
    std::uint64_t seed = 0;
    std::string strategy;
    std::vector<Round> rounds;
};

// Runs n independent rounds; round i draws from substream (seed, i), so the
// transcript is reproducible and order-independent. Bob's labels must name
// box measurements or the do-nothing label.
Transcript play_rounds(const NamedModel& m, const Strategy& strategy, std::uint64_t n,
                       std::uint64_t seed);

// Single round on an explicit play; drives the interactive mode.
Round play_one(const NamedModel& m, const Play& play, SplitMix64& rng, std::uint64_t index);

// Money convention, in stakes: Alice's won bet nets her +1, a lost bet
// costs her `odds` (odds > 1 means she offered Bob better than even).
// Immediate settlements are booked the same way and also counted apart.
struct Ledger {
    std::uint64_t rounds = 0;
    std::uint64_t bets_placed = 0;
    std::uint64_t alice_bet_wins = 0;
    std::uint64_t bob_bet_wins = 0;
    std::uint64_t alice_immediate_wins = 0;
    std::uint64_t bob_immediate_wins = 0;
    double odds = 1.0;
    double alice_net = 0.0;

    double alice_win_rate() const;  // on placed bets; NaN when none
};
Ledger settle_bets(const Transcript& t, double odds);

struct ChoiceFrequency {
    std::string choice;
    std::uint64_t rounds = 0;
    std::uint64_t post_count = 0;
    double p_hat = 0.0;
    double sigma = 0.0;  // binomial sqrt(p(1-p)/n)
};

struct UmpireReport {
    std::vector<ChoiceFrequency> choices;
    bool flagged = false;
    std::vector<std::pair<std::string, std::string>> flagged_pairs;  // beyond 3 sigma
};

// Empirical post-selection frequency per choice group over the rounds that
// reached Alice's measurement. Throws std::invalid_argument when any group
// has fewer than 30 rounds.
UmpireReport umpire_frequencies(const Transcript& t);

struct CheatCheckResult {
    std::uint64_t rounds_forward = 0, hits_forward = 0;
    std::uint64_t rounds_backward = 0, hits_backward = 0;
    Rational exact_forward, exact_backward;  // engine values for comparison

    double empirical_forward() const;
    double empirical_backward() const;
};

// Plays the both-boxes protocol n rounds (alternating the order) and
// reports both-seen frequencies next to the exact engine values.
CheatCheckResult cheat_check(const NamedModel& m, std::uint64_t n, std::uint64_t seed);

// Strategy spelled as text, targeting the model's own box labels:
// "probe" | "random[:p]" | "cheat[:q]" | "fixed:LABEL".
Strategy parse_strategy(const std::string& text, const NamedModel& m);

}  // namespace threebox::game
