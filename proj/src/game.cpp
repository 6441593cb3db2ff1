#include "threebox/game.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>

namespace threebox::game {

std::string Play::choice_key() const {
    if (labels.empty()) return "N";
    std::string key;
    for (const auto& l : labels) {
        if (!key.empty()) key += ",";
        key += l;
    }
    return key;
}

Strategy::Strategy(std::string description, std::vector<std::pair<double, Play>> options)
    : description_(std::move(description)), options_(std::move(options)) {
    double total = 0.0;
    for (const auto& [w, play] : options_) {
        if (w < 0.0 || w > 1.0) throw std::invalid_argument("strategy weight outside [0,1]");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("strategy weights must sum to 1");
}

Strategy Strategy::random_box(double p_first, const std::string& first,
                              const std::string& second) {
    return Strategy("random_box(" + std::to_string(p_first) + ")",
                    {{p_first, Play{{first}, false}}, {1.0 - p_first, Play{{second}, false}}});
}

Strategy Strategy::fixed(const std::string& label) {
    Play play;
    if (label != "N") play.labels = {label};
    return Strategy("fixed(" + label + ")", {{1.0, play}});
}

Strategy Strategy::cheat_check(double q, const std::string& first, const std::string& second) {
    return Strategy("cheat_check(" + std::to_string(q) + ")",
                    {{q, Play{{first, second}, true}}, {1.0 - q, Play{{second, first}, true}}});
}

Strategy Strategy::uniform_probe(const std::string& first, const std::string& second) {
    const double w = 1.0 / 3.0;
    return Strategy("uniform_probe",
                    {{w, Play{{first}, false}}, {w, Play{{second}, false}}, {1.0 - 2 * w, Play{}}});
}

const Play& Strategy::sample(SplitMix64& rng) const {
    double u = rng.next_double();
    double cum = 0.0;
    for (const auto& [w, play] : options_) {
        cum += w;
        if (u < cum) return play;
    }
    return options_.back().second;
}

namespace {

// per-round engine state: either a ket or a sampled ontic state
struct RoundEngine {
    const NamedModel& model;
    SplitMix64& rng;
    quantum::Ket ket;
    std::string state;

    explicit RoundEngine(const NamedModel& m, const std::string& prep, SplitMix64& r)
        : model(m), rng(r) {
        if (m.is_quantum()) {
            ket = ket_of(m, prep);
        } else {
            state = sample_weights(preparation_of(m, prep).weights());
        }
    }

    std::string sample_weights(const std::map<std::string, Rational>& weights) {
        double u = rng.next_double();
        double cum = 0.0;
        const std::string* last = nullptr;
        for (const auto& [s, w] : weights) {
            cum += to_double(w);
            last = &s;
            if (u < cum) return s;
        }
        if (!last) throw std::invalid_argument("cannot sample from an empty distribution");
        return *last;
    }

    std::string measure(const std::string& label) {
        if (model.is_quantum()) {
            auto branches = quantum::measure(ket, model.scenario.measurements.at(label));
            double u = rng.next_double();
            double cum = 0.0;
            for (const auto& b : branches) {
                cum += b.probability;
                if (u < cum) {
                    ket = b.post;
                    return b.label;
                }
            }
            ket = branches.back().post;
            return branches.back().label;
        }
        const auto& meas = model.model.measurement(label);
        std::map<std::string, Rational> probabilities;
        for (const auto& o : meas.outcomes) {
            Rational p = meas.response_probability(state, o);
            if (p > 0) probabilities[o] = p;
        }
        std::string outcome = sample_weights(probabilities);
        state = sample_weights(meas.updated(state, outcome).weights());
        return outcome;
    }
};

void require_playable(const NamedModel& m, const Play& play) {
    for (const auto& label : play.labels) {
        if (label == m.roles.do_nothing) continue;
        bool known = false;
        for (const auto& box : m.roles.boxes) known = known || box.measurement == label;
        if (!known)
            throw std::invalid_argument("label '" + label + "' is not a box measurement of '" +
                                        m.name + "'");
    }
}

const BoxRole* box_of(const NamedModel& m, const std::string& label) {
    for (const auto& box : m.roles.boxes)
        if (box.measurement == label) return &box;
    return nullptr;
}

}  // namespace

Round play_one(const NamedModel& m, const Play& play, SplitMix64& rng, std::uint64_t index) {
    require_playable(m, play);
    Round round;
    round.index = index;
    round.choice = play.choice_key();

    RoundEngine engine(m, m.initial, rng);
    std::vector<std::string> opened;
    for (const auto& label : play.labels) {
        if (label == m.roles.do_nothing) continue;
        round.bob_outcomes.push_back(engine.measure(label));
        opened.push_back(label);
    }

    if (play.double_check) {
        bool all_seen = !opened.empty();
        for (std::size_t i = 0; i < opened.size(); ++i)
            all_seen = all_seen && round.bob_outcomes[i] == box_of(m, opened[i])->seen;
        round.immediate_winner = all_seen ? "bob" : "alice";
        return round;  // settled before Alice's measurement
    }

    round.alice_outcome = engine.measure(m.roles.final_measurement);
    round.post_selected = round.alice_outcome == m.roles.post_outcome;
    if (round.post_selected && opened.size() == 1) {
        round.bet_placed = true;
        round.alice_won = round.bob_outcomes[0] == box_of(m, opened[0])->seen;
    }
    return round;
}

Transcript play_rounds(const NamedModel& m, const Strategy& strategy, std::uint64_t n,
                       std::uint64_t seed) {
    Transcript t;
    t.model = m.name;
    t.seed = seed;
    t.strategy = strategy.description();
    t.rounds.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        SplitMix64 rng = SplitMix64::substream(seed, i);
        const Play& play = strategy.sample(rng);
        t.rounds.push_back(play_one(m, play, rng, i));
    }
    return t;
}

double Ledger::alice_win_rate() const {
    if (bets_placed == 0) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(alice_bet_wins) / static_cast<double>(bets_placed);
}

Ledger settle_bets(const Transcript& t, double odds) {
    if (odds <= 0) throw std::invalid_argument("odds must be positive");
    Ledger ledger;
    ledger.odds = odds;
    ledger.rounds = t.rounds.size();
    for (const auto& round : t.rounds) {
        if (round.immediate_winner == "bob") {
            ++ledger.bob_immediate_wins;
            ledger.alice_net -= odds;
        } else if (round.immediate_winner == "alice") {
            ++ledger.alice_immediate_wins;
            ledger.alice_net += 1.0;
        }
        if (!round.bet_placed) continue;
        ++ledger.bets_placed;
        if (round.alice_won) {
            ++ledger.alice_bet_wins;
            ledger.alice_net += 1.0;
        } else {
            ++ledger.bob_bet_wins;
            ledger.alice_net -= odds;
        }
    }
    return ledger;
}

UmpireReport umpire_frequencies(const Transcript& t) {
    std::map<std::string, ChoiceFrequency> groups;
    for (const auto& round : t.rounds) {
        if (round.alice_outcome.empty()) continue;  // settled early, no sample
        auto& g = groups[round.choice];
        g.choice = round.choice;
        ++g.rounds;
        if (round.post_selected) ++g.post_count;
    }
    if (groups.empty())
        throw std::invalid_argument("transcript has no rounds with a final outcome");
    for (const auto& [choice, g] : groups)
        if (g.rounds < 30)
            throw std::invalid_argument("insufficient rounds for choice '" + choice +
                                        "' (need at least 30)");

    UmpireReport report;
    for (auto& [choice, g] : groups) {
        g.p_hat = static_cast<double>(g.post_count) / static_cast<double>(g.rounds);
        g.sigma = std::sqrt(g.p_hat * (1.0 - g.p_hat) / static_cast<double>(g.rounds));
        report.choices.push_back(g);
    }
    for (std::size_t i = 0; i < report.choices.size(); ++i)
        for (std::size_t j = i + 1; j < report.choices.size(); ++j) {
            const auto& a = report.choices[i];
            const auto& b = report.choices[j];
            double spread = std::sqrt(a.sigma * a.sigma + b.sigma * b.sigma);
            if (std::abs(a.p_hat - b.p_hat) > 3.0 * spread)
                report.flagged_pairs.emplace_back(a.choice, b.choice);
        }
    report.flagged = !report.flagged_pairs.empty();
    return report;
}

CheatCheckResult cheat_check(const NamedModel& m, std::uint64_t n, std::uint64_t seed) {
    if (m.roles.boxes.size() != 2)
        throw std::invalid_argument("cheat check is defined for two boxes");
    CheatCheckResult result;
    auto occ = classicality::double_occupancy(m);
    result.exact_forward = occ.forward;
    result.exact_backward = occ.backward;

    const auto& b1 = m.roles.boxes[0];
    const auto& b2 = m.roles.boxes[1];
    Play forward{{b1.measurement, b2.measurement}, true};
    Play backward{{b2.measurement, b1.measurement}, true};
    for (std::uint64_t i = 0; i < n; ++i) {
        SplitMix64 rng = SplitMix64::substream(seed, i);
        bool fwd = i % 2 == 0;
        Round round = play_one(m, fwd ? forward : backward, rng, i);
        bool hit = round.immediate_winner == "bob";
        if (fwd) {
            ++result.rounds_forward;
            result.hits_forward += hit ? 1 : 0;
        } else {
            ++result.rounds_backward;
            result.hits_backward += hit ? 1 : 0;
        }
    }
    return result;
}

double CheatCheckResult::empirical_forward() const {
    return rounds_forward == 0 ? 0.0
                               : static_cast<double>(hits_forward) /
                                     static_cast<double>(rounds_forward);
}

double CheatCheckResult::empirical_backward() const {
    return rounds_backward == 0 ? 0.0
                                : static_cast<double>(hits_backward) /
                                      static_cast<double>(rounds_backward);
}

Strategy parse_strategy(const std::string& text, const NamedModel& m) {
    const std::string b1 = m.roles.boxes.at(0).measurement;
    const std::string b2 = m.roles.boxes.size() > 1 ? m.roles.boxes.at(1).measurement : b1;
    auto arg_of = [&](const std::string& prefix) -> std::optional<std::string> {
        if (text == prefix) return std::string();
        if (text.rfind(prefix + ":", 0) == 0) return text.substr(prefix.size() + 1);
        return std::nullopt;
    };
    if (text == "probe" || text.empty()) return Strategy::uniform_probe(b1, b2);
    if (auto arg = arg_of("random")) {
        double p = arg->empty() ? 0.5 : std::stod(*arg);
        return Strategy::random_box(p, b1, b2);
    }
    if (auto arg = arg_of("cheat")) {
        double q = arg->empty() ? 0.5 : std::stod(*arg);
        return Strategy::cheat_check(q, b1, b2);
    }
    if (auto arg = arg_of("fixed")) {
        if (arg->empty()) throw std::invalid_argument("fixed strategy needs a label: fixed:M1");
        return Strategy::fixed(*arg);
    }
    throw std::invalid_argument("unknown strategy '" + text +
                                "' (use probe, random[:p], cheat[:q] or fixed:LABEL)");
}

}  // namespace threebox::game
