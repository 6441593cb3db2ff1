#pragma once

#include "threebox/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace threebox::ontic {

// A distribution over ontic states. Zero-weight entries are never stored,
// so operator== is semantic equality of distributions.
class Preparation {
public:
    Preparation() = default;
    explicit Preparation(std::map<std::string, Rational> weights);
    static Preparation point_mass(const std::string& state);

    const std::map<std::string, Rational>& weights() const { return weights_; }
    Rational weight(const std::string& state) const;
    Rational total() const;
    std::vector<std::string> support() const;

    bool operator==(const Preparation&) const = default;

private:
    std::map<std::string, Rational> weights_;
};

// Outcome rows ("response") give P(outcome | state) when the measurement is
// consulted; update rows give the post-measurement distribution. A missing
// update row means the state is left untouched (identity kernel), which is
// also the convention for outcomes the state can never produce.
struct Measurement {
    std::string name;
    std::vector<std::string> outcomes;
    std::map<std::string, std::map<std::string, Rational>> response;
    std::map<std::string, std::map<std::string, Preparation>> update;

    Rational response_probability(const std::string& state, const std::string& outcome) const;
    Preparation updated(const std::string& state, const std::string& outcome) const;
};

struct Model {
    std::vector<std::string> states;
    std::map<std::string, Measurement> measurements;

    bool has_state(const std::string& state) const;
    const Measurement& measurement(const std::string& label) const;
};

struct ValidationIssue {
    std::string where;
    std::string what;
};

using Distribution = std::map<std::vector<std::string>, Rational>;

// Response rows must be distributions over declared outcomes, update rows
// must be distributions over declared states, every declared state needs a
// response row. An empty model is vacuously valid.
std::vector<ValidationIssue> validate_model(const Model& m);
std::vector<ValidationIssue> validate_preparation(const Model& m, const Preparation& p);

// P(outcome) = sum over states of prep(state) * response(outcome | state).
std::map<std::string, Rational> outcome_probability(const Model& m, const Preparation& prep,
                                                    const std::string& measurement);

struct Evolution {
    Rational probability;
    Preparation post;
};

// Conditional update after observing `outcome`: pushes every support state
// through its update row and renormalizes. Throws std::domain_error when
// the outcome has probability zero.
Evolution evolve_preparation(const Model& m, const Preparation& prep,
                             const std::string& measurement, const std::string& outcome);

// Joint distribution over outcome strings of the label sequence, exact.
// Keys run over the full outcome product; the empty sequence yields the
// sure empty string.
Distribution sequence_distribution(const Model& m, const Preparation& prep,
                                   const std::vector<std::string>& labels);

// Convex mixture; weights must be nonnegative and sum to 1 exactly.
Preparation mix_preparations(const std::vector<std::pair<Rational, Preparation>>& parts);

// Non-invasive measurability: every consulted update row (response > 0) is
// the identity on its source state. The restricted overload only inspects
// the given states.
bool is_nim(const Model& m, const std::string& measurement);
bool is_nim(const Model& m, const std::string& measurement,
            const std::vector<std::string>& support);

}  // namespace threebox::ontic
