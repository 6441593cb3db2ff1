#include "threebox/ontic.hpp"

#include <functional>
#include <stdexcept>

namespace threebox::ontic {

Preparation::Preparation(std::map<std::string, Rational> weights) {
    for (auto& [state, w] : weights) {
        if (w < 0) throw std::invalid_argument("negative weight for state '" + state + "'");
        if (w > 0) weights_.emplace(state, w);
    }
}

Preparation Preparation::point_mass(const std::string& state) {
    return Preparation({{state, Rational(1)}});
}

Rational Preparation::weight(const std::string& state) const {
    auto it = weights_.find(state);
    return it == weights_.end() ? Rational(0) : it->second;
}

Rational Preparation::total() const {
    Rational acc(0);
    for (const auto& [state, w] : weights_) acc += w;
    return acc;
}

std::vector<std::string> Preparation::support() const {
    std::vector<std::string> out;
    out.reserve(weights_.size());
    for (const auto& [state, w] : weights_) out.push_back(state);
    return out;
}

Rational Measurement::response_probability(const std::string& state,
                                           const std::string& outcome) const {
    auto row = response.find(state);
    if (row == response.end())
        throw std::invalid_argument("measurement '" + name + "' has no response row for state '" +
                                    state + "'");
    auto it = row->second.find(outcome);
    return it == row->second.end() ? Rational(0) : it->second;
}

Preparation Measurement::updated(const std::string& state, const std::string& outcome) const {
    if (auto row = update.find(state); row != update.end())
        if (auto it = row->second.find(outcome); it != row->second.end()) return it->second;
    return Preparation::point_mass(state);
}

bool Model::has_state(const std::string& state) const {
    for (const auto& s : states)
        if (s == state) return true;
    return false;
}

const Measurement& Model::measurement(const std::string& label) const {
    auto it = measurements.find(label);
    if (it == measurements.end())
        throw std::invalid_argument("unknown measurement label: '" + label + "'");
    return it->second;
}

std::vector<ValidationIssue> validate_model(const Model& m) {
    std::vector<ValidationIssue> issues;
    for (const auto& [label, meas] : m.measurements) {
        if (meas.outcomes.empty())
            issues.push_back({label, "no outcomes declared"});
        for (const auto& state : m.states) {
            auto row = meas.response.find(state);
            if (row == meas.response.end()) {
                issues.push_back({label + "/" + state, "missing response row"});
                continue;
            }
            Rational sum(0);
            for (const auto& [outcome, p] : row->second) {
                bool known = false;
                for (const auto& o : meas.outcomes) known = known || o == outcome;
                if (!known) issues.push_back({label + "/" + state, "undeclared outcome '" + outcome + "'"});
                if (p < 0 || p > 1)
                    issues.push_back({label + "/" + state, "response probability out of range"});
                sum += p;
            }
            if (sum != 1) issues.push_back({label + "/" + state, "response row does not sum to 1"});
        }
        for (const auto& [state, row] : meas.response)
            if (!m.has_state(state)) issues.push_back({label + "/" + state, "response row for undeclared state"});
        for (const auto& [state, row] : meas.update) {
            if (!m.has_state(state)) {
                issues.push_back({label + "/" + state, "update row for undeclared state"});
                continue;
            }
            for (const auto& [outcome, post] : row) {
                Rational sum = post.total();
                if (sum != 1)
                    issues.push_back({label + "/" + state + "/" + outcome, "update row does not sum to 1"});
                for (const auto& target : post.support())
                    if (!m.has_state(target))
                        issues.push_back({label + "/" + state + "/" + outcome,
                                          "update targets undeclared state '" + target + "'"});
            }
        }
    }
    return issues;
}

std::vector<ValidationIssue> validate_preparation(const Model& m, const Preparation& p) {
    std::vector<ValidationIssue> issues;
    for (const auto& state : p.support())
        if (!m.has_state(state)) issues.push_back({state, "weight on undeclared state"});
    if (p.total() != 1) issues.push_back({"preparation", "weights do not sum to 1"});
    return issues;
}

std::map<std::string, Rational> outcome_probability(const Model& m, const Preparation& prep,
                                                    const std::string& measurement) {
    const Measurement& meas = m.measurement(measurement);
    std::map<std::string, Rational> out;
    for (const auto& o : meas.outcomes) out[o] = Rational(0);
    for (const auto& [state, w] : prep.weights())
        for (const auto& o : meas.outcomes) out[o] += w * meas.response_probability(state, o);
    return out;
}

Evolution evolve_preparation(const Model& m, const Preparation& prep,
                             const std::string& measurement, const std::string& outcome) {
    const Measurement& meas = m.measurement(measurement);
    Rational p(0);
    std::map<std::string, Rational> raw;
    for (const auto& [state, w] : prep.weights()) {
        Rational resp = meas.response_probability(state, outcome);
        if (resp == 0) continue;
        p += w * resp;
        const Preparation post = meas.updated(state, outcome);
        for (const auto& [target, share] : post.weights()) raw[target] += w * resp * share;
    }
    if (p == 0)
        throw std::domain_error("outcome '" + outcome + "' of '" + measurement +
                                "' has probability zero");
    for (auto& [target, w] : raw) w /= p;
    return Evolution{p, Preparation(std::move(raw))};
}

Distribution sequence_distribution(const Model& m, const Preparation& prep,
                                   const std::vector<std::string>& labels) {
    std::vector<const Measurement*> steps;
    for (const auto& label : labels) steps.push_back(&m.measurement(label));

    Distribution dist;
    std::function<void(std::size_t, std::vector<std::string>&)> seed =
        [&](std::size_t depth, std::vector<std::string>& key) {
            if (depth == steps.size()) {
                dist[key] = Rational(0);
                return;
            }
            for (const auto& o : steps[depth]->outcomes) {
                key.push_back(o);
                seed(depth + 1, key);
                key.pop_back();
            }
        };
    std::vector<std::string> key;
    seed(0, key);

    std::function<void(std::size_t, const Preparation&, const Rational&, std::vector<std::string>&)>
        walk = [&](std::size_t depth, const Preparation& state, const Rational& p,
                   std::vector<std::string>& prefix) {
            if (depth == steps.size()) {
                dist[prefix] += p;
                return;
            }
            const Measurement& meas = *steps[depth];
            for (const auto& o : meas.outcomes) {
                Rational branch(0);
                std::map<std::string, Rational> raw;
                for (const auto& [source, w] : state.weights()) {
                    Rational resp = meas.response_probability(source, o);
                    if (resp == 0) continue;
                    branch += w * resp;
                    const Preparation post = meas.updated(source, o);
                    for (const auto& [target, share] : post.weights())
                        raw[target] += w * resp * share;
                }
                if (branch == 0) continue;
                for (auto& [target, w] : raw) w /= branch;
                prefix.push_back(o);
                walk(depth + 1, Preparation(std::move(raw)), p * branch, prefix);
                prefix.pop_back();
            }
        };
    std::vector<std::string> prefix;
    walk(0, prep, Rational(1), prefix);
    return dist;
}

Preparation mix_preparations(const std::vector<std::pair<Rational, Preparation>>& parts) {
    Rational total(0);
    std::map<std::string, Rational> raw;
    for (const auto& [w, prep] : parts) {
        if (w < 0) throw std::invalid_argument("mixture weight is negative");
        total += w;
        for (const auto& [state, share] : prep.weights()) raw[state] += w * share;
    }
    if (total != 1) throw std::invalid_argument("mixture weights do not sum to 1");
    return Preparation(std::move(raw));
}

bool is_nim(const Model& m, const std::string& measurement,
            const std::vector<std::string>& support) {
    const Measurement& meas = m.measurement(measurement);
    for (const auto& state : support)
        for (const auto& o : meas.outcomes) {
            if (meas.response_probability(state, o) == 0) continue;
            if (!(meas.updated(state, o) == Preparation::point_mass(state))) return false;
        }
    return true;
}

bool is_nim(const Model& m, const std::string& measurement) {
    return is_nim(m, measurement, m.states);
}

}  // namespace threebox::ontic
