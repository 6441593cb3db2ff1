#pragma once

#include "threebox/ontic.hpp"
#include "threebox/quantum.hpp"
#include "threebox/stats.hpp"

#include <map>
#include <string>
#include <vector>

namespace threebox {

// A packaged scenario: one engine (quantum state vectors or an ontic state
// table), its named preparations, the wager roles and the published
// statistics it is supposed to reproduce.
struct NamedModel {
    enum class Kind { quantum, ontic };

    std::string name;
    Kind kind = Kind::ontic;
    quantum::Scenario scenario;                       // used when kind == quantum
    ontic::Model model;                               // used when kind == ontic
    std::map<std::string, quantum::Ket> kets;         // quantum preparations by name
    std::map<std::string, ontic::Preparation> preparations;
    std::string initial;                              // name of the default preparation
    Roles roles;
    OperationalStats expected;
    std::map<std::string, std::string> metadata;

    bool is_quantum() const { return kind == Kind::quantum; }
};

// The model's preparation registry; throws std::invalid_argument on an
// unknown name.
const quantum::Ket& ket_of(const NamedModel& m, const std::string& prep);
const ontic::Preparation& preparation_of(const NamedModel& m, const std::string& prep);
std::vector<std::string> preparation_names(const NamedModel& m);

// Exact joint distribution over the label sequence (do-nothing labels are
// skipped); quantum probabilities are rationalized.
RationalDistribution model_sequence_distribution(const NamedModel& m, const std::string& prep,
                                                 const std::vector<std::string>& labels);

OperationalStats to_stats(const NamedModel& m);
OperationalStats to_stats(const NamedModel& m, const std::string& prep);

}  // namespace threebox
