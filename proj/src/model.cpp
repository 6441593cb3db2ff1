#include "threebox/model.hpp"

#include <stdexcept>

namespace threebox {

const quantum::Ket& ket_of(const NamedModel& m, const std::string& prep) {
    auto it = m.kets.find(prep);
    if (it == m.kets.end())
        throw std::invalid_argument("model '" + m.name + "' has no preparation '" + prep + "'");
    return it->second;
}

const ontic::Preparation& preparation_of(const NamedModel& m, const std::string& prep) {
    auto it = m.preparations.find(prep);
    if (it == m.preparations.end())
        throw std::invalid_argument("model '" + m.name + "' has no preparation '" + prep + "'");
    return it->second;
}

std::vector<std::string> preparation_names(const NamedModel& m) {
    std::vector<std::string> out;
    if (m.is_quantum())
        for (const auto& [name, ket] : m.kets) out.push_back(name);
    else
        for (const auto& [name, prep] : m.preparations) out.push_back(name);
    return out;
}

RationalDistribution model_sequence_distribution(const NamedModel& m, const std::string& prep,
                                                 const std::vector<std::string>& labels) {
    std::vector<std::string> effective;
    for (const auto& l : labels)
        if (l != m.roles.do_nothing) effective.push_back(l);
    if (m.is_quantum())
        return rationalize(quantum::sequence_distribution(m.scenario, ket_of(m, prep), effective));
    return ontic::sequence_distribution(m.model, preparation_of(m, prep), effective);
}

OperationalStats to_stats(const NamedModel& m) { return to_stats(m, m.initial); }

OperationalStats to_stats(const NamedModel& m, const std::string& prep) {
    if (m.is_quantum()) return stats_from_quantum(m.scenario, ket_of(m, prep), m.roles);
    return stats_from_ontic(m.model, preparation_of(m, prep), m.roles);
}

}  // namespace threebox
