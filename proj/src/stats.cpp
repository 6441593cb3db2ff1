#include "threebox/stats.hpp"

#include <stdexcept>

namespace threebox {

std::string join_labels(const std::vector<std::string>& labels) {
    std::string out;
    for (const auto& l : labels) {
        if (!out.empty()) out += ",";
        out += l;
    }
    return out;
}

RationalDistribution rationalize(const quantum::Distribution& d) {
    RationalDistribution out;
    for (const auto& [key, p] : d) out[key] = snap_to_rational(p);
    return out;
}

namespace {

// pull the four joint cells for one box from a two-step distribution
BoxTable box_table(const RationalDistribution& joint, const BoxRole& box,
                   const std::string& post, const std::string& no_post) {
    auto cell = [&](const std::string& a, const std::string& b) {
        auto it = joint.find({a, b});
        if (it == joint.end())
            throw std::invalid_argument("joint distribution lacks outcome (" + a + "," + b + ")");
        return it->second;
    };
    BoxTable t;
    t.measurement = box.measurement;
    t.seen = box.seen;
    t.not_seen = box.not_seen;
    t.seen_post = cell(box.seen, post);
    t.seen_no_post = cell(box.seen, no_post);
    t.not_seen_post = cell(box.not_seen, post);
    t.not_seen_no_post = cell(box.not_seen, no_post);
    return t;
}

Rational post_only(const RationalDistribution& dist, const std::string& post) {
    auto it = dist.find({post});
    if (it == dist.end()) throw std::invalid_argument("distribution lacks outcome " + post);
    return it->second;
}

}  // namespace

OperationalStats stats_from_ontic(const ontic::Model& m, const ontic::Preparation& prep,
                                  const Roles& roles) {
    OperationalStats stats;
    stats.post_outcome = roles.post_outcome;
    stats.no_post_outcome = roles.no_post_outcome;
    for (const auto& box : roles.boxes) {
        auto joint = ontic::sequence_distribution(m, prep, {box.measurement, roles.final_measurement});
        stats.boxes.push_back(box_table(joint, box, roles.post_outcome, roles.no_post_outcome));
    }
    stats.no_measurement_post =
        post_only(ontic::sequence_distribution(m, prep, {roles.final_measurement}),
                  roles.post_outcome);
    return stats;
}

OperationalStats stats_from_quantum(const quantum::Scenario& s, const quantum::Ket& initial,
                                    const Roles& roles) {
    OperationalStats stats;
    stats.post_outcome = roles.post_outcome;
    stats.no_post_outcome = roles.no_post_outcome;
    for (const auto& box : roles.boxes) {
        auto joint = rationalize(
            quantum::sequence_distribution(s, initial, {box.measurement, roles.final_measurement}));
        stats.boxes.push_back(box_table(joint, box, roles.post_outcome, roles.no_post_outcome));
    }
    stats.no_measurement_post = post_only(
        rationalize(quantum::sequence_distribution(s, initial, {roles.final_measurement})),
        roles.post_outcome);
    return stats;
}

}  // namespace threebox
