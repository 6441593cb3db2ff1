#include "threebox/classicality.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace threebox::classicality {

std::map<std::string, Rational> ndm_gap(const OperationalStats& s) {
    std::map<std::string, Rational> gaps;
    for (const auto& box : s.boxes)
        gaps[box.measurement] = box.post_marginal() - s.no_measurement_post;
    return gaps;
}

bool ndm_holds(const OperationalStats& s) {
    for (const auto& [label, gap] : ndm_gap(s))
        if (gap != 0) return false;
    return true;
}

PpsScore pps_score(const OperationalStats& s) {
    Rational score(0);
    for (const auto& box : s.boxes) {
        Rational post = box.post_marginal();
        if (post == 0)
            throw std::domain_error("P(post selection) is zero after " + box.measurement +
                                    "; conditional is undefined");
        score += box.seen_post / post;
    }
    PpsScore result{score, ndm_holds(s), false};
    result.true_paradox = result.ndm && score > 1;
    return result;
}

NimBound nim_bound_check(const OperationalStats& s) {
    Rational slack = s.no_measurement_post;
    for (const auto& box : s.boxes) slack -= box.seen_post;
    return NimBound{slack, slack >= 0};
}

LgiResult lgi_value(const OperationalStats& s) {
    if (s.boxes.size() != 2)
        throw std::invalid_argument("the dichotomic-variable bound is defined for two boxes");
    Rational value = 4 * nim_bound_check(s).slack - 1;
    return LgiResult{value, value < -1};
}

Rational counterfactual_consistency(const OperationalStats& s, const std::string& measurement) {
    const BoxTable* box = nullptr;
    for (const auto& b : s.boxes)
        if (b.measurement == measurement) box = &b;
    if (!box) throw std::invalid_argument("no box table for measurement '" + measurement + "'");

    Rational p_post = box->post_marginal();
    Rational p_no_post = 1 - p_post;
    Rational w_post = s.no_measurement_post;
    Rational w_no_post = 1 - s.no_measurement_post;

    // terms with zero weight drop out even when their conditional is undefined
    Rational mixed(0);
    if (w_post != 0) {
        if (p_post == 0)
            throw std::domain_error("P(seen | post) undefined: P(post) = 0 after " + measurement);
        mixed += (box->seen_post / p_post) * w_post;
    }
    if (w_no_post != 0) {
        if (p_no_post == 0)
            throw std::domain_error("P(seen | no post) undefined: P(no post) = 0 after " +
                                    measurement);
        mixed += (box->seen_no_post / p_no_post) * w_no_post;
    }
    Rational direct = box->seen_marginal();
    Rational gap = mixed - direct;
    return gap < 0 ? -gap : gap;
}

namespace {

constexpr const char* kRestBox = "rest";

// deterministic answer of `state` to outcome `seen` of `measurement`:
// 1 = surely seen, 0 = surely not, nullopt = genuinely random
std::optional<bool> definite_answer(const ontic::Model& m, const std::string& measurement,
                                    const std::string& seen, const std::string& state) {
    Rational p = m.measurement(measurement).response_probability(state, seen);
    if (p == 1) return true;
    if (p == 0) return false;
    return std::nullopt;
}

}  // namespace

std::optional<Decomposition> macrorealist_decomposition(const ontic::Model& m,
                                                        const ontic::Preparation& prep,
                                                        const Roles& roles) {
    std::map<std::string, std::map<std::string, Rational>> shares;  // box -> state -> weight
    for (const auto& [state, w] : prep.weights()) {
        std::optional<std::string> home;
        bool definite = true;
        for (const auto& box : roles.boxes) {
            auto answer = definite_answer(m, box.measurement, box.seen, state);
            if (!answer.has_value()) {
                definite = false;
                break;
            }
            if (*answer) {
                if (home.has_value()) {
                    definite = false;  // claims two boxes at once
                    break;
                }
                home = box.seen;
            }
        }
        if (!definite) return std::nullopt;
        shares[home.value_or(kRestBox)][state] += w;
    }

    Decomposition parts;
    for (const auto& box : roles.boxes) parts.push_back({box.seen, Rational(0), {}});
    parts.push_back({kRestBox, Rational(0), {}});
    for (auto& part : parts) {
        auto it = shares.find(part.box);
        if (it == shares.end()) continue;
        for (const auto& [state, w] : it->second) part.weight += w;
        auto nu = it->second;
        for (auto& [state, w] : nu) w /= part.weight;
        part.nu = ontic::Preparation(std::move(nu));
    }
    return parts;
}

std::string to_string(MrClass c) {
    switch (c) {
        case MrClass::mr1: return "MR1";
        case MrClass::mr2: return "MR2";
        case MrClass::mr3: return "MR3";
        case MrClass::not_macrorealist: return "not-macrorealist";
        case MrClass::undetermined: return "undetermined";
    }
    return "undetermined";
}

MrClass classify_mr(const ontic::Model& m, const ontic::Preparation& prep,
                    const std::map<std::string, ontic::Preparation>& eigen_preps,
                    const Roles& roles) {
    auto decomposition = macrorealist_decomposition(m, prep, roles);
    if (!decomposition.has_value()) return MrClass::not_macrorealist;
    if (eigen_preps.empty()) return MrClass::undetermined;

    bool all_equal = true;
    bool support_contained = true;
    for (const auto& part : *decomposition) {
        if (part.weight == 0) continue;
        auto it = eigen_preps.find(part.box);
        if (it == eigen_preps.end()) return MrClass::undetermined;
        const auto& mu = it->second;
        if (!(part.nu == mu)) all_equal = false;
        for (const auto& state : part.nu.support())
            if (mu.weight(state) == 0) support_contained = false;
    }
    if (all_equal) return MrClass::mr1;
    if (support_contained) return MrClass::mr2;
    return MrClass::mr3;
}

namespace {

std::optional<NimWitness> first_difference(const std::string& box, const ontic::Preparation& got,
                                           const ontic::Preparation& want) {
    for (const auto& [state, w] : want.weights())
        if (got.weight(state) != w) return NimWitness{box, state};
    for (const auto& [state, w] : got.weights())
        if (want.weight(state) != w) return NimWitness{box, state};
    return std::nullopt;
}

std::optional<NimWitness> kernel_identity_failure(const ontic::Model& m,
                                                  const ontic::Preparation& prep,
                                                  const std::string& measurement,
                                                  const std::string& outcome) {
    const auto& meas = m.measurement(measurement);
    for (const auto& state : prep.support()) {
        if (meas.response_probability(state, outcome) == 0) continue;
        if (!(meas.updated(state, outcome) == ontic::Preparation::point_mass(state)))
            return NimWitness{measurement, state};
    }
    return std::nullopt;
}

}  // namespace

Nim12Result nim1_nim2_check(const ontic::Model& m, const ontic::Preparation& prep,
                            const Roles& roles) {
    Nim12Result result;
    auto decomposition = macrorealist_decomposition(m, prep, roles);

    if (!decomposition.has_value()) {
        // no macrorealist reading: report whether the kernels themselves
        // disturb consulted states on this preparation's support
        result.via_decomposition = false;
        result.nim1 = true;
        result.nim2 = true;
        for (const auto& box : roles.boxes) {
            if (!result.nim1_witness)
                if (auto w = kernel_identity_failure(m, prep, box.measurement, box.seen)) {
                    result.nim1 = false;
                    result.nim1_witness = w;
                }
            if (!result.nim2_witness)
                if (auto w = kernel_identity_failure(m, prep, box.measurement, box.not_seen)) {
                    result.nim2 = false;
                    result.nim2_witness = w;
                }
        }
        return result;
    }

    result.via_decomposition = true;
    result.nim1 = true;
    result.nim2 = true;
    const auto& parts = *decomposition;
    for (std::size_t i = 0; i < roles.boxes.size(); ++i) {
        const auto& box = roles.boxes[i];
        const auto& mine = parts[i];

        // seen branch must return exactly nu_i
        if (mine.weight != 0 && result.nim1) {
            auto evolved = ontic::evolve_preparation(m, prep, box.measurement, box.seen);
            if (auto w = first_difference(box.seen, evolved.post, mine.nu)) {
                result.nim1 = false;
                result.nim1_witness = w;
            }
        }

        // not-seen branch must return the renormalized mixture of the others
        Rational rest_weight = 1 - mine.weight;
        if (rest_weight != 0 && result.nim2) {
            std::map<std::string, Rational> blend;
            for (std::size_t j = 0; j < parts.size(); ++j) {
                if (j == i) continue;
                for (const auto& [state, w] : parts[j].nu.weights())
                    blend[state] += parts[j].weight / rest_weight * w;
            }
            auto evolved = ontic::evolve_preparation(m, prep, box.measurement, box.not_seen);
            if (auto w = first_difference(box.seen, evolved.post, ontic::Preparation(blend))) {
                result.nim2 = false;
                result.nim2_witness = w;
            }
        }
    }
    return result;
}

std::map<std::string, std::map<std::string, Rational>> eigenstate_ndm_gaps(
    const ontic::Model& m, const std::map<std::string, ontic::Preparation>& eigen_preps,
    const Roles& roles) {
    std::map<std::string, std::map<std::string, Rational>> gaps;
    for (const auto& [name, prep] : eigen_preps) {
        auto stats = stats_from_ontic(m, prep, roles);
        for (const auto& [label, gap] : ndm_gap(stats))
            gaps[name][label] = gap < 0 ? -gap : gap;
    }
    return gaps;
}

std::map<std::string, std::map<std::string, Rational>> eigenstate_ndm_gaps(
    const quantum::Scenario& s, const std::map<std::string, quantum::Ket>& eigen_kets,
    const Roles& roles) {
    std::map<std::string, std::map<std::string, Rational>> gaps;
    for (const auto& [name, ket] : eigen_kets) {
        auto stats = stats_from_quantum(s, ket, roles);
        for (const auto& [label, gap] : ndm_gap(stats))
            gaps[name][label] = gap < 0 ? -gap : gap;
    }
    return gaps;
}

namespace {

Rational sequence_cell(const RationalDistribution& d, const std::vector<std::string>& key) {
    auto it = d.find(key);
    return it == d.end() ? Rational(0) : it->second;
}

DoubleOccupancy occupancy_from(const Roles& roles,
                               const std::function<RationalDistribution(
                                   const std::vector<std::string>&)>& run) {
    if (roles.boxes.size() != 2)
        throw std::invalid_argument("double occupancy is defined for two boxes");
    const auto& b1 = roles.boxes[0];
    const auto& b2 = roles.boxes[1];
    DoubleOccupancy occ;
    occ.forward = sequence_cell(run({b1.measurement, b2.measurement}), {b1.seen, b2.seen});
    occ.backward = sequence_cell(run({b2.measurement, b1.measurement}), {b2.seen, b1.seen});
    return occ;
}

}  // namespace

DoubleOccupancy double_occupancy(const ontic::Model& m, const ontic::Preparation& prep,
                                 const Roles& roles) {
    return occupancy_from(roles, [&](const std::vector<std::string>& labels) {
        return ontic::sequence_distribution(m, prep, labels);
    });
}

DoubleOccupancy double_occupancy(const quantum::Scenario& s, const quantum::Ket& initial,
                                 const Roles& roles) {
    return occupancy_from(roles, [&](const std::vector<std::string>& labels) {
        return rationalize(quantum::sequence_distribution(s, initial, labels));
    });
}

DoubleOccupancy double_occupancy(const NamedModel& m) { return double_occupancy(m, m.initial); }

DoubleOccupancy double_occupancy(const NamedModel& m, const std::string& prep) {
    if (m.is_quantum()) return double_occupancy(m.scenario, ket_of(m, prep), m.roles);
    return double_occupancy(m.model, preparation_of(m, prep), m.roles);
}

Report analyze(const NamedModel& m) { return analyze(m, m.initial); }

Report analyze(const NamedModel& m, const std::string& prep) {
    Report r;
    r.model = m.name;
    r.preparation = prep;
    r.stats = to_stats(m, prep);
    r.ndm_gaps = ndm_gap(r.stats);
    r.ndm = ndm_holds(r.stats);
    try {
        r.pps = pps_score(r.stats);
    } catch (const std::domain_error&) {
        r.pps = std::nullopt;
    }
    r.nim_bound = nim_bound_check(r.stats);
    r.lgi = lgi_value(r.stats);
    for (const auto& box : r.stats.boxes) {
        Rational gap = counterfactual_consistency(r.stats, box.measurement);
        r.counterfactual_gaps[box.measurement] = gap;
        if (gap > r.counterfactual_max) r.counterfactual_max = gap;
    }
    r.occupancy = double_occupancy(m, prep);

    // map eigen preparation names onto decomposition box labels
    auto eigen_map = [&]() {
        std::map<std::string, std::string> by_box;  // box label -> prep name
        const auto& names = m.roles.eigen_preparations;
        for (std::size_t i = 0; i < names.size() && i <= m.roles.boxes.size(); ++i) {
            std::string box = i < m.roles.boxes.size() ? m.roles.boxes[i].seen : "rest";
            by_box[box] = names[i];
        }
        return by_box;
    }();

    if (!m.is_quantum()) {
        std::map<std::string, ontic::Preparation> eigen_by_box;
        std::map<std::string, ontic::Preparation> eigen_by_name;
        for (const auto& [box, name] : eigen_map) {
            eigen_by_box[box] = preparation_of(m, name);
            eigen_by_name[name] = preparation_of(m, name);
        }
        r.mr = classify_mr(m.model, preparation_of(m, prep), eigen_by_box, m.roles);
        r.nim12 = nim1_nim2_check(m.model, preparation_of(m, prep), m.roles);
        if (!eigen_by_name.empty())
            r.eigen_gaps = eigenstate_ndm_gaps(m.model, eigen_by_name, m.roles);
    } else if (!eigen_map.empty()) {
        std::map<std::string, quantum::Ket> eigen_by_name;
        for (const auto& [box, name] : eigen_map) eigen_by_name[name] = ket_of(m, name);
        r.eigen_gaps = eigenstate_ndm_gaps(m.scenario, eigen_by_name, m.roles);
    }

    bool eigen_all_zero = !r.eigen_gaps.empty();
    for (const auto& [name, per_meas] : r.eigen_gaps)
        for (const auto& [label, gap] : per_meas)
            if (gap != 0) eigen_all_zero = false;
    r.mr1_contradiction = r.mr == MrClass::mr1 && eigen_all_zero && r.lgi.violated;
    return r;
}

}  // namespace threebox::classicality
