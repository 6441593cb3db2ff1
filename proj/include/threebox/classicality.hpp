#pragma once

#include "threebox/model.hpp"
#include "threebox/ontic.hpp"
#include "threebox/stats.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace threebox::classicality {

// Detectability of the disturbance: how far checking a box first moves the
// post-selection marginal. One signed gap per intervening measurement,
// keyed by its label.
std::map<std::string, Rational> ndm_gap(const OperationalStats& s);

bool ndm_holds(const OperationalStats& s);  // all gaps exactly zero

// Sum over boxes of P(seen | post-selected). Exceeding 1 is only a paradox
// when the disturbance is undetectable, hence the flag combines both.
struct PpsScore {
    Rational score;
    bool ndm;
    bool true_paradox;  // score > 1 and ndm
};

// Throws std::domain_error when some box has P(post) = 0, since the
// conditionals are undefined there.
PpsScore pps_score(const OperationalStats& s);

// Were every box non-invasively measurable, the post-selected ball would
// have to be found at least as often with no check as seen-and-post-selected
// summed over boxes: slack = P_N(post) - sum_i P_Mi(seen_i, post) >= 0.
struct NimBound {
    Rational slack;
    bool holds;
};
NimBound nim_bound_check(const OperationalStats& s);

// Dichotomic-variable inequality for the two-box wager, evaluated on
// observable statistics: value = 4(P_N(post) - P_M1(seen,post)
// - P_M2(seen,post)) - 1. Any non-invasive macrorealist account keeps the
// value in [-1, 3]; below -1 counts as violated.
struct LgiResult {
    Rational value;
    bool violated;
};
LgiResult lgi_value(const OperationalStats& s);  // requires exactly two boxes

// |P(seen) recomposed through the post-selection partition - P(seen)
// directly|. Zero means conditioning on the final outcome introduces no
// counterfactual inconsistency for this box.
Rational counterfactual_consistency(const OperationalStats& s, const std::string& measurement);

struct BoxShare {
    std::string box;  // the box's seen outcome, or "rest" for the unopened one
    Rational weight;
    ontic::Preparation nu;
};
using Decomposition = std::vector<BoxShare>;

// Splits the preparation by which box each support state answers with
// certainty: a state belongs to box i when it yields seen_i surely and the
// other boxes' seen outcomes never; it belongs to the rest box when it
// yields every seen outcome never. nullopt when some support state answers
// no box definitely (then no macrorealist reading of the preparation
// exists).
std::optional<Decomposition> macrorealist_decomposition(const ontic::Model& m,
                                                        const ontic::Preparation& prep,
                                                        const Roles& roles);

enum class MrClass { mr1, mr2, mr3, not_macrorealist, undetermined };
std::string to_string(MrClass c);

// Grades how the decomposition's conditional states nu_i relate to the
// model's own "definitely in box i" preparations: identical (mr1), same
// support but reweighted (mr2), or needing states the eigen preparations
// never occupy (mr3). eigen_preps is keyed by box label as produced by the
// decomposition ("1", "2", ..., "rest"); empty map yields undetermined.
MrClass classify_mr(const ontic::Model& m, const ontic::Preparation& prep,
                    const std::map<std::string, ontic::Preparation>& eigen_preps,
                    const Roles& roles);

struct NimWitness {
    std::string box;
    std::string state;
};

struct Nim12Result {
    bool nim1 = false;  // conditioning on seeing the ball returns exactly nu_i
    bool nim2 = false;  // conditioning on not seeing it returns the rest mixture
    std::optional<NimWitness> nim1_witness, nim2_witness;
    bool via_decomposition = false;  // false: kernel-level fallback was used
};

// Distribution-level check against the decomposition when one exists;
// otherwise falls back to checking that consulted update rows restricted to
// the support are identities (seen rows for nim1, not-seen rows for nim2).
Nim12Result nim1_nim2_check(const ontic::Model& m, const ontic::Preparation& prep,
                            const Roles& roles);

// gaps[prep name][measurement] = |P_M(post) - P_N(post)| started from that
// eigen preparation.
std::map<std::string, std::map<std::string, Rational>> eigenstate_ndm_gaps(
    const ontic::Model& m, const std::map<std::string, ontic::Preparation>& eigen_preps,
    const Roles& roles);
std::map<std::string, std::map<std::string, Rational>> eigenstate_ndm_gaps(
    const quantum::Scenario& s, const std::map<std::string, quantum::Ket>& eigen_kets,
    const Roles& roles);

// Chance of finding the ball in both boxes, checking them in either order.
// Nonzero value exposes a two-ball cheat.
struct DoubleOccupancy {
    Rational forward;   // [M1, M2] -> (seen1, seen2)
    Rational backward;  // [M2, M1] -> (seen2, seen1)
    Rational value() const { return forward < backward ? backward : forward; }
};
DoubleOccupancy double_occupancy(const ontic::Model& m, const ontic::Preparation& prep,
                                 const Roles& roles);
DoubleOccupancy double_occupancy(const quantum::Scenario& s, const quantum::Ket& initial,
                                 const Roles& roles);
DoubleOccupancy double_occupancy(const NamedModel& m);
DoubleOccupancy double_occupancy(const NamedModel& m, const std::string& prep);

// Everything above bundled for one model and preparation.
struct Report {
    std::string model;
    std::string preparation;
    OperationalStats stats;
    std::map<std::string, Rational> ndm_gaps;
    bool ndm = false;
    std::optional<PpsScore> pps;  // absent when conditionals are undefined
    NimBound nim_bound;
    LgiResult lgi;
    std::map<std::string, Rational> counterfactual_gaps;
    Rational counterfactual_max;
    DoubleOccupancy occupancy;
    MrClass mr = MrClass::undetermined;
    std::optional<Nim12Result> nim12;                                  // ontic models only
    std::map<std::string, std::map<std::string, Rational>> eigen_gaps;  // when eigen preps exist
    // An MR1 model with all-zero eigen gaps cannot produce a violated LGI;
    // set when the statistics claim otherwise (logically impossible corner,
    // kept as a tripwire).
    bool mr1_contradiction = false;
};

Report analyze(const NamedModel& m);
Report analyze(const NamedModel& m, const std::string& prep);

}  // namespace threebox::classicality
