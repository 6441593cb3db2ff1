#pragma once

#include "threebox/model.hpp"

#include <string>
#include <vector>

namespace threebox::zoo {

// The three-box wager played on quantum state vectors. Preparations:
// initial (the equal superposition), e1/e2/e3 (ball definitely in a box),
// s13/s23 (two-box superpositions).
NamedModel quantum_three_box();

// Four classical states with a both-balls state lambda4. Reproduces the
// quantum single-check tables with identity kernels, but checking both
// boxes finds two balls with probability 1/9.
NamedModel cheating_model();

// Sixteen classical states (four per occupied box, eight for box 3) with
// within-box update kernels. Reproduces the quantum statistics exactly for
// every preparation it names, at the price of conditional states the eigen
// preparations never occupy.
NamedModel mr3_model();

// Same state space and kernels as mr3_model with smeared eigen
// preparations. Requires 0 < a1 < 1/3, 0 < a2 < 1/3, a, b, c > 0 with
// a + b + c < 1/3; throws std::invalid_argument otherwise.
NamedModel mr2_model(const Rational& a1, const Rational& a2, const Rational& a,
                     const Rational& b, const Rational& c);

// Card-game model: detectable disturbance (gap 1/8) with P_N(A) = 0.
// Outcome/update rows follow the published table verbatim; see
// repeat_instability for its known repeat-measurement quirks.
NamedModel kirkpatrick_model();

// Variant with first-check probabilities 1/3, gap 1/6.
NamedModel ravon_vaidman_model();

// Ball in a four-position box, measured by shaking a compartment. Strongly
// macrorealist (MR1) and NIM2, yet the disturbance is detectable (gap 1/4).
NamedModel leifer_spekkens_model();

std::vector<std::string> builtin_names();

// Registry lookup; "mr2" gets the documented default parameters
// (1/100 everywhere). Throws std::invalid_argument on unknown names.
NamedModel builtin(const std::string& name);

struct InstabilityRecord {
    std::string measurement, state, outcome, target;
};

// Consulted update rows that can land on a state answering an immediate
// repeat of the same measurement differently. Informational: the published
// card-game tables have such rows.
std::vector<InstabilityRecord> repeat_instability(const ontic::Model& m);

}  // namespace threebox::zoo
