#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace threebox::quantum {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;
using Matrix = std::vector<Vector>;  // square, row-major

struct Ket {
    Vector amplitudes;
    std::size_t dim() const { return amplitudes.size(); }
};

struct Unitary {
    Matrix entries;
    std::size_t dim() const { return entries.size(); }
};

struct OutcomeProjector {
    std::string label;
    Matrix projector;
};

// Projective measurement: a complete family of orthogonal projectors.
struct Measurement {
    std::string name;
    std::vector<OutcomeProjector> outcomes;
};

struct Scenario {
    std::size_t dim = 0;
    Ket initial;
    std::map<std::string, Measurement> measurements;
    std::string do_nothing_label = "N";
};

struct ValidationIssue {
    std::string where;
    std::string what;
    double residual = 0.0;
};

// One Born branch: outcome label, its probability, the collapsed state.
struct Branch {
    std::string label;
    double probability = 0.0;
    Ket post;
};

// Joint probabilities over outcome strings, keyed by the outcome labels in
// measurement order. Zero-probability strings are kept so distributions
// from different engines share a key set.
using Distribution = std::map<std::vector<std::string>, double>;

Ket make_ket(Vector amplitudes);  // throws if not normalized within 1e-9
Ket basis_ket(std::size_t dim, std::size_t index);
Complex inner(const Ket& a, const Ket& b);
double norm(const Ket& a);

Matrix adjoint(const Matrix& m);
Matrix multiply(const Matrix& a, const Matrix& b);
Vector apply(const Matrix& m, const Vector& v);
Matrix outer(const Ket& a);  // |a><a|
Matrix identity(std::size_t dim);

bool is_unitary(const Unitary& u, double tol = 1e-9);

// Throws std::invalid_argument on dimension mismatch or a non-unitary input.
Ket apply_unitary(const Ket& state, const Unitary& u);

// Lueders rule: p = <s|P|s>, post = P|s>/sqrt(p). Branches with
// probability below 1e-12 are dropped.
std::vector<Branch> measure(const Ket& state, const Measurement& m);

// Chains measure() over the labels; the scenario's do-nothing label may
// appear anywhere and contributes no outcome. Unknown labels throw.
Distribution sequence_distribution(const Scenario& s, const Ket& initial,
                                   const std::vector<std::string>& labels);
Distribution sequence_distribution(const Scenario& s, const std::vector<std::string>& labels);

// Normalization of the initial state, hermiticity/idempotence of every
// projector, completeness of every outcome family. Empty when sound.
std::vector<ValidationIssue> validate_scenario(const Scenario& s);

// The box game in dimension 3: the ball starts in (|1>+|2>+|3>)/sqrt(3),
// M1 asks "box 1?", M2 asks "box 2?", MA post-selects on the
// (|1>+|2>-|3>)/sqrt(3) direction. "N" is the do-nothing label.
Scenario build_three_box_scenario();

// Shuffle unitaries bracketing the game: the initial one maps |3> to the
// starting superposition, the final one maps (|1>+|2>-|3>)/sqrt(3) to |3>.
Unitary three_box_initial_shuffle();
Unitary three_box_final_shuffle();

}  // namespace threebox::quantum
