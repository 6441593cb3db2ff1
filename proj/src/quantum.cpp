#include "threebox/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace threebox::quantum {

namespace {

constexpr double kNormTol = 1e-9;
constexpr double kBranchCutoff = 1e-12;

void require_square(const Matrix& m, const char* what) {
    for (const auto& row : m)
        if (row.size() != m.size()) throw std::invalid_argument(std::string(what) + ": matrix not square");
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
    return worst;
}

}  // namespace

Ket make_ket(Vector amplitudes) {
    Ket k{std::move(amplitudes)};
    if (std::abs(norm(k) - 1.0) > kNormTol)
        throw std::invalid_argument("ket is not normalized");
    return k;
}

Ket basis_ket(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::invalid_argument("basis index out of range");
    Vector v(dim, Complex(0.0, 0.0));
    v[index] = Complex(1.0, 0.0);
    return Ket{std::move(v)};
}

Complex inner(const Ket& a, const Ket& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    return acc;
}

double norm(const Ket& a) {
    double acc = 0.0;
    for (const auto& c : a.amplitudes) acc += std::norm(c);
    return std::sqrt(acc);
}

Matrix adjoint(const Matrix& m) {
    require_square(m, "adjoint");
    Matrix out(m.size(), Vector(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out[j][i] = std::conj(m[i][j]);
    return out;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    require_square(a, "multiply");
    require_square(b, "multiply");
    if (a.size() != b.size()) throw std::invalid_argument("multiply: dimension mismatch");
    Matrix out(a.size(), Vector(a.size(), Complex(0.0, 0.0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < a.size(); ++k)
            for (std::size_t j = 0; j < a.size(); ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

Vector apply(const Matrix& m, const Vector& v) {
    require_square(m, "apply");
    if (m.size() != v.size()) throw std::invalid_argument("apply: dimension mismatch");
    Vector out(v.size(), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

Matrix outer(const Ket& a) {
    Matrix out(a.dim(), Vector(a.dim()));
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            out[i][j] = a.amplitudes[i] * std::conj(a.amplitudes[j]);
    return out;
}

Matrix identity(std::size_t dim) {
    Matrix out(dim, Vector(dim, Complex(0.0, 0.0)));
    for (std::size_t i = 0; i < dim; ++i) out[i][i] = Complex(1.0, 0.0);
    return out;
}

bool is_unitary(const Unitary& u, double tol) {
    require_square(u.entries, "is_unitary");
    Matrix product = multiply(adjoint(u.entries), u.entries);
    return max_abs_diff(product, identity(u.dim())) <= tol;
}

Ket apply_unitary(const Ket& state, const Unitary& u) {
    if (u.dim() != state.dim()) throw std::invalid_argument("apply_unitary: dimension mismatch");
    if (!is_unitary(u)) throw std::invalid_argument("apply_unitary: matrix is not unitary");
    return Ket{apply(u.entries, state.amplitudes)};
}

std::vector<Branch> measure(const Ket& state, const Measurement& m) {
    std::vector<Branch> branches;
    for (const auto& outcome : m.outcomes) {
        if (outcome.projector.size() != state.dim())
            throw std::invalid_argument("measure: projector dimension mismatch");
        Vector projected = apply(outcome.projector, state.amplitudes);
        double p = 0.0;
        for (const auto& c : projected) p += std::norm(c);
        if (p < kBranchCutoff) continue;
        double scale = 1.0 / std::sqrt(p);
        for (auto& c : projected) c *= scale;
        branches.push_back(Branch{outcome.label, p, Ket{std::move(projected)}});
    }
    return branches;
}

Distribution sequence_distribution(const Scenario& s, const Ket& initial,
                                   const std::vector<std::string>& labels) {
    std::vector<const Measurement*> steps;
    for (const auto& label : labels) {
        if (label == s.do_nothing_label) continue;
        auto it = s.measurements.find(label);
        if (it == s.measurements.end())
            throw std::invalid_argument("unknown measurement label: '" + label + "'");
        steps.push_back(&it->second);
    }

    Distribution dist;
    // seed the full outcome product with zeros so impossible strings show up
    std::function<void(std::size_t, std::vector<std::string>&)> seed =
        [&](std::size_t depth, std::vector<std::string>& key) {
            if (depth == steps.size()) {
                dist[key] = 0.0;
                return;
            }
            for (const auto& outcome : steps[depth]->outcomes) {
                key.push_back(outcome.label);
                seed(depth + 1, key);
                key.pop_back();
            }
        };
    std::vector<std::string> key;
    seed(0, key);

    std::function<void(std::size_t, const Ket&, double, std::vector<std::string>&)> walk =
        [&](std::size_t depth, const Ket& state, double p, std::vector<std::string>& prefix) {
            if (depth == steps.size()) {
                dist[prefix] += p;
                return;
            }
            for (const auto& branch : measure(state, *steps[depth])) {
                prefix.push_back(branch.label);
                walk(depth + 1, branch.post, p * branch.probability, prefix);
                prefix.pop_back();
            }
        };
    std::vector<std::string> prefix;
    walk(0, initial, 1.0, prefix);
    return dist;
}

Distribution sequence_distribution(const Scenario& s, const std::vector<std::string>& labels) {
    return sequence_distribution(s, s.initial, labels);
}

std::vector<ValidationIssue> validate_scenario(const Scenario& s) {
    std::vector<ValidationIssue> issues;
    if (s.initial.dim() != s.dim)
        issues.push_back({"initial", "dimension mismatch", 0.0});
    double n = norm(s.initial);
    if (std::abs(n - 1.0) > kNormTol)
        issues.push_back({"initial", "not normalized", std::abs(n - 1.0)});
    for (const auto& [label, m] : s.measurements) {
        Matrix sum = Matrix(s.dim, Vector(s.dim, Complex(0.0, 0.0)));
        for (const auto& outcome : m.outcomes) {
            const std::string where = label + ":" + outcome.label;
            if (outcome.projector.size() != s.dim) {
                issues.push_back({where, "projector dimension mismatch", 0.0});
                continue;
            }
            double herm = max_abs_diff(outcome.projector, adjoint(outcome.projector));
            if (herm > kNormTol) issues.push_back({where, "projector not hermitian", herm});
            double idem = max_abs_diff(multiply(outcome.projector, outcome.projector), outcome.projector);
            if (idem > kNormTol) issues.push_back({where, "projector not idempotent", idem});
            for (std::size_t i = 0; i < s.dim; ++i)
                for (std::size_t j = 0; j < s.dim; ++j) sum[i][j] += outcome.projector[i][j];
        }
        if (!m.outcomes.empty() && sum.size() == s.dim) {
            double comp = max_abs_diff(sum, identity(s.dim));
            if (comp > kNormTol) issues.push_back({label, "outcome family not complete", comp});
        }
    }
    return issues;
}

Scenario build_three_box_scenario() {
    const double r = 1.0 / std::sqrt(3.0);
    Scenario s;
    s.dim = 3;
    s.initial = make_ket({Complex(r, 0), Complex(r, 0), Complex(r, 0)});

    Ket psi_f = make_ket({Complex(r, 0), Complex(r, 0), Complex(-r, 0)});
    Matrix p1 = outer(basis_ket(3, 0));
    Matrix p2 = outer(basis_ket(3, 1));
    Matrix p3 = outer(basis_ket(3, 2));
    auto sum = [](const Matrix& a, const Matrix& b) {
        Matrix out = a;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < a.size(); ++j) out[i][j] += b[i][j];
        return out;
    };
    auto complement = [&](const Matrix& p) {
        Matrix out = identity(3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) out[i][j] -= p[i][j];
        return out;
    };

    s.measurements["M1"] = Measurement{"M1", {{"1", p1}, {"not1", sum(p2, p3)}}};
    s.measurements["M2"] = Measurement{"M2", {{"2", p2}, {"not2", sum(p1, p3)}}};
    s.measurements["MA"] = Measurement{"MA", {{"A", outer(psi_f)}, {"notA", complement(outer(psi_f))}}};
    s.do_nothing_label = "N";
    return s;
}

Unitary three_box_initial_shuffle() {
    const double a = 1.0 / std::sqrt(2.0);
    const double b = 1.0 / std::sqrt(6.0);
    const double c = 1.0 / std::sqrt(3.0);
    // columns: images of |1>, |2>, |3>; the last column is the game's start
    return Unitary{{{Complex(a, 0), Complex(b, 0), Complex(c, 0)},
                    {Complex(-a, 0), Complex(b, 0), Complex(c, 0)},
                    {Complex(0, 0), Complex(-2 * b, 0), Complex(c, 0)}}};
}

Unitary three_box_final_shuffle() {
    const double a = 1.0 / std::sqrt(2.0);
    const double b = 1.0 / std::sqrt(6.0);
    const double c = 1.0 / std::sqrt(3.0);
    // rows chosen so (|1>+|2>-|3>)/sqrt(3) lands on |3>
    return Unitary{{{Complex(a, 0), Complex(-a, 0), Complex(0, 0)},
                    {Complex(b, 0), Complex(b, 0), Complex(2 * b, 0)},
                    {Complex(c, 0), Complex(c, 0), Complex(-c, 0)}}};
}

}  // namespace threebox::quantum
