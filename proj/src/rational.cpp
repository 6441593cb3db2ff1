#include "threebox/rational.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace threebox {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string body;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) body += c;
    bool negative = false;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        negative = body[0] == '-';
        body = body.substr(1);
    }
    std::string num = body, den = "1";
    if (auto slash = body.find('/'); slash != std::string::npos) {
        num = body.substr(0, slash);
        den = body.substr(slash + 1);
    }
    if (!all_digits(num) || !all_digits(den))
        throw std::invalid_argument("malformed rational: '" + text + "'");
    BigInt n(num), d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    Rational r(n, d);
    return negative ? -r : r;
}

std::string format_rational(const Rational& value) {
    std::ostringstream out;
    out << value;
    return out.str();
}

Rational snap_to_rational(double x, std::int64_t max_denominator, double tol) {
    if (!std::isfinite(x)) throw std::invalid_argument("cannot snap non-finite value");
    // Walk the continued-fraction convergents h/k of x until the
    // denominator budget runs out; the last admissible convergent is the
    // best approximation with k <= max_denominator.
    double v = x;
    std::int64_t h_prev = 1, k_prev = 0, h = 0, k = 1;  // conv(-1), conv(0) seeds
    {
        double a0 = std::floor(v);
        h = static_cast<std::int64_t>(a0);
        k = 1;
    }
    double frac = v - std::floor(v);
    for (int step = 0; step < 64; ++step) {
        if (std::abs(static_cast<double>(h) / static_cast<double>(k) - x) <= tol)
            return Rational(BigInt(h), BigInt(k));
        if (frac <= 0.0) break;
        v = 1.0 / frac;
        double a = std::floor(v);
        if (a > static_cast<double>(max_denominator)) break;
        frac = v - a;
        std::int64_t h_next = static_cast<std::int64_t>(a) * h + h_prev;
        std::int64_t k_next = static_cast<std::int64_t>(a) * k + k_prev;
        if (k_next > max_denominator) break;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
    }
    if (std::abs(static_cast<double>(h) / static_cast<double>(k) - x) <= tol)
        return Rational(BigInt(h), BigInt(k));
    return Rational(x);  // exact dyadic fallback
}

}  // namespace threebox
