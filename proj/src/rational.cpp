#include "qpoly/rational.hpp"

#include <cctype>

#include "qpoly/errors.hpp"

namespace qpoly {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string original(text);
    std::string_view num = text;
    std::string_view den;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    std::string_view digits = num;
    if (!digits.empty() && (digits.front() == '+' || digits.front() == '-'))
        digits.remove_prefix(1);
    if (!all_digits(digits))
        throw InputError("bad rational \"" + original + "\": numerator must be a signed decimal integer");
    if (text.find('/') != std::string_view::npos) {
        if (!all_digits(den))
            throw InputError("bad rational \"" + original + "\": denominator must be a positive decimal integer");
        if (Integer(std::string(den)) == 0)
            throw InputError("bad rational \"" + original + "\": zero denominator");
    }
    std::string cleaned = original;
    if (cleaned.front() == '+') cleaned.erase(0, 1);
    Rational q(cleaned);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();  // direct Rational(a, b) construction may be uncanonical
    return c.get_str();
}

std::string to_string(const std::vector<Rational>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += to_string(v[i]);
    }
    out += ")";
    return out;
}

}  // namespace qpoly
