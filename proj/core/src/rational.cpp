#include "gradeq/rational.hpp"

#include "gradeq/errors.hpp"

#include <cctype>

namespace gradeq {

namespace {

bool is_integer_text(std::string_view text) {
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        text.remove_prefix(1);
    }
    if (text.empty()) {
        return false;
    }
    for (char c : text) {
        if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
            return false;
        }
    }
    return true;
}

boost::multiprecision::cpp_int parse_integer(std::string_view text) {
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    return boost::multiprecision::cpp_int(std::string(text));
}

} // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den) || den.front() == '-') {
        throw ValidationError("malformed rational '" + std::string(text) + "'");
    }
    const auto d = parse_integer(den);
    if (d == 0) {
        throw ValidationError("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(parse_integer(num), d);
}

std::string to_string(const Rational& value) {
    if (denominator(value) == 1) {
        return numerator(value).str();
    }
    return numerator(value).str() + "/" + denominator(value).str();
}

} // namespace gradeq
