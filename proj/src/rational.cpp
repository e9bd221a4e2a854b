#include "scheme_forge/rational.hpp"

#include "scheme_forge/error.hpp"

#include <cctype>

namespace scheme_forge {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::IrrationalEigenvalue: return "IrrationalEigenvalue";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::NonIntegral: return "NonIntegral";
    case ErrorKind::NegativeKrein: return "NegativeKrein";
    case ErrorKind::VacuousConfig: return "VacuousConfig";
    case ErrorKind::NotVanishing: return "NotVanishing";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::NotHemisystem: return "NotHemisystem";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::StructureViolation: return "StructureViolation";
    case ErrorKind::AxiomFailure: return "AxiomFailure";
    case ErrorKind::NotWellDefined: return "NotWellDefined";
    case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

Rational::Rational(long num, long den) {
    if (den == 0)
        throw Error(ErrorKind::Parse, "zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0)
        throw Error(ErrorKind::Parse, "zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

namespace {

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
        s.remove_prefix(1);
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

mpz_class parse_integer(std::string_view s) {
    std::string digits(s);
    if (!digits.empty() && digits.front() == '+')
        digits.erase(0, 1);
    return mpz_class(digits, 10);
}

} // namespace

Rational Rational::parse(std::string_view text) {
    text = trim(text);
    const auto slash = text.find('/');
    const std::string_view num = trim(text.substr(0, slash));
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                                 : trim(text.substr(slash + 1));
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-')
        throw Error(ErrorKind::Parse, "not a rational literal", std::string(text));
    const mpz_class d = parse_integer(den);
    if (d == 0)
        throw Error(ErrorKind::Parse, "zero denominator", std::string(text));
    return Rational(parse_integer(num), d);
}

std::string Rational::str() const {
    if (is_integer())
        return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

long Rational::to_long() const {
    if (!is_integer() || !v_.get_num().fits_slong_p())
        throw Error(ErrorKind::NonIntegral, "value is not a machine integer", str());
    return v_.get_num().get_si();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero())
        throw Error(ErrorKind::Singular, "division by zero");
    v_ /= o.v_;
    return *this;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

} // namespace scheme_forge
