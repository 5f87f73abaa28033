#include "homalg/scalar.hpp"

#include <cctype>

namespace homalg {

namespace {

bool is_integer_text(std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
    if (!is_integer_text(num, true) || (slash != std::string_view::npos && !is_integer_text(den, false)))
        throw ParseError("malformed rational '" + std::string(text) + "'");
    std::string n(num[0] == '+' ? num.substr(1) : num);
    mpz_class p(n, 10);
    mpz_class q(1);
    if (slash != std::string_view::npos) q = mpz_class(std::string(den), 10);
    if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Scalar r(p, q);
    r.canonicalize();
    return r;
}

std::string format_scalar(const Scalar& s) {
    if (s.get_den() == 1) return s.get_num().get_str();
    return s.get_num().get_str() + "/" + s.get_den().get_str();
}

}  // namespace homalg
