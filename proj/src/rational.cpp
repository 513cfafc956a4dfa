#include "specklab/rational.hpp"

#include <stdexcept>

namespace specklab {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (c < '0' || c > '9')
            return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view s = text;
    while (!s.empty() && s.front() == ' ')
        s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ')
        s.remove_suffix(1);

    bool negative = false;
    std::string_view body = s;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    Rational result;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
        Integer d{std::string(den)};
        if (d == 0)
            throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        result = Rational(Integer(std::string(num)), d);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto whole = body.substr(0, dot);
        auto frac = body.substr(dot + 1);
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))
            || (whole.empty() && frac.empty()))
            throw std::invalid_argument("malformed decimal: '" + std::string(text) + "'");
        Integer scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i)
            scale *= 10;
        Integer w = whole.empty() ? Integer(0) : Integer(std::string(whole));
        Integer f = frac.empty() ? Integer(0) : Integer(std::string(frac));
        result = Rational(w * scale + f, scale);
    } else {
        if (!all_digits(body))
            throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
        result = Rational(Integer(std::string(body)));
    }
    result.canonicalize();
    return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

double to_double(const Rational& q)
{
    return q.get_d();
}

std::vector<Integer> primitive_integer_vector(const RationalVector& v)
{
    Integer lcm = 1;
    for (const auto& x : v)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> out;
    out.reserve(v.size());
    Integer g = 0;
    for (const auto& x : v) {
        Integer scaled = x.get_num() * (lcm / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
        out.push_back(std::move(scaled));
    }
    if (g > 1)
        for (auto& x : out)
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return out;
}

Integer binomial(unsigned long n, unsigned long k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace specklab
