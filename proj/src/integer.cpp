#include "chipfire/integer.hpp"

#include "chipfire/error.hpp"

#include <cctype>
#include <sstream>

namespace chipfire {

Integer binomial(std::uint64_t n, std::uint64_t k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Integer factorial(std::uint64_t n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Integer floor_of(const Rational& q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil_of(const Rational& q)
{
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer mod_positive(const Integer& a, const Integer& m)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::size_t IntegerHash::operator()(const Integer& v) const noexcept
{
    const mpz_srcptr z = v.get_mpz_t();
    std::size_t h = static_cast<std::size_t>(z->_mp_size) * 0x9e3779b97f4a7c15ULL;
    const std::size_t limbs = mpz_size(z);
    for (std::size_t i = 0; i < limbs; ++i) {
        h ^= static_cast<std::size_t>(mpz_getlimbn(z, i)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

std::size_t IntegerVectorHash::operator()(std::span<const Integer> v) const noexcept
{
    IntegerHash eh;
    std::size_t h = v.size();
    for (const auto& e : v) {
        h ^= eh(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

std::vector<Integer> parse_integer_list(const std::string& text)
{
    std::vector<Integer> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t b = 0;
        std::size_t e = item.size();
        while (b < e && std::isspace(static_cast<unsigned char>(item[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(item[e - 1]))) --e;
        std::string tok = item.substr(b, e - b);
        if (!tok.empty() && tok[0] == '+') tok.erase(0, 1);
        bool ok = !tok.empty();
        for (std::size_t i = 0; ok && i < tok.size(); ++i) {
            const char ch = tok[i];
            ok = std::isdigit(static_cast<unsigned char>(ch)) || (i == 0 && ch == '-' && tok.size() > 1);
        }
        if (!ok) throw ParseError("invalid integer '" + item + "' in list '" + text + "'");
        out.emplace_back(tok, 10);
    }
    if (out.empty() || (!text.empty() && text.back() == ',')) {
        throw ParseError("invalid integer list '" + text + "'");
    }
    return out;
}

std::string join(std::span<const Integer> values, const std::string& sep)
{
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += sep;
        s += values[i].get_str();
    }
    return s;
}

}  // namespace chipfire
