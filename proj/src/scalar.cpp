#include "absconic/scalar.hpp"

#include "absconic/error.hpp"

#include <cctype>

namespace absconic {

namespace {

bool is_integer_literal(std::string_view s)
{
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rat parse_rat(std::string_view text)
{
    text = trim(text);
    if (text.find('.') != std::string_view::npos || text.find('e') != std::string_view::npos
        || text.find('E') != std::string_view::npos) {
        throw ParseError("decimal number '" + std::string(text)
                         + "' rejected; write it as an exact fraction p/q");
    }
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                            : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
        throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    std::string n(num[0] == '+' ? num.substr(1) : num);
    Rat r;
    r.get_num() = Int(n, 10);
    r.get_den() = Int(std::string(den), 10);
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Rat& r) { return r.get_str(10); }

GaussRat GaussRat::inverse() const
{
    if (is_zero()) throw DomainError("division by zero");
    if (is_real()) return GaussRat(Rat(1) / re_);
    Rat n = norm();
    return {re_ / n, -im_ / n};
}

GaussRat& GaussRat::operator+=(const GaussRat& o)
{
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o)
{
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o)
{
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    Rat r = re_ * o.re_ - im_ * o.im_;
    Rat i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussRat& GaussRat::operator/=(const GaussRat& o)
{
    if (o.is_real()) {
        if (sgn(o.re_) == 0) throw DomainError("division by zero");
        re_ /= o.re_;
        if (sgn(im_) != 0) im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

std::strong_ordering operator<=>(const GaussRat& a, const GaussRat& b)
{
    int c = cmp(a.re_, b.re_);
    if (c == 0) c = cmp(a.im_, b.im_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

GaussRat pow(GaussRat base, unsigned exp)
{
    GaussRat result(1);
    while (exp != 0) {
        if (exp & 1U) result *= base;
        exp >>= 1U;
        if (exp != 0) base *= base;
    }
    return result;
}

std::string to_string(const GaussRat& z)
{
    if (z.is_real()) return to_string(z.re());
    std::string im = to_string(z.im());
    if (sgn(z.re()) == 0) return im + "*i";
    return to_string(z.re()) + (sgn(z.im()) > 0 ? "+" : "") + im + "*i";
}

std::ostream& operator<<(std::ostream& os, const GaussRat& z) { return os << to_string(z); }

GaussRat parse_gauss(std::string_view text)
{
    text = trim(text);
    if (text.empty()) throw ParseError("empty number");
    // Split at a sign that is not the leading one into real and imaginary parts.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = text.size(); k-- > 1;) {
        if (text[k] == '+' || text[k] == '-') {
            split = k;
            break;
        }
    }
    auto parse_imag = [](std::string_view s) -> Rat {
        // s ends with 'i', optionally "*i".
        s.remove_suffix(1);
        if (!s.empty() && s.back() == '*') s.remove_suffix(1);
        if (s.empty() || s == "+") return Rat(1);
        if (s == "-") return Rat(-1);
        return parse_rat(s);
    };
    if (text.back() != 'i') {
        return GaussRat(parse_rat(text));
    }
    if (split == std::string_view::npos) {
        return GaussRat(Rat(0), parse_imag(text));
    }
    return GaussRat(parse_rat(text.substr(0, split)), parse_imag(text.substr(split)));
}

std::size_t hash_value(const Rat& r)
{
    return std::hash<std::string>{}(r.get_str(16));
}

}  // namespace absconic
