#include "nlhive/polyexpr.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "nlhive/errors.hpp"

namespace nlhive {

namespace {

// Recursive descent over
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := power (['*'|'/'] power)*     -- '*' may be omitted
//   power  := atom ['^' integer]
//   atom   := integer | var | '(' expr ')'
class Parser {
public:
    Parser(std::string_view s, char var) : s_(s), var_(var) {}

    RationalFunction parse() {
        auto r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("formula \"" + std::string(s_) + "\" at offset " + std::to_string(pos_) + ": " + why);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    int peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : -1;
    }

    static RationalFunction add(const RationalFunction& a, const RationalFunction& b, bool minus) {
        if (a.den == b.den) return {minus ? a.num - b.num : a.num + b.num, a.den};
        auto l = a.num * b.den, r = b.num * a.den;
        return {minus ? l - r : l + r, a.den * b.den};
    }

    RationalFunction expr() {
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = s_[pos_++] == '-';
        auto r = term();
        if (neg) r.num = -r.num;
        for (int c = peek(); c == '+' || c == '-'; c = peek()) {
            ++pos_;
            r = add(r, term(), c == '-');
        }
        return r;
    }

    RationalFunction term() {
        auto r = power();
        for (;;) {
            int c = peek();
            if (c == '*' || c == '/') {
                ++pos_;
                auto f = power();
                if (c == '*') {
                    r = {r.num * f.num, r.den * f.den};
                } else {
                    if (f.num.is_zero()) fail("division by zero");
                    r = {r.num * f.den, r.den * f.num};
                }
            } else if (c == '(' || c == var_ || std::isdigit(c)) {
                auto f = power();
                r = {r.num * f.num, r.den * f.den};
            } else {
                return r;
            }
        }
    }

    RationalFunction power() {
        auto a = atom();
        if (peek() != '^') return a;
        ++pos_;
        skip();
        auto e = integer();
        if (e > 1000) fail("exponent too large");
        auto k = static_cast<unsigned>(e.get_ui());
        return {a.num.pow(k), a.den.pow(k)};
    }

    mpz_class integer() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return mpz_class(std::string(s_.substr(start, pos_ - start)));
    }

    RationalFunction atom() {
        int c = peek();
        if (c == '(') {
            ++pos_;
            auto r = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return r;
        }
        if (c == var_) {
            ++pos_;
            return {QPoly::monomial(1, 1), QPoly{1}};
        }
        if (c >= 0 && std::isdigit(c)) return {QPoly({mpq_class(integer())}), QPoly{1}};
        fail(c < 0 ? "unexpected end" : "unexpected '" + std::string(1, static_cast<char>(c)) + "'");
    }

    std::string_view s_;
    char var_;
    std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_rational_function(std::string_view text, char var) { return Parser(text, var).parse(); }

QPoly parse_polynomial(std::string_view text, char var) {
    auto r = parse_rational_function(text, var);
    if (r.den.degree() != 0) throw ParseError("formula \"" + std::string(text) + "\" is not a polynomial");
    return r.num * mpq_class(1 / r.den.coeff(0));
}

bool same_function(const RationalFunction& a, const RationalFunction& b) { return a.num * b.den == b.num * a.den; }

std::vector<mpq_class> power_series(const RationalFunction& f, int t_max) {
    if (f.den.coeff(0) == 0) throw ParseError("rational function has a pole at 0");
    std::vector<mpq_class> s(static_cast<std::size_t>(std::max(t_max, -1) + 1));
    for (int k = 0; k <= t_max; ++k) {
        mpq_class v = f.num.coeff(k);
        for (int j = 1; j <= std::min(k, f.den.degree()); ++j) v -= f.den.coeff(j) * s[k - j];
        s[k] = v / f.den.coeff(0);
    }
    return s;
}

}  // namespace nlhive
