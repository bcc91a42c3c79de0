// Recursive-descent parser for the polynomial expression grammar.
#include <cctype>
#include <charconv>

#include "ffstat/mpoly.hpp"

namespace ffstat {
namespace {

class Parser {
public:
    Parser(std::string_view text, std::size_t n, FieldPtr ctx) : text_(text), n_(n), ctx_(std::move(ctx)) {}

    MultiPoly parse() {
        skip_ws();
        MultiPoly result = expr();
        skip_ws();
        if (pos_ < text_.size()) {
            if (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '(' || text_[pos_] == '[')
                throw SyntaxError(pos_, "implicit multiplication is not allowed; use '*'");
            throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
        }
        return result;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    MultiPoly expr() {
        MultiPoly acc = term();
        while (true) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc = acc + term();
            } else if (c == '-') {
                ++pos_;
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    MultiPoly term() {
        MultiPoly acc = unary();
        while (peek() == '*') {
            ++pos_;
            acc = acc * unary();
        }
        return acc;
    }

    MultiPoly unary() {
        if (peek() == '-') {
            ++pos_;
            return unary().neg();
        }
        return power();
    }

    MultiPoly power() {
        MultiPoly base = primary();
        if (peek() == '^') {
            ++pos_;
            char c = peek();
            if (c == '-') throw Error(ErrorCode::NegativeExponent, "negative exponent at position " + std::to_string(pos_));
            if (!std::isdigit(static_cast<unsigned char>(c))) throw SyntaxError(pos_, "expected exponent after '^'");
            std::uint64_t e = number();
            if (peek() == '^') throw SyntaxError(pos_, "chained exponents need parentheses");
            return base.pow(e);
        }
        return base;
    }

    std::uint64_t number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (ec != std::errc() || start == pos_) throw SyntaxError(start, "bad integer literal");
        return v;
    }

    MultiPoly primary() {
        const char c = peek();
        const std::size_t start = pos_;
        if (c == '(') {
            ++pos_;
            MultiPoly inner = expr();
            if (peek() != ')') throw SyntaxError(pos_, "expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t v = number();
            return MultiPoly::constant(ctx_, n_, ctx_->from_int(static_cast<std::int64_t>(v % ctx_->p())));
        }
        if (c == '[') return MultiPoly::constant(ctx_, n_, coordinate_list());
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            std::string_view name = text_.substr(start, pos_ - start);
            return MultiPoly::variable(ctx_, n_, variable_index(name, start));
        }
        if (c == '\0') throw SyntaxError(pos_, "unexpected end of expression");
        throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
    }

    FieldElement coordinate_list() {
        ++pos_;  // '['
        std::vector<std::int64_t> coords;
        while (true) {
            bool negative = false;
            if (peek() == '-') {
                negative = true;
                ++pos_;
            }
            if (!std::isdigit(static_cast<unsigned char>(peek()))) throw SyntaxError(pos_, "expected coordinate");
            auto v = static_cast<std::int64_t>(number() % ctx_->p());
            coords.push_back(negative ? -v : v);
            char c = peek();
            if (c == ',') {
                ++pos_;
                continue;
            }
            if (c == ']') {
                ++pos_;
                break;
            }
            throw SyntaxError(pos_, "expected ',' or ']' in coordinate list");
        }
        if (coords.size() > static_cast<std::size_t>(ctx_->k()))
            throw SyntaxError(pos_, "coordinate list longer than the extension degree");
        return ctx_->from_coords(coords);
    }

    std::size_t variable_index(std::string_view name, std::size_t at) const {
        if (name == "t") return 0;
        if (name.size() >= 2 && name[0] == 'A') {
            std::size_t i = 0;
            auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), i);
            if (ec == std::errc() && ptr == name.data() + name.size() && i >= 1 && i <= n_ && name[1] != '0') return i;
        }
        throw Error(ErrorCode::UnknownVariable,
                    "unknown variable '" + std::string(name) + "' at position " + std::to_string(at) +
                        " (expected t or A1..A" + std::to_string(n_) + ")");
    }

    std::string_view text_;
    std::size_t n_;
    FieldPtr ctx_;
    std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view expr, std::size_t n, FieldPtr ctx) { return Parser(expr, n, std::move(ctx)).parse(); }

std::size_t infer_variable_count(std::string_view expr) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < expr.size(); ++i) {
        if (expr[i] != 'A') continue;
        if (i > 0 && std::isalnum(static_cast<unsigned char>(expr[i - 1]))) continue;
        std::size_t j = i + 1;
        std::size_t v = 0;
        while (j < expr.size() && std::isdigit(static_cast<unsigned char>(expr[j]))) v = v * 10 + static_cast<std::size_t>(expr[j++] - '0');
        if (j > i + 1) n = std::max(n, v);
    }
    return n;
}

}  // namespace ffstat
