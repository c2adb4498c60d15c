#include "redist/rule_parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "redist/error.hpp"

namespace redist {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Rule rule() {
        skip_space();
        const std::size_t start = pos_;
        const auto word = identifier();
        if (word == "lf") return Rule::laissez_faire();
        if (word == "full") return Rule::full();
        if (word == "prop") return Rule::proportional();
        if (word == "nafr") return Rule::need_adjusted_full();
        if (word == "ab") {
            expect(':');
            expect_label('A');
            auto a = fn();
            expect(',');
            expect_label('B');
            auto b = fn();
            return Rule::ab(std::move(a), std::move(b));
        }
        if (word == "afam") {
            expect(':');
            expect_label('A');
            return Rule::a_family(fn());
        }
        if (word == "bfam") {
            expect(':');
            expect_label('B');
            return Rule::b_family(fn());
        }
        if (word == "lin" || word == "lindual") {
            expect(':');
            const double a1 = number();
            expect(',');
            const double a2 = number();
            return word == "lin" ? Rule::linear(a1, a2) : Rule::linear_dual(a1, a2);
        }
        if (word == "convex") {
            expect('(');
            auto first = rule();
            expect(';');
            auto second = rule();
            expect(';');
            const std::size_t at = pos_;
            const double weight = number();
            expect(')');
            try {
                return Rule::convex(std::move(first), std::move(second), weight);
            } catch (const Error& e) {
                fail_at(at, std::string("weight outside [0, 1]"));
            }
        }
        if (word == "dual") {
            expect('(');
            auto inner = rule();
            expect(')');
            return Rule::dual(std::move(inner));
        }
        fail_at(start, "unknown rule");
    }

    ScalarFn fn() {
        skip_space();
        const std::size_t start = pos_;
        const auto word = identifier();
        if (word == "id") return ScalarFn::identity();
        if (word == "const") {
            expect(':');
            return ScalarFn::constant(number());
        }
        if (word == "scale") {
            expect(':');
            return ScalarFn::scale(number());
        }
        if (word == "affine") {
            expect(':');
            const double slope = number();
            expect(',');
            return ScalarFn::affine(slope, number());
        }
        if (word == "poly") {
            expect(':');
            std::vector<double> coefficients{number()};
            while (peek_is(',') && starts_number(pos_ + 1)) {
                ++pos_;
                coefficients.push_back(number());
            }
            return ScalarFn::polynomial(std::move(coefficients));
        }
        fail_at(start, "unknown function");
    }

    bool at_end() {
        skip_space();
        return pos_ >= text_.size();
    }

    bool consume(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail_trailing() { fail_at(pos_, "unexpected trailing input"); }

private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string_view identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail_at(start, "expected a name");
        return text_.substr(start, pos_ - start);
    }

    bool peek_is(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool starts_number(std::size_t at) const {
        while (at < text_.size() && std::isspace(static_cast<unsigned char>(text_[at]))) ++at;
        if (at >= text_.size()) return false;
        const char c = text_[at];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
    }

    void expect(char c) {
        if (!consume(c)) fail_at(pos_, std::string("expected '") + c + "'");
    }

    void expect_label(char label) {
        skip_space();
        if (pos_ < text_.size() && std::toupper(static_cast<unsigned char>(text_[pos_])) == label) {
            ++pos_;
            expect('=');
            return;
        }
        fail_at(pos_, std::string("expected '") + label + "='");
    }

    double number() {
        skip_space();
        const std::size_t start = pos_;
        std::size_t from = pos_;
        if (from < text_.size() && text_[from] == '+') ++from;
        double value = 0.0;
        const char* first = text_.data() + from;
        const char* last = text_.data() + text_.size();
        auto [end, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || end == first) fail_at(start, "expected a number");
        if (!std::isfinite(value)) fail_at(start, "number must be finite");
        pos_ = static_cast<std::size_t>(end - text_.data());
        return value;
    }

    std::string token_at(std::size_t at) const {
        if (at >= text_.size()) return "<end of input>";
        std::size_t end = at;
        while (end < text_.size() && end - at < 24) {
            const char c = text_[end];
            if ((c == ',' || c == ';' || c == '(' || c == ')') && end > at) break;
            ++end;
            if (c == ',' || c == ';' || c == '(' || c == ')') break;
        }
        return std::string(text_.substr(at, end - at));
    }

    [[noreturn]] void fail_at(std::size_t at, const std::string& why) const {
        throw Error(ErrorCode::ParseError, why + " at offset " + std::to_string(at) + " near '" +
                                               token_at(at) + "' in \"" + std::string(text_) + "\"");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Rule parse_rule(std::string_view text) {
    Parser parser(text);
    auto rule = parser.rule();
    if (!parser.at_end()) parser.fail_trailing();
    return rule;
}

ScalarFn parse_scalar_fn(std::string_view text) {
    Parser parser(text);
    auto fn = parser.fn();
    if (!parser.at_end()) parser.fail_trailing();
    return fn;
}

std::vector<Rule> parse_rule_list(std::string_view text) {
    Parser parser(text);
    std::vector<Rule> rules{parser.rule()};
    while (parser.consume(',')) rules.push_back(parser.rule());
    if (!parser.at_end()) parser.fail_trailing();
    return rules;
}

}  // namespace redist
