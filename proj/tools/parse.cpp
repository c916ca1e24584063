#include <cctype>
#include <string>

#include "cli.hpp"
#include "holomnum/error.hpp"

namespace holomnum::cli {

namespace {

/// Recursive-descent parser over the Ore algebra Q[x]<Dx>:
///   expr  := term (('+' | '-') term)*
///   term  := unary (('*' | '/') unary)*
///   unary := ('+' | '-') unary | power
///   power := atom ('^' integer)?
///   atom  := number | x | Dx | (expr)
class OperatorParser {
public:
    OperatorParser(std::string_view s, bool allow_dx) : s_(s), allow_dx_(allow_dx) {}

    DiffOperator parse() {
        DiffOperator op = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
        return op;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static DiffOperator constant(const mpq_class& v) {
        return DiffOperator::from_polynomial(Polynomial::constant(FieldElem(v)));
    }
    static bool is_constant(const DiffOperator& op, mpq_class& value) {
        if (op.is_zero()) {
            value = 0;
            return true;
        }
        if (op.order() != 0 || op.degree() != 0) return false;
        value = op.coeff(0).coeff(0).rational_value();
        return true;
    }

    DiffOperator expr() {
        DiffOperator lhs = term();
        for (;;) {
            if (accept('+')) lhs = lhs + term();
            else if (accept('-')) lhs = lhs - term();
            else return lhs;
        }
    }
    DiffOperator term() {
        DiffOperator lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = lhs * unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                mpq_class c;
                if (!is_constant(unary(), c)) throw ParseError("division by a non-constant", at);
                if (c == 0) throw ParseError("division by zero", at);
                lhs = lhs * constant(1 / c);
            } else {
                return lhs;
            }
        }
    }
    DiffOperator unary() {
        if (accept('-')) return constant(-1) * unary();
        if (accept('+')) return unary();
        return power();
    }
    DiffOperator power() {
        DiffOperator base = atom();
        if (!accept('^')) return base;
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected a nonnegative integer exponent", pos_);
        if (pos_ - start > 4) throw ParseError("exponent too large", start);
        int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
        DiffOperator out = constant(1);
        for (int i = 0; i < e; ++i) out = out * base;
        return out;
    }
    DiffOperator atom() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (accept('(')) {
            DiffOperator inner = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        std::string name(s_.substr(start, pos_ - start));
        if (name == "x") return DiffOperator::x();
        if (name == "Dx" && allow_dx_) return DiffOperator::dx();
        if (name.empty()) throw ParseError("unexpected character '" + std::string(1, c) + "'", start);
        throw ParseError("unknown identifier '" + name + "'", start);
    }
    DiffOperator number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t save = pos_++;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                pos_ = save;
            } else {
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            }
        }
        std::string_view text = s_.substr(start, pos_ - start);
        std::optional<FieldElem> v;
        try {
            v = ConstantExpr::parse(text).as_exact();
        } catch (const ParseError& e) {
            throw ParseError("malformed number", start + e.position());
        }
        return constant(v->rational_value());
    }

    std::string_view s_;
    bool allow_dx_;
    std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

mpq_class parse_rational(std::string_view text) {
    auto v = ConstantExpr::parse(text).as_exact();
    if (!v || !v->is_rational()) throw ParseError("expected a rational number in '" + std::string(text) + "'", 0);
    return v->rational_value();
}

}  // namespace

DiffOperator parse_operator(std::string_view text) {
    DiffOperator op = OperatorParser(text, true).parse();
    if (op.is_zero()) throw DomainError("the operator is zero");
    return op;
}

Polynomial parse_polynomial(std::string_view text) {
    DiffOperator op = OperatorParser(text, false).parse();
    return op.coeff(0);
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> items;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || (text[i] == ',' && depth == 0)) {
            std::string_view item = trim(text.substr(start, i - start));
            if (item.empty()) throw ParseError("empty list item", start);
            items.emplace_back(item);
            start = i + 1;
        } else if (text[i] == '(') {
            ++depth;
        } else if (text[i] == ')') {
            --depth;
        }
    }
    return items;
}

ExactPoint parse_point(std::string_view text) {
    text = trim(text);
    if (text.substr(0, 4) == "alg(") {
        if (text.back() != ')') throw ParseError("expected ')' closing alg(", text.size());
        std::string_view body = text.substr(4, text.size() - 5);
        auto semi = body.find(';');
        if (semi == std::string_view::npos) throw ParseError("expected ';' in alg(...)", 4);
        Polynomial p = parse_polynomial(body.substr(0, semi));
        auto bounds = split_list(body.substr(semi + 1));
        if (bounds.size() != 4) throw ParseError("alg(...) needs re_lo, re_hi, im_lo, im_hi", 4 + semi);
        std::vector<mpq_class> coeffs;
        for (const auto& c : p.coeffs()) coeffs.push_back(c.rational_value());
        return ExactPoint::algebraic(coeffs, parse_rational(bounds[0]), parse_rational(bounds[1]),
                                     parse_rational(bounds[2]), parse_rational(bounds[3]));
    }
    auto v = ConstantExpr::parse(text).as_exact();
    if (!v) throw ParseError("path points must be exact rational or Gaussian rational numbers: '" + std::string(text) + "'", 0);
    return ExactPoint(*v);
}

std::vector<ExactPoint> parse_path(std::string_view text) {
    std::vector<ExactPoint> path;
    for (const auto& item : split_list(text)) path.push_back(parse_point(item));
    return path;
}

std::vector<ConstantExpr> parse_ini(std::string_view text) {
    std::vector<ConstantExpr> ini;
    for (const auto& item : split_list(text)) ini.push_back(ConstantExpr::parse(item));
    return ini;
}

mpq_class parse_eps(std::string_view text) {
    mpq_class eps = parse_rational(trim(text));
    if (eps <= 0) throw ParseError("eps must be positive", 0);
    return eps;
}

}  // namespace holomnum::cli
