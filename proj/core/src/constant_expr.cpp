#include "holomnum/constant_expr.hpp"

#include <cctype>
#include <utility>

#include "holomnum/error.hpp"

namespace holomnum {

struct ConstantExpr::Node {
    Op op;
    mpq_class value;  // Rational literal
    long exponent = 0;  // Pow
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const ConstantExpr::Node>;

}  // namespace

ConstantExpr::ConstantExpr() : ConstantExpr(rational(0)) {}

ConstantExpr::ConstantExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

ConstantExpr ConstantExpr::rational(const mpq_class& v) {
    auto n = std::make_shared<Node>();
    n->op = Op::Rational;
    n->value = v;
    return ConstantExpr(std::move(n));
}

namespace {

ConstantExpr::Node binary(ConstantExpr::Op op, NodePtr a, NodePtr b) {
    ConstantExpr::Node n;
    n.op = op;
    n.a = std::move(a);
    n.b = std::move(b);
    return n;
}

}  // namespace

ConstantExpr operator+(const ConstantExpr& a, const ConstantExpr& b) {
    return ConstantExpr(std::make_shared<ConstantExpr::Node>(binary(ConstantExpr::Op::Add, a.node_, b.node_)));
}
ConstantExpr operator-(const ConstantExpr& a, const ConstantExpr& b) {
    return ConstantExpr(std::make_shared<ConstantExpr::Node>(binary(ConstantExpr::Op::Sub, a.node_, b.node_)));
}
ConstantExpr operator*(const ConstantExpr& a, const ConstantExpr& b) {
    return ConstantExpr(std::make_shared<ConstantExpr::Node>(binary(ConstantExpr::Op::Mul, a.node_, b.node_)));
}
ConstantExpr operator/(const ConstantExpr& a, const ConstantExpr& b) {
    return ConstantExpr(std::make_shared<ConstantExpr::Node>(binary(ConstantExpr::Op::Div, a.node_, b.node_)));
}

/// Recursive-descent parser:
///   expr  := term (('+' | '-') term)*
///   term  := unary (('*' | '/') unary)*
///   unary := ('+' | '-') unary | power
///   power := atom ('^' ['+' | '-'] integer)?
///   atom  := number | i | I | pi | euler_gamma | sqrt(expr) | log(expr) | (expr)
class ConstantParser {
public:
    explicit ConstantParser(std::string_view s) : s_(s) {}

    ConstantExpr parse() {
        NodePtr n = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
        return ConstantExpr(std::move(n));
    }

private:
    using Node = ConstantExpr::Node;
    using Op = ConstantExpr::Op;

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
    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    static NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }
    static NodePtr leaf(Op op) {
        Node n;
        n.op = op;
        return make(std::move(n));
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) lhs = make(binary(Op::Add, lhs, term()));
            else if (accept('-')) lhs = make(binary(Op::Sub, lhs, term()));
            else return lhs;
        }
    }
    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) lhs = make(binary(Op::Mul, lhs, unary()));
            else if (accept('/')) lhs = make(binary(Op::Div, lhs, unary()));
            else return lhs;
        }
    }
    NodePtr unary() {
        if (accept('-')) {
            Node n;
            n.op = Op::Neg;
            n.a = unary();
            return make(std::move(n));
        }
        if (accept('+')) return unary();
        return power();
    }
    NodePtr power() {
        NodePtr base = atom();
        if (!accept('^')) return base;
        skip();
        bool neg = false;
        if (accept('-')) neg = true;
        else accept('+');
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected integer exponent", pos_);
        if (pos_ - start > 9) throw ParseError("exponent too large", start);
        Node n;
        n.op = Op::Pow;
        n.a = base;
        n.exponent = std::stol(std::string(s_.substr(start, pos_ - start)));
        if (neg) n.exponent = -n.exponent;
        return make(std::move(n));
    }
    NodePtr atom() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (accept('(')) {
            NodePtr n = expr();
            expect(')');
            return n;
        }
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        std::string name(s_.substr(start, pos_ - start));
        if (name == "i" || name == "I") return leaf(Op::I);
        if (name == "pi") return leaf(Op::Pi);
        if (name == "euler_gamma") return leaf(Op::Euler);
        if (name == "sqrt" || name == "log") {
            expect('(');
            Node n;
            n.op = name == "sqrt" ? Op::Sqrt : Op::Log;
            n.a = expr();
            expect(')');
            return make(std::move(n));
        }
        if (name.empty()) throw ParseError("unexpected character '" + std::string(1, c) + "'", start);
        throw ParseError("unknown identifier '" + name + "'", start);
    }
    NodePtr number() {
        std::size_t start = pos_;
        mpz_class mant = 0;
        long scale = 0;
        bool digits = false;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            mant = mant * 10 + (s_[pos_++] - '0');
            digits = true;
        }
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                mant = mant * 10 + (s_[pos_++] - '0');
                --scale;
                digits = true;
            }
        }
        if (!digits) throw ParseError("malformed number", start);
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t epos = pos_++;
            bool neg = false;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) neg = s_[pos_++] == '-';
            std::size_t es = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (es == pos_ || pos_ - es > 6) throw ParseError("malformed exponent", epos);
            long e = std::stol(std::string(s_.substr(es, pos_ - es)));
            scale += neg ? -e : e;
        }
        mpz_class p10;
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
        mpq_class v = scale < 0 ? mpq_class(mant, p10) : mpq_class(mant * p10);
        v.canonicalize();
        Node n;
        n.op = Op::Rational;
        n.value = v;
        return make(std::move(n));
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

ConstantExpr ConstantExpr::parse(std::string_view text) { return ConstantParser(text).parse(); }

namespace {

ComplexBall eval_node(const ConstantExpr::Node& n, Prec wp) {
    using Op = ConstantExpr::Op;
    switch (n.op) {
        case Op::Rational:
            return ComplexBall(RealBall::from_mpq(n.value, wp));
        case Op::I:
            return ComplexBall::i();
        case Op::Pi:
            return ComplexBall(const_pi(wp));
        case Op::Euler:
            return ComplexBall(const_euler(wp));
        case Op::Neg:
            return neg(eval_node(*n.a, wp));
        case Op::Add:
            return add(eval_node(*n.a, wp), eval_node(*n.b, wp), wp);
        case Op::Sub:
            return sub(eval_node(*n.a, wp), eval_node(*n.b, wp), wp);
        case Op::Mul:
            return mul(eval_node(*n.a, wp), eval_node(*n.b, wp), wp);
        case Op::Div: {
            ComplexBall d = eval_node(*n.b, wp);
            if (d.is_zero()) throw DomainError("division by zero in constant expression");
            return div(eval_node(*n.a, wp), d, wp);
        }
        case Op::Pow: {
            ComplexBall b = eval_node(*n.a, wp);
            if (n.exponent >= 0) return pow_ui(b, static_cast<unsigned long>(n.exponent), wp);
            if (b.is_zero()) throw DomainError("division by zero in constant expression");
            return inv(pow_ui(b, static_cast<unsigned long>(-n.exponent), wp), wp);
        }
        case Op::Sqrt: {
            ComplexBall z = eval_node(*n.a, wp);
            // Principal branch: the negative real axis maps to the positive imaginary axis.
            if (z.is_real() && z.re().is_negative()) return ComplexBall(RealBall(), sqrt(neg(z.re()), wp));
            if (z.is_real() && !z.re().is_negative()) {
                if (z.re().is_zero()) return ComplexBall();
                if (z.re().is_positive()) return ComplexBall(sqrt(z.re(), wp));
            }
            return sqrt(z, 0.0, wp);
        }
        case Op::Log: {
            ComplexBall z = eval_node(*n.a, wp);
            if (z.is_zero()) throw DomainError("log of zero");
            if (z.is_real() && z.re().is_negative())
                throw DomainError("log of a negative real number (principal branch cut)");
            if (z.is_real() && z.re().is_positive()) return ComplexBall(log(z.re(), wp));
            return log(z, 0.0, wp);
        }
    }
    throw Error("corrupt constant expression");
}

std::optional<FieldElem> exact_node(const ConstantExpr::Node& n) {
    using Op = ConstantExpr::Op;
    auto both = [&](auto f) -> std::optional<FieldElem> {
        auto a = exact_node(*n.a);
        if (!a) return std::nullopt;
        auto b = exact_node(*n.b);
        if (!b) return std::nullopt;
        return f(*a, *b);
    };
    switch (n.op) {
        case Op::Rational:
            return FieldElem(n.value);
        case Op::I:
            return FieldElem::generator(NumberField::gaussian());
        case Op::Neg: {
            auto a = exact_node(*n.a);
            if (!a) return std::nullopt;
            return -*a;
        }
        case Op::Add:
            return both([](const FieldElem& a, const FieldElem& b) { return a + b; });
        case Op::Sub:
            return both([](const FieldElem& a, const FieldElem& b) { return a - b; });
        case Op::Mul:
            return both([](const FieldElem& a, const FieldElem& b) { return a * b; });
        case Op::Div: {
            auto a = exact_node(*n.a);
            auto b = exact_node(*n.b);
            if (!a || !b) return std::nullopt;
            if (b->is_zero()) throw DomainError("division by zero in constant expression");
            return *a / *b;
        }
        case Op::Pow: {
            auto a = exact_node(*n.a);
            if (!a) return std::nullopt;
            if (n.exponent < 0 && a->is_zero()) throw DomainError("division by zero in constant expression");
            FieldElem base = n.exponent < 0 ? a->inverse() : *a;
            FieldElem r(1);
            for (long e = n.exponent < 0 ? -n.exponent : n.exponent; e > 0; e >>= 1) {
                if (e & 1) r *= base;
                base *= base;
            }
            return r;
        }
        default:
            return std::nullopt;
    }
}

std::string render(const ConstantExpr::Node& n) {
    using Op = ConstantExpr::Op;
    switch (n.op) {
        case Op::Rational:
            return n.value.get_str();
        case Op::I:
            return "i";
        case Op::Pi:
            return "pi";
        case Op::Euler:
            return "euler_gamma";
        case Op::Neg:
            return "-(" + render(*n.a) + ")";
        case Op::Add:
            return "(" + render(*n.a) + " + " + render(*n.b) + ")";
        case Op::Sub:
            return "(" + render(*n.a) + " - " + render(*n.b) + ")";
        case Op::Mul:
            return "(" + render(*n.a) + "*" + render(*n.b) + ")";
        case Op::Div:
            return "(" + render(*n.a) + "/" + render(*n.b) + ")";
        case Op::Pow:
            return "(" + render(*n.a) + ")^" + std::to_string(n.exponent);
        case Op::Sqrt:
            return "sqrt(" + render(*n.a) + ")";
        case Op::Log:
            return "log(" + render(*n.a) + ")";
    }
    return "?";
}

bool accurate_enough(const ComplexBall& z, Prec prec) {
    for (const RealBall* b : {&z.re(), &z.im()}) {
        if (b->is_exact()) continue;
        if (b->rel_accuracy_bits() < static_cast<long>(prec) - 4) {
            // Tiny parts next to a large companion are measured against |z|.
            Float r = b->rad();
            Float m = z.upper_abs();
            if (m.is_zero()) return false;
            if (mpfr_get_exp(r.get()) > mpfr_get_exp(m.get()) - static_cast<long>(prec) + 4) return false;
        }
    }
    return true;
}

}  // namespace

ComplexBall ConstantExpr::eval_ball(Prec prec) const {
    ComplexBall z;
    for (Prec wp = prec + 24; wp <= 16 * prec + 512; wp *= 2) {
        z = eval_node(*node_, wp);
        if (accurate_enough(z, prec)) return z;
    }
    return z;
}

std::optional<FieldElem> ConstantExpr::as_exact() const { return exact_node(*node_); }

std::string ConstantExpr::to_string() const { return render(*node_); }

}  // namespace holomnum
