#include "pdm/expr.hpp"

#include <cassert>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>
#include <variant>
#include <vector>

namespace pdm {

namespace {

enum class BinOp { Add, Sub, Mul, Div };
enum class Fn { Exp, Sqrt, Sin, Cos };

const char* fn_name(Fn f) {
    switch (f) {
        case Fn::Exp: return "exp";
        case Fn::Sqrt: return "sqrt";
        case Fn::Sin: return "sin";
        case Fn::Cos: return "cos";
    }
    return "?";
}

}  // namespace

struct Expr::Node {
    struct Number { double value; };
    struct Var {};
    struct Param { std::string name; };
    struct Neg { std::shared_ptr<const Node> arg; };
    struct Binary { BinOp op; std::shared_ptr<const Node> lhs, rhs; };
    struct Pow { std::shared_ptr<const Node> base; int exponent; };
    struct Call { Fn fn; std::shared_ptr<const Node> arg; };

    std::variant<Number, Var, Param, Neg, Binary, Pow, Call> v;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

template <typename T>
NodePtr make_node(T&& value) {
    auto n = std::make_shared<Expr::Node>();
    n->v = std::forward<T>(value);
    return n;
}

// ----- parsing -------------------------------------------------------------

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr run() {
        auto e = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected trailing input");
        }
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(errc::syntax_error,
                    "syntax error at offset " + std::to_string(pos_) + ": " + what, pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr parse_sum() {
        auto lhs = parse_product();
        while (true) {
            if (consume('+')) {
                lhs = make_node(Expr::Node::Binary{BinOp::Add, lhs, parse_product()});
            } else if (consume('-')) {
                lhs = make_node(Expr::Node::Binary{BinOp::Sub, lhs, parse_product()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_product() {
        auto lhs = parse_unary();
        while (true) {
            if (consume('*')) {
                lhs = make_node(Expr::Node::Binary{BinOp::Mul, lhs, parse_unary()});
            } else if (consume('/')) {
                lhs = make_node(Expr::Node::Binary{BinOp::Div, lhs, parse_unary()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_unary() {
        if (consume('-')) {
            return make_node(Expr::Node::Neg{parse_unary()});
        }
        if (consume('+')) {
            return parse_unary();
        }
        return parse_power();
    }

    NodePtr parse_power() {
        auto base = parse_primary();
        if (consume('^')) {
            return make_node(Expr::Node::Pow{base, parse_exponent()});
        }
        return base;
    }

    int parse_exponent() {
        skip_ws();
        if (consume('(')) {
            int e = parse_exponent();
            if (!consume(')')) fail("expected ')' after exponent");
            return e;
        }
        bool negative = false;
        if (consume('-')) negative = true;
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (pos_ == start) fail("expected an integer exponent");
        if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
            throw Error(errc::non_integer_exponent,
                        "non-integer exponent at offset " + std::to_string(start), start);
        }
        int value = 0;
        auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (res.ec != std::errc()) fail("exponent out of range");
        return negative ? -value : value;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = parse_sum();
            if (!consume(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parse_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return parse_ident();
        }
        fail("unexpected character");
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        double value = 0.0;
        auto res = std::from_chars(text_.data() + start, text_.data() + text_.size(), value);
        if (res.ec != std::errc()) fail("malformed number");
        pos_ = static_cast<std::size_t>(res.ptr - text_.data());
        return make_node(Expr::Node::Number{value});
    }

    NodePtr parse_ident() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        std::string name(text_.substr(start, pos_ - start));
        if (peek() == '(') {
            Fn fn;
            if (name == "exp") fn = Fn::Exp;
            else if (name == "sqrt") fn = Fn::Sqrt;
            else if (name == "sin") fn = Fn::Sin;
            else if (name == "cos") fn = Fn::Cos;
            else {
                throw Error(errc::unknown_function,
                            "unknown function '" + name + "' at offset " + std::to_string(start),
                            start);
            }
            consume('(');
            auto arg = parse_sum();
            if (!consume(')')) fail("expected ')' after function argument");
            return make_node(Expr::Node::Call{fn, arg});
        }
        if (name == "x") return make_node(Expr::Node::Var{});
        return make_node(Expr::Node::Param{std::move(name)});
    }
};

// ----- printing ------------------------------------------------------------

int precedence_of(const Expr::Node& n) {
    struct V {
        int operator()(const Expr::Node::Number& x) const { return x.value < 0 ? 1 : 4; }
        int operator()(const Expr::Node::Var&) const { return 4; }
        int operator()(const Expr::Node::Param&) const { return 4; }
        int operator()(const Expr::Node::Neg&) const { return 1; }
        int operator()(const Expr::Node::Binary& b) const {
            return (b.op == BinOp::Add || b.op == BinOp::Sub) ? 0 : 2;
        }
        int operator()(const Expr::Node::Pow&) const { return 3; }
        int operator()(const Expr::Node::Call&) const { return 4; }
    };
    return std::visit(V{}, n.v);
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string print_node(const Expr::Node& n);

std::string print_child(const Expr::Node& child, int min_prec) {
    std::string s = print_node(child);
    if (precedence_of(child) < min_prec) {
        return "(" + s + ")";
    }
    return s;
}

std::string print_node(const Expr::Node& n) {
    struct V {
        std::string operator()(const Expr::Node::Number& x) const { return format_number(x.value); }
        std::string operator()(const Expr::Node::Var&) const { return "x"; }
        std::string operator()(const Expr::Node::Param& p) const { return p.name; }
        std::string operator()(const Expr::Node::Neg& u) const {
            return "-" + print_child(*u.arg, 2);
        }
        std::string operator()(const Expr::Node::Binary& b) const {
            const char* op = b.op == BinOp::Add ? " + "
                           : b.op == BinOp::Sub ? " - "
                           : b.op == BinOp::Mul ? "*"
                                                : "/";
            const int prec = (b.op == BinOp::Add || b.op == BinOp::Sub) ? 0 : 2;
            // left-associative: the right child needs parens at equal precedence
            return print_child(*b.lhs, prec) + op + print_child(*b.rhs, prec + 1);
        }
        std::string operator()(const Expr::Node::Pow& p) const {
            std::string e = std::to_string(p.exponent);
            if (p.exponent < 0) e = "(" + e + ")";
            return print_child(*p.base, 4) + "^" + e;
        }
        std::string operator()(const Expr::Node::Call& c) const {
            return std::string(fn_name(c.fn)) + "(" + print_node(*c.arg) + ")";
        }
    };
    return std::visit(V{}, n.v);
}

bool nodes_equal(const Expr::Node& a, const Expr::Node& b);

struct EqV {
    const Expr::Node& other;

    bool operator()(const Expr::Node::Number& x) const {
        auto* o = std::get_if<Expr::Node::Number>(&other.v);
        return o && o->value == x.value;
    }
    bool operator()(const Expr::Node::Var&) const {
        return std::holds_alternative<Expr::Node::Var>(other.v);
    }
    bool operator()(const Expr::Node::Param& p) const {
        auto* o = std::get_if<Expr::Node::Param>(&other.v);
        return o && o->name == p.name;
    }
    bool operator()(const Expr::Node::Neg& u) const {
        auto* o = std::get_if<Expr::Node::Neg>(&other.v);
        return o && nodes_equal(*u.arg, *o->arg);
    }
    bool operator()(const Expr::Node::Binary& b) const {
        auto* o = std::get_if<Expr::Node::Binary>(&other.v);
        return o && o->op == b.op && nodes_equal(*b.lhs, *o->lhs) && nodes_equal(*b.rhs, *o->rhs);
    }
    bool operator()(const Expr::Node::Pow& p) const {
        auto* o = std::get_if<Expr::Node::Pow>(&other.v);
        return o && o->exponent == p.exponent && nodes_equal(*p.base, *o->base);
    }
    bool operator()(const Expr::Node::Call& c) const {
        auto* o = std::get_if<Expr::Node::Call>(&other.v);
        return o && o->fn == c.fn && nodes_equal(*c.arg, *o->arg);
    }
};

bool nodes_equal(const Expr::Node& a, const Expr::Node& b) { return std::visit(EqV{b}, a.v); }

// ----- pointwise evaluation ------------------------------------------------

double eval_node(const Expr::Node& n, double x, const Bindings& bindings) {
    struct V {
        double x;
        const Bindings& bindings;

        double operator()(const Expr::Node::Number& v) const { return v.value; }
        double operator()(const Expr::Node::Var&) const { return x; }
        double operator()(const Expr::Node::Param& p) const {
            auto it = bindings.find(p.name);
            if (it == bindings.end()) {
                throw Error(errc::unbound_parameter, "unbound parameter '" + p.name + "'");
            }
            return it->second;
        }
        double operator()(const Expr::Node::Neg& u) const { return -eval_node(*u.arg, x, bindings); }
        double operator()(const Expr::Node::Binary& b) const {
            const double l = eval_node(*b.lhs, x, bindings);
            const double r = eval_node(*b.rhs, x, bindings);
            switch (b.op) {
                case BinOp::Add: return l + r;
                case BinOp::Sub: return l - r;
                case BinOp::Mul: return l * r;
                case BinOp::Div:
                    if (r == 0.0) throw Error(errc::division_by_zero, "division by zero");
                    return l / r;
            }
            return 0.0;
        }
        double operator()(const Expr::Node::Pow& p) const {
            return std::pow(eval_node(*p.base, x, bindings), p.exponent);
        }
        double operator()(const Expr::Node::Call& c) const {
            const double a = eval_node(*c.arg, x, bindings);
            switch (c.fn) {
                case Fn::Exp: return std::exp(a);
                case Fn::Sqrt:
                    if (a < 0.0) throw Error(errc::sqrt_of_negative, "sqrt of a negative value");
                    return std::sqrt(a);
                case Fn::Sin: return std::sin(a);
                case Fn::Cos: return std::cos(a);
            }
            return 0.0;
        }
    };
    return std::visit(V{x, bindings}, n.v);
}

// ----- series expansion ----------------------------------------------------

// exp(u) via s' = u's, sin/cos jointly via s' = u'c, c' = -u's.
TruncatedSeries exp_series(const TruncatedSeries& u) {
    TruncatedSeries out(u.capacity());
    std::vector<double> s(static_cast<std::size_t>(u.valid_order()) + 1, 0.0);
    s[0] = std::exp(u[0]);
    for (int n = 1; n <= u.valid_order(); ++n) {
        double acc = 0.0;
        for (int k = 1; k <= n; ++k) {
            acc += static_cast<double>(k) * u[k] * s[static_cast<std::size_t>(n - k)];
        }
        s[static_cast<std::size_t>(n)] = acc / static_cast<double>(n);
    }
    return TruncatedSeries::from_coeffs(std::move(s), u.capacity());
}

TruncatedSeries sincos_series(const TruncatedSeries& u, bool want_sin) {
    const int v = u.valid_order();
    std::vector<double> s(static_cast<std::size_t>(v) + 1, 0.0);
    std::vector<double> c(static_cast<std::size_t>(v) + 1, 0.0);
    s[0] = std::sin(u[0]);
    c[0] = std::cos(u[0]);
    for (int n = 1; n <= v; ++n) {
        double as = 0.0, ac = 0.0;
        for (int k = 1; k <= n; ++k) {
            const double ku = static_cast<double>(k) * u[k];
            as += ku * c[static_cast<std::size_t>(n - k)];
            ac += ku * s[static_cast<std::size_t>(n - k)];
        }
        s[static_cast<std::size_t>(n)] = as / static_cast<double>(n);
        c[static_cast<std::size_t>(n)] = -ac / static_cast<double>(n);
    }
    return TruncatedSeries::from_coeffs(want_sin ? std::move(s) : std::move(c), u.capacity());
}

TruncatedSeries pow_series(const TruncatedSeries& base, int exponent) {
    if (exponent < 0) {
        return pow_series(reciprocal(base), -exponent);
    }
    TruncatedSeries acc = TruncatedSeries::constant(1.0, base.capacity());
    for (int i = 0; i < exponent; ++i) {
        acc = mul(acc, base);
    }
    return acc;
}

TruncatedSeries series_node(const Expr::Node& n, const Bindings& bindings, int capacity) {
    struct V {
        const Bindings& bindings;
        int capacity;

        TruncatedSeries operator()(const Expr::Node::Number& v) const {
            return TruncatedSeries::constant(v.value, capacity);
        }
        TruncatedSeries operator()(const Expr::Node::Var&) const {
            return TruncatedSeries::variable(capacity);
        }
        TruncatedSeries operator()(const Expr::Node::Param& p) const {
            auto it = bindings.find(p.name);
            if (it == bindings.end()) {
                throw Error(errc::unbound_parameter, "unbound parameter '" + p.name + "'");
            }
            return TruncatedSeries::constant(it->second, capacity);
        }
        TruncatedSeries operator()(const Expr::Node::Neg& u) const {
            return scale(series_node(*u.arg, bindings, capacity), -1.0);
        }
        TruncatedSeries operator()(const Expr::Node::Binary& b) const {
            auto l = series_node(*b.lhs, bindings, capacity);
            auto r = series_node(*b.rhs, bindings, capacity);
            switch (b.op) {
                case BinOp::Add: return add(l, r);
                case BinOp::Sub: return sub(l, r);
                case BinOp::Mul: return mul(l, r);
                case BinOp::Div: return mul(l, reciprocal(r));
            }
            return l;
        }
        TruncatedSeries operator()(const Expr::Node::Pow& p) const {
            return pow_series(series_node(*p.base, bindings, capacity), p.exponent);
        }
        TruncatedSeries operator()(const Expr::Node::Call& c) const {
            auto a = series_node(*c.arg, bindings, capacity);
            switch (c.fn) {
                case Fn::Exp: return exp_series(a);
                case Fn::Sqrt: return sqrt_series(a);
                case Fn::Sin: return sincos_series(a, true);
                case Fn::Cos: return sincos_series(a, false);
            }
            return a;
        }
    };
    return std::visit(V{bindings, capacity}, n.v);
}

}  // namespace

Expr Expr::parse(std::string_view text) { return Expr(Parser(text).run()); }

std::string Expr::to_string() const { return print_node(*root_); }

double Expr::eval(double x, const Bindings& bindings) const {
    return eval_node(*root_, x, bindings);
}

TruncatedSeries Expr::to_series(const Bindings& bindings, int capacity) const {
    return series_node(*root_, bindings, capacity);
}

bool Expr::operator==(const Expr& other) const { return nodes_equal(*root_, *other.root_); }

}  // namespace pdm
