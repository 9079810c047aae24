#include "geo/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>

namespace geo {

namespace {

const std::map<std::string, UnaryFn>& function_table() {
    static const std::map<std::string, UnaryFn> t = {
        {"sin", UnaryFn::Sin},   {"cos", UnaryFn::Cos},   {"tan", UnaryFn::Tan},
        {"sinh", UnaryFn::Sinh}, {"cosh", UnaryFn::Cosh}, {"tanh", UnaryFn::Tanh},
        {"exp", UnaryFn::Exp},   {"log", UnaryFn::Log},   {"sqrt", UnaryFn::Sqrt},
        {"neg", UnaryFn::Neg},   {"abs", UnaryFn::Abs},
    };
    return t;
}

struct Parser {
    const std::string& text;
    const std::vector<std::string>& vars;
    std::size_t pos = 0;
    std::vector<Expr::Node>& nodes;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eof() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) { ++pos; return true; }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) throw ParseError(std::string("expected ") + what, pos);
    }

    int add(Expr::Node n) {
        nodes.push_back(n);
        return static_cast<int>(nodes.size()) - 1;
    }

    int make_binary(BinaryOp op, int a, int b, std::size_t off) {
        Expr::Node n;
        n.kind = Expr::Node::Binary;
        n.op = op;
        n.a = a;
        n.b = b;
        n.offset = off;
        return add(n);
    }

    // expr := term (('+'|'-') term)*
    int parse_expr() {
        int lhs = parse_term();
        for (;;) {
            std::size_t off = pos;
            if (accept('+')) lhs = make_binary(BinaryOp::Add, lhs, parse_term(), off);
            else if (accept('-')) lhs = make_binary(BinaryOp::Sub, lhs, parse_term(), off);
            else return lhs;
        }
    }

    // term := unary (('*'|'/') unary)*
    int parse_term() {
        int lhs = parse_unary();
        for (;;) {
            std::size_t off = pos;
            if (accept('*')) lhs = make_binary(BinaryOp::Mul, lhs, parse_unary(), off);
            else if (accept('/')) lhs = make_binary(BinaryOp::Div, lhs, parse_unary(), off);
            else return lhs;
        }
    }

    // unary := '-' unary | power     (so -x^2 parses as -(x^2))
    int parse_unary() {
        std::size_t off = pos;
        if (accept('-')) {
            Expr::Node n;
            n.kind = Expr::Node::Unary;
            n.fn = UnaryFn::Neg;
            n.a = parse_unary();
            n.offset = off;
            return add(n);
        }
        return parse_power();
    }

    // power := primary ('^' unary)?   right-associative
    int parse_power() {
        int base = parse_primary();
        std::size_t off = pos;
        if (accept('^')) return make_binary(BinaryOp::Pow, base, parse_unary(), off);
        return base;
    }

    int parse_primary() {
        skip_ws();
        if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
        std::size_t off = pos;
        char c = text[pos];

        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* start = text.c_str() + pos;
            char* end = nullptr;
            double v = std::strtod(start, &end);
            if (end == start) throw ParseError("malformed number", pos);
            pos += static_cast<std::size_t>(end - start);
            Expr::Node n;
            n.kind = Expr::Node::Const;
            n.value = v;
            n.offset = off;
            return add(n);
        }

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            std::string name = text.substr(start, pos - start);

            if (peek() == '(') {
                auto it = function_table().find(name);
                if (it == function_table().end())
                    throw ParseError("unknown function '" + name + "'", off);
                ++pos; // '('
                int arg = parse_expr();
                if (peek() == ',')
                    throw ParseError("arity mismatch: '" + name + "' takes one argument", pos);
                expect(')', "')'");
                Expr::Node n;
                n.kind = Expr::Node::Unary;
                n.fn = it->second;
                n.a = arg;
                n.offset = off;
                return add(n);
            }

            if (name == "pi") {
                Expr::Node n;
                n.kind = Expr::Node::Const;
                n.value = M_PI;
                n.offset = off;
                return add(n);
            }

            for (std::size_t i = 0; i < vars.size(); ++i) {
                if (vars[i] == name) {
                    Expr::Node n;
                    n.kind = Expr::Node::Var;
                    n.var = static_cast<int>(i);
                    n.offset = off;
                    return add(n);
                }
            }
            throw ParseError("unknown identifier '" + name + "'", off);
        }

        if (c == '(') {
            ++pos;
            int e = parse_expr();
            expect(')', "')'");
            return e;
        }

        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }
};

double value_of(double x) { return x; }
double value_of(const Jet2& x) { return x.val; }

template <class T> T make_const(double c);
template <> double make_const<double>(double c) { return c; }
template <> Jet2 make_const<Jet2>(double c) { return Jet2::constant(c); }

template <class T>
T ipow(const T& base, long n, std::size_t off) {
    if (n == 0) return make_const<T>(1.0);
    bool negate = n < 0;
    unsigned long m = negate ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    if (negate && value_of(base) == 0.0) throw DomainError("zero raised to negative power", off);
    T acc = make_const<T>(1.0);
    T b = base;
    while (m) {
        if (m & 1) acc = acc * b;
        b = b * b;
        m >>= 1;
    }
    if (negate) return make_const<T>(1.0) / acc;
    return acc;
}

template <class T>
T apply_unary(UnaryFn fn, const T& a, std::size_t off) {
    using std::sin; using std::cos; using std::tan;
    using std::sinh; using std::cosh; using std::tanh;
    using std::exp; using std::log; using std::sqrt;
    switch (fn) {
        case UnaryFn::Sin: return sin(a);
        case UnaryFn::Cos: return cos(a);
        case UnaryFn::Tan: {
            if (std::cos(value_of(a)) == 0.0) throw DomainError("tan at pole", off);
            return tan(a);
        }
        case UnaryFn::Sinh: return sinh(a);
        case UnaryFn::Cosh: return cosh(a);
        case UnaryFn::Tanh: return tanh(a);
        case UnaryFn::Exp: return exp(a);
        case UnaryFn::Log:
            if (value_of(a) <= 0.0) throw DomainError("log of non-positive value", off);
            return log(a);
        case UnaryFn::Sqrt:
            if (value_of(a) < 0.0) throw DomainError("sqrt of negative value", off);
            return sqrt(a);
        case UnaryFn::Neg: return -a;
        case UnaryFn::Abs:
            if constexpr (std::is_same_v<T, Jet2>) {
                if (value_of(a) == 0.0)
                    throw DomainError("abs is not differentiable at 0", off);
                return value_of(a) > 0.0 ? a : -a;
            } else {
                return std::fabs(a);
            }
    }
    throw std::logic_error("unreachable");
}

} // namespace

Expr parse_expr(const std::string& text, const std::vector<std::string>& vars) {
    if (text.empty()) throw ParseError("empty expression", 0);
    Expr e;
    e.vars_ = vars;
    Parser p{text, vars, 0, e.nodes_};
    p.parse_expr();
    if (!p.eof()) throw ParseError("trailing input", p.pos);
    return e;
}

template <class T>
T Expr::eval_impl(const std::vector<T>& seeds) const {
    if (seeds.size() != vars_.size())
        throw std::invalid_argument("seed count does not match variable count");
    static thread_local std::vector<T> vals; // evaluation is iterative, not reentrant
    vals.clear();
    vals.reserve(nodes_.size());
    for (const Node& n : nodes_) {
        switch (n.kind) {
            case Node::Const:
                vals.push_back(make_const<T>(n.value));
                break;
            case Node::Var:
                vals.push_back(seeds[static_cast<std::size_t>(n.var)]);
                break;
            case Node::Unary:
                vals.push_back(apply_unary(n.fn, vals[static_cast<std::size_t>(n.a)], n.offset));
                break;
            case Node::Binary: {
                const T& a = vals[static_cast<std::size_t>(n.a)];
                const T& b = vals[static_cast<std::size_t>(n.b)];
                switch (n.op) {
                    case BinaryOp::Add: vals.push_back(a + b); break;
                    case BinaryOp::Sub: vals.push_back(a - b); break;
                    case BinaryOp::Mul: vals.push_back(a * b); break;
                    case BinaryOp::Div:
                        if (value_of(b) == 0.0) throw DomainError("division by zero", n.offset);
                        vals.push_back(a / b);
                        break;
                    case BinaryOp::Pow: {
                        const Node& bn = nodes_[static_cast<std::size_t>(n.b)];
                        double bv = value_of(b);
                        // Integer exponents by repeated multiplication; keeps
                        // u^2 exact and valid for negative bases.
                        if (bn.kind == Node::Const && bv == std::floor(bv) && std::fabs(bv) <= 64) {
                            vals.push_back(ipow(a, static_cast<long>(bv), n.offset));
                        } else {
                            using std::exp; using std::log;
                            if (value_of(a) <= 0.0)
                                throw DomainError("non-integer power of non-positive base", n.offset);
                            vals.push_back(exp(b * log(a)));
                        }
                        break;
                    }
                }
                break;
            }
        }
        if (!std::isfinite(value_of(vals.back())))
            throw DomainError("non-finite value in evaluation", n.offset);
    }
    return vals.back();
}

double Expr::eval(const std::vector<double>& seeds) const { return eval_impl(seeds); }
Jet2 Expr::eval_jet(const std::vector<Jet2>& seeds) const { return eval_impl(seeds); }

namespace {

const char* fn_name(UnaryFn fn) {
    switch (fn) {
        case UnaryFn::Sin: return "sin";
        case UnaryFn::Cos: return "cos";
        case UnaryFn::Tan: return "tan";
        case UnaryFn::Sinh: return "sinh";
        case UnaryFn::Cosh: return "cosh";
        case UnaryFn::Tanh: return "tanh";
        case UnaryFn::Exp: return "exp";
        case UnaryFn::Log: return "log";
        case UnaryFn::Sqrt: return "sqrt";
        case UnaryFn::Neg: return "neg";
        case UnaryFn::Abs: return "abs";
    }
    return "?";
}

} // namespace

std::string Expr::unparse() const {
    if (nodes_.empty()) return "";
    // Fully parenthesized, so precedence survives the round trip.
    std::vector<std::string> out(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        switch (n.kind) {
            case Node::Const: {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.17g", n.value);
                out[i] = buf;
                break;
            }
            case Node::Var:
                out[i] = vars_[static_cast<std::size_t>(n.var)];
                break;
            case Node::Unary:
                out[i] = std::string(fn_name(n.fn)) + "(" + out[static_cast<std::size_t>(n.a)] + ")";
                break;
            case Node::Binary: {
                const char* op = n.op == BinaryOp::Add ? "+"
                               : n.op == BinaryOp::Sub ? "-"
                               : n.op == BinaryOp::Mul ? "*"
                               : n.op == BinaryOp::Div ? "/" : "^";
                out[i] = "(" + out[static_cast<std::size_t>(n.a)] + op +
                         out[static_cast<std::size_t>(n.b)] + ")";
                break;
            }
        }
    }
    return out.back();
}

} // namespace geo
