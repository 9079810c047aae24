#pragma once
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "geo/jet.hpp"

namespace geo {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t off)
        : std::runtime_error(msg + " (at offset " + std::to_string(off) + ")"), offset(off) {}
    std::size_t offset;
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg, std::size_t off = 0)
        : std::runtime_error(msg), offset(off) {}
    std::size_t offset;
};

enum class UnaryFn { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Neg, Abs };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

// Parsed scalar expression over a fixed set of named variables.
// Immutable after parse; evaluation is pure.
class Expr {
public:
    struct Node {
        enum Kind { Const, Var, Unary, Binary } kind;
        double value = 0.0;     // Const
        int var = -1;           // Var: index into the declared variable set
        UnaryFn fn{};           // Unary
        BinaryOp op{};          // Binary
        int a = -1, b = -1;     // children
        std::size_t offset = 0; // byte offset in source text
    };

    Expr() = default;

    const std::vector<std::string>& vars() const { return vars_; }
    bool empty() const { return nodes_.empty(); }

    // Plain evaluation; seeds[i] is the value of vars()[i].
    double eval(const std::vector<double>& seeds) const;

    // Second-order forward-mode evaluation; seeds[i] is the jet for vars()[i].
    Jet2 eval_jet(const std::vector<Jet2>& seeds) const;

    // Text form that re-parses to an equivalent tree.
    std::string unparse() const;

    friend Expr parse_expr(const std::string& text, const std::vector<std::string>& vars);

private:
    std::vector<Node> nodes_; // last node is the root
    std::vector<std::string> vars_;

    template <class T>
    T eval_impl(const std::vector<T>& seeds) const;
};

Expr parse_expr(const std::string& text, const std::vector<std::string>& vars);

} // namespace geo
