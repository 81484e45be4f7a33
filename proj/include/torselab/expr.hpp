#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "torselab/dual.hpp"
#include "torselab/errors.hpp"

namespace torselab {

enum class BinaryOp { add, sub, mul, div, pow };
enum class UnaryFn { neg, sin, cos, tan, cot, exp, ln, sqrt, abs };

struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

struct NumberNode {
    double value;
};
struct ConstantNode {
    std::string name;  // "pi" or "e"
    double value;
};
struct VarNode {
    int index;  // 0-based; prints as x<index+1>
};
struct ParamNode {
    std::string name;
};
struct UnaryNode {
    UnaryFn fn;
    ExprNodePtr arg;
};
struct BinaryNode {
    BinaryOp op;
    ExprNodePtr lhs;
    ExprNodePtr rhs;
};

struct ExprNode
    : std::variant<NumberNode, ConstantNode, VarNode, ParamNode, UnaryNode, BinaryNode> {
    using variant::variant;
};

using ParamMap = std::map<std::string, double>;
using ParamMapPtr = std::shared_ptr<const ParamMap>;

/// Immutable parsed expression over coordinates x1..x9, named constants
/// (pi, e), scalar parameters and the function set {sin, cos, tan, cot,
/// exp, ln, sqrt, abs}. Evaluation is pure; Expr values share structure
/// and are cheap to copy.
class Expr {
public:
    Expr() = default;

    /// Grammar (precedence ^ > unary- > *,/ > +,-; ^ right-associative):
    ///   expr   := term (('+'|'-') term)*
    ///   term   := unary (('*'|'/') unary)*
    ///   unary  := '-' unary | power
    ///   power  := base ('^' unary)?
    ///   base   := NUMBER | IDENT | IDENT '(' expr ')' | '(' expr ')'
    static Expr parse(std::string_view source);

    /// Round-trippable source form: parse(to_string()) is structurally
    /// identical to this expression.
    std::string to_string() const;

    bool same_structure(const Expr& other) const;

    double eval(std::span<const double> point, const ParamMap& params) const;
    DualScalar eval_dual(std::span<const double> point, const ParamMap& params) const;

    /// Highest 1-based coordinate index referenced (0 when none).
    int max_var_index() const;
    std::vector<std::string> params_used() const;

    bool empty() const { return root_ == nullptr; }
    const ExprNode& root() const { return *root_; }

private:
    explicit Expr(ExprNodePtr root) : root_(std::move(root)) {}
    ExprNodePtr root_;
};

}  // namespace torselab
