#include "torselab/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

namespace torselab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kE = 2.71828182845904523536;

// ---------------------------------------------------------------- lexer

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    Tok kind;
    int col = 0;  // 1-based
    double number = 0.0;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_ws();
            Token t = next();
            out.push_back(t);
            if (t.kind == Tok::end) break;
        }
        return out;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    Token next() {
        const int col = static_cast<int>(pos_) + 1;
        if (pos_ >= src_.size()) return {Tok::end, col, 0.0, ""};
        const char c = src_[pos_];
        switch (c) {
            case '+': ++pos_; return {Tok::plus, col, 0.0, "+"};
            case '-': ++pos_; return {Tok::minus, col, 0.0, "-"};
            case '*': ++pos_; return {Tok::star, col, 0.0, "*"};
            case '/': ++pos_; return {Tok::slash, col, 0.0, "/"};
            case '^': ++pos_; return {Tok::caret, col, 0.0, "^"};
            case '(': ++pos_; return {Tok::lparen, col, 0.0, "("};
            case ')': ++pos_; return {Tok::rparen, col, 0.0, ")"};
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(col);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident(col);
        throw SyntaxError(1, col, std::string("a token, found '") + c + "'");
    }

    Token number(int col) {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        // Exponent suffix only when it is unambiguously part of the number;
        // otherwise 'e' stays an identifier token for the next lex step.
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t probe = pos_ + 1;
            if (probe < src_.size() && (src_[probe] == '+' || src_[probe] == '-')) ++probe;
            if (probe < src_.size() && std::isdigit(static_cast<unsigned char>(src_[probe]))) {
                pos_ = probe;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            }
        }
        const std::string text(src_.substr(start, pos_ - start));
        if (text == ".") throw SyntaxError(1, col, "a number");
        char* endp = nullptr;
        const double v = std::strtod(text.c_str(), &endp);
        if (endp != text.c_str() + text.size()) throw SyntaxError(1, col, "a number");
        return {Tok::number, col, v, text};
    }

    Token ident(int col) {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        return {Tok::ident, col, 0.0, std::string(src_.substr(start, pos_ - start))};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

// --------------------------------------------------------------- parser

const std::map<std::string, UnaryFn, std::less<>>& function_table() {
    static const std::map<std::string, UnaryFn, std::less<>> t = {
        {"sin", UnaryFn::sin}, {"cos", UnaryFn::cos},   {"tan", UnaryFn::tan},
        {"cot", UnaryFn::cot}, {"exp", UnaryFn::exp},   {"ln", UnaryFn::ln},
        {"sqrt", UnaryFn::sqrt}, {"abs", UnaryFn::abs},
    };
    return t;
}

bool is_coordinate_name(const std::string& s, int& index_out) {
    if (s.size() < 2 || s[0] != 'x') return false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    index_out = std::atoi(s.c_str() + 1);
    return true;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    ExprNodePtr run() {
        ExprNodePtr e = expr();
        expect(Tok::end, "end of input");
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& advance() { return toks_[pos_++]; }
    bool match(Tok k) {
        if (peek().kind == k) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(Tok k, const char* what) {
        if (!match(k)) throw SyntaxError(1, peek().col, what);
    }

    static ExprNodePtr make(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

    ExprNodePtr expr() {
        ExprNodePtr lhs = term();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const BinaryOp op = advance().kind == Tok::plus ? BinaryOp::add : BinaryOp::sub;
            lhs = make(BinaryNode{op, lhs, term()});
        }
        return lhs;
    }

    ExprNodePtr term() {
        ExprNodePtr lhs = unary();
        while (peek().kind == Tok::star || peek().kind == Tok::slash) {
            const BinaryOp op = advance().kind == Tok::star ? BinaryOp::mul : BinaryOp::div;
            lhs = make(BinaryNode{op, lhs, unary()});
        }
        return lhs;
    }

    ExprNodePtr unary() {
        if (match(Tok::minus)) return make(UnaryNode{UnaryFn::neg, unary()});
        return power();
    }

    ExprNodePtr power() {
        ExprNodePtr b = base();
        if (match(Tok::caret)) return make(BinaryNode{BinaryOp::pow, b, unary()});
        return b;
    }

    ExprNodePtr base() {
        const Token& t = peek();
        if (t.kind == Tok::number) {
            advance();
            return make(NumberNode{t.number});
        }
        if (t.kind == Tok::lparen) {
            advance();
            ExprNodePtr e = expr();
            expect(Tok::rparen, "')'");
            return e;
        }
        if (t.kind == Tok::ident) {
            const Token id = advance();
            if (peek().kind == Tok::lparen) {
                auto it = function_table().find(id.text);
                if (it == function_table().end()) throw UnknownFunctionError(id.text, id.col);
                advance();
                ExprNodePtr arg = expr();
                expect(Tok::rparen, "')'");
                return make(UnaryNode{it->second, arg});
            }
            if (id.text == "pi") return make(ConstantNode{"pi", kPi});
            if (id.text == "e") return make(ConstantNode{"e", kE});
            int idx = 0;
            if (is_coordinate_name(id.text, idx)) {
                if (idx < 1 || idx > kMaxDim) throw UnknownVariableError(id.text, id.col);
                return make(VarNode{idx - 1});
            }
            if (function_table().count(id.text))
                throw SyntaxError(1, peek().col, "'(' after function name");
            return make(ParamNode{id.text});
        }
        throw SyntaxError(1, t.col, "a number, name or '('");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// ------------------------------------------------------------- printing

std::string format_number(double v) {
    std::array<char, 40> buf;
    auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), r.ptr);
}

// Precedence levels mirror the grammar: 1 additive, 2 multiplicative,
// 3 unary minus, 4 power, 5 atoms.
int precedence(const ExprNode& n) {
    return std::visit(
        overloaded{
            [](const NumberNode&) { return 5; },
            [](const ConstantNode&) { return 5; },
            [](const VarNode&) { return 5; },
            [](const ParamNode&) { return 5; },
            [](const UnaryNode& u) { return u.fn == UnaryFn::neg ? 3 : 5; },
            [](const BinaryNode& b) {
                switch (b.op) {
                    case BinaryOp::add:
                    case BinaryOp::sub: return 1;
                    case BinaryOp::mul:
                    case BinaryOp::div: return 2;
                    case BinaryOp::pow: return 4;
                }
                return 5;
            },
        },
        n);
}

const char* function_name(UnaryFn f) {
    switch (f) {
        case UnaryFn::neg: return "-";
        case UnaryFn::sin: return "sin";
        case UnaryFn::cos: return "cos";
        case UnaryFn::tan: return "tan";
        case UnaryFn::cot: return "cot";
        case UnaryFn::exp: return "exp";
        case UnaryFn::ln: return "ln";
        case UnaryFn::sqrt: return "sqrt";
        case UnaryFn::abs: return "abs";
    }
    return "?";
}

void print_node(const ExprNode& n, std::string& out);

void print_child(const ExprNodePtr& child, int min_prec, std::string& out) {
    if (precedence(*child) < min_prec) {
        out += '(';
        print_node(*child, out);
        out += ')';
    } else {
        print_node(*child, out);
    }
}

void print_node(const ExprNode& n, std::string& out) {
    std::visit(
        overloaded{
            [&](const NumberNode& x) { out += format_number(x.value); },
            [&](const ConstantNode& c) { out += c.name; },
            [&](const VarNode& v) {
                out += 'x';
                out += std::to_string(v.index + 1);
            },
            [&](const ParamNode& p) { out += p.name; },
            [&](const UnaryNode& u) {
                if (u.fn == UnaryFn::neg) {
                    out += '-';
                    print_child(u.arg, 3, out);
                } else {
                    out += function_name(u.fn);
                    out += '(';
                    print_node(*u.arg, out);
                    out += ')';
                }
            },
            [&](const BinaryNode& b) {
                switch (b.op) {
                    case BinaryOp::add:
                        print_child(b.lhs, 1, out);
                        out += " + ";
                        print_child(b.rhs, 2, out);
                        break;
                    case BinaryOp::sub:
                        print_child(b.lhs, 1, out);
                        out += " - ";
                        print_child(b.rhs, 2, out);
                        break;
                    case BinaryOp::mul:
                        print_child(b.lhs, 2, out);
                        out += "*";
                        print_child(b.rhs, 3, out);
                        break;
                    case BinaryOp::div:
                        print_child(b.lhs, 2, out);
                        out += "/";
                        print_child(b.rhs, 3, out);
                        break;
                    case BinaryOp::pow:
                        print_child(b.lhs, 5, out);
                        out += "^";
                        print_child(b.rhs, 3, out);
                        break;
                }
            },
        },
        n);
}

// ------------------------------------------------------------ evaluation

DualScalar eval_node(const ExprNode& n, std::span<const double> pt, const ParamMap& params) {
    return std::visit(
        overloaded{
            [&](const NumberNode& x) { return DualScalar::constant(x.value); },
            [&](const ConstantNode& c) { return DualScalar::constant(c.value); },
            [&](const VarNode& v) {
                if (v.index >= static_cast<int>(pt.size()))
                    throw DimensionMismatchError("expression references x" +
                                                 std::to_string(v.index + 1) + " but point has " +
                                                 std::to_string(pt.size()) + " coordinates");
                return DualScalar::variable(pt[static_cast<std::size_t>(v.index)], v.index);
            },
            [&](const ParamNode& p) {
                auto it = params.find(p.name);
                if (it == params.end()) throw UnboundParameterError(p.name);
                return DualScalar::constant(it->second);
            },
            [&](const UnaryNode& u) {
                const DualScalar a = eval_node(*u.arg, pt, params);
                switch (u.fn) {
                    case UnaryFn::neg: return -a;
                    case UnaryFn::sin: return sin(a);
                    case UnaryFn::cos: return cos(a);
                    case UnaryFn::tan: return tan(a);
                    case UnaryFn::cot: return cot(a);
                    case UnaryFn::exp: return exp(a);
                    case UnaryFn::ln: return ln(a);
                    case UnaryFn::sqrt: return sqrt(a);
                    case UnaryFn::abs: return abs(a);
                }
                throw Error("unreachable unary op");
            },
            [&](const BinaryNode& b) {
                const DualScalar l = eval_node(*b.lhs, pt, params);
                const DualScalar r = eval_node(*b.rhs, pt, params);
                switch (b.op) {
                    case BinaryOp::add: return l + r;
                    case BinaryOp::sub: return l - r;
                    case BinaryOp::mul: return l * r;
                    case BinaryOp::div: return l / r;
                    case BinaryOp::pow: return pow(l, r);
                }
                throw Error("unreachable binary op");
            },
        },
        n);
}

bool nodes_equal(const ExprNode& a, const ExprNode& b) {
    if (a.index() != b.index()) return false;
    return std::visit(
        overloaded{
            [&](const NumberNode& x) { return x.value == std::get<NumberNode>(b).value; },
            [&](const ConstantNode& c) { return c.name == std::get<ConstantNode>(b).name; },
            [&](const VarNode& v) { return v.index == std::get<VarNode>(b).index; },
            [&](const ParamNode& p) { return p.name == std::get<ParamNode>(b).name; },
            [&](const UnaryNode& u) {
                const auto& o = std::get<UnaryNode>(b);
                return u.fn == o.fn && nodes_equal(*u.arg, *o.arg);
            },
            [&](const BinaryNode& x) {
                const auto& o = std::get<BinaryNode>(b);
                return x.op == o.op && nodes_equal(*x.lhs, *o.lhs) && nodes_equal(*x.rhs, *o.rhs);
            },
        },
        a);
}

void walk_vars(const ExprNode& n, int& max_index, std::set<std::string>* params) {
    std::visit(overloaded{
                   [&](const NumberNode&) {},
                   [&](const ConstantNode&) {},
                   [&](const VarNode& v) { max_index = std::max(max_index, v.index + 1); },
                   [&](const ParamNode& p) {
                       if (params) params->insert(p.name);
                   },
                   [&](const UnaryNode& u) { walk_vars(*u.arg, max_index, params); },
                   [&](const BinaryNode& b) {
                       walk_vars(*b.lhs, max_index, params);
                       walk_vars(*b.rhs, max_index, params);
                   },
               },
               n);
}

}  // namespace

Expr Expr::parse(std::string_view source) {
    Parser p(Lexer(source).run());
    return Expr(p.run());
}

std::string Expr::to_string() const {
    if (!root_) return "";
    std::string out;
    print_node(*root_, out);
    return out;
}

bool Expr::same_structure(const Expr& other) const {
    if (!root_ || !other.root_) return root_ == other.root_;
    return nodes_equal(*root_, *other.root_);
}

double Expr::eval(std::span<const double> point, const ParamMap& params) const {
    return eval_dual(point, params).value();
}

DualScalar Expr::eval_dual(std::span<const double> point, const ParamMap& params) const {
    if (!root_) throw Error("evaluating empty expression");
    DualScalar r = eval_node(*root_, point, params);
    if (!std::isfinite(r.value())) throw DomainError("non-finite result");
    return r;
}

int Expr::max_var_index() const {
    if (!root_) return 0;
    int mx = 0;
    walk_vars(*root_, mx, nullptr);
    return mx;
}

std::vector<std::string> Expr::params_used() const {
    if (!root_) return {};
    int mx = 0;
    std::set<std::string> names;
    walk_vars(*root_, mx, &names);
    return {names.begin(), names.end()};
}

}  // namespace torselab
