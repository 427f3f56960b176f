#include "ras/expression.hpp"

#include "ras/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <system_error>
#include <vector>

namespace ras {

std::string_view variable_name(Variable v) {
    switch (v) {
    case Variable::xi: return "xi";
    case Variable::r: return "r";
    case Variable::none: break;
    }
    return "none";
}

namespace {

enum class Func { exp, ln, sin, cos, sinh, cosh, sqrt };

constexpr std::array<std::pair<std::string_view, Func>, 7> kFunctions{{
    {"exp", Func::exp},
    {"ln", Func::ln},
    {"sin", Func::sin},
    {"cos", Func::cos},
    {"sinh", Func::sinh},
    {"cosh", Func::cosh},
    {"sqrt", Func::sqrt},
}};

std::optional<Func> lookup_function(std::string_view name) {
    for (const auto& [n, f] : kFunctions)
        if (n == name) return f;
    return std::nullopt;
}

std::string_view function_name(Func f) {
    for (const auto& [n, g] : kFunctions)
        if (g == f) return n;
    return "?";
}

} // namespace

struct Expression::Node {
    enum class Kind { number, variable, neg, add, sub, mul, div, pow, call };

    Kind kind;
    double number = 0.0;
    Func func = Func::exp;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind k, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

const std::vector<std::string> kOperandStart{"number", "identifier", "'('", "'-'"};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    std::pair<NodePtr, Variable> run() {
        NodePtr root = expr();
        skip_space();
        if (pos_ != text_.size())
            throw ParseError(pos_, {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"},
                             "unexpected '" + std::string(1, text_[pos_]) + "' at offset " + std::to_string(pos_));
        return {root, variable_};
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(std::vector<std::string> expected, const std::string& what) const {
        std::string msg = what + " at offset " + std::to_string(pos_) + " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? ", " : "") + expected[i];
        msg += ")";
        throw ParseError(pos_, std::move(expected), msg);
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) lhs = make(Node::Kind::add, lhs, term());
            else if (accept('-')) lhs = make(Node::Kind::sub, lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) lhs = make(Node::Kind::mul, lhs, unary());
            else if (accept('/')) lhs = make(Node::Kind::div, lhs, unary());
            else return lhs;
        }
    }

    NodePtr unary() {
        if (accept('-')) return make(Node::Kind::neg, unary());
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return make(Node::Kind::pow, base, unary());
        return base;
    }

    NodePtr primary() {
        skip_space();
        if (pos_ >= text_.size()) fail(kOperandStart, "unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = expr();
            if (!accept(')')) fail({"')'"}, "unbalanced parenthesis");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail(kOperandStart, "unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number() {
        const std::size_t start = pos_;
        auto is_digit = [&](std::size_t i) { return i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i])); };
        while (is_digit(pos_)) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (is_digit(pos_)) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t q = pos_ + 1;
            if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
            if (is_digit(q)) {
                pos_ = q;
                while (is_digit(pos_)) ++pos_;
            }
        }
        double v = 0.0;
        const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (res.ec != std::errc() || res.ptr != text_.data() + pos_ || !std::isfinite(v)) {
            pos_ = start;
            fail({"number"}, "malformed number");
        }
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::number;
        n->number = v;
        return n;
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);

        if (name == "xi" || name == "r") {
            const Variable v = name == "xi" ? Variable::xi : Variable::r;
            if (variable_ != Variable::none && variable_ != v) {
                pos_ = start;
                fail({std::string(variable_name(variable_))}, "cannot mix variables xi and r");
            }
            variable_ = v;
            return make(Node::Kind::variable);
        }
        if (const auto f = lookup_function(name)) {
            if (!accept('(')) fail({"'('"}, "function '" + std::string(name) + "' needs an argument");
            NodePtr arg = expr();
            if (!accept(')')) fail({"')'"}, "unbalanced parenthesis");
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::call;
            n->func = *f;
            n->lhs = std::move(arg);
            return n;
        }
        pos_ = start;
        std::vector<std::string> expected{"xi", "r"};
        for (const auto& [fname, f] : kFunctions) expected.emplace_back(fname);
        fail(std::move(expected), "unknown identifier '" + std::string(name) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Variable variable_ = Variable::none;
};

bool is_constant(const Node& n) {
    switch (n.kind) {
    case Node::Kind::number: return true;
    case Node::Kind::variable: return false;
    default: return (!n.lhs || is_constant(*n.lhs)) && (!n.rhs || is_constant(*n.rhs));
    }
}

Dual2 apply(Func f, const Dual2& x) {
    switch (f) {
    case Func::exp: return exp(x);
    case Func::ln: return log(x);
    case Func::sin: return sin(x);
    case Func::cos: return cos(x);
    case Func::sinh: return sinh(x);
    case Func::cosh: return cosh(x);
    case Func::sqrt: return sqrt(x);
    }
    return x;
}

Dual2 eval_node(const Node& n, const Dual2& t) {
    switch (n.kind) {
    case Node::Kind::number: return Dual2{n.number};
    case Node::Kind::variable: return t;
    case Node::Kind::neg: return -eval_node(*n.lhs, t);
    case Node::Kind::add: return eval_node(*n.lhs, t) + eval_node(*n.rhs, t);
    case Node::Kind::sub: return eval_node(*n.lhs, t) - eval_node(*n.rhs, t);
    case Node::Kind::mul: return eval_node(*n.lhs, t) * eval_node(*n.rhs, t);
    case Node::Kind::div: return eval_node(*n.lhs, t) / eval_node(*n.rhs, t);
    case Node::Kind::pow: {
        const Dual2 base = eval_node(*n.lhs, t);
        if (is_constant(*n.rhs)) return pow(base, eval_node(*n.rhs, Dual2{0.0}).value);
        return pow(base, eval_node(*n.rhs, t));
    }
    case Node::Kind::call: return apply(n.func, eval_node(*n.lhs, t));
    }
    return Dual2{};
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

void print(const Node& n, Variable var, std::string& out) {
    auto binary = [&](const char* op) {
        out += '(';
        print(*n.lhs, var, out);
        out += op;
        print(*n.rhs, var, out);
        out += ')';
    };
    switch (n.kind) {
    case Node::Kind::number: out += format_number(n.number); break;
    case Node::Kind::variable: out += variable_name(var); break;
    case Node::Kind::neg:
        out += "(-";
        print(*n.lhs, var, out);
        out += ')';
        break;
    case Node::Kind::add: binary(" + "); break;
    case Node::Kind::sub: binary(" - "); break;
    case Node::Kind::mul: binary(" * "); break;
    case Node::Kind::div: binary(" / "); break;
    case Node::Kind::pow: binary("^"); break;
    case Node::Kind::call:
        out += function_name(n.func);
        out += '(';
        print(*n.lhs, var, out);
        out += ')';
        break;
    }
}

bool same_tree(const Node* a, const Node* b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    if (a->kind == Node::Kind::number && a->number != b->number) return false;
    if (a->kind == Node::Kind::call && a->func != b->func) return false;
    return same_tree(a->lhs.get(), b->lhs.get()) && same_tree(a->rhs.get(), b->rhs.get());
}

} // namespace

Expression Expression::parse(std::string_view text) {
    auto [root, var] = Parser(text).run();
    return Expression(std::move(root), var);
}

Dual2 Expression::eval(const Dual2& t) const { return eval_node(*root_, t); }

std::string Expression::to_string() const {
    std::string out;
    print(*root_, variable_, out);
    return out;
}

bool operator==(const Expression& a, const Expression& b) {
    return a.variable_ == b.variable_ && same_tree(a.root_.get(), b.root_.get());
}

} // namespace ras
