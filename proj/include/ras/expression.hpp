#pragma once

#include "ras/dual2.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace ras {

/// Which independent variable an expression is written in. `none` means the
/// expression is constant and fits any family.
enum class Variable { none, xi, r };

std::string_view variable_name(Variable v);

/// Parsed one-variable expression over reals with + - * / ^, parentheses and
/// exp, ln, sin, cos, sinh, cosh, sqrt.
///
/// Precedence from tightest: `^` (right-associative), unary minus, `* /`, `+ -`.
/// Identifiers other than the variable tokens `xi`, `r` and the function names
/// are rejected with ParseError, as is mixing `xi` and `r`.
class Expression {
public:
    struct Node;

    static Expression parse(std::string_view text);

    Variable variable() const noexcept { return variable_; }
    Dual2 eval(const Dual2& t) const;
    double eval(double t) const { return eval(Dual2{t}).value; }

    /// Fully parenthesized rendering that parses back to an identical tree.
    std::string to_string() const;

    friend bool operator==(const Expression& a, const Expression& b);

private:
    Expression(std::shared_ptr<const Node> root, Variable v) : root_(std::move(root)), variable_(v) {}

    std::shared_ptr<const Node> root_;
    Variable variable_;
};

} // namespace ras
