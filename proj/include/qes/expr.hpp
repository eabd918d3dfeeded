#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qes/jet.hpp"

namespace qes {

enum class Function { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Sqrt };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Number {
    double value;
};
struct Variable {};
struct Parameter {
    std::string name;
    int slot;  // index into the expression's declared parameter list, -1 for pi
};
struct Negate {
    NodePtr operand;
};
struct Binary {
    char op;  // one of + - * /
    NodePtr lhs;
    NodePtr rhs;
};
struct Power {
    NodePtr base;
    int exponent;
};
struct Call {
    Function fn;
    NodePtr arg;
};

struct Node {
    std::variant<Number, Variable, Parameter, Negate, Binary, Power, Call> v;
};

using ParamMap = std::map<std::string, double, std::less<>>;

// Immutable parsed expression of one real variable x.
class Expression {
public:
    static const std::vector<std::string>& default_parameters();

    // Throws ParseError with the byte offset of the first problem.
    static Expression parse(std::string_view source,
                            const std::vector<std::string>& declared = default_parameters());

    const Node& root() const noexcept { return *root_; }
    const std::vector<std::string>& declared() const noexcept { return declared_; }
    const std::string& source() const noexcept { return source_; }

    // Fully parenthesised text that parses back to a structurally equal tree.
    std::string to_string() const;

    // Names of the declared parameters that actually occur in the tree.
    std::vector<std::string> used_parameters() const;

    double evaluate(double x, const ParamMap& params) const;
    Jet eval_jet(double x0, const ParamMap& params) const;

    // Faster variants taking parameter values in declaration order.
    double evaluate(double x, const std::vector<double>& slots) const;
    Jet eval_jet(double x0, const std::vector<double>& slots) const;
    std::vector<double> bind(const ParamMap& params) const;

    friend bool operator==(const Expression& a, const Expression& b);

private:
    Expression(NodePtr root, std::vector<std::string> declared, std::string source)
        : root_(std::move(root)), declared_(std::move(declared)), source_(std::move(source)) {}

    NodePtr root_;
    std::vector<std::string> declared_;
    std::string source_;
};

bool structurally_equal(const Node& a, const Node& b);

inline Expression parse(std::string_view source) { return Expression::parse(source); }

inline Jet eval_jet(const Expression& e, double x0, const ParamMap& params) {
    return e.eval_jet(x0, params);
}

// k! * c_k of the jet at x0, k in [0, 6].
double derivative_at(const Expression& e, double x0, int k, const ParamMap& params);

}  // namespace qes
