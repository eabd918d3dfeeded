#include "qes/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <system_error>

#include "qes/errors.hpp"

namespace qes {

namespace {

struct FunctionName {
    std::string_view name;
    Function fn;
};

constexpr FunctionName kFunctions[] = {
    {"sin", Function::Sin},   {"cos", Function::Cos},   {"tan", Function::Tan},
    {"sinh", Function::Sinh}, {"cosh", Function::Cosh}, {"tanh", Function::Tanh},
    {"exp", Function::Exp},   {"sqrt", Function::Sqrt},
};

std::string_view function_name(Function fn) {
    for (const auto& f : kFunctions) {
        if (f.fn == fn) return f.name;
    }
    return "?";
}

NodePtr make(auto&& alt) {
    return std::make_shared<const Node>(Node{std::forward<decltype(alt)>(alt)});
}

bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

constexpr int kMaxExponent = 4096;

class Parser {
public:
    Parser(std::string_view src, const std::vector<std::string>& declared)
        : src_(src), declared_(declared) {}

    NodePtr parse_all() {
        skip_ws();
        if (pos_ >= src_.size()) fail("empty expression");
        NodePtr e = expr();
        skip_ws();
        if (pos_ < src_.size()) fail(std::string("unexpected character '") + src_[pos_] + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }
    [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const { throw ParseError(at, msg); }

    void skip_ws() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                                      src_[pos_] == '\r')) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' but reached end of input");
        if (src_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = make(Binary{'+', lhs, term()});
            } else if (accept('-')) {
                lhs = make(Binary{'-', lhs, term()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = make(Binary{'*', lhs, unary()});
            } else if (accept('/')) {
                lhs = make(Binary{'/', lhs, unary()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        if (accept('-')) return make(Negate{unary()});
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) {
            return make(Power{base, exponent()});
        }
        return base;
    }

    // Integer literal with optional sign; chains fold right-associatively.
    int exponent() {
        skip_ws();
        const std::size_t start = pos_;
        bool negative = false;
        if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) {
            negative = src_[pos_] == '-';
            ++pos_;
            skip_ws();
        }
        if (pos_ >= src_.size()) fail("expected integer exponent but reached end of input");
        if (!is_digit(src_[pos_])) fail("exponent must be an integer literal");
        const std::size_t digits = pos_;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E')) {
            fail_at(start, "exponent must be an integer literal");
        }
        long long value = 0;
        auto [ptr, ec] = std::from_chars(src_.data() + digits, src_.data() + pos_, value);
        (void)ptr;
        if (ec != std::errc() || value > kMaxExponent) fail_at(start, "exponent too large");
        if (negative) value = -value;
        if (accept('^')) {
            const std::size_t inner_at = pos_;
            const int inner = exponent();
            value = fold_power(value, inner, inner_at);
        }
        return static_cast<int>(value);
    }

    long long fold_power(long long base, int e, std::size_t at) const {
        if (e < 0) {
            if (base == 1) return 1;
            if (base == -1) return (e % 2 == 0) ? 1 : -1;
            fail_at(at, "exponent must evaluate to an integer");
        }
        long long r = 1;
        for (int i = 0; i < e; ++i) {
            r *= base;
            if (r > kMaxExponent || r < -kMaxExponent) fail_at(at, "exponent too large");
        }
        return r;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = expr();
            expect(')');
            return inner;
        }
        if (is_digit(c) || c == '.') return number();
        if (is_ident_start(c)) return identifier();
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (p < src_.size() && is_digit(src_[p])) {
                pos_ = p;
                while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
            }
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
        if (ec != std::errc() || ptr != src_.data() + pos_) fail_at(start, "malformed number");
        return make(Number{value});
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == '(') {
            for (const auto& f : kFunctions) {
                if (f.name == name) {
                    ++pos_;
                    NodePtr arg = expr();
                    expect(')');
                    return make(Call{f.fn, arg});
                }
            }
            fail_at(start, "unknown function '" + std::string(name) + "'");
        }
        if (name == "x") return make(Variable{});
        if (name == "pi") return make(Parameter{"pi", -1});
        for (std::size_t i = 0; i < declared_.size(); ++i) {
            if (declared_[i] == name) return make(Parameter{declared_[i], static_cast<int>(i)});
        }
        fail_at(start, "unknown identifier '" + std::string(name) + "'");
    }

    std::string_view src_;
    const std::vector<std::string>& declared_;
    std::size_t pos_ = 0;
};

// Scalar and jet evaluation share one template. Domain checks mirror the jet ones.
double apply(Function fn, double a, double x) {
    switch (fn) {
        case Function::Sin: return std::sin(a);
        case Function::Cos: return std::cos(a);
        case Function::Tan: {
            const double c = std::cos(a);
            if (std::abs(c) <= 4.0 * std::numeric_limits<double>::epsilon()) {
                throw DomainError("tangent at an odd multiple of pi/2", x);
            }
            return std::sin(a) / c;
        }
        case Function::Sinh: return std::sinh(a);
        case Function::Cosh: return std::cosh(a);
        case Function::Tanh: return std::tanh(a);
        case Function::Exp: return std::exp(a);
        case Function::Sqrt:
            if (a < 0.0) throw DomainError("square root of negative value", x);
            return std::sqrt(a);
    }
    return 0.0;
}

Jet apply(Function fn, const Jet& a, double) {
    switch (fn) {
        case Function::Sin: return sin(a);
        case Function::Cos: return cos(a);
        case Function::Tan: return tan(a);
        case Function::Sinh: return sinh(a);
        case Function::Cosh: return cosh(a);
        case Function::Tanh: return tanh(a);
        case Function::Exp: return exp(a);
        case Function::Sqrt: return sqrt(a);
    }
    return a;
}

double ipow(double b, int n) {
    if (n < 0) {
        if (b == 0.0) throw DomainError("division by zero", b);
        return 1.0 / ipow(b, -n);
    }
    double r = 1.0;
    while (n != 0) {
        if (n & 1) r *= b;
        n >>= 1;
        if (n != 0) b *= b;
    }
    return r;
}

struct ScalarTraits {
    using T = double;
    static T constant(double, double v) { return v; }
    static T variable(double x) { return x; }
    static T power(const T& b, int n, double x) {
        if (n < 0 && b == 0.0) throw DomainError("division by zero", x);
        return ipow(b, n);
    }
    static T divide(const T& a, const T& b, double x) {
        if (b == 0.0) throw DomainError("division by zero", x);
        return a / b;
    }
};

struct JetTraits {
    using T = Jet;
    static T constant(double x, double v) { return Jet::constant(x, v); }
    static T variable(double x) { return Jet::variable(x); }
    static T power(const T& b, int n, double) { return pow(b, n); }
    static T divide(const T& a, const T& b, double) { return a / b; }
};

template <class Traits>
typename Traits::T eval(const Node& node, double x, const std::vector<double>& slots) {
    using T = typename Traits::T;
    return std::visit(
        [&](const auto& n) -> T {
            using K = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<K, Number>) {
                return Traits::constant(x, n.value);
            } else if constexpr (std::is_same_v<K, Variable>) {
                return Traits::variable(x);
            } else if constexpr (std::is_same_v<K, Parameter>) {
                const double v = n.slot < 0 ? std::numbers::pi : slots[static_cast<std::size_t>(n.slot)];
                return Traits::constant(x, v);
            } else if constexpr (std::is_same_v<K, Negate>) {
                return -eval<Traits>(*n.operand, x, slots);
            } else if constexpr (std::is_same_v<K, Binary>) {
                T a = eval<Traits>(*n.lhs, x, slots);
                T b = eval<Traits>(*n.rhs, x, slots);
                switch (n.op) {
                    case '+': return a + b;
                    case '-': return a - b;
                    case '*': return a * b;
                    default: return Traits::divide(a, b, x);
                }
            } else if constexpr (std::is_same_v<K, Power>) {
                return Traits::power(eval<Traits>(*n.base, x, slots), n.exponent, x);
            } else {
                return apply(n.fn, eval<Traits>(*n.arg, x, slots), x);
            }
        },
        node.v);
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

void print(const Node& node, std::string& out) {
    std::visit(
        [&](const auto& n) {
            using K = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<K, Number>) {
                if (std::signbit(n.value)) {
                    out += "(-" + format_number(-n.value) + ")";
                } else {
                    out += format_number(n.value);
                }
            } else if constexpr (std::is_same_v<K, Variable>) {
                out += "x";
            } else if constexpr (std::is_same_v<K, Parameter>) {
                out += n.name;
            } else if constexpr (std::is_same_v<K, Negate>) {
                out += "(-";
                print(*n.operand, out);
                out += ")";
            } else if constexpr (std::is_same_v<K, Binary>) {
                out += "(";
                print(*n.lhs, out);
                out += ' ';
                out += n.op;
                out += ' ';
                print(*n.rhs, out);
                out += ")";
            } else if constexpr (std::is_same_v<K, Power>) {
                out += "(";
                print(*n.base, out);
                out += ")^";
                out += std::to_string(n.exponent);
            } else {
                out += function_name(n.fn);
                out += "(";
                print(*n.arg, out);
                out += ")";
            }
        },
        node.v);
}

void collect_parameters(const Node& node, std::set<int>& slots) {
    std::visit(
        [&](const auto& n) {
            using K = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<K, Parameter>) {
                if (n.slot >= 0) slots.insert(n.slot);
            } else if constexpr (std::is_same_v<K, Negate>) {
                collect_parameters(*n.operand, slots);
            } else if constexpr (std::is_same_v<K, Binary>) {
                collect_parameters(*n.lhs, slots);
                collect_parameters(*n.rhs, slots);
            } else if constexpr (std::is_same_v<K, Power>) {
                collect_parameters(*n.base, slots);
            } else if constexpr (std::is_same_v<K, Call>) {
                collect_parameters(*n.arg, slots);
            }
        },
        node.v);
}

}  // namespace

const std::vector<std::string>& Expression::default_parameters() {
    static const std::vector<std::string> names = {"eps0", "eps1"};
    return names;
}

Expression Expression::parse(std::string_view source, const std::vector<std::string>& declared) {
    Parser p(source, declared);
    NodePtr root = p.parse_all();
    return Expression(std::move(root), declared, std::string(source));
}

std::string Expression::to_string() const {
    std::string out;
    print(*root_, out);
    return out;
}

std::vector<std::string> Expression::used_parameters() const {
    std::set<int> slots;
    collect_parameters(*root_, slots);
    std::vector<std::string> names;
    for (int s : slots) names.push_back(declared_[static_cast<std::size_t>(s)]);
    return names;
}

std::vector<double> Expression::bind(const ParamMap& params) const {
    std::set<int> used;
    collect_parameters(*root_, used);
    std::vector<double> slots(declared_.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < declared_.size(); ++i) {
        auto it = params.find(declared_[i]);
        if (it != params.end()) {
            slots[i] = it->second;
        } else if (used.count(static_cast<int>(i)) != 0) {
            throw InvalidArgument("parameter '" + declared_[i] + "' is not bound");
        }
    }
    return slots;
}

double Expression::evaluate(double x, const ParamMap& params) const { return evaluate(x, bind(params)); }

Jet Expression::eval_jet(double x0, const ParamMap& params) const { return eval_jet(x0, bind(params)); }

double Expression::evaluate(double x, const std::vector<double>& slots) const {
    return eval<ScalarTraits>(*root_, x, slots);
}

Jet Expression::eval_jet(double x0, const std::vector<double>& slots) const {
    return eval<JetTraits>(*root_, x0, slots);
}

bool structurally_equal(const Node& a, const Node& b) {
    if (a.v.index() != b.v.index()) return false;
    return std::visit(
        [&](const auto& na) -> bool {
            using K = std::decay_t<decltype(na)>;
            const auto& nb = std::get<K>(b.v);
            if constexpr (std::is_same_v<K, Number>) {
                return na.value == nb.value && std::signbit(na.value) == std::signbit(nb.value);
            } else if constexpr (std::is_same_v<K, Variable>) {
                return true;
            } else if constexpr (std::is_same_v<K, Parameter>) {
                return na.name == nb.name;
            } else if constexpr (std::is_same_v<K, Negate>) {
                return structurally_equal(*na.operand, *nb.operand);
            } else if constexpr (std::is_same_v<K, Binary>) {
                return na.op == nb.op && structurally_equal(*na.lhs, *nb.lhs) &&
                       structurally_equal(*na.rhs, *nb.rhs);
            } else if constexpr (std::is_same_v<K, Power>) {
                return na.exponent == nb.exponent && structurally_equal(*na.base, *nb.base);
            } else {
                return na.fn == nb.fn && structurally_equal(*na.arg, *nb.arg);
            }
        },
        a.v);
}

bool operator==(const Expression& a, const Expression& b) { return structurally_equal(*a.root_, *b.root_); }

double derivative_at(const Expression& e, double x0, int k, const ParamMap& params) {
    if (k < 0 || k > Jet::order) throw InvalidArgument("derivative order must lie in [0, 6]");
    return e.eval_jet(x0, params).derivative(k);
}

}  // namespace qes
