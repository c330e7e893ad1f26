#include "gnevi/expr.hpp"

#include <cctype>
#include <cmath>

namespace gnevi::expr {

double Expression::eval_node(int idx, const Vec& vars) const {
    const Node& n = nodes_[idx];
    switch (n.op) {
        case Op::num: return n.value;
        case Op::var:
            if (n.var > static_cast<int>(vars.size()))
                throw std::out_of_range("expression references x" + std::to_string(n.var));
            return vars[n.var - 1];
        case Op::add: return eval_node(n.lhs, vars) + eval_node(n.rhs, vars);
        case Op::sub: return eval_node(n.lhs, vars) - eval_node(n.rhs, vars);
        case Op::mul: return eval_node(n.lhs, vars) * eval_node(n.rhs, vars);
        case Op::div: return eval_node(n.lhs, vars) / eval_node(n.rhs, vars);
        case Op::pow: return std::pow(eval_node(n.lhs, vars), eval_node(n.rhs, vars));
        case Op::min: return std::min(eval_node(n.lhs, vars), eval_node(n.rhs, vars));
        case Op::max: return std::max(eval_node(n.lhs, vars), eval_node(n.rhs, vars));
        case Op::abs: return std::fabs(eval_node(n.lhs, vars));
        case Op::neg: return -eval_node(n.lhs, vars);
    }
    return 0;
}

double Expression::eval(const Vec& vars) const {
    if (root_ < 0) throw std::logic_error("empty expression");
    return eval_node(root_, vars);
}

// The recursive-descent parser lives inside parse() so the local class shares
// its friendship with Expression.
Expression parse(const std::string& text) {
    struct Parser {
        const std::string& s;
        std::size_t pos = 0;
        Expression* out;

        Parser(const std::string& text_, Expression* e) : s(text_), out(e) {}

        void skip() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        bool eat(char c) {
            skip();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }

        int add_node(Expression::Node n) {
            out->nodes_.push_back(n);
            return static_cast<int>(out->nodes_.size()) - 1;
        }

        int parse_expr() {
            int lhs = parse_term();
            for (;;) {
                if (eat('+'))
                    lhs = add_node({Expression::Op::add, 0, 0, lhs, parse_term()});
                else if (eat('-'))
                    lhs = add_node({Expression::Op::sub, 0, 0, lhs, parse_term()});
                else
                    return lhs;
            }
        }

        int parse_term() {
            int lhs = parse_factor();
            for (;;) {
                if (eat('*'))
                    lhs = add_node({Expression::Op::mul, 0, 0, lhs, parse_factor()});
                else if (eat('/'))
                    lhs = add_node({Expression::Op::div, 0, 0, lhs, parse_factor()});
                else
                    return lhs;
            }
        }

        int parse_factor() {
            if (eat('-')) return add_node({Expression::Op::neg, 0, 0, parse_factor(), -1});
            return parse_power();
        }

        int parse_power() {
            int base = parse_atom();
            if (eat('^')) {
                int expo = parse_factor();  // right-associative, allows -n exponents
                return add_node({Expression::Op::pow, 0, 0, base, expo});
            }
            return base;
        }

        int parse_atom() {
            skip();
            if (pos >= s.size()) throw parse_error("unexpected end of expression", pos);
            char c = s[pos];
            if (c == '(') {
                ++pos;
                int e = parse_expr();
                if (!eat(')')) throw parse_error("expected ')'", pos);
                return e;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
            if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
            throw parse_error(std::string("unexpected character '") + c + "'", pos);
        }

        int parse_number() {
            std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.' ||
                    s[pos] == 'e' || s[pos] == 'E' ||
                    ((s[pos] == '+' || s[pos] == '-') &&
                     (s[pos - 1] == 'e' || s[pos - 1] == 'E'))))
                ++pos;
            try {
                double v = std::stod(s.substr(start, pos - start));
                return add_node({Expression::Op::num, v, 0, -1, -1});
            } catch (const std::exception&) {
                throw parse_error("bad number literal", start);
            }
        }

        int parse_name() {
            std::size_t start = pos;
            while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
            std::string name = s.substr(start, pos - start);
            if (name.size() >= 2 && name[0] == 'x') {
                bool digits = true;
                for (std::size_t i = 1; i < name.size(); ++i)
                    if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
                if (digits) {
                    int idx = std::stoi(name.substr(1));
                    if (idx < 1) throw parse_error("variable index must be >= 1", start);
                    out->max_var_ = std::max(out->max_var_, idx);
                    return add_node({Expression::Op::var, 0, idx, -1, -1});
                }
            }
            auto two_args = [&](Expression::Op op) {
                if (!eat('(')) throw parse_error("expected '(' after " + name, pos);
                int a = parse_expr();
                if (!eat(',')) throw parse_error("expected ',' in " + name, pos);
                int b = parse_expr();
                if (!eat(')')) throw parse_error("expected ')'", pos);
                return add_node({op, 0, 0, a, b});
            };
            if (name == "min") return two_args(Expression::Op::min);
            if (name == "max") return two_args(Expression::Op::max);
            if (name == "abs") {
                if (!eat('(')) throw parse_error("expected '(' after abs", pos);
                int a = parse_expr();
                if (!eat(')')) throw parse_error("expected ')'", pos);
                return add_node({Expression::Op::abs, 0, 0, a, -1});
            }
            throw parse_error("unknown name '" + name + "'", start);
        }
    };

    Expression e;
    e.text_ = text;
    Parser p(text, &e);
    e.root_ = p.parse_expr();
    p.skip();
    if (p.pos != text.size()) throw parse_error("trailing input", p.pos);
    return e;
}

}  // namespace gnevi::expr
