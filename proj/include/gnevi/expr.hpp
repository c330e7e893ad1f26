#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "gnevi/linalg.hpp"

namespace gnevi::expr {

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

// Arithmetic over profile variables x1..xN: + - * / ^, min, max, abs, unary
// minus, parentheses. '^' binds tightest and associates right.
class Expression {
public:
    double eval(const Vec& vars) const;
    int max_variable() const { return max_var_; }  // 1-based; 0 when constant
    const std::string& text() const { return text_; }

private:
    friend Expression parse(const std::string&);
    enum class Op : std::uint8_t { num, var, add, sub, mul, div, pow, min, max, abs, neg };
    struct Node {
        Op op;
        double value = 0;  // num
        int var = 0;       // var (1-based)
        int lhs = -1, rhs = -1;
    };
    std::vector<Node> nodes_;
    int root_ = -1;
    int max_var_ = 0;
    std::string text_;
    double eval_node(int idx, const Vec& vars) const;
};

Expression parse(const std::string& text);

}  // namespace gnevi::expr
