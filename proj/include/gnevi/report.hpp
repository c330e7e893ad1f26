#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gnevi::report {

inline constexpr const char* kToolVersion = "gnevi 1.0.0";

// Insertion-ordered JSON-ish tree with a fixed rendering: 12 significant
// digits for reals, stable field order, no locale dependence. Identical
// inputs render to identical bytes.
class Node {
public:
    static Node object();
    static Node array();
    static Node str(std::string v);
    static Node num(double v);
    static Node integer(long long v);
    static Node boolean(bool v);

    Node& set(const std::string& key, Node v);  // object field
    Node& push(Node v);                         // array element

    std::string render() const;  // multi-line, 2-space indent

private:
    enum class Kind { object, array, string, number, integer, boolean } kind_ = Kind::object;
    std::string sval_;
    double nval_ = 0;
    long long ival_ = 0;
    bool bval_ = false;
    std::vector<std::pair<std::string, Node>> fields_;
    std::vector<Node> items_;
    void render_to(std::string& out, int indent) const;
};

std::uint64_t fnv1a64(std::string_view bytes);
std::string hash_hex(std::string_view bytes);
std::string format_real(double v);  // the 12-significant-digit rendering

}  // namespace gnevi::report
