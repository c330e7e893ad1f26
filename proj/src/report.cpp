#include "gnevi/report.hpp"

#include <cmath>
#include <cstdio>

namespace gnevi::report {

Node Node::object() { return Node{}; }

Node Node::array() {
    Node n;
    n.kind_ = Kind::array;
    return n;
}

Node Node::str(std::string v) {
    Node n;
    n.kind_ = Kind::string;
    n.sval_ = std::move(v);
    return n;
}

Node Node::num(double v) {
    Node n;
    n.kind_ = Kind::number;
    n.nval_ = v;
    return n;
}

Node Node::integer(long long v) {
    Node n;
    n.kind_ = Kind::integer;
    n.ival_ = v;
    return n;
}

Node Node::boolean(bool v) {
    Node n;
    n.kind_ = Kind::boolean;
    n.bval_ = v;
    return n;
}

Node& Node::set(const std::string& key, Node v) {
    fields_.emplace_back(key, std::move(v));
    return *this;
}

Node& Node::push(Node v) {
    items_.push_back(std::move(v));
    return *this;
}

std::string format_real(double v) {
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

void escape_into(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
}

}  // namespace

void Node::render_to(std::string& out, int indent) const {
    const std::string pad(indent * 2, ' ');
    const std::string inner((indent + 1) * 2, ' ');
    switch (kind_) {
        case Kind::string: escape_into(out, sval_); break;
        case Kind::number: out += format_real(nval_); break;
        case Kind::integer: out += std::to_string(ival_); break;
        case Kind::boolean: out += bval_ ? "true" : "false"; break;
        case Kind::object: {
            if (fields_.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            for (std::size_t i = 0; i < fields_.size(); ++i) {
                out += inner;
                escape_into(out, fields_[i].first);
                out += ": ";
                fields_[i].second.render_to(out, indent + 1);
                if (i + 1 < fields_.size()) out += ',';
                out += '\n';
            }
            out += pad + "}";
            break;
        }
        case Kind::array: {
            if (items_.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (std::size_t i = 0; i < items_.size(); ++i) {
                out += inner;
                items_[i].render_to(out, indent + 1);
                if (i + 1 < items_.size()) out += ',';
                out += '\n';
            }
            out += pad + "]";
            break;
        }
    }
}

std::string Node::render() const {
    std::string out;
    render_to(out, 0);
    out += '\n';
    return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(std::string_view bytes) {
    std::uint64_t h = fnv1a64(bytes);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

}  // namespace gnevi::report
