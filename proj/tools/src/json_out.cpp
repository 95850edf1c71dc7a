#include "json_out.hpp"

#include <cmath>
#include <cstdio>

namespace reebtool {

JsonValue JsonValue::obj() {
    JsonValue v;
    v.kind = Kind::object;
    return v;
}

JsonValue JsonValue::arr() {
    JsonValue v;
    v.kind = Kind::array;
    return v;
}

JsonValue JsonValue::num(double x) {
    JsonValue v;
    v.kind = Kind::number;
    v.number = x;
    return v;
}

JsonValue JsonValue::integer_value(long long x) {
    JsonValue v;
    v.kind = Kind::integer;
    v.integer = x;
    return v;
}

JsonValue JsonValue::str(std::string x) {
    JsonValue v;
    v.kind = Kind::string;
    v.string = std::move(x);
    return v;
}

JsonValue JsonValue::boolean_value(bool x) {
    JsonValue v;
    v.kind = Kind::boolean;
    v.boolean = x;
    return v;
}

JsonValue JsonValue::complex_value(std::complex<double> c) {
    JsonValue v = obj();
    v.set("re", num(c.real()));
    v.set("im", num(c.imag()));
    return v;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
    members.emplace_back(key, std::move(v));
    return *this;
}

JsonValue& JsonValue::push(JsonValue v) {
    items.push_back(std::move(v));
    return *this;
}

std::string format_double(double v) {
    if (std::isnan(v) || std::isinf(v)) return "null";
    if (v == 0.0) return "0";  // collapse the sign of zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

void escape_to(const std::string& s, std::string& out) {
    out += '"';
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
}

void dump_to(const JsonValue& v, int depth, std::string& out) {
    const std::string pad(2 * depth, ' ');
    const std::string pad_in(2 * (depth + 1), ' ');
    switch (v.kind) {
        case JsonValue::Kind::number:
            out += format_double(v.number);
            break;
        case JsonValue::Kind::integer:
            out += std::to_string(v.integer);
            break;
        case JsonValue::Kind::boolean:
            out += v.boolean ? "true" : "false";
            break;
        case JsonValue::Kind::string:
            escape_to(v.string, out);
            break;
        case JsonValue::Kind::object: {
            if (v.members.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            for (size_t i = 0; i < v.members.size(); ++i) {
                out += pad_in;
                escape_to(v.members[i].first, out);
                out += ": ";
                dump_to(v.members[i].second, depth + 1, out);
                if (i + 1 < v.members.size()) out += ',';
                out += '\n';
            }
            out += pad + "}";
            break;
        }
        case JsonValue::Kind::array: {
            if (v.items.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (size_t i = 0; i < v.items.size(); ++i) {
                out += pad_in;
                dump_to(v.items[i], depth + 1, out);
                if (i + 1 < v.items.size()) out += ',';
                out += '\n';
            }
            out += pad + "]";
            break;
        }
    }
}

}  // namespace

std::string JsonValue::dump() const {
    std::string out;
    dump_to(*this, 0, out);
    out += '\n';
    return out;
}

}  // namespace reebtool
