#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace reebtool {

// Insertion-ordered JSON document builder.  Numbers print with %.12g and
// -0 normalizes to 0, so identical inputs serialize to identical bytes;
// that is what makes output files diffable across runs.
struct JsonValue {
    enum class Kind { object, array, number, integer, string, boolean };

    Kind kind = Kind::object;
    double number = 0.0;
    long long integer = 0;
    bool boolean = false;
    std::string string;
    std::vector<std::pair<std::string, JsonValue>> members;
    std::vector<JsonValue> items;

    static JsonValue obj();
    static JsonValue arr();
    static JsonValue num(double v);
    static JsonValue integer_value(long long v);
    static JsonValue str(std::string v);
    static JsonValue boolean_value(bool v);
    static JsonValue complex_value(std::complex<double> c);

    JsonValue& set(const std::string& key, JsonValue v);
    JsonValue& push(JsonValue v);

    std::string dump() const;  // two-space indent, trailing newline
};

std::string format_double(double v);

}  // namespace reebtool
