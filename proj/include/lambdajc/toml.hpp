#pragma once

#include <map>
#include <string>
#include <vector>

namespace lambdajc::toml {

// Minimal TOML subset used by the experiment configs: [section] headers,
// key = value pairs with string / number / boolean / flat-array values,
// and # comments. Nested tables and dotted keys are not supported.
struct Value {
    enum class Kind { String, Number, Boolean, NumberArray, StringArray };
    Kind kind = Kind::Number;
    std::string str;
    double num = 0.0;
    bool boolean = false;
    std::vector<double> numbers;
    std::vector<std::string> strings;
    int line = 0;

    static Value make_number(double v);
    static Value make_string(std::string v);
    static Value make_bool(bool v);
    static Value make_numbers(std::vector<double> v);
};

// section -> key -> value; top-level keys live under the "" section.
using Table = std::map<std::string, std::map<std::string, Value>>;

// Throws std::runtime_error with a line reference on malformed input.
Table parse(const std::string& text);

Table parse_file(const std::string& path);

// Parses a single scalar/array literal (the right-hand side of key = value);
// used by --override.
Value parse_value(const std::string& text);

}  // namespace lambdajc::toml
