#include "lambdajc/toml.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lambdajc::toml {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& message) {
    throw std::runtime_error("toml: line " + std::to_string(line) + ": " + message);
}

// strips a trailing comment that is not inside a string literal
std::string strip_comment(const std::string& s) {
    bool in_string = false;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_string = !in_string;
        if (s[i] == '#' && !in_string) return s.substr(0, i);
    }
    return s;
}

bool valid_key(const std::string& key) {
    if (key.empty()) return false;
    for (char c : key)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    return true;
}

Value parse_scalar(const std::string& text, int line) {
    std::string s = trim(text);
    if (s.empty()) fail(line, "empty value");
    Value v;
    v.line = line;
    if (s.front() == '"') {
        if (s.size() < 2 || s.back() != '"') fail(line, "unterminated string");
        v.kind = Value::Kind::String;
        v.str = s.substr(1, s.size() - 2);
        if (v.str.find('"') != std::string::npos) fail(line, "nested quote in string");
        return v;
    }
    if (s == "true" || s == "false") {
        v.kind = Value::Kind::Boolean;
        v.boolean = (s == "true");
        return v;
    }
    char* end = nullptr;
    double num = std::strtod(s.c_str(), &end);
    if (end == nullptr || *end != '\0') fail(line, "cannot parse value '" + s + "'");
    v.kind = Value::Kind::Number;
    v.num = num;
    return v;
}

Value parse_array(const std::string& text, int line) {
    std::string inner = trim(text);
    inner = trim(inner.substr(1, inner.size() - 2));
    Value v;
    v.line = line;
    if (inner.empty()) {
        v.kind = Value::Kind::NumberArray;
        return v;
    }
    std::vector<std::string> parts;
    bool in_string = false;
    std::string current;
    for (char c : inner) {
        if (c == '"') in_string = !in_string;
        if (c == ',' && !in_string) {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);

    bool string_array = trim(parts.front()).front() == '"';
    v.kind = string_array ? Value::Kind::StringArray : Value::Kind::NumberArray;
    for (const std::string& part : parts) {
        Value elem = parse_scalar(part, line);
        if (string_array) {
            if (elem.kind != Value::Kind::String) fail(line, "mixed array element types");
            v.strings.push_back(elem.str);
        } else {
            if (elem.kind != Value::Kind::Number) fail(line, "mixed array element types");
            v.numbers.push_back(elem.num);
        }
    }
    return v;
}

}  // namespace

Value Value::make_number(double v) {
    Value out;
    out.kind = Kind::Number;
    out.num = v;
    return out;
}

Value Value::make_string(std::string v) {
    Value out;
    out.kind = Kind::String;
    out.str = std::move(v);
    return out;
}

Value Value::make_bool(bool v) {
    Value out;
    out.kind = Kind::Boolean;
    out.boolean = v;
    return out;
}

Value Value::make_numbers(std::vector<double> v) {
    Value out;
    out.kind = Kind::NumberArray;
    out.numbers = std::move(v);
    return out;
}

Value parse_value(const std::string& text) {
    std::string s = trim(text);
    if (!s.empty() && s.front() == '[') {
        if (s.back() != ']') fail(0, "unterminated array");
        return parse_array(s, 0);
    }
    return parse_scalar(s, 0);
}

Table parse(const std::string& text) {
    Table table;
    table[""];
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(strip_comment(raw));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (!valid_key(section)) fail(line, "bad section name '" + section + "'");
            if (table.count(section) && !table[section].empty())
                fail(line, "duplicate section [" + section + "]");
            table[section];
            continue;
        }
        size_t eq = std::string::npos;
        bool in_string = false;
        for (size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '"') in_string = !in_string;
            if (s[i] == '=' && !in_string) {
                eq = i;
                break;
            }
        }
        if (eq == std::string::npos) fail(line, "expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (!valid_key(key)) fail(line, "bad key '" + key + "'");
        if (table[section].count(key)) fail(line, "duplicate key '" + key + "'");
        Value v = value.front() == '[' ? parse_array(value, line) : parse_scalar(value, line);
        v.line = line;
        table[section][key] = v;
    }
    return table;
}

Table parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

}  // namespace lambdajc::toml
