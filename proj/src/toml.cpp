#include "mpflow/toml.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace mpflow::toml {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
    fail(errc::parse, "line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

// strip a comment that is not inside a quoted string
std::string strip_comment(const std::string& s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) quoted = !quoted;
        if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

bool valid_key(const std::string& key) {
    if (key.empty()) return false;
    for (char c : key)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.')
            return false;
    return true;
}

Value parse_scalar(const std::string& raw, int line) {
    Value v;
    v.line = line;
    const std::string s = trim(raw);
    if (s.empty()) parse_fail(line, "missing value");
    if (s.front() == '"') {
        if (s.size() < 2 || s.back() != '"') parse_fail(line, "unterminated string");
        v.kind = Value::Kind::string;
        std::string out;
        for (std::size_t i = 1; i + 1 < s.size(); ++i) {
            if (s[i] == '\\' && i + 2 < s.size()) {
                const char c = s[i + 1];
                if (c == '"' || c == '\\') {
                    out.push_back(c);
                    ++i;
                    continue;
                }
            }
            out.push_back(s[i]);
        }
        v.str = out;
        return v;
    }
    if (s == "true" || s == "false") {
        v.kind = Value::Kind::boolean;
        v.boolean = s == "true";
        return v;
    }
    // integer?
    {
        std::int64_t iv = 0;
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), iv);
        if (ec == std::errc() && p == s.data() + s.size()) {
            v.kind = Value::Kind::integer;
            v.integer = iv;
            return v;
        }
    }
    {
        double dv = 0.0;
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), dv);
        if (ec == std::errc() && p == s.data() + s.size() && std::isfinite(dv)) {
            v.kind = Value::Kind::floating;
            v.floating = dv;
            return v;
        }
    }
    parse_fail(line, "cannot parse value '" + s + "'");
}

Value parse_value(const std::string& raw, int line) {
    const std::string s = trim(raw);
    if (!s.empty() && s.front() == '[') {
        if (s.back() != ']') parse_fail(line, "unterminated array");
        Value v;
        v.kind = Value::Kind::array;
        v.line = line;
        const std::string inner = s.substr(1, s.size() - 2);
        std::string item;
        bool quoted = false;
        for (char c : inner) {
            if (c == '"') quoted = !quoted;
            if (c == ',' && !quoted) {
                if (!trim(item).empty()) v.array.push_back(parse_scalar(item, line));
                item.clear();
            } else {
                item.push_back(c);
            }
        }
        if (!trim(item).empty()) v.array.push_back(parse_scalar(item, line));
        return v;
    }
    return parse_scalar(s, line);
}

}  // namespace

double Value::as_double() const {
    if (kind == Kind::floating) return floating;
    if (kind == Kind::integer) return double(integer);
    fail(errc::validation, "line " + std::to_string(line) + ": expected a number");
}

std::int64_t Value::as_int() const {
    if (kind == Kind::integer) return integer;
    fail(errc::validation, "line " + std::to_string(line) + ": expected an integer");
}

const std::string& Value::as_string() const {
    if (kind == Kind::string) return str;
    fail(errc::validation, "line " + std::to_string(line) + ": expected a string");
}

bool Value::as_bool() const {
    if (kind == Kind::boolean) return boolean;
    fail(errc::validation, "line " + std::to_string(line) + ": expected a boolean");
}

std::vector<double> Value::as_double_array() const {
    if (kind != Kind::array)
        fail(errc::validation, "line " + std::to_string(line) + ": expected an array");
    std::vector<double> out;
    for (const Value& v : array) out.push_back(v.as_double());
    return out;
}

Document Document::parse(const std::string& text) {
    Document doc;
    std::string table;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string raw =
            text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') parse_fail(line_no, "unterminated table header");
            table = trim(line.substr(1, line.size() - 2));
            if (!valid_key(table)) parse_fail(line_no, "bad table name '" + table + "'");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) parse_fail(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (!valid_key(key)) parse_fail(line_no, "bad key '" + key + "'");
        const std::string path = table.empty() ? key : table + "." + key;
        if (doc.entries_.count(path)) parse_fail(line_no, "duplicate key '" + path + "'");
        doc.entries_[path] = parse_value(line.substr(eq + 1), line_no);
    }
    return doc;
}

const Value& Document::at(const std::string& path) const {
    auto it = entries_.find(path);
    require(it != entries_.end(), errc::validation, "missing config key '" + path + "'");
    consumed_[path] = true;
    return it->second;
}

double Document::get_double(const std::string& path, double fallback) const {
    return has(path) ? at(path).as_double() : fallback;
}
std::int64_t Document::get_int(const std::string& path, std::int64_t fallback) const {
    return has(path) ? at(path).as_int() : fallback;
}
std::string Document::get_string(const std::string& path, const std::string& fallback) const {
    return has(path) ? at(path).as_string() : fallback;
}
bool Document::get_bool(const std::string& path, bool fallback) const {
    return has(path) ? at(path).as_bool() : fallback;
}

bool Document::has_prefix(const std::string& prefix) const {
    auto it = entries_.lower_bound(prefix);
    if (it == entries_.end()) return false;
    return it->first == prefix || it->first.rfind(prefix + ".", 0) == 0;
}

std::vector<std::pair<std::string, int>> Document::unconsumed() const {
    std::vector<std::pair<std::string, int>> out;
    for (const auto& [path, value] : entries_)
        if (!consumed_.count(path)) out.emplace_back(path, value.line);
    return out;
}

}  // namespace mpflow::toml
