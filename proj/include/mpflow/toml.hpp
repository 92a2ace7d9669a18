#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mpflow/errors.hpp"

namespace mpflow::toml {

/// Minimal TOML subset: [table.sub] headers, `key = value` pairs, scalars
/// (string, integer, float, bool) and single-line arrays of scalars, with
/// `#` comments.  Errors carry line numbers.  Keys are exposed flattened as
/// dotted paths.
struct Value {
    enum class Kind { string, integer, floating, boolean, array };
    Kind kind = Kind::string;
    std::string str;
    std::int64_t integer = 0;
    double floating = 0.0;
    bool boolean = false;
    std::vector<Value> array;
    int line = 0;

    double as_double() const;
    std::int64_t as_int() const;
    const std::string& as_string() const;
    bool as_bool() const;
    std::vector<double> as_double_array() const;
};

class Document {
public:
    static Document parse(const std::string& text);

    bool has(const std::string& path) const { return entries_.count(path) > 0; }
    const Value& at(const std::string& path) const;

    double get_double(const std::string& path, double fallback) const;
    std::int64_t get_int(const std::string& path, std::int64_t fallback) const;
    std::string get_string(const std::string& path, const std::string& fallback) const;
    bool get_bool(const std::string& path, bool fallback) const;

    /// True when any key under "<prefix>." (or the key itself) exists.
    bool has_prefix(const std::string& prefix) const;

    /// Keys never read through at()/get_*; used to reject unknown keys.
    std::vector<std::pair<std::string, int>> unconsumed() const;

private:
    std::map<std::string, Value> entries_;
    mutable std::map<std::string, bool> consumed_;
};

}  // namespace mpflow::toml
