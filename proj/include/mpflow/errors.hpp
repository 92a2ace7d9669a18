#pragma once

#include <stdexcept>
#include <string>

namespace mpflow {

/// Error categories mirrored one-to-one by the C API status codes.
enum class errc {
    invalid_argument,  // bad value passed to an operation (domain error)
    parse,             // config text could not be parsed
    validation,        // config parsed but failed validation
    io,                // file system failure
    diverged,          // solver blow-up detected
    numerical,         // quadrature / step control failure
    internal
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace mpflow
