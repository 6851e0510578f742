#pragma once

#include <stdexcept>
#include <string>

namespace sumdil {

// input: malformed or inconsistent data supplied by the caller.
// refusal: a well-formed request the library declines (caps, inconclusive, not applicable).
enum class ErrorKind { input, refusal, internal };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_input(const std::string& msg) { throw Error(ErrorKind::input, msg); }
[[noreturn]] inline void fail_refusal(const std::string& msg) { throw Error(ErrorKind::refusal, msg); }
[[noreturn]] inline void fail_internal(const std::string& msg) { throw Error(ErrorKind::internal, msg); }

} // namespace sumdil
