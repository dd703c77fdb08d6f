#pragma once

#include <stdexcept>
#include <string>

namespace ttvfi {

// Error taxonomy shared by the library and the CLI. The CLI maps kinds to
// exit codes: invalid_argument -> 2, not_found / invalid_data -> 3,
// numeric -> 4.
enum class ErrorKind {
    invalid_argument,
    not_found,
    invalid_data,
    numeric,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

    int exit_code() const {
        switch (kind_) {
            case ErrorKind::invalid_argument: return 2;
            case ErrorKind::not_found:
            case ErrorKind::invalid_data: return 3;
            case ErrorKind::numeric: return 4;
        }
        return 1;
    }

private:
    ErrorKind kind_;
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& msg)
        : Error(ErrorKind::invalid_argument, msg) {}
};

struct NotFound : Error {
    explicit NotFound(const std::string& msg)
        : Error(ErrorKind::not_found, msg) {}
};

struct InvalidData : Error {
    explicit InvalidData(const std::string& msg)
        : Error(ErrorKind::invalid_data, msg) {}
};

struct NumericError : Error {
    explicit NumericError(const std::string& msg)
        : Error(ErrorKind::numeric, msg) {}
};

inline void check_arg(bool cond, const std::string& msg) {
    if (!cond) throw InvalidArgument(msg);
}

}  // namespace ttvfi
