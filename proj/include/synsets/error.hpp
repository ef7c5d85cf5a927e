#pragma once

#include <stdexcept>
#include <string>

namespace synsets {

// Error categories map onto CLI exit codes (usage = 1, data = 2).
enum class ErrorKind { usage, data };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline Error data_error(const std::string& message) { return Error(ErrorKind::data, message); }
inline Error usage_error(const std::string& message) { return Error(ErrorKind::usage, message); }

}  // namespace synsets
