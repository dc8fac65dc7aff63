#ifndef NETLOCAL_ERRORS_HPP
#define NETLOCAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace netlocal {

// Exception carrying a short machine-readable code next to the human message.
// Codes used across the library:
//   invalid-n, parse-error, validation-error, bad-transmissivity,
//   degenerate-behavior, zero-normalization, unrealizable-outcome,
//   bad-selector, io-error
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

} // namespace netlocal

#endif
