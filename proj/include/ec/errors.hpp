#pragma once

#include <stdexcept>
#include <string>

namespace ec {

// Rejected input or violated precondition; the CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A homotopy certificate failed to verify; carries the 0-based move index.
class CertificateError : public std::runtime_error {
public:
    CertificateError(std::size_t move_index, const std::string& what)
        : std::runtime_error(what), move_index_(move_index) {}
    std::size_t move_index() const { return move_index_; }

private:
    std::size_t move_index_;
};

// Enumeration exceeded its configured budget.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ec
