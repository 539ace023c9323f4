#pragma once

#include <stdexcept>
#include <string>

namespace irpolar {

// invalid user input: malformed profile, bad parameter range, ...
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// instance exceeds an enumeration/alphabet budget
class BudgetError : public std::runtime_error {
  public:
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

// multi-block chain cannot be planned (|B^{t+1}| > |I^t|)
class InfeasibleChainError : public std::runtime_error {
  public:
    explicit InfeasibleChainError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace irpolar
