#pragma once

#include <stdexcept>
#include <string>

namespace eideal {

/// A search exhausted its node or enumeration budget.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Input is beyond a computation's size guard.
struct GuardExceeded : std::runtime_error {
    explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace eideal
