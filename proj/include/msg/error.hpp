#pragma once
#include <stdexcept>
#include <string>

namespace msg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments or preconditions that do not hold.
struct InvalidInput : Error {
    using Error::Error;
};

// A document that does not match its kind's schema.
struct SchemaError : Error {
    using Error::Error;
};

// An enumeration would exceed its configured size cap.
struct BudgetExceeded : Error {
    using Error::Error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw InvalidInput(what);
}

}  // namespace msg
