#pragma once

#include <stdexcept>
#include <string>

namespace ccn {

inline constexpr const char* kToolkitVersion = "0.1.0";

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// malformed input data (files, flag values, out-of-range vertices)
struct InputError : Error {
    using Error::Error;
};

// a resource cap was hit before the computation could finish; results
// produced up to that point must not be presented as complete
struct BudgetExceeded : Error {
    using Error::Error;
};

} // namespace ccn
