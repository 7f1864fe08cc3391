#pragma once

#include <stdexcept>
#include <string>

namespace gevrey {

// Raised when an operation's precondition cannot be certified (e.g. a vector
// outside the domain of the requested symbol).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Raised when two independent routes disagree on a certified result. These are
// never expected; they indicate a bug or a broken invariant in the model.
class consistency_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace gevrey
