#ifndef HOMTW_ERRORS_HPP
#define HOMTW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace homtw {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text (DIMACS / PACE files, graph specifiers).
class ParseError : public Error {
public:
    using Error::Error;
};

// An operation was called outside its documented preconditions.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Search ran out of its node or time budget. This is "inconclusive",
// never a negative answer.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

// A configured size limit (vertex count, DP table cells) would be exceeded.
class LimitExceeded : public Error {
public:
    using Error::Error;
};

} // namespace homtw

#endif
