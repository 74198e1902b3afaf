#pragma once

#include <stdexcept>
#include <string>

namespace elena {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rejected inputs: bad configuration values, mismatched genome universes,
// unsolvable argument combinations. Reported before any work starts.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Malformed instance files. Parsing is all-or-nothing; a ParseError means
// no partially initialized instance escaped.
class ParseError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace elena
