#pragma once

#include <stdexcept>
#include <string>

namespace ghgif {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid argument, malformed image, or violated precondition.
class ParameterError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// An identity that must hold by construction did not.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace ghgif
