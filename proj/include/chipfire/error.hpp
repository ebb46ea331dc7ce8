#pragma once

#include <stdexcept>
#include <string>

namespace chipfire {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed user input: graph documents, configuration strings, CLI specs.
class ParseError : public Error {
public:
    using Error::Error;
};

// Structurally invalid graph (loop, multi-edge, disconnected, n < 2, bad family size).
class InvalidGraph : public Error {
public:
    using Error::Error;
};

// Argument outside an operation's domain (vertex index, dimension mismatch, c < onset).
class DomainError : public Error {
public:
    using Error::Error;
};

class IllegalMove : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

// A configured cap on states or compositions was hit. The computation was
// abandoned; no partial answer is returned.
class ResourceExceeded : public Error {
public:
    using Error::Error;
};

class InsufficientSamples : public Error {
public:
    using Error::Error;
};

}  // namespace chipfire
