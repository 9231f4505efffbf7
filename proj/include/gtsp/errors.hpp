#pragma once

#include <stdexcept>
#include <string>

namespace gtsp {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters or configuration (e.g. c >= 0, H < 1).
class ConfigError : public Error {
public:
    using Error::Error;
};

class ActionNotInPlanSpace : public Error {
public:
    using Error::Error;
};

/// No pairwise l-separated sequence of the requested length exists.
class Infeasible : public Error {
public:
    using Error::Error;
};

class InstanceTooLarge : public Error {
public:
    using Error::Error;
};

class EmptyPlanSpace : public Error {
public:
    using Error::Error;
};

class MalformedLog : public Error {
public:
    using Error::Error;
};

/// A metric that divides by the pick-attempt count was given PA = 0.
class NoAttempts : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

} // namespace gtsp
