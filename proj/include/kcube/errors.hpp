#pragma once

#include <stdexcept>
#include <string>

namespace kcube {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: digits out of range, non-edges, bad dimensions.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The fault set removes every vertex, so no survivor graph exists.
class EmptySurvivorGraph : public Error {
public:
    using Error::Error;
};

/// No closed form is known (or proven) for the requested (k, n, h).
class FormulaUnavailable : public Error {
public:
    using Error::Error;
};

/// An exact search was refused because it exceeds a configured ceiling.
class SearchRefused : public Error {
public:
    using Error::Error;
};

/// The graph has no h-extra vertex-cut at all.
class NoCutExists : public Error {
public:
    using Error::Error;
};

/// Rejection sampling accepted zero trials.
class ConditionStarved : public Error {
public:
    using Error::Error;
};

}  // namespace kcube
