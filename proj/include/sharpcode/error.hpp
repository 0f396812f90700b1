#pragma once

#include <stdexcept>
#include <string>

namespace sharpcode {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments: unknown names, out-of-range parameters, malformed specs.
struct InvalidArgument : Error {
    using Error::Error;
};

struct MissingRoot : Error {
    using Error::Error;
};

// A construction produced data that fails its own self-check.
struct ConstructionError : Error {
    using Error::Error;
};

struct InfeasibleRule : Error {
    InfeasibleRule(const std::string& what, int index, double weight)
        : Error(what), index(index), weight(weight) {}
    int index;
    double weight;
};

// Level not attainable for a code (non-integer N*rho, or no witness known).
struct Refused : Error {
    using Error::Error;
};

struct DominationFailure : Error {
    DominationFailure(const std::string& what, double t, double violation)
        : Error(what), t(t), violation(violation) {}
    double t;
    double violation;
};

struct SingularEvaluation : Error {
    using Error::Error;
};

struct ClusteringAmbiguity : Error {
    using Error::Error;
};

}  // namespace sharpcode
