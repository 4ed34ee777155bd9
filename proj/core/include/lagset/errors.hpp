#pragma once

#include <stdexcept>
#include <string>

namespace lagset {

/// Base class for all lagset error conditions.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroDirection : Error {
    ZeroDirection() : Error("direction must be a non-zero vector") {}
};

struct FeedthroughNotSupported : Error {
    FeedthroughNotSupported() : Error("plant has feedthrough (n0 != 0); only lag plants are supported") {}
};

struct SingularD : Error {
    explicit SingularD(const std::string& which)
        : Error("denominator coefficient " + which + " must be non-zero") {}
};

struct NotCoprime : Error {
    NotCoprime() : Error("numerator and denominator polynomials are not coprime") {}
};

struct EmptyPolytope : Error {
    EmptyPolytope() : Error("polytope has no vertices") {}
};

struct EmptySet : Error {
    EmptySet() : Error("halfspace system has empty solution set") {}
};

struct UnboundedSet : Error {
    UnboundedSet() : Error("halfspace system is unbounded") {}
};

struct LowerDimensional : Error {
    LowerDimensional() : Error("set is not full-dimensional") {}
};

struct NotFullDimensional : Error {
    NotFullDimensional() : Error("operation requires a full-dimensional polytope") {}
};

struct DegenerateRidge : Error {
    DegenerateRidge() : Error("facet directions are parallel; no ridge direction exists") {}
};

struct InfeasibleMeasurement : Error {
    InfeasibleMeasurement() : Error("measurement slab does not intersect the uncertainty set") {}
};

struct DegenerateCut : Error {
    DegenerateCut() : Error("measurement slab supports the set in a lower-dimensional face") {}
};

struct ContainmentViolation : Error {
    explicit ContainmentViolation(int k)
        : Error("true state escaped the uncertainty set at step " + std::to_string(k)) {}
};

struct UnknownExample : Error {
    explicit UnknownExample(const std::string& name) : Error("unknown example: " + name) {}
};

struct FmRowGuard : Error {
    explicit FmRowGuard(std::size_t rows, std::size_t guard)
        : Error("Fourier-Motzkin row count " + std::to_string(rows) +
                " exceeds guard " + std::to_string(guard)) {}
};

}  // namespace lagset
