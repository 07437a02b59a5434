#pragma once

#include <stdexcept>
#include <string>

namespace inellipse {

// Error taxonomy. The CLI maps these onto exit codes: input errors -> 2,
// parameter errors -> 3, I/O errors -> 4.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InputError : Error {
    using Error::Error;
};

struct ParameterError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

// geom_core
struct NotAnEllipseError : InputError {
    double discriminant;  // Delta = 4AC - B^2 <= 0
    explicit NotAnEllipseError(double Delta)
        : InputError("not an ellipse: Delta = 4AC - B^2 <= 0 (Delta = " + std::to_string(Delta) + ")"),
          discriminant(Delta) {}
};

struct DegenerateConicError : InputError {
    double delta;  // delta = CD^2 + AE^2 - BDE - F*Delta <= 0
    explicit DegenerateConicError(double d)
        : InputError("degenerate conic: delta <= 0 (delta = " + std::to_string(d) + ")"), delta(d) {}
};

struct SingularMapError : InputError {
    SingularMapError() : InputError("affine map is singular") {}
};

struct NotTangentError : InputError {
    double discriminant;  // of the restricted quadratic; >0 two hits, <0 none
    explicit NotTangentError(double disc)
        : InputError(std::string("line is not tangent (") + (disc > 0 ? "two intersections" : "no intersection") +
                     ", discriminant = " + std::to_string(disc) + ")"),
          discriminant(disc) {}
};

struct CollinearVerticesError : InputError {
    CollinearVerticesError() : InputError("triangle vertices are collinear") {}
};

// quad
struct NotConvexError : InputError {
    NotConvexError() : InputError("points do not form a strictly convex quadrilateral") {}
};

struct DegenerateVerticesError : InputError {
    DegenerateVerticesError() : InputError("repeated vertices or a collinear triple") {}
};

struct IsParallelogramError : InputError {
    IsParallelogramError() : InputError("quadrilateral is a parallelogram") {}
};

struct UnreachableFrameError : InputError {
    explicit UnreachableFrameError(const std::string& why) : InputError("canonical frame unreachable: " + why) {}
};

// inscribed / min_ecc
struct ParameterOutOfRangeError : ParameterError {
    double lo, hi;
    ParameterOutOfRangeError(const std::string& name, double value, double lo_, double hi_)
        : ParameterError(name + " must lie in (" + std::to_string(lo_) + ", " + std::to_string(hi_) +
                         "), got " + std::to_string(value)),
          lo(lo_), hi(hi_) {}
};

struct SingularFitError : InputError {
    SingularFitError() : InputError("conic fit is singular") {}
};

struct NotType1FrameError : InputError {
    double residual;
    explicit NotType1FrameError(double r)
        : InputError("frame parameters do not satisfy the type-1 relation v = (w+1)s/t (residual " +
                     std::to_string(r) + ")"),
          residual(r) {}
};

struct NotMdqError : InputError {
    NotMdqError() : InputError("quadrilateral is not a midpoint diagonal quadrilateral") {}
};

struct InvalidConfigError : InputError {
    using InputError::InputError;
};

}  // namespace inellipse
