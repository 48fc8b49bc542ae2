#pragma once

#include <stdexcept>
#include <string>

namespace npspec {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// geometry
struct DegenerateGeometry : Error { using Error::Error; };
struct SelfIntersecting : Error { using Error::Error; };
struct InvalidMesh : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct NotLipschitz : Error { using Error::Error; };

// kernels
struct StripViolation : Error { using Error::Error; };
struct SingularPoint : Error { using Error::Error; };

// discretization / solves
struct InvalidParams : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };

// curves / maps
struct OnCurve : Error { using Error::Error; };
struct PoleInput : Error { using Error::Error; };

// file I/O
struct ParseError : Error { using Error::Error; };

} // namespace npspec
