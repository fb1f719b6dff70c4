#pragma once

#include <stdexcept>
#include <string>

namespace todatopo {

/// Base class for all domain errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedType : Error {
    using Error::Error;
};
struct RankCapExceeded : Error {
    using Error::Error;
};
struct SizeCapExceeded : Error {
    using Error::Error;
};
struct VertexNotColored : Error {
    using Error::Error;
};
struct ZeroVertexAction : Error {
    using Error::Error;
};
struct NoUncoloredVertices : Error {
    using Error::Error;
};
struct OutOfChart : Error {
    using Error::Error;
};
struct ComplexInconsistent : Error {
    using Error::Error;
};
struct ToleranceUnreachable : Error {
    using Error::Error;
};

}  // namespace todatopo
