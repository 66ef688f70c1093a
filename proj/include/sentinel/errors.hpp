#pragma once

#include <stdexcept>

namespace sentinel {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A parameter violates an operation's contract.
struct InvalidParameterError : Error {
  using Error::Error;
};

/// Two grids that must share dimensions do not.
struct ShapeError : Error {
  using Error::Error;
};

/// A crop window lies entirely outside the global grid (robot off-map).
struct EmptyWindowError : Error {
  using Error::Error;
};

/// No traversable path between the requested cells.
struct NoPathError : Error {
  using Error::Error;
};

/// A map file failed to parse; the message names the offending field.
struct ParseError : Error {
  using Error::Error;
};

/// A map file parsed but its header and payload disagree.
struct IntegrityError : Error {
  using Error::Error;
};

}  // namespace sentinel
