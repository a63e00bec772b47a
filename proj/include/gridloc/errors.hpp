#pragma once

#include <stdexcept>
#include <string>

namespace gridloc {

// Base class for all precondition violations raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonTilingError : Error {
  using Error::Error;
};
struct InvalidLevelsError : Error {
  using Error::Error;
};
struct LevelOutOfRangeError : Error {
  using Error::Error;
};
struct OutOfBoundsError : Error {
  using Error::Error;
};
struct UnknownAnchorError : Error {
  using Error::Error;
};
struct EmptyFrameError : Error {
  using Error::Error;
};
struct NotEnoughAnchorsError : Error {
  using Error::Error;
};
struct DegenerateGeometryError : Error {
  using Error::Error;
};
struct EmptyTrellisError : Error {
  using Error::Error;
};
struct LengthMismatchError : Error {
  using Error::Error;
};
struct TooShortError : Error {
  using Error::Error;
};
struct ZeroLengthPathError : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};

}  // namespace gridloc
