#pragma once

#include <stdexcept>
#include <string>

namespace scot {

/// Base class for every error this library raises on bad input or
/// unusable data. Programming errors (violated preconditions) use the
/// standard logic_error family instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// geometry
class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};
class SelfIntersection : public Error {
 public:
  using Error::Error;
};

// scoring
class MisalignedSeries : public Error {
 public:
  using Error::Error;
};
class ZeroGroundTruth : public Error {
 public:
  using Error::Error;
};
class EmptyDataset : public Error {
 public:
  using Error::Error;
};

// synthetic scenarios
class InfeasiblePacking : public Error {
 public:
  using Error::Error;
};
class TooLarge : public Error {
 public:
  using Error::Error;
};

// file ingestion
class MissingId : public Error {
 public:
  using Error::Error;
};
class InvalidGeometry : public Error {
 public:
  using Error::Error;
};
class DuplicateLabel : public Error {
 public:
  using Error::Error;
};
class EmptyDirectory : public Error {
 public:
  using Error::Error;
};
class IoFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace scot
