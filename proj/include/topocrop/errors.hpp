#pragma once

#include <stdexcept>
#include <string>

namespace topocrop {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Corrupt or unsupported image stream.
class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Diagram has no finite pairs, so no threshold can be selected.
class EmptyDiagram : public Error {
 public:
  EmptyDiagram() : Error("EmptyDiagram: persistence diagram has no finite pairs") {}
};

/// No pixel was selected.
class EmptyMask : public Error {
 public:
  EmptyMask() : Error("EmptyMask: mask contains no object pixels") {}
};

class BoxOutOfBounds : public Error {
 public:
  using Error::Error;
};

/// Batch input directory holds no image files.
class EmptyInput : public Error {
 public:
  explicit EmptyInput(const std::string& dir)
      : Error("EmptyInput: no image files found in " + dir) {}
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace topocrop
