#pragma once

#include <stdexcept>
#include <string>

namespace qesim {

// Base of every error the library raises. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(int width_a, int height_a, int width_b, int height_b);

  int width_a() const { return width_a_; }
  int height_a() const { return height_a_; }
  int width_b() const { return width_b_; }
  int height_b() const { return height_b_; }

 private:
  int width_a_, height_a_, width_b_, height_b_;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

// Undecodable, unsupported or non-8-bit image data.
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qesim
