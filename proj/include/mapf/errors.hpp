#pragma once

#include <stdexcept>
#include <string>

namespace mapf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DisconnectedMap : public Error {
 public:
  using Error::Error;
};

class CycleError : public Error {
 public:
  using Error::Error;
};

class MalformedHeader : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class BadEntry : public Error {
 public:
  using Error::Error;
};

class DuplicateEndpoint : public Error {
 public:
  using Error::Error;
};

class InfeasibleParameters : public Error {
 public:
  using Error::Error;
};

class RefusedTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace mapf
