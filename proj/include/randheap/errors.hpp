#pragma once

#include <stdexcept>
#include <string>

namespace randheap {

enum class ErrorKind {
    EmptyHeap,
    DeadHandle,
    KeyIncrease,
    PolicyMismatch,
    TagCollision,
    OutOfOrder,
    NotFailing,
    BadMix,
    InvalidTrace,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace randheap
