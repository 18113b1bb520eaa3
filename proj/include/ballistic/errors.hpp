#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ballistic {

enum class ErrorKind {
  Input,                  // malformed or out-of-range arguments
  Limit,                  // problem size beyond a supported bound
  ZeroProbability,        // postselection outcome with vanishing weight
  SimultaneousCollision,  // tied collision times in a trajectory set
  Check,                  // a verification routine found a violation
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Carries the tied events: (adjacent slot k, collision time).
class SimultaneousCollision : public Error {
 public:
  SimultaneousCollision(const std::string& what,
                        std::vector<std::pair<int, double>> tied)
      : Error(ErrorKind::SimultaneousCollision, what), tied_(std::move(tied)) {}
  const std::vector<std::pair<int, double>>& tied() const noexcept { return tied_; }

 private:
  std::vector<std::pair<int, double>> tied_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);
inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::Input, what);
}

}  // namespace ballistic
