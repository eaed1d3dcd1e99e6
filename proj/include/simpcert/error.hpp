#pragma once

#include <stdexcept>
#include <string>

namespace simpcert {

// Domain error: bad user input or violated operation precondition.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Internal error: a runtime self-check failed, i.e. a bug in the engine.
// The CLI maps this to exit code 3.
class InternalError : public std::logic_error {
public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}

inline void check_internal(bool cond, const std::string& msg) {
  if (!cond) throw InternalError(msg);
}

}  // namespace simpcert
