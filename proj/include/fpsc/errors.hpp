#pragma once

#include <stdexcept>
#include <string>

namespace fpsc {

// Bad user-supplied data (files, parameters, malformed words). CLI exit code 2.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A violated internal invariant. CLI exit code 3.
struct internal_error : std::logic_error {
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

// Computation is well-posed but exceeds the desk-scale caps this tool commits to.
struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

inline void check_input(bool ok, const std::string& msg) {
  if (!ok) throw input_error(msg);
}

inline void check_internal(bool ok, const std::string& msg) {
  if (!ok) throw internal_error(msg);
}

inline void check_resource(bool ok, const std::string& msg) {
  if (!ok) throw resource_error(msg);
}

}  // namespace fpsc
