#pragma once

#include <stdexcept>
#include <string>

namespace polaris {

// All library failures surface as this exception type.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polaris
