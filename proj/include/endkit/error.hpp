#pragma once

#include <stdexcept>
#include <string>

namespace endkit {

/// Every failure raised by the library. `module()` names the subsystem
/// (surface-model, ends, classify, decompose, curve-rewrite, degree, cli)
/// and `code()` the error case, e.g. "DanglingRule".
class Error : public std::runtime_error {
 public:
  Error(std::string module, std::string code, const std::string& message);

  const std::string& module() const noexcept { return module_; }
  const std::string& code() const noexcept { return code_; }

 private:
  std::string module_;
  std::string code_;
};

}  // namespace endkit
