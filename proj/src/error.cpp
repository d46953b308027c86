#include "endkit/error.hpp"

namespace endkit {

Error::Error(std::string module, std::string code, const std::string& message)
    : std::runtime_error(module + ": " + code + ": " + message),
      module_(std::move(module)),
      code_(std::move(code)) {}

}  // namespace endkit
