#ifndef ARBOR_ERRORS_HPP
#define ARBOR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace arbor {

// A configured size guard refused an instance. Raising the cap is the remedy.
class CapExceeded : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace arbor

#endif
