#include "beamgain/errors.hpp"

#include <sstream>

namespace beamgain {

namespace {
std::string describe_pivot(std::size_t pivot, double value) {
  std::ostringstream os;
  os << "factorization failed: non-positive pivot " << value << " at index " << pivot;
  return os.str();
}
}  // namespace

FactorizationError::FactorizationError(std::size_t pivot, double value)
    : Error(describe_pivot(pivot, value)), pivot_(pivot), value_(value) {}

}  // namespace beamgain
