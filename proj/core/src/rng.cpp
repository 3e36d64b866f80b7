#include "remgibbs/rng.hpp"

#include <cmath>

namespace remgibbs {

double Stream::exponential() {
  // uniform() < 1, so the result is >= 2^-54 > 0.
  return -std::log(uniform());
}

}  // namespace remgibbs
