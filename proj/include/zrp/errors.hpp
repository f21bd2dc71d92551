#pragma once

// Exception types thrown by the zrp library. Every numeric failure derives
// from zrp::numeric_error so front ends can map it to a single exit code.

#include <stdexcept>
#include <string>

namespace zrp {

class numeric_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operation requires a PT-symmetric coupling (a, d real; b, c imaginary).
class not_pt_symmetric : public numeric_error {
public:
  not_pt_symmetric()
      : numeric_error("coupling matrix is not PT-symmetric") {}
};

class not_a_root : public numeric_error {
public:
  using numeric_error::numeric_error;
};

class not_decaying : public numeric_error {
public:
  using numeric_error::numeric_error;
};

/// An input exponent coincides with ±iτ (resonant term of the free kernel).
class pole_collision : public numeric_error {
public:
  using numeric_error::numeric_error;
};

/// z = τ² lies on (or numerically at) the point spectrum of A_T.
class at_spectrum : public numeric_error {
public:
  using numeric_error::numeric_error;
};

class complex_spectrum : public numeric_error {
public:
  using numeric_error::numeric_error;
};

class convergence_failure : public numeric_error {
public:
  using numeric_error::numeric_error;
};

} // namespace zrp
