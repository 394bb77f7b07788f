#include "rcomp/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <stdexcept>

namespace rcomp {

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, unsigned max_depth) {
  if (!(a <= b)) {
    throw std::invalid_argument("integrate_adaptive: need a <= b");
  }
  QuadratureResult out;
  if (a == b) {
    return out;
  }
  double err = 0.0;
  out.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, max_depth,
                                                                            rel_tol, &err);
  out.error_estimate = err;
  return out;
}

}  // namespace rcomp
