#ifndef XDIPOLE_QUADRATURE_HPP
#define XDIPOLE_QUADRATURE_HPP

#include <vector>

namespace xdipole {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1],
/// nodes in ascending order.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Returns the n-point Gauss-Legendre rule (cached per n).
const QuadratureRule& gauss_legendre(int n);

}  // namespace xdipole

#endif  // XDIPOLE_QUADRATURE_HPP
