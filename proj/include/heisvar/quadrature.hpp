// Composite tensor Gauss-Legendre quadrature on a box, with a fixed node
// order and a deterministic pairwise reduction.
#pragma once

#include <functional>
#include <vector>

#include "heisvar/types.hpp"

namespace heisvar {

struct QNode {
  double eta, tau, w;
};

// q-point Gauss-Legendre nodes and weights on (-1, 1), ascending nodes.
void gauss_legendre(int q, std::vector<double>& x, std::vector<double>& w);

// Pairwise reduction in index order (deterministic, accuracy ~ eps log n).
double pairwise_sum(std::vector<double> terms);

class QuadratureDomain {
 public:
  // cells x cells equal sub-boxes, q-point rule per cell per dimension.
  QuadratureDomain(Box box, int cells, int order);
  const Box& box() const { return box_; }
  int cells() const { return cells_; }
  int order() const { return order_; }
  const std::vector<QNode>& nodes() const { return nodes_; }
  // Integrate a node function.  Evaluation errors are re-thrown with the
  // node location appended; non-finite values raise an evaluation error.
  double integrate(const std::function<double(const QNode&)>& g) const;

 private:
  Box box_;
  int cells_, order_;
  std::vector<QNode> nodes_;
};

}  // namespace heisvar
