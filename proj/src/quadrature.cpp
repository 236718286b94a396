#include "fridge/quadrature.hpp"

#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace fridge {

namespace {

struct Piece {
  double a, b;
  double value, error, l1;
  bool operator<(const Piece& other) const { return error < other.error; }
};

Piece rule(const std::function<double(double)>& f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  Piece p{a, b, 0.0, 0.0, 0.0};
  // max_depth = 0: a single Kronrod evaluation with its Gauss error estimate.
  p.value = gauss_kronrod<double, 61>::integrate(f, a, b, 0, 0.0, &p.error, &p.l1);
  return p;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts) {
  std::priority_queue<Piece> heap;
  Piece first = rule(f, a, b);
  double value = first.value;
  double error = first.error;
  double l1 = first.l1;
  heap.push(first);

  auto budget = [&] { return std::max(opts.rel_tol * l1, opts.abs_tol); };
  unsigned pieces = 1;
  while (error > budget() && pieces < opts.max_subdivisions) {
    const Piece worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted
    heap.pop();
    const Piece left = rule(f, worst.a, mid);
    const Piece right = rule(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
    ++pieces;
  }

  // Re-sum to shed the drift of the running updates.
  value = error = l1 = 0.0;
  for (auto copy = heap; !copy.empty(); copy.pop()) {
    value += copy.top().value;
    error += copy.top().error;
    l1 += copy.top().l1;
  }
  if (!std::isfinite(value) || !(error <= budget())) {
    std::ostringstream msg;
    msg << "quadrature on [" << a << ", " << b << "] did not converge: error estimate " << error
        << " exceeds " << budget() << " after " << pieces << " subintervals";
    throw QuadratureFailure(msg.str());
  }
  return {value, error, l1};
}

}  // namespace fridge
