// The planar example end to end: lattice points, the missing sum, the
// hexagon's normal fan and the same failure seen in its Cox ring.

#include <fstream>
#include <iostream>

#include "latsum/catalog.hpp"
#include "latsum/coxring.hpp"
#include "latsum/svg.hpp"

using namespace latsum;

namespace {

void print_point(const LatticePoint& p) {
  std::cout << '(';
  for (std::size_t i = 0; i < p.size(); ++i) std::cout << (i ? "," : "") << p[i];
  std::cout << ')';
}

}  // namespace

int main(int argc, char** argv) {
  const auto p = catalog::figure_p(), q = catalog::figure_p_prime();
  const auto sum = minkowski_sum(p, q);

  std::cout << "P + P' vertices:";
  for (const auto& v : sum.vertices()) std::cout << ' ', print_point(v);
  std::cout << '\n';

  const auto rep = problem1_check(p, q);
  std::cout << "sumset " << rep.sumsetSize << " of " << rep.targetSize << " lattice points, missing:";
  for (const auto& m : rep.missing) std::cout << ' ', print_point(m);
  std::cout << '\n';

  const auto fan = normal_fan(sum);
  CoxRing ring(fan);
  const auto dp = polytope_divisor(fan, p), dq = polytope_divisor(fan, q);
  const auto alpha = ring.gale().class_of(dp), beta = ring.gale().class_of(dq);
  std::cout << "class group rank " << ring.gale().free_rank() << ", [D_P] = ";
  print_point(alpha.free);
  std::cout << ", [D_P'] = ";
  print_point(beta.free);
  std::cout << '\n';

  const auto mm = multiplication_check(ring, alpha, beta);
  std::cout << "S_alpha x S_beta -> S_(alpha+beta): " << mm.dimAlpha << " x " << mm.dimBeta << " -> " << mm.dimSum
            << ", image " << mm.imageDim << (mm.surjective ? " (onto)" : " (not onto)") << '\n';
  for (const auto& d : mm.missing) {
    std::cout << "missing monomial exponent ";
    print_point(d.coefficients);
    std::cout << '\n';
  }
  std::cout << "nef status: " << to_string(nef_cone_membership(ring, alpha)) << ", "
            << to_string(nef_cone_membership(ring, beta)) << '\n';

  if (argc > 1) {
    std::ofstream(argv[1]) << svg::render(svg::sum_figure(p, q));
    std::cout << "wrote " << argv[1] << '\n';
  }
}
