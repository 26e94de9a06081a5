// The dense ray X = phi[G_+] for G = Z + Z*sqrt(2) and phi(m + n*sqrt(2)) = -m + n*sqrt(2).

#include <iostream>

#include "linemetric/linemetric.hpp"

int main() {
  using namespace linemetric;
  const auto inst = build_example1(2, Rational(1), Rational(1));
  std::cout << "X = " << inst.ray.to_spec() << "\n";
  for (const char* lit : {"-5", "1-1*sqrt(2)", "-3+2*sqrt(2)"}) {
    std::cout << "  " << lit << " in X: " << (inst.ray.contains(parse_scalar(lit)) ? "yes" : "no") << "\n";
  }

  const auto ray = check_ray_conditions(inst.ray, inst.apex, 8);
  std::cout << "ray conditions at N = 8: " << (ray.passed() ? "passed" : "failed") << "\n";

  if (auto w = straddle_witness(inst.ray, inst.apex, 3)) {
    std::cout << "apex 0 lies between " << w->first << " and " << w->second << "\n";
  }

  const auto density = density_report(inst.ray, QuadScalar(0), QuadScalar(5), 25, 50);
  std::cout << "empty buckets on [0, 5]: " << density.empty_buckets() << "\n";
  return 0;
}
