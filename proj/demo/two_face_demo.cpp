// Runs the two-face verification for the Siegel-form loxodromic diag(2, 1, 1/2)
// paired with a seeded random loxodromic, and prints a short summary.

#include "chb/chb.hpp"

#include <cstdio>

using namespace chb;

int main() {
  Mat3 d = Mat3::Zero();
  d(0, 0) = 2.0;
  d(1, 1) = 1.0;
  d(2, 2) = 0.5;
  const SpecialUnitaryElement g1 = verify_membership(d, HermitianForm::siegel());
  const SpecialUnitaryElement g2 = random_element(7, IsometryLabel::Loxodromic);

  VerifyConfig cfg;
  cfg.seed = 1;
  cfg.samples = 200;
  const VerificationReport r = two_face_verify(g1, g2, cfg);

  std::printf("translation lengths   %.6f  %.6f\n", r.translation_lengths[0], r.translation_lengths[1]);
  std::printf("basepoint             (%.4f%+.4fi, %.4f%+.4fi) x (%.4f%+.4fi, %.4f%+.4fi)\n",
              r.basepoint.first.z1().real(), r.basepoint.first.z1().imag(), r.basepoint.first.z2().real(),
              r.basepoint.first.z2().imag(), r.basepoint.second.z1().real(), r.basepoint.second.z1().imag(),
              r.basepoint.second.z2().real(), r.basepoint.second.z2().imag());
  std::printf("disjointness margin   %.6g (control %.3g)\n", r.disjointness_margin, r.control_margin);
  std::printf("collinearity          %.3g\n", r.collinearity_deviation);
  for (const auto& s : r.sweeps) {
    std::printf("  j = %+d  rho(z, g^j z) = %8.4f  invisible %zu/%zu  E_0 %zu/%zu\n", s.power, s.orbit_distance,
                s.invisible, s.samples, s.e0_invisible, s.e0_samples);
  }
  std::printf("face powers          ");
  for (int j : r.face_powers) std::printf(" %+d", j);
  std::printf("\nverdict               %s\n", r.passed ? "two faces" : "FAILED");
  for (const auto& st : r.stages) {
    if (!st.passed) std::printf("  stage %s failed: %s\n", st.name.c_str(), st.detail.c_str());
  }
  return r.passed ? 0 : 1;
}
