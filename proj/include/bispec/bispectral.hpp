#pragma once

#include "bispec/spaces.hpp"

namespace bispec {

// Coefficient swap x^i (x d/dx)^j  <->  u^j tau^i on the bigraded table.
DiffeOp dualizeDiffToDiffe(const DiffOp& d);
DiffOp dualizeDiffeToDiff(const DiffeOp& d);

// Data maps of the dual pair; `special` shifts lambda by +-1 instead of +-N_i.
SpaceData dualDataForward(const SpaceData& dv, bool special);
SpaceData dualDataBackward(const SpaceData& du, bool special);

// Residue-sum realization of the integral transforms in the special setting.
QuasiExpSpace specialMellin(const QuasiPolySpace& v, const std::vector<Complex>& zs);
QuasiPolySpace specialFourier(const QuasiExpSpace& u, const std::vector<Complex>& lambdas,
                              const std::vector<int>& ns);

// Bivariate rational function num/(denX * denU), numerator stored as a
// matrix of coefficients num(i, j) on x^i u^j (resp. u^i x^j).
struct BakerAkhiezer {
  MatrixXcd num;
  Poly denFirst;   // in the first variable
  Poly denSecond;  // in the second variable
};

BakerAkhiezer bakerAkhiezer(const QuasiPolySpace& v);    // psi_X(x, u)
BakerAkhiezer bakerAkhiezerU(const QuasiExpSpace& u);    // phi_Y(u, x)

// psi_X(x,u) = phi_Y(u,x) after clearing denominators, coefficientwise.
bool bispectralCheck(const QuasiPolySpace& v, const QuasiExpSpace& u, double tol = 1e-7);
double bispectralMismatch(const QuasiPolySpace& v, const QuasiExpSpace& u);

}  // namespace bispec
