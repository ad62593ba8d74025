#pragma once
/*
 * Heralded cat states and two-mode entanglement.
 *
 * After the interaction the joint control-field state is
 *
 *   1/2 [ |0><0| x |mu><mu| + |1><1| x |mu'><mu'|
 *       + C |0><1| x |mu><mu'| + conj(C) |1><0| x |mu'><mu| ]
 *
 * and projecting the control onto (|0> +- |1>)/sqrt(2) heralds a field state
 * proportional to |mu><mu| + |mu'><mu'| +- C|mu><mu'| +- conj(C)|mu'><mu|.
 * A 50/50 beamsplitter splits each branch across two modes, and displacing
 * both modes by -(beta + beta')/2 centers the branches at +-delta with
 * delta = (beta - beta')/2. Displacement is unitary, so the cross coherence
 * only changes phase. The final state lives in the span of the even and odd
 * cat states of +-delta per mode, which gives an exact 4x4 two-qubit matrix
 * and a negativity that needs no Fock-space truncation.
 */

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kerrcat/coherent.hpp"
#include "kerrcat/evolution.hpp"
#include "kerrcat/numerics.hpp"

namespace kerrcat {

struct unnormalizable_state_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct degenerate_basis_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class CatSign { plus, minus };

inline double sign_of(CatSign s) { return s == CatSign::plus ? 1.0 : -1.0; }

// p(+-) = (1 +- Re(C <mu'|mu>)) / 2; the two outcomes sum to 1 exactly
inline std::pair<double, double> herald_probabilities(Complex C, Complex mu, Complex mu_prime) {
  const double x = 0.5 * (C * coherent_overlap(mu_prime, mu)).real();
  return {0.5 + x, 0.5 - x};
}

struct CatState {
  Complex mu{0.0, 0.0};        // unrotated branch amplitude
  Complex mu_prime{0.0, 0.0};  // rotated branch amplitude
  Complex C{1.0, 0.0};         // cross-dyad coherence between the branches
  CatSign sign = CatSign::plus;
  double herald_probability = 0.0;
  DyadMixture mixture;  // four dyads, trace 1
};

inline CatState build_cat(Complex mu, Complex mu_prime, Complex C, CatSign sign) {
  CatState cat;
  cat.mu = mu;
  cat.mu_prime = mu_prime;
  cat.C = C;
  cat.sign = sign;
  const double s = sign_of(sign);
  const Complex o = coherent_overlap(mu_prime, mu);
  const double T = 2.0 + 2.0 * s * (C * o).real();
  if (!(T > 1e-300))
    throw unnormalizable_state_error("build_cat: herald outcome has vanishing probability");
  cat.herald_probability = 0.25 * T;
  const double inv = 1.0 / T;
  cat.mixture = {
      {Complex(inv, 0.0), mu, mu},
      {Complex(inv, 0.0), mu_prime, mu_prime},
      {s * inv * C, mu, mu_prime},
      {s * inv * std::conj(C), mu_prime, mu},
  };
  return cat;
}

// branch amplitudes implied by an evolution run: mu = A alpha, mu' = A alpha e^{i theta}
inline CatState build_cat(const EvolutionResult& r, double alpha, CatSign sign) {
  if (std::abs(r.C) > 1.0 + 1e-12)
    throw std::domain_error("build_cat: |C| exceeds 1, not a physical coherence");
  const Complex mu = r.A * alpha;
  return build_cat(mu, mu * std::polar(1.0, r.theta), r.C, sign);
}

inline std::pair<double, double> herald_probabilities(const EvolutionResult& r, double alpha) {
  const Complex mu = r.A * alpha;
  return herald_probabilities(r.C, mu, mu * std::polar(1.0, r.theta));
}

struct TwoModeDyad {
  Complex coeff{1.0, 0.0};
  Complex ket1{0.0, 0.0}, ket2{0.0, 0.0};
  Complex bra1{0.0, 0.0}, bra2{0.0, 0.0};
};

using TwoModeMixture = std::vector<TwoModeDyad>;

inline Complex two_mode_trace(const TwoModeMixture& m) {
  Complex t(0.0, 0.0);
  for (const auto& d : m)
    t += d.coeff * coherent_overlap(d.bra1, d.ket1) * coherent_overlap(d.bra2, d.ket2);
  return t;
}

inline double two_mode_purity(const TwoModeMixture& m) {
  Complex t(0.0, 0.0);
  for (const auto& di : m)
    for (const auto& dj : m)
      t += di.coeff * dj.coeff * coherent_overlap(di.bra1, dj.ket1) *
           coherent_overlap(di.bra2, dj.ket2) * coherent_overlap(dj.bra1, di.ket1) *
           coherent_overlap(dj.bra2, di.ket2);
  return t.real();
}

struct EntangledCat {
  Complex branch1{0.0, 0.0};  // per-mode amplitude of the unrotated branch
  Complex branch2{0.0, 0.0};  // per-mode amplitude of the rotated branch
  Complex C{1.0, 0.0};        // cross coherence between the branches
  CatSign sign = CatSign::plus;
  TwoModeMixture mixture;  // four dyads, trace 1
};

// 50/50 beamsplitter sends |nu> to |nu/sqrt2>|nu/sqrt2>; coefficients are untouched
inline EntangledCat beamsplit(const CatState& cat) {
  EntangledCat out;
  const double r = 1.0 / std::sqrt(2.0);
  out.branch1 = r * cat.mu;
  out.branch2 = r * cat.mu_prime;
  out.C = cat.C;
  out.sign = cat.sign;
  out.mixture.reserve(cat.mixture.size());
  for (const auto& d : cat.mixture)
    out.mixture.push_back({d.coeff, r * d.ket_amp, r * d.ket_amp, r * d.bra_amp, r * d.bra_amp});
  return out;
}

/*
 * Displace both modes by x = -(branch1 + branch2)/2 so the branches sit at
 * +-delta, delta = (branch1 - branch2)/2. Each dyad picks up the exact
 * displacement phase per mode, and the metadata coherence transforms as
 *
 *   C' = C exp(-2i Im(branch2 conj(branch1)))
 *
 * which keeps the metadata consistent with the dyad-level phases.
 * Diagonal dyads acquire no phase, so the trace is preserved exactly.
 */
inline EntangledCat symmetrize(const EntangledCat& in) {
  EntangledCat out;
  const Complex x = -0.5 * (in.branch1 + in.branch2);
  const Complex delta = 0.5 * (in.branch1 - in.branch2);
  out.branch1 = delta;
  out.branch2 = -delta;
  out.sign = in.sign;
  out.C = in.C * std::polar(1.0, -2.0 * (in.branch2 * std::conj(in.branch1)).imag());
  out.mixture.reserve(in.mixture.size());
  for (const auto& d : in.mixture) {
    TwoModeDyad nd = d;
    const double phase = (x * std::conj(d.ket1)).imag() + (x * std::conj(d.ket2)).imag() -
                         (x * std::conj(d.bra1)).imag() - (x * std::conj(d.bra2)).imag();
    nd.coeff *= std::polar(1.0, phase);
    nd.ket1 += x;
    nd.ket2 += x;
    nd.bra1 += x;
    nd.bra2 += x;
    out.mixture.push_back(nd);
  }
  return out;
}

struct CatBasisMatrix {
  DenseMatrix rho;  // 4x4, basis {++, +-, -+, --} of even/odd cats per mode
  double m_plus = 0.0;   // even-cat normalization 2 + 2 e^{-2|delta|^2}
  double m_minus = 0.0;  // odd-cat normalization 2 - 2 e^{-2|delta|^2}
  Complex delta{0.0, 0.0};
  Complex C_prime{0.0, 0.0};
};

/*
 * Exact two-qubit representation of the centered state. With
 * |Phi+-> = (|delta> +- |-delta>)/sqrt(M+-) the coherent branches decompose as
 *
 *   |delta>  = (sqrt(M+)|Phi+> + sqrt(M-)|Phi->)/2
 *   |-delta> = (sqrt(M+)|Phi+> - sqrt(M-)|Phi->)/2
 *
 * so |delta,delta> and |-delta,-delta> become the unit vectors
 * u = (M+, m, m, M-)/4 and v = (M+, -m, -m, M-)/4, m = sqrt(M+ M-), and the
 * state is the normalized uu^ + vv^ +- C' uv^ +- conj(C') vu^ combination.
 * M- is computed through expm1; the naive 2 - 2e^{-2|delta|^2} cancels to
 * zero for small separations and would collapse the basis spuriously.
 */
inline CatBasisMatrix to_cat_basis(const EntangledCat& state) {
  CatBasisMatrix out;
  const Complex delta = 0.5 * (state.branch1 - state.branch2);
  if (std::abs(state.branch1 + state.branch2) > 1e-9 * (1.0 + std::abs(delta)))
    throw std::invalid_argument("to_cat_basis: state is not centered, call symmetrize first");
  out.delta = delta;
  out.C_prime = state.C;
  const double d2 = std::norm(delta);
  out.m_plus = 2.0 + 2.0 * std::exp(-2.0 * d2);
  out.m_minus = -2.0 * std::expm1(-2.0 * d2);
  if (!(out.m_minus > 1e-150))
    throw degenerate_basis_error("to_cat_basis: odd cat is unnormalizable, branches coincide");

  const double mp = out.m_plus, mm = out.m_minus;
  const double m = std::sqrt(mp * mm);
  const std::array<double, 4> u = {0.25 * mp, 0.25 * m, 0.25 * m, 0.25 * mm};
  const std::array<double, 4> v = {0.25 * mp, -0.25 * m, -0.25 * m, 0.25 * mm};

  const double s = sign_of(state.sign);
  const Complex cp = state.C;
  const double uv = u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3];
  const double T = 2.0 + 2.0 * s * (cp * uv).real();
  if (!(T > 1e-300))
    throw unnormalizable_state_error("to_cat_basis: state has vanishing norm");

  out.rho = DenseMatrix(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out.rho(i, j) = (u[i] * u[j] + v[i] * v[j] + s * cp * u[i] * v[j] +
                       s * std::conj(cp) * v[i] * u[j]) /
                      T;
  return out;
}

struct NegativityResult {
  double E = 0.0;           // -2 min(lambda_min, 0); 1 for a Bell state
  double lambda_min = 0.0;  // smallest eigenvalue of the partial transpose
  std::vector<double> eigenvalues;
};

// partial transpose on the second factor of a da x db bipartite state
inline DenseMatrix partial_transpose(const DenseMatrix& m, int da = 2, int db = 2) {
  if (m.dim != da * db) throw std::invalid_argument("partial_transpose: dimension mismatch");
  DenseMatrix out(m.dim);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int ap = 0; ap < da; ++ap)
        for (int bp = 0; bp < db; ++bp) out(a * db + b, ap * db + bp) = m(a * db + bp, ap * db + b);
  return out;
}

inline NegativityResult negativity(const DenseMatrix& rho, int da = 2, int db = 2) {
  NegativityResult r;
  r.eigenvalues = hermitian_eigenvalues(partial_transpose(rho, da, db));
  r.lambda_min = r.eigenvalues.front();
  r.E = r.lambda_min < 0.0 ? -2.0 * r.lambda_min : 0.0;
  return r;
}

}  // namespace kerrcat
