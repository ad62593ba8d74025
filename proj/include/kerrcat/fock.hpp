#pragma once
/*
 * Brute-force ground truth in a truncated number basis. The joint state of a
 * two-level control and the oscillator is a dense density matrix of dimension
 * 2*(cutoff+1), index j*(cutoff+1)+n with control j in {0,1}. It evolves
 * under
 *
 *   drho/dt = i chi [P1 x n_hat, rho]
 *           + gamma (a rho a^dag - (n_hat rho + rho n_hat)/2)
 *
 * with the +i sign fixed so the control-1 branch acquires |alpha e^{+i theta}>.
 * Both superoperator terms are diagonal-plus-shift in the number basis, so
 * the derivative is assembled entrywise in O(dim^2) instead of by matrix
 * products. Everything here is limited to small amplitudes; the closed-form
 * dyad pipeline carries the large-amplitude regime.
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "kerrcat/cat.hpp"
#include "kerrcat/coherent.hpp"
#include "kerrcat/evolution.hpp"
#include "kerrcat/numerics.hpp"

namespace kerrcat {

struct integration_failure_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// smallest cutoff with Poisson(alpha^2) tail mass below 1e-12, floored at
// ceil(alpha^2 + 8 alpha + 10) so low amplitudes keep headroom for coherences
inline int choose_cutoff(double alpha) {
  if (!(alpha >= 0.0)) throw std::domain_error("choose_cutoff: alpha must be >= 0");
  if (alpha > 4.0)
    throw std::domain_error("choose_cutoff: alpha > 4 is outside the oracle's domain");
  const double lambda = alpha * alpha;
  double p = std::exp(-lambda);
  double cum = p;
  int n_tail = 0;
  while (1.0 - cum >= 1e-12 && n_tail < 400) {
    ++n_tail;
    p *= lambda / static_cast<double>(n_tail);
    cum += p;
  }
  const int floor_n = static_cast<int>(std::ceil(lambda + 8.0 * alpha + 10.0));
  return std::max(n_tail, floor_n);
}

// amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!) for n = 0..cutoff
inline std::vector<Complex> coherent_vector(Complex alpha, int cutoff) {
  if (cutoff < 0) throw std::domain_error("coherent_vector: cutoff must be >= 0");
  std::vector<Complex> v(static_cast<std::size_t>(cutoff) + 1);
  v[0] = std::exp(-0.5 * std::norm(alpha));
  double nrm = std::norm(v[0]);
  for (int n = 1; n <= cutoff; ++n) {
    v[n] = v[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    nrm += std::norm(v[n]);
  }
  if (1.0 - nrm > 1e-10)
    throw std::domain_error("coherent_vector: cutoff too small for this amplitude");
  return v;
}

struct FockOperators {
  int cutoff = 0;
  DenseMatrix a, a_dag, n_op;

  explicit FockOperators(int cutoff_) : cutoff(cutoff_), a(cutoff_ + 1) {
    if (cutoff_ < 0) throw std::domain_error("FockOperators: cutoff must be >= 0");
    for (int n = 1; n <= cutoff_; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    a_dag = adjoint(a);
    // diag(0..cutoff) written exactly; sqrt(n)^2 would be off by an ulp
    n_op = DenseMatrix(cutoff_ + 1);
    for (int n = 0; n <= cutoff_; ++n) n_op(n, n) = Complex(static_cast<double>(n), 0.0);
  }
};

struct JointState {
  int cutoff = 0;
  DenseMatrix rho;  // dim 2*(cutoff+1), control index major
};

inline int joint_index(int j, int n, int cutoff) { return j * (cutoff + 1) + n; }

// (|0> + |1>)(<0| + <1|)/2 on the control, |alpha><alpha| on the oscillator
inline JointState cross_kerr_initial_state(double alpha, int cutoff) {
  JointState s;
  s.cutoff = cutoff;
  s.rho = DenseMatrix(2 * (cutoff + 1));
  const auto v = coherent_vector(alpha, cutoff);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      for (int m = 0; m <= cutoff; ++m)
        for (int n = 0; n <= cutoff; ++n)
          s.rho(joint_index(j, m, cutoff), joint_index(k, n, cutoff)) =
              0.5 * v[m] * std::conj(v[n]);
  return s;
}

// flat-buffer derivative; sq holds sqrt(0..cutoff+1) precomputed by the caller
inline void lindblad_rhs_into(const std::vector<Complex>& y, std::vector<Complex>& out,
                              int cutoff, double chi, double gamma,
                              const std::vector<double>& sq) {
  const int d1 = cutoff + 1;
  const int dim = 2 * d1;
  for (int j = 0; j < 2; ++j)
    for (int m = 0; m < d1; ++m) {
      const int row = j * d1 + m;
      for (int k = 0; k < 2; ++k)
        for (int n = 0; n < d1; ++n) {
          const int col = k * d1 + n;
          const Complex lam(-0.5 * gamma * static_cast<double>(m + n),
                            chi * static_cast<double>(j * m - k * n));
          Complex val = lam * y[static_cast<std::size_t>(row) * dim + col];
          if (m + 1 < d1 && n + 1 < d1)
            val += gamma * sq[m + 1] * sq[n + 1] *
                   y[static_cast<std::size_t>(row + 1) * dim + (col + 1)];
          out[static_cast<std::size_t>(row) * dim + col] = val;
        }
    }
}

inline DenseMatrix lindblad_rhs(const JointState& s, double chi, double gamma) {
  std::vector<double> sq(static_cast<std::size_t>(s.cutoff) + 2);
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = std::sqrt(static_cast<double>(i));
  DenseMatrix out(s.rho.dim);
  lindblad_rhs_into(s.rho.a, out.a, s.cutoff, chi, gamma, sq);
  return out;
}

struct MasterOptions {
  // dt = min(budget/gamma, budget/(chi*cutoff)) over the terms that apply.
  // 0.005 keeps the startup eigenvalue transient of a truncated rank-1 input
  // above -1e-8 for alpha <= 3 (the transient scales as dt^4).
  double step_budget = 0.005;
  long long rehermitize_every = 64;
  double trace_tol = 1e-6;   // drift beyond this aborts the run, checked every step
  double psd_shift = 1e-6;   // Cholesky probe shift; failure aborts the run
  // The probe costs about twice an RK4 step at these dimensions, so by default
  // it runs on the rehermitize cadence plus the final step; per-step probing
  // is available for debugging runaway configurations.
  bool guard_every_step = false;
  std::function<void(long long step, double time, const JointState&)> observer;
};

struct MasterRunInfo {
  long long steps = 0;
  double dt = 0.0;
  double max_trace_err = 0.0;
};

inline MasterRunInfo integrate_master(JointState& s, double chi, double gamma, double t,
                                      const MasterOptions& opt = {}) {
  if (chi < 0.0 || gamma < 0.0 || t < 0.0)
    throw std::domain_error("integrate_master: negative rate or time");
  MasterRunInfo info;
  if (t == 0.0) return info;

  double dt_rule = 0.0;
  if (gamma > 0.0) dt_rule = opt.step_budget / gamma;
  if (chi > 0.0 && s.cutoff > 0) {
    const double dt_kerr = opt.step_budget / (chi * static_cast<double>(s.cutoff));
    dt_rule = dt_rule > 0.0 ? std::min(dt_rule, dt_kerr) : dt_kerr;
  }
  if (dt_rule == 0.0) return info;  // generator is identically zero

  const long long steps =
      std::max<long long>(1, static_cast<long long>(std::ceil(t / dt_rule - 1e-12)));
  const double dt = t / static_cast<double>(steps);
  info.steps = steps;
  info.dt = dt;

  std::vector<double> sq(static_cast<std::size_t>(s.cutoff) + 2);
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = std::sqrt(static_cast<double>(i));
  const int cutoff = s.cutoff;
  auto rhs = [cutoff, chi, gamma, &sq](const std::vector<Complex>& y,
                                       std::vector<Complex>& out) {
    lindblad_rhs_into(y, out, cutoff, chi, gamma, sq);
  };

  // Entries decay like e^{-gamma t (m+n)/2}, so over long runs most of the
  // matrix drifts through the subnormal range, where every multiply stalls on
  // a microcode assist (~20x slowdown). Anything below this floor is dead
  // weight 100 orders of magnitude under the tolerances, so pin it to zero on
  // the rehermitize cadence; the decay cannot cross from the floor into the
  // subnormal range within one cadence interval.
  constexpr double kFlushFloor = 1e-200;
  auto flush_tiny = [&]() {
    for (Complex& z : s.rho.a) {
      double re = z.real(), im = z.imag();
      if (std::abs(re) < kFlushFloor) re = 0.0;
      if (std::abs(im) < kFlushFloor) im = 0.0;
      z = Complex(re, im);
    }
  };

  Rk4Buffers buf;
  for (long long step = 1; step <= steps; ++step) {
    rk4_step_into(s.rho.a, rhs, dt, buf);
    if (step % opt.rehermitize_every == 0 || step == steps) {
      hermitize(s.rho);
      flush_tiny();
    }

    const double tr_err = std::abs(mat_trace(s.rho) - Complex(1.0, 0.0));
    info.max_trace_err = std::max(info.max_trace_err, tr_err);
    if (tr_err > opt.trace_tol)
      throw integration_failure_error("integrate_master: trace drifted beyond tolerance");
    if (opt.guard_every_step || step % opt.rehermitize_every == 0 || step == steps) {
      if (!psd_probe(s.rho, opt.psd_shift))
        throw integration_failure_error("integrate_master: state lost positivity");
    }
    if (opt.observer) opt.observer(step, static_cast<double>(step) * dt, s);
  }
  return info;
}

struct MasterRun {
  JointState state;
  MasterRunInfo info;
};

// integrates the joint state over t = required_time(p) at the oracle cutoff
inline MasterRun evolve_master(const EvolutionParams& p, const MasterOptions& opt = {}) {
  validate(p);
  MasterRun run;
  run.state = cross_kerr_initial_state(p.alpha, choose_cutoff(p.alpha));
  run.info = integrate_master(run.state, p.chi, p.gamma, required_time(p), opt);
  return run;
}

struct HeraldOutcome {
  double probability = 0.0;
  DenseMatrix rho;  // oscillator state, normalized
};

// project the control onto (|0> +- |1>)/sqrt(2), trace it out, normalize
inline HeraldOutcome herald_project(const JointState& s, CatSign sign) {
  const int d1 = s.cutoff + 1;
  const double sg = sign_of(sign);
  HeraldOutcome out;
  out.rho = DenseMatrix(d1);
  for (int m = 0; m < d1; ++m)
    for (int n = 0; n < d1; ++n)
      out.rho(m, n) = 0.5 * (s.rho(m, n) + sg * s.rho(m, d1 + n) + sg * s.rho(d1 + m, n) +
                             s.rho(d1 + m, d1 + n));
  out.probability = mat_trace(out.rho).real();
  if (out.probability < 1e-12)
    throw unnormalizable_state_error("herald_project: branch probability vanishes");
  const Complex inv(1.0 / out.probability, 0.0);
  for (auto& v : out.rho.a) v *= inv;
  return out;
}

// 1/2 sum |eigenvalues(a - b)|; both inputs must be Hermitian and same dim
inline double trace_distance(const DenseMatrix& a, const DenseMatrix& b) {
  check_same_dim(a, b, "trace_distance");
  const auto eig = hermitian_eigenvalues(a - b);
  double s = 0.0;
  for (double v : eig) s += std::abs(v);
  return 0.5 * s;
}

inline DenseMatrix dyad_to_fock(const CoherentDyad& d, int cutoff) {
  const auto vk = coherent_vector(d.ket_amp, cutoff);
  const auto vb = coherent_vector(d.bra_amp, cutoff);
  DenseMatrix m(cutoff + 1);
  for (int r = 0; r <= cutoff; ++r)
    for (int c = 0; c <= cutoff; ++c) m(r, c) = d.coeff * vk[r] * std::conj(vb[c]);
  return m;
}

inline DenseMatrix mixture_to_fock(const DyadMixture& mix, int cutoff) {
  DenseMatrix m(cutoff + 1);
  for (const auto& d : mix) {
    const auto vk = coherent_vector(d.ket_amp, cutoff);
    const auto vb = coherent_vector(d.bra_amp, cutoff);
    for (int r = 0; r <= cutoff; ++r)
      for (int c = 0; c <= cutoff; ++c) m(r, c) += d.coeff * vk[r] * std::conj(vb[c]);
  }
  return m;
}

// the control 0-1 block of the exact lossy state is C/2 |mu><mu'|, so
// 2 <mu| B01 |mu'> recovers the coherence parameter from the integrated state
inline Complex oracle_coherence(const JointState& s, Complex mu, Complex mu_prime) {
  const int d1 = s.cutoff + 1;
  const auto vm = coherent_vector(mu, s.cutoff);
  const auto vp = coherent_vector(mu_prime, s.cutoff);
  Complex val(0.0, 0.0);
  for (int m = 0; m < d1; ++m) {
    Complex rowsum(0.0, 0.0);
    for (int n = 0; n < d1; ++n) rowsum += s.rho(m, d1 + n) * vp[n];
    val += std::conj(vm[m]) * rowsum;
  }
  return 2.0 * val;
}

}  // namespace kerrcat
