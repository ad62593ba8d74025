#pragma once
/*
 * Coherent-state dyad algebra. A state built from coherent-state projectors
 * stays a finite sum of weighted dyads coeff * |ket><bra| under every channel
 * used here (Kerr phase rotation, amplitude damping, displacement), so the
 * exact state is carried as a handful of (coeff, ket_amp, bra_amp) triples
 * instead of a truncated number-basis matrix. All functions are pure.
 *
 * Conventions:
 *   <beta|alpha> = exp(-(|alpha|^2 + |beta|^2)/2 + conj(beta) * alpha)
 *   trace(coeff |k><b|) = coeff * <b|k>
 */

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "kerrcat/numerics.hpp"

namespace kerrcat {

struct CoherentDyad {
  Complex coeff{1.0, 0.0};
  Complex ket_amp{0.0, 0.0};
  Complex bra_amp{0.0, 0.0};
};

// ordered list of dyads; represents sum_i coeff_i |ket_i><bra_i|
using DyadMixture = std::vector<CoherentDyad>;

inline Complex coherent_overlap(Complex bra, Complex ket) {
  return std::exp(-0.5 * (std::norm(ket) + std::norm(bra)) + std::conj(bra) * ket);
}

inline Complex dyad_trace(const DyadMixture& m) {
  Complex t = 0.0;
  for (const auto& d : m) t += d.coeff * coherent_overlap(d.bra_amp, d.ket_amp);
  return t;
}

// trace of the product of two mixtures, tr(m1 * m2); purity is the self case
inline Complex dyad_product_trace(const DyadMixture& m1, const DyadMixture& m2) {
  Complex t = 0.0;
  for (const auto& x : m1)
    for (const auto& y : m2)
      t += x.coeff * y.coeff * coherent_overlap(x.bra_amp, y.ket_amp) *
           coherent_overlap(y.bra_amp, x.ket_amp);
  return t;
}

inline double purity(const DyadMixture& m) { return dyad_product_trace(m, m).real(); }

/*
 * Unitary displacement D(x) = exp(x a^dag - conj(x) a), as a channel on a
 * dyad. D(x)|alpha> = exp(i Im(x conj(alpha))) |alpha + x>, so both
 * amplitudes shift by x and the two phases land in the coefficient. Applying
 * it to every term of a density-operator mixture preserves the trace.
 */
inline CoherentDyad displace_dyad(const CoherentDyad& d, Complex x) {
  CoherentDyad out = d;
  const double phase =
      std::imag(x * std::conj(d.ket_amp)) - std::imag(x * std::conj(d.bra_amp));
  out.coeff *= std::polar(1.0, phase);
  out.ket_amp += x;
  out.bra_amp += x;
  return out;
}

inline DyadMixture displace_mixture(const DyadMixture& m, Complex x) {
  DyadMixture out;
  out.reserve(m.size());
  for (const auto& d : m) out.push_back(displace_dyad(d, x));
  return out;
}

}  // namespace kerrcat
