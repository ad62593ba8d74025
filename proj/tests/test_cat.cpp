// Heralded cat construction, beamsplitting, centering, the two-qubit cat-basis
// representation, and entanglement negativity.
#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "kerrcat/cat.hpp"
#include "kerrcat/evolution.hpp"

using kerrcat::CatSign;
using kerrcat::Complex;
using kerrcat::EntangledCat;
using kerrcat::EvolutionParams;
using kerrcat::StepOrder;

namespace {

// centered two-branch state with prescribed separation, coherence and sign;
// the dyad mixture is filled in for tests that consume it
EntangledCat make_centered(double delta, Complex c, CatSign sign) {
  EntangledCat s;
  s.branch1 = Complex(delta, 0.0);
  s.branch2 = Complex(-delta, 0.0);
  s.C = c;
  s.sign = sign;
  const double sg = kerrcat::sign_of(sign);
  const Complex o = kerrcat::coherent_overlap(s.branch2, s.branch1);  // per mode
  const double t = 2.0 + 2.0 * sg * (c * o * o).real();
  const Complex inv(1.0 / t, 0.0);
  s.mixture = {
      {inv, s.branch1, s.branch1, s.branch1, s.branch1},
      {inv, s.branch2, s.branch2, s.branch2, s.branch2},
      {sg * inv * c, s.branch1, s.branch1, s.branch2, s.branch2},
      {sg * inv * std::conj(c), s.branch2, s.branch2, s.branch1, s.branch1},
  };
  return s;
}

kerrcat::CatBasisMatrix pipeline(double alpha, CatSign sign) {
  EvolutionParams p = kerrcat::params_from_big_gamma(alpha, 3.0, 0.0125);
  const auto res = kerrcat::evolve(p, StepOrder::kerr_then_damp);
  const auto cat = kerrcat::build_cat(res, alpha, sign);
  return kerrcat::to_cat_basis(kerrcat::symmetrize(kerrcat::beamsplit(cat)));
}

}  // namespace

TEST_CASE("herald probabilities", "[cat]") {
  // coincident branches with full coherence: the '+' outcome is certain
  auto pr = kerrcat::herald_probabilities(Complex(1.0, 0.0), Complex(0.0, 0.0),
                                          Complex(0.0, 0.0));
  CHECK(pr.first == 1.0);
  CHECK(pr.second == 0.0);

  // opposite unit branches: p(-) = (1 - e^{-2})/2
  pr = kerrcat::herald_probabilities(Complex(1.0, 0.0), Complex(1.0, 0.0),
                                     Complex(-1.0, 0.0));
  CHECK(pr.first == Catch::Approx(0.5 * (1.0 + std::exp(-2.0))).epsilon(1e-14));
  CHECK(pr.second == Catch::Approx(0.5 * (1.0 - std::exp(-2.0))).epsilon(1e-14));

  // the two outcomes always sum to one, exactly
  pr = kerrcat::herald_probabilities(Complex(0.3, 0.4), Complex(1.2, -0.7),
                                     Complex(-0.5, 0.9));
  CHECK(pr.first + pr.second == 1.0);

  // evolution-result overload agrees with the raw form
  EvolutionParams p = kerrcat::params_from_big_gamma(300.0, 3.0, 0.0125);
  const auto res = kerrcat::evolve(p, StepOrder::kerr_then_damp);
  const Complex mu = res.A * 300.0;
  const Complex mu_p = mu * std::polar(1.0, res.theta);
  const auto a = kerrcat::herald_probabilities(res, 300.0);
  const auto b = kerrcat::herald_probabilities(res.C, mu, mu_p);
  CHECK(a.first == b.first);
  CHECK(a.second == b.second);
}

TEST_CASE("heralded cats are normalized and pure when fully coherent", "[cat]") {
  const Complex mu(1.0, 0.0), mu_p(-1.0, 0.0);

  for (CatSign sign : {CatSign::plus, CatSign::minus}) {
    const auto cat = kerrcat::build_cat(mu, mu_p, Complex(1.0, 0.0), sign);
    CHECK(kerrcat::dyad_trace(cat.mixture).real() == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(kerrcat::dyad_trace(cat.mixture).imag()) < 1e-15);
    CHECK(kerrcat::purity(cat.mixture) == Catch::Approx(1.0).epsilon(1e-12));
  }

  // with zero coherence the state is the classical branch mixture
  const auto mixed = kerrcat::build_cat(mu, mu_p, Complex(0.0, 0.0), CatSign::plus);
  const double osq = std::norm(kerrcat::coherent_overlap(mu_p, mu));
  CHECK(kerrcat::purity(mixed.mixture) == Catch::Approx(0.5 * (1.0 + osq)).epsilon(1e-12));
  CHECK(mixed.herald_probability == Catch::Approx(0.5).epsilon(1e-14));

  // herald probabilities of the two signs match herald_probabilities()
  const auto plus = kerrcat::build_cat(mu, mu_p, Complex(0.6, 0.2), CatSign::plus);
  const auto minus = kerrcat::build_cat(mu, mu_p, Complex(0.6, 0.2), CatSign::minus);
  const auto pr = kerrcat::herald_probabilities(Complex(0.6, 0.2), mu, mu_p);
  CHECK(plus.herald_probability == Catch::Approx(pr.first).epsilon(1e-14));
  CHECK(minus.herald_probability == Catch::Approx(pr.second).epsilon(1e-14));
  CHECK(plus.herald_probability + minus.herald_probability == 1.0);
}

TEST_CASE("unnormalizable herald outcomes are rejected", "[cat]") {
  // coincident branches, full coherence: the '-' outcome never fires
  CHECK_THROWS_AS(kerrcat::build_cat(Complex(0.0, 0.0), Complex(0.0, 0.0),
                                     Complex(1.0, 0.0), CatSign::minus),
                  kerrcat::unnormalizable_state_error);

  // evolution-result overload rejects unphysical coherence magnitudes
  kerrcat::EvolutionResult r;
  r.A = 1.0;
  r.C = Complex(1.5, 0.0);
  r.theta = M_PI;
  CHECK_THROWS_AS(kerrcat::build_cat(r, 1.0, CatSign::plus), std::domain_error);
}

TEST_CASE("beamsplitter splits amplitudes and preserves trace and purity", "[cat]") {
  const Complex mu(2.0, 1.0), mu_p(1.0, -2.0);
  const auto cat = kerrcat::build_cat(mu, mu_p, Complex(0.5, 0.3), CatSign::plus);
  const auto two = kerrcat::beamsplit(cat);

  const double r = 1.0 / std::sqrt(2.0);
  CHECK(two.branch1 == r * mu);
  CHECK(two.branch2 == r * mu_p);
  CHECK(two.C == cat.C);

  CHECK(kerrcat::two_mode_trace(two.mixture).real() == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(kerrcat::two_mode_trace(two.mixture).imag()) < 1e-14);
  CHECK(kerrcat::two_mode_purity(two.mixture) ==
        Catch::Approx(kerrcat::purity(cat.mixture)).epsilon(1e-12));
}

TEST_CASE("centering keeps every dyad trace and rephases the coherence", "[cat]") {
  const Complex mu(2.0, 1.0), mu_p(0.4, -1.7);
  const Complex c(0.45, 0.20);
  const auto cat = kerrcat::build_cat(mu, mu_p, c, CatSign::plus);
  const auto in = kerrcat::beamsplit(cat);
  const auto out = kerrcat::symmetrize(in);

  // branches sit at +-delta
  CHECK(std::abs(out.branch1 + out.branch2) < 1e-14);
  CHECK(std::abs(out.branch1 - 0.5 * (in.branch1 - in.branch2)) < 1e-14);

  // displacement is unitary: trace preserved to machine precision
  CHECK(std::abs(kerrcat::two_mode_trace(out.mixture) -
                 kerrcat::two_mode_trace(in.mixture)) < 1e-13);

  // metadata phase matches the dyad-level phase: |C| unchanged,
  // cross coefficient rotated by exp(-2i Im(b2 conj(b1)))
  CHECK(std::abs(out.C) == Catch::Approx(std::abs(in.C)).epsilon(1e-14));
  const Complex rot = std::polar(1.0, -2.0 * (in.branch2 * std::conj(in.branch1)).imag());
  CHECK(std::abs(out.mixture[2].coeff - in.mixture[2].coeff * rot) < 1e-14);
  CHECK(std::abs(out.C - in.C * rot) < 1e-14);

  // invariant: C times the squared per-mode branch overlap is unchanged
  const Complex o_in = kerrcat::coherent_overlap(in.branch2, in.branch1);
  const Complex o_out = kerrcat::coherent_overlap(out.branch2, out.branch1);
  CHECK(std::abs(in.C * o_in * o_in - out.C * o_out * o_out) < 1e-14);

  // real, opposite branches (theta = pi upstream) need no rephasing
  const auto straight = kerrcat::build_cat(Complex(1.3, 0.0), Complex(-1.3, 0.0),
                                           c, CatSign::plus);
  const auto centered = kerrcat::symmetrize(kerrcat::beamsplit(straight));
  CHECK(centered.C == c);
}

TEST_CASE("cat-basis matrix is a valid two-qubit state", "[cat]") {
  for (double alpha : {300.0, 3000.0, 30000.0}) {
    for (CatSign sign : {CatSign::plus, CatSign::minus}) {
      const auto cb = pipeline(alpha, sign);
      REQUIRE(cb.rho.dim == 4);
      CHECK(kerrcat::hermiticity_error(cb.rho) < 1e-12);
      CHECK(kerrcat::mat_trace(cb.rho).real() == Catch::Approx(1.0).epsilon(1e-12));
      const auto eig = kerrcat::hermitian_eigenvalues(cb.rho);
      CHECK(eig.front() > -1e-10);

      // swapping the two modes is a symmetry of the construction
      CHECK(std::abs(cb.rho(1, 1) - cb.rho(2, 2)) < 1e-14);
      CHECK(std::abs(cb.rho(0, 1) - cb.rho(0, 2)) < 1e-14);
      CHECK(std::abs(cb.rho(1, 3) - cb.rho(2, 3)) < 1e-14);
      CHECK(std::abs(cb.rho(1, 2) - cb.rho(2, 1)) < 1e-14);

      // basis normalizations
      const double d2 = std::norm(cb.delta);
      CHECK(cb.m_plus == Catch::Approx(2.0 + 2.0 * std::exp(-2.0 * d2)).epsilon(1e-14));
      CHECK(cb.m_minus == Catch::Approx(2.0 - 2.0 * std::exp(-2.0 * d2)).epsilon(1e-12));
    }
  }
}

TEST_CASE("cat-basis entries follow the block pattern", "[cat]") {
  const double delta = 1.1;
  const Complex c(0.62, 0.31);
  for (CatSign sign : {CatSign::plus, CatSign::minus}) {
    const auto cb = kerrcat::to_cat_basis(make_centered(delta, c, sign));

    const double mp = cb.m_plus, mm = cb.m_minus;
    const double m = std::sqrt(mp * mm);
    const Complex ce = kerrcat::sign_of(sign) * cb.C_prime;  // sign folds into C'
    const Complex two_re = 2.0 + ce + std::conj(ce);
    const Complex diff = ce - std::conj(ce);

    const Complex K = mp * mp * two_re;
    const Complex V = -mp * m * diff;
    const Complex D = mp * mm * two_re;
    const Complex R = mp * mm * (2.0 - ce - std::conj(ce));
    const Complex W = mm * m * diff;
    const Complex Z = mm * mm * two_re;
    const Complex pattern[4][4] = {
        {K, V, V, D},
        {-V, R, R, W},
        {-V, R, R, W},
        {D, -W, -W, Z},
    };
    const Complex norm = K + 2.0 * R + Z;

    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        CHECK(std::abs(cb.rho(i, j) - pattern[i][j] / norm) < 1e-12);
  }
}

TEST_CASE("degenerate and malformed inputs are rejected", "[cat]") {
  // coincident branches collapse the odd cat
  CHECK_THROWS_AS(kerrcat::to_cat_basis(make_centered(1e-76, Complex(1.0, 0.0),
                                                      CatSign::plus)),
                  kerrcat::degenerate_basis_error);

  // a fully damped run has no branch separation left at all
  kerrcat::EvolutionResult dead;
  dead.A = 0.0;
  dead.C = Complex(1.0, 0.0);
  dead.theta = M_PI;
  const auto cat = kerrcat::build_cat(dead, 3.0, CatSign::plus);
  CHECK_THROWS_AS(kerrcat::to_cat_basis(kerrcat::symmetrize(kerrcat::beamsplit(cat))),
                  kerrcat::degenerate_basis_error);

  // non-centered input must be refused
  EntangledCat off = make_centered(1.0, Complex(0.5, 0.0), CatSign::plus);
  off.branch2 = Complex(-0.5, 0.0);  // branches no longer opposite
  CHECK_THROWS_AS(kerrcat::to_cat_basis(off), std::invalid_argument);
}

TEST_CASE("partial transpose basics", "[cat]") {
  // Bell state (|00> + |11>)/sqrt(2): PT spectrum {-1/2, 1/2, 1/2, 1/2}
  kerrcat::DenseMatrix bell(4);
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = Complex(0.5, 0.0);
  const auto pt = kerrcat::partial_transpose(bell);
  const auto eig = kerrcat::hermitian_eigenvalues(pt);
  CHECK(eig[0] == Catch::Approx(-0.5).epsilon(1e-14));
  CHECK(eig[1] == Catch::Approx(0.5).epsilon(1e-14));
  CHECK(eig[3] == Catch::Approx(0.5).epsilon(1e-14));

  const auto neg = kerrcat::negativity(bell);
  CHECK(neg.E == Catch::Approx(1.0).epsilon(1e-14));
  CHECK(neg.lambda_min == Catch::Approx(-0.5).epsilon(1e-14));

  // involution: transposing twice restores the matrix
  const auto back = kerrcat::partial_transpose(pt);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(back(i, j) == bell(i, j));

  // product states stay PSD under PT: E = 0
  kerrcat::DenseMatrix prod(4);
  prod(0, 0) = Complex(0.25, 0.0);
  prod(1, 1) = Complex(0.25, 0.0);
  prod(2, 2) = Complex(0.25, 0.0);
  prod(3, 3) = Complex(0.25, 0.0);
  CHECK(kerrcat::negativity(prod).E == 0.0);

  CHECK_THROWS_AS(kerrcat::partial_transpose(kerrcat::DenseMatrix(6), 2, 2),
                  std::invalid_argument);
}

TEST_CASE("negativity endpoints and independence cross-check", "[cat]") {
  // full coherence, well-separated branches: maximal entanglement
  const auto bell_like =
      kerrcat::to_cat_basis(make_centered(3.0, Complex(1.0, 0.0), CatSign::plus));
  CHECK(kerrcat::negativity(bell_like.rho).E == Catch::Approx(1.0).margin(1e-6));

  // zero coherence: classical mixture, no entanglement at all
  const auto classical =
      kerrcat::to_cat_basis(make_centered(1.3, Complex(0.0, 0.0), CatSign::plus));
  const auto neg0 = kerrcat::negativity(classical.rho);
  CHECK(neg0.E < 1e-10);
  CHECK(neg0.lambda_min > -1e-10);

  // recompute one pipeline case with Eigen as an independent eigensolver
  const auto cb = pipeline(3000.0, CatSign::plus);
  const auto pt = kerrcat::partial_transpose(cb.rho);
  Eigen::MatrixXcd em(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) em(i, j) = pt(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(em);
  const double lmin_ref = es.eigenvalues().minCoeff();
  const auto neg = kerrcat::negativity(cb.rho);
  CHECK(neg.lambda_min == Catch::Approx(lmin_ref).margin(1e-12));
  CHECK(neg.E == Catch::Approx(-2.0 * lmin_ref).margin(1e-12));
}

TEST_CASE("at most one eigenvalue of the partial transpose is negative", "[cat]") {
  for (double cmag : {0.0, 0.25, 0.5, 0.75, 1.0})
    for (double delta : {0.5, 1.0, 3.0})
      for (CatSign sign : {CatSign::plus, CatSign::minus}) {
        const auto cb =
            kerrcat::to_cat_basis(make_centered(delta, Complex(cmag, 0.0), sign));
        const auto neg = kerrcat::negativity(cb.rho);
        int negative = 0;
        for (double v : neg.eigenvalues)
          if (v < -1e-12) ++negative;
        CHECK(negative <= 1);
      }
}

TEST_CASE("negativity grows with coherence at fixed separation", "[cat]") {
  for (double delta : {0.5, 1.0, 3.0}) {
    double prev = -1.0;
    for (double cmag : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const auto cb =
          kerrcat::to_cat_basis(make_centered(delta, Complex(cmag, 0.0), CatSign::plus));
      const double e = kerrcat::negativity(cb.rho).E;
      CHECK(e >= prev - 1e-12);
      prev = e;
    }
  }
}

TEST_CASE("herald signs agree only once the branches are distinguishable", "[cat]") {
  // far-separated branches: the two herald outcomes are equally entangled
  for (double delta : {2.5, 3.5}) {
    const auto ep = kerrcat::negativity(
        kerrcat::to_cat_basis(make_centered(delta, Complex(1.0, 0.0), CatSign::plus)).rho);
    const auto em = kerrcat::negativity(
        kerrcat::to_cat_basis(make_centered(delta, Complex(1.0, 0.0), CatSign::minus)).rho);
    CHECK(std::abs(ep.E - em.E) < 1e-4);
  }

  // overlapping branches: the '-' herald projects onto the odd-odd Bell pair
  // (exactly maximal), while the '+' herald yields a partially entangled pure
  // state with E = 2 M+ M- / (M+^2 + M-^2)
  const double delta = 0.5;
  const auto cbp = kerrcat::to_cat_basis(make_centered(delta, Complex(1.0, 0.0), CatSign::plus));
  const auto cbm = kerrcat::to_cat_basis(make_centered(delta, Complex(1.0, 0.0), CatSign::minus));
  const double ep = kerrcat::negativity(cbp.rho).E;
  const double em = kerrcat::negativity(cbm.rho).E;
  const double expected_plus =
      2.0 * cbp.m_plus * cbp.m_minus / (cbp.m_plus * cbp.m_plus + cbp.m_minus * cbp.m_minus);
  CHECK(em == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(ep == Catch::Approx(expected_plus).epsilon(1e-10));
  CHECK(em - ep > 0.1);
}

TEST_CASE("pipeline entanglement reference points", "[cat]") {
  struct Point {
    double alpha, e;
  };
  const Point pts[] = {{300.0, 0.0459879}, {3000.0, 0.426622}, {30000.0, 0.909504}};
  for (const auto& pt : pts) {
    const auto cb = pipeline(pt.alpha, CatSign::plus);
    const auto neg = kerrcat::negativity(cb.rho);
    CHECK(neg.E == Catch::Approx(pt.e).epsilon(1e-4));
    // once the branches are well separated (delta ~2 upward) the negativity
    // equals the surviving coherence; at alpha = 300 delta is only ~0.95 and
    // the overlap correction shifts E by a few percent
    if (std::abs(cb.delta) > 1.9)
      CHECK(neg.E == Catch::Approx(std::abs(cb.C_prime)).epsilon(1e-3));
  }
}
