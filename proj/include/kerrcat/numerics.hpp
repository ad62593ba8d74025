#pragma once
/*
 * Dense complex linear algebra sized for small state spaces (dim <= a few
 * hundred): row-major square matrices, a cyclic Jacobi eigensolver for
 * Hermitian matrices (eigenvalues only), a shifted Cholesky probe used as a
 * cheap positive-semidefiniteness test, and a classical fourth-order
 * Runge-Kutta step over flat complex vectors.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace kerrcat {

using Complex = std::complex<double>;

struct DenseMatrix {
  int dim = 0;
  std::vector<Complex> a;  // row-major, entry (r,c) at a[r*dim + c]

  DenseMatrix() = default;
  explicit DenseMatrix(int d) : dim(d) {
    if (d < 1) throw std::invalid_argument("DenseMatrix: dim must be >= 1");
    a.assign(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), Complex(0.0));
  }

  Complex& operator()(int r, int c) {
    return a[static_cast<std::size_t>(r) * dim + c];
  }
  const Complex& operator()(int r, int c) const {
    return a[static_cast<std::size_t>(r) * dim + c];
  }
};

inline DenseMatrix identity(int d) {
  DenseMatrix m(d);
  for (int i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

inline void check_same_dim(const DenseMatrix& x, const DenseMatrix& y, const char* who) {
  if (x.dim != y.dim) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

inline DenseMatrix operator+(const DenseMatrix& x, const DenseMatrix& y) {
  check_same_dim(x, y, "operator+");
  DenseMatrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

inline DenseMatrix operator-(const DenseMatrix& x, const DenseMatrix& y) {
  check_same_dim(x, y, "operator-");
  DenseMatrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

inline DenseMatrix operator*(Complex s, const DenseMatrix& x) {
  DenseMatrix r = x;
  for (auto& v : r.a) v *= s;
  return r;
}

inline DenseMatrix adjoint(const DenseMatrix& m) {
  DenseMatrix r(m.dim);
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j) r(j, i) = std::conj(m(i, j));
  return r;
}

inline DenseMatrix matmul(const DenseMatrix& x, const DenseMatrix& y) {
  check_same_dim(x, y, "matmul");
  const int n = x.dim;
  DenseMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Complex xik = x(i, k);
      if (xik == Complex(0.0)) continue;
      for (int j = 0; j < n; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

inline Complex mat_trace(const DenseMatrix& m) {
  Complex t = 0.0;
  for (int i = 0; i < m.dim; ++i) t += m(i, i);
  return t;
}

inline double frobenius_norm(const DenseMatrix& m) {
  double s = 0.0;
  for (const auto& v : m.a) s += std::norm(v);
  return std::sqrt(s);
}

// largest |m(i,j) - conj(m(j,i))| over all entries
inline double hermiticity_error(const DenseMatrix& m) {
  double e = 0.0;
  for (int i = 0; i < m.dim; ++i)
    for (int j = i; j < m.dim; ++j)
      e = std::max(e, std::abs(m(i, j) - std::conj(m(j, i))));
  return e;
}

inline void hermitize(DenseMatrix& m) {
  for (int i = 0; i < m.dim; ++i) {
    m(i, i) = Complex(m(i, i).real(), 0.0);
    for (int j = i + 1; j < m.dim; ++j) {
      const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
}

/*
 * Eigenvalues of a Hermitian matrix, ascending. Cyclic Jacobi with a phase
 * pre-rotation per pivot: column q is scaled so the pivot entry becomes real,
 * then a real Givens rotation annihilates it. Eigenvalues carry absolute
 * error of order machine epsilon times the Frobenius norm, comfortably below
 * the 1e-12 * ||m|| contract. The input must be Hermitian to 1e-10 relative;
 * it is symmetrized before the solve.
 */
inline std::vector<double> hermitian_eigenvalues(DenseMatrix m) {
  const int n = m.dim;
  if (n < 1) throw std::invalid_argument("hermitian_eigenvalues: empty matrix");
  const double fro = frobenius_norm(m);
  const double scale = std::max(fro, 1.0e-300);
  if (hermiticity_error(m) > 1.0e-10 * std::max(1.0, fro))
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");
  hermitize(m);

  if (n > 1) {
    constexpr int kMaxSweeps = 80;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      double off = 0.0;
      for (int p = 0; p < n - 1; ++p)
        for (int q = p + 1; q < n; ++q) off += std::norm(m(p, q));
      if (std::sqrt(off) <= 1.0e-15 * scale) break;

      for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
          const Complex apq = m(p, q);
          const double r = std::abs(apq);
          if (r <= 1.0e-18 * scale) continue;

          // col q *= ph and row q *= conj(ph) makes the pivot real (= r)
          const Complex ph = std::conj(apq) / r;
          for (int k = 0; k < n; ++k) m(k, q) *= ph;
          for (int k = 0; k < n; ++k) m(q, k) *= std::conj(ph);

          const double app = m(p, p).real();
          const double aqq = m(q, q).real();
          const double tau = (aqq - app) / (2.0 * r);
          const double t =
              (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;

          for (int k = 0; k < n; ++k) {
            const Complex akp = m(k, p), akq = m(k, q);
            m(k, p) = c * akp - s * akq;
            m(k, q) = s * akp + c * akq;
          }
          for (int k = 0; k < n; ++k) {
            const Complex apk = m(p, k), aqk = m(q, k);
            m(p, k) = c * apk - s * aqk;
            m(q, k) = s * apk + c * aqk;
          }
          m(p, q) = 0.0;
          m(q, p) = 0.0;
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = m(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

// true iff m + shift*I admits a Cholesky factorization, i.e. lambda_min(m) > -shift
inline bool psd_probe(const DenseMatrix& m, double shift) {
  const int n = m.dim;
  DenseMatrix L(n);
  for (int j = 0; j < n; ++j) {
    double d = m(j, j).real() + shift;
    for (int k = 0; k < j; ++k) d -= std::norm(L(j, k));
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    L(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      Complex x = 0.5 * (m(i, j) + std::conj(m(j, i)));
      for (int k = 0; k < j; ++k) x -= L(i, k) * std::conj(L(j, k));
      L(i, j) = x / ljj;
    }
  }
  return true;
}

// rhs must have signature void(const std::vector<Complex>& y, std::vector<Complex>& dydt)
struct Rk4Buffers {
  std::vector<Complex> k1, k2, k3, k4, tmp;
  void resize(std::size_t n) {
    k1.resize(n);
    k2.resize(n);
    k3.resize(n);
    k4.resize(n);
    tmp.resize(n);
  }
};

template <class Rhs>
inline void rk4_step_into(std::vector<Complex>& y, Rhs&& rhs, double dt, Rk4Buffers& b) {
  const std::size_t n = y.size();
  b.resize(n);
  rhs(y, b.k1);
  for (std::size_t i = 0; i < n; ++i) b.tmp[i] = y[i] + (0.5 * dt) * b.k1[i];
  rhs(b.tmp, b.k2);
  for (std::size_t i = 0; i < n; ++i) b.tmp[i] = y[i] + (0.5 * dt) * b.k2[i];
  rhs(b.tmp, b.k3);
  for (std::size_t i = 0; i < n; ++i) b.tmp[i] = y[i] + dt * b.k3[i];
  rhs(b.tmp, b.k4);
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i)
    y[i] += w * (b.k1[i] + 2.0 * b.k2[i] + 2.0 * b.k3[i] + b.k4[i]);
}

template <class Rhs>
inline std::vector<Complex> rk4_step(const std::vector<Complex>& y, Rhs&& rhs, double dt) {
  std::vector<Complex> out = y;
  Rk4Buffers b;
  rk4_step_into(out, std::forward<Rhs>(rhs), dt, b);
  return out;
}

}  // namespace kerrcat
