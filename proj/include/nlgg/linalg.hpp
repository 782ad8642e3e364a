#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace nlgg {

using cplx = std::complex<double>;

struct CMat {
  int rows = 0, cols = 0;
  std::vector<cplx> a;

  CMat() = default;
  CMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  static CMat identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  cplx &operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const cplx &operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  CMat adjoint() const {
    CMat m(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  cplx trace() const {
    cplx t = 0;
    for (int i = 0; i < rows && i < cols; ++i) t += (*this)(i, i);
    return t;
  }

  CMat operator*(const CMat &o) const {
    if (cols != o.rows) throw std::invalid_argument("matrix product shape mismatch");
    CMat m(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        cplx v = (*this)(i, k);
        if (v == cplx(0)) continue;
        for (int j = 0; j < o.cols; ++j) m(i, j) += v * o(k, j);
      }
    return m;
  }

  CMat operator+(const CMat &o) const {
    CMat m = *this;
    for (size_t i = 0; i < a.size(); ++i) m.a[i] += o.a[i];
    return m;
  }

  CMat operator-(const CMat &o) const {
    CMat m = *this;
    for (size_t i = 0; i < a.size(); ++i) m.a[i] -= o.a[i];
    return m;
  }

  CMat operator*(cplx s) const {
    CMat m = *this;
    for (auto &v : m.a) v *= s;
    return m;
  }

  double max_abs() const {
    double m = 0;
    for (const auto &v : a) m = std::max(m, std::abs(v));
    return m;
  }

  bool is_hermitian(double tol) const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
      for (int j = i; j < cols; ++j)
        if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
  }
};

inline CMat kron(const CMat &x, const CMat &y) {
  CMat m(x.rows * y.rows, x.cols * y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) {
      cplx v = x(i, j);
      if (v == cplx(0)) continue;
      for (int k = 0; k < y.rows; ++k)
        for (int l = 0; l < y.cols; ++l) m(i * y.rows + k, j * y.cols + l) = v * y(k, l);
    }
  return m;
}

inline CMat outer(const std::vector<cplx> &v) {
  CMat m(static_cast<int>(v.size()), static_cast<int>(v.size()));
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = v[i] * std::conj(v[j]);
  return m;
}

namespace detail {

inline size_t mixed_radix_embed(const std::vector<int> &dims, const std::vector<int> &digits) {
  size_t idx = 0;
  for (size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
  return idx;
}

}  // namespace detail

// Trace out every tensor factor not listed in `keep` (kept factors stay in
// their original order).
inline CMat partial_trace(const CMat &rho, const std::vector<int> &dims,
                          const std::vector<int> &keep) {
  int total = 1;
  for (int d : dims) total *= d;
  if (rho.rows != total || rho.cols != total)
    throw std::invalid_argument("partial_trace: dimension mismatch");
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  std::vector<uint8_t> kept(dims.size(), 0);
  for (int k : keep) {
    if (k < 0 || k >= static_cast<int>(dims.size()))
      throw std::invalid_argument("partial_trace: bad subsystem index");
    if (kept[k]) throw std::invalid_argument("partial_trace: repeated subsystem index");
    kept[k] = 1;
  }
  for (size_t k = 1; k < keep.size(); ++k)
    if (keep[k] <= keep[k - 1]) throw std::invalid_argument("partial_trace: keep must be sorted");

  int dkeep = 1, drest = 1;
  std::vector<int> rest;
  for (size_t k = 0; k < dims.size(); ++k)
    if (kept[k])
      dkeep *= dims[k];
    else {
      rest.push_back(static_cast<int>(k));
      drest *= dims[k];
    }

  CMat out(dkeep, dkeep);
  std::vector<int> digits(dims.size(), 0), digitsJ(dims.size(), 0);
  for (int i = 0; i < dkeep; ++i)
    for (int j = 0; j < dkeep; ++j) {
      // decode i, j over kept factors
      int ti = i, tj = j;
      for (int k = static_cast<int>(keep.size()) - 1; k >= 0; --k) {
        digits[keep[k]] = ti % dims[keep[k]];
        digitsJ[keep[k]] = tj % dims[keep[k]];
        ti /= dims[keep[k]];
        tj /= dims[keep[k]];
      }
      cplx sum = 0;
      for (int t = 0; t < drest; ++t) {
        int tt = t;
        for (int k = static_cast<int>(rest.size()) - 1; k >= 0; --k) {
          digits[rest[k]] = tt % dims[rest[k]];
          digitsJ[rest[k]] = digits[rest[k]];
          tt /= dims[rest[k]];
        }
        sum += rho(static_cast<int>(detail::mixed_radix_embed(dims, digits)),
                   static_cast<int>(detail::mixed_radix_embed(dims, digitsJ)));
      }
      out(i, j) = sum;
    }
  return out;
}

// Transpose the factors listed in `side`.
inline CMat partial_transpose(const CMat &rho, const std::vector<int> &dims,
                              const std::vector<int> &side) {
  int total = 1;
  for (int d : dims) total *= d;
  if (rho.rows != total || rho.cols != total)
    throw std::invalid_argument("partial_transpose: dimension mismatch");
  std::vector<uint8_t> flip(dims.size(), 0);
  for (int k : side) {
    if (k < 0 || k >= static_cast<int>(dims.size()))
      throw std::invalid_argument("partial_transpose: bad subsystem index");
    flip[k] = 1;
  }
  CMat out(total, total);
  std::vector<int> di(dims.size()), dj(dims.size());
  for (int i = 0; i < total; ++i)
    for (int j = 0; j < total; ++j) {
      int ti = i, tj = j;
      for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        di[k] = ti % dims[k];
        dj[k] = tj % dims[k];
        ti /= dims[k];
        tj /= dims[k];
      }
      for (size_t k = 0; k < dims.size(); ++k)
        if (flip[k]) std::swap(di[k], dj[k]);
      out(static_cast<int>(detail::mixed_radix_embed(dims, di)),
          static_cast<int>(detail::mixed_radix_embed(dims, dj))) = rho(i, j);
    }
  return out;
}

// Cyclic Jacobi for Hermitian matrices: each sweep annihilates every
// off-diagonal entry with an exact 2x2 diagonalization.
inline std::vector<double> hermitian_eigenvalues(CMat m, double herm_tol = 1e-10,
                                                 int max_sweeps = 100) {
  if (m.rows != m.cols) throw std::invalid_argument("hermitian_eigenvalues: not square");
  double scale = std::max(1.0, m.max_abs());
  if (!m.is_hermitian(herm_tol * scale))
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");
  int n = m.rows;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(m(p, q));
    if (std::sqrt(off) <= 1e-12 * scale) break;

    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        cplx apq = m(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        double app = m(p, p).real(), aqq = m(q, q).real();
        // Eigenvector basis of the 2x2 block [[app, apq], [conj(apq), aqq]].
        double half = 0.5 * (app - aqq);
        double r = std::hypot(half, std::abs(apq));
        double lam = 0.5 * (app + aqq) + (half >= 0 ? r : -r);
        // (apq, lam - app) is an eigenvector for lam.
        cplx v0 = apq;
        double v1 = lam - app;
        double nv = std::sqrt(std::norm(v0) + v1 * v1);
        if (nv <= 1e-300) continue;
        cplx c = v0 / nv;  // rotation column 1 = (c, s); column 2 = (-conj(s), conj(c))
        double s = v1 / nv;
        // Apply m <- U^* m U with U = [[c, -s], [conj(s)... ]] built from the
        // eigenvector: columns (c, s) and (-conj(s), conj(c)) in the (p,q) plane.
        for (int k = 0; k < n; ++k) {
          cplx mkp = m(k, p), mkq = m(k, q);
          m(k, p) = mkp * c + mkq * s;
          m(k, q) = -mkp * std::conj(s) + mkq * std::conj(c);
        }
        for (int k = 0; k < n; ++k) {
          cplx mpk = m(p, k), mqk = m(q, k);
          m(p, k) = std::conj(c) * mpk + std::conj(s) * mqk;
          m(q, k) = -s * mpk + c * mqk;
        }
        m(p, q) = 0;
        m(q, p) = 0;
      }
  }
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = m(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace nlgg
