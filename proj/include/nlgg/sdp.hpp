#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlgg {

// Dense real symmetric kernel used by the SDP solver. Matrices are row-major
// n x n vectors of doubles.
namespace symm {

inline std::vector<double> identity(int n) {
  std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] = 1.0;
  return m;
}

inline std::vector<double> mul(const std::vector<double> &a, const std::vector<double> &b,
                               int n) {
  std::vector<double> c(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double v = a[static_cast<size_t>(i) * n + k];
      if (v == 0) continue;
      const double *brow = &b[static_cast<size_t>(k) * n];
      double *crow = &c[static_cast<size_t>(i) * n];
      for (int j = 0; j < n; ++j) crow[j] += v * brow[j];
    }
  return c;
}

inline double inner(const std::vector<double> &a, const std::vector<double> &b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline void symmetrize(std::vector<double> &a, int n) {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = 0.5 * (a[static_cast<size_t>(i) * n + j] + a[static_cast<size_t>(j) * n + i]);
      a[static_cast<size_t>(i) * n + j] = v;
      a[static_cast<size_t>(j) * n + i] = v;
    }
}

// Cyclic Jacobi with eigenvector accumulation. Returns ascending eigenvalues.
inline void eig(std::vector<double> a, int n, std::vector<double> &evals,
                std::vector<double> &evecs, int max_sweeps = 60) {
  evecs = identity(n);
  double scale = 1e-300;
  for (double v : a) scale = std::max(scale, std::abs(v));
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[static_cast<size_t>(p) * n + q] * a[static_cast<size_t>(p) * n + q];
    if (std::sqrt(off) <= 1e-13 * scale * n) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = a[static_cast<size_t>(p) * n + q];
        if (std::abs(apq) <= 1e-300) continue;
        double app = a[static_cast<size_t>(p) * n + p], aqq = a[static_cast<size_t>(q) * n + q];
        double theta = 0.5 * (aqq - app) / apq;
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1.0 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a[static_cast<size_t>(k) * n + p], akq = a[static_cast<size_t>(k) * n + q];
          a[static_cast<size_t>(k) * n + p] = c * akp - s * akq;
          a[static_cast<size_t>(k) * n + q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a[static_cast<size_t>(p) * n + k], aqk = a[static_cast<size_t>(q) * n + k];
          a[static_cast<size_t>(p) * n + k] = c * apk - s * aqk;
          a[static_cast<size_t>(q) * n + k] = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = evecs[static_cast<size_t>(k) * n + p], vkq = evecs[static_cast<size_t>(k) * n + q];
          evecs[static_cast<size_t>(k) * n + p] = c * vkp - s * vkq;
          evecs[static_cast<size_t>(k) * n + q] = s * vkp + c * vkq;
        }
      }
  }
  evals.resize(n);
  for (int i = 0; i < n; ++i) evals[i] = a[static_cast<size_t>(i) * n + i];
  // sort ascending, permuting eigenvector columns along
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int x, int y) { return evals[x] < evals[y]; });
  std::vector<double> ev2(n), vc2(static_cast<size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    ev2[j] = evals[idx[j]];
    for (int i = 0; i < n; ++i) vc2[static_cast<size_t>(i) * n + j] = evecs[static_cast<size_t>(i) * n + idx[j]];
  }
  evals = std::move(ev2);
  evecs = std::move(vc2);
}

inline double min_eig(const std::vector<double> &a, int n) {
  std::vector<double> ev, vc;
  eig(a, n, ev, vc);
  return ev.front();
}

// f(A) = Q f(diag) Q^T from an eigendecomposition.
inline std::vector<double> apply_spectral(const std::vector<double> &evals,
                                          const std::vector<double> &evecs, int n,
                                          double (*f)(double)) {
  std::vector<double> tmp(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) tmp[static_cast<size_t>(i) * n + j] = evecs[static_cast<size_t>(i) * n + j] * f(evals[j]);
  std::vector<double> out(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double v = tmp[static_cast<size_t>(i) * n + k];
      if (v == 0) continue;
      for (int j = 0; j < n; ++j) out[static_cast<size_t>(i) * n + j] += v * evecs[static_cast<size_t>(j) * n + k];
    }
  return out;
}

// In-place lower Cholesky; returns false if not positive definite.
inline bool cholesky(std::vector<double> &a, int n) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a[static_cast<size_t>(i) * n + j];
      const double *ri = &a[static_cast<size_t>(i) * n];
      const double *rj = &a[static_cast<size_t>(j) * n];
      for (int k = 0; k < j; ++k) s -= ri[k] * rj[k];
      if (i == j) {
        if (s <= 0) return false;
        a[static_cast<size_t>(i) * n + i] = std::sqrt(s);
      } else {
        a[static_cast<size_t>(i) * n + j] = s / a[static_cast<size_t>(j) * n + j];
      }
    }
    for (int j = i + 1; j < n; ++j) a[static_cast<size_t>(i) * n + j] = 0.0;
  }
  return true;
}

inline void chol_solve(const std::vector<double> &l, int n, std::vector<double> &x) {
  for (int i = 0; i < n; ++i) {
    double s = x[i];
    for (int k = 0; k < i; ++k) s -= l[static_cast<size_t>(i) * n + k] * x[k];
    x[i] = s / l[static_cast<size_t>(i) * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int k = i + 1; k < n; ++k) s -= l[static_cast<size_t>(k) * n + i] * x[k];
    x[i] = s / l[static_cast<size_t>(i) * n + i];
  }
}

// Largest alpha in (0, 1] with M + alpha*D >= 0, given M > 0.
inline double max_step(const std::vector<double> &m, const std::vector<double> &d, int n,
                       double tau) {
  std::vector<double> l = m;
  if (!cholesky(l, n)) return 0.0;
  // Y = L^{ -1 } D L^{ -T }
  std::vector<double> y = d;
  // solve L * B = D  (column-wise forward substitution on rows)
  for (int col = 0; col < n; ++col) {
    for (int i = 0; i < n; ++i) {
      double s = y[static_cast<size_t>(i) * n + col];
      for (int k = 0; k < i; ++k) s -= l[static_cast<size_t>(i) * n + k] * y[static_cast<size_t>(k) * n + col];
      y[static_cast<size_t>(i) * n + col] = s / l[static_cast<size_t>(i) * n + i];
    }
  }
  // solve B = C * L^T  =>  C = B * L^{-T}: forward substitution on columns
  for (int row = 0; row < n; ++row) {
    for (int j = 0; j < n; ++j) {
      double s = y[static_cast<size_t>(row) * n + j];
      for (int k = 0; k < j; ++k) s -= y[static_cast<size_t>(row) * n + k] * l[static_cast<size_t>(j) * n + k];
      y[static_cast<size_t>(row) * n + j] = s / l[static_cast<size_t>(j) * n + j];
    }
  }
  symmetrize(y, n);
  double lam = min_eig(y, n);
  if (lam >= 0) return 1.0;
  return std::min(1.0, -tau / lam);
}

}  // namespace symm

// One constraint matrix as a sparse list of (row, col, coeff); both (i,j)
// and (j,i) are listed so the matrix is symmetric as stored.
struct SdpMatrix {
  std::vector<std::tuple<int, int, double>> entries;

  void add_sym(int i, int j, double v) {
    entries.emplace_back(i, j, v);
    if (i != j) entries.emplace_back(j, i, v);
  }

  double inner_dense(const std::vector<double> &m, int n) const {
    double s = 0;
    for (auto [i, j, v] : entries) s += v * m[static_cast<size_t>(i) * n + j];
    return s;
  }

  void add_to_dense(std::vector<double> &m, int n, double scale) const {
    for (auto [i, j, v] : entries) m[static_cast<size_t>(i) * n + j] += scale * v;
  }
};

// maximize c . y  subject to  F0 + sum_k y_k F_k >= 0
struct SdpProblem {
  int n = 0;
  std::vector<double> f0;       // dense n x n
  std::vector<SdpMatrix> fs;    // per variable
  std::vector<double> c;
  double c0 = 0;
};

struct SdpOptions {
  double tol = 1e-8;
  int max_iter = 120;
  double tau = 0.98;
  bool trace = false;
};

struct SdpResult {
  std::string status;  // optimal | max-iterations
  std::vector<double> y;
  std::vector<double> x_mat;    // primal certificate matrix (n x n)
  double primal_obj = 0;        // c.y + c0 of the returned y
  double dual_obj = 0;          // <F0, X> + c0 (upper bound once X is certified)
  double certified_upper = 0;   // rigorous bound after projection + shift
  std::vector<double> x_cert;   // the projected + shifted certificate matrix
  double cert_shift = 0;        // PSD shift that was needed during certification
  double gap = 0;
  double slack_min_eig = 0;     // lambda_min(F0 + sum y F)
  int iterations = 0;
};

namespace detail {

inline std::vector<double> slack_matrix(const SdpProblem &p, const std::vector<double> &y) {
  std::vector<double> z = p.f0;
  for (size_t k = 0; k < p.fs.size(); ++k)
    if (y[k] != 0) p.fs[k].add_to_dense(z, p.n, y[k]);
  symm::symmetrize(z, p.n);
  return z;
}

}  // namespace detail

// Projects X onto the affine constraints <F_k, X> = -c_k exactly (least
// squares in span{F_k}), then shifts by a multiple of the identity until
// positive semidefinite. Repeats because a shift can disturb constraints
// whose matrices touch the diagonal.
inline double certify_upper_bound(const SdpProblem &p, std::vector<double> x,
                                  double *shift_used = nullptr,
                                  std::vector<double> *x_out = nullptr) {
  const int n = p.n;
  const int m = static_cast<int>(p.fs.size());
  // Gram matrix of the constraint matrices.
  std::vector<double> gram(static_cast<size_t>(m) * m, 0.0);
  for (int k = 0; k < m; ++k)
    for (int l = k; l < m; ++l) {
      double s = 0;
      if (k == l) {
        for (auto [i, j, v] : p.fs[k].entries) s += v * v;
      } else {
        for (auto [i1, j1, v1] : p.fs[k].entries)
          for (auto [i2, j2, v2] : p.fs[l].entries)
            if (i1 == i2 && j1 == j2) s += v1 * v2;
      }
      gram[static_cast<size_t>(k) * m + l] = s;
      gram[static_cast<size_t>(l) * m + k] = s;
    }
  std::vector<double> gchol = gram;
  bool gram_ok = symm::cholesky(gchol, m);
  double total_shift = 0;
  for (int round = 0; round < 6; ++round) {
    // project onto constraints
    if (gram_ok) {
      std::vector<double> r(m);
      for (int k = 0; k < m; ++k) r[k] = -p.c[k] - p.fs[k].inner_dense(x, n);
      symm::chol_solve(gchol, m, r);
      for (int k = 0; k < m; ++k)
        if (r[k] != 0) p.fs[k].add_to_dense(x, n, r[k]);
      symm::symmetrize(x, n);
    }
    double lam = symm::min_eig(x, n);
    if (lam >= -1e-12) break;
    double bump = -lam + 1e-12;
    for (int i = 0; i < n; ++i) x[static_cast<size_t>(i) * n + i] += bump;
    total_shift += bump;
  }
  if (shift_used) *shift_used = total_shift;
  double bound = p.c0 + symm::inner(p.f0, x);
  if (x_out) *x_out = std::move(x);
  return bound;
}

inline SdpResult solve_sdp(const SdpProblem &p, const SdpOptions &opts = {},
                           const std::vector<double> *y_start = nullptr) {
  const int n = p.n;
  const int m = static_cast<int>(p.fs.size());
  SdpResult res;
  res.y.assign(m, 0.0);
  if (y_start) res.y = *y_start;

  std::vector<double> z = detail::slack_matrix(p, res.y);
  {
    std::vector<double> ztest = z;
    if (!symm::cholesky(ztest, n))
      throw std::invalid_argument("solve_sdp: starting point is not strictly feasible");
  }
  std::vector<double> x = symm::identity(n);

  auto sqrt_f = [](double v) { return std::sqrt(std::max(v, 1e-300)); };
  auto isqrt_f = [](double v) { return 1.0 / std::sqrt(std::max(v, 1e-300)); };
  auto inv_f = [](double v) { return 1.0 / std::max(v, 1e-300); };

  double cmax = 1e-12;
  for (double v : p.c) cmax = std::max(cmax, std::abs(v));

  int it = 0;
  for (; it < opts.max_iter; ++it) {
    double mu = symm::inner(x, z) / n;
    std::vector<double> pres(m);
    double pinf = 0;
    for (int k = 0; k < m; ++k) {
      pres[k] = -p.c[k] - p.fs[k].inner_dense(x, n);
      pinf = std::max(pinf, std::abs(pres[k]));
    }
    double pobj = 0;
    for (int k = 0; k < m; ++k) pobj += p.c[k] * res.y[k];
    double dobj = symm::inner(p.f0, x);
    double relgap = std::abs(pobj - dobj) / (1 + std::abs(pobj) + std::abs(dobj));
    if (opts.trace)
      fprintf(stderr, "  it=%d mu=%.3e pinf=%.3e pobj=%.9f dobj=%.9f\n", it, mu, pinf, pobj, dobj);
    if (pinf / (1 + cmax) <= opts.tol && relgap <= opts.tol) {
      res.status = "optimal";
      break;
    }

    // NT scaling
    std::vector<double> zev, zvc;
    symm::eig(z, n, zev, zvc);
    if (zev.front() <= 0) {
      res.status = "max-iterations";
      break;
    }
    auto z_half = symm::apply_spectral(zev, zvc, n, sqrt_f);
    auto z_ihalf = symm::apply_spectral(zev, zvc, n, isqrt_f);
    auto z_inv = symm::apply_spectral(zev, zvc, n, inv_f);
    auto mmat = symm::mul(symm::mul(z_half, x, n), z_half, n);
    symm::symmetrize(mmat, n);
    std::vector<double> mev, mvc;
    symm::eig(mmat, n, mev, mvc);
    auto m_half = symm::apply_spectral(mev, mvc, n, sqrt_f);
    auto w = symm::mul(symm::mul(z_ihalf, m_half, n), z_ihalf, n);
    symm::symmetrize(w, n);

    // Schur complement H_kl = <F_k, W F_l W>
    std::vector<std::vector<double>> wfw(m);
    for (int l = 0; l < m; ++l) {
      // compute W F_l W
      std::vector<double> t(static_cast<size_t>(n) * n, 0.0);
      for (auto [i, j, v] : p.fs[l].entries) {
        // t += v * W[:,i] W[j,:]
        const double *wi = &w[static_cast<size_t>(i) * n];  // row i == column i (symmetric)
        const double *wj = &w[static_cast<size_t>(j) * n];
        for (int r = 0; r < n; ++r) {
          double f = v * wi[r];
          if (f == 0) continue;
          double *trow = &t[static_cast<size_t>(r) * n];
          for (int cidx = 0; cidx < n; ++cidx) trow[cidx] += f * wj[cidx];
        }
      }
      wfw[l] = std::move(t);
    }
    std::vector<double> h(static_cast<size_t>(m) * m, 0.0);
    for (int k = 0; k < m; ++k)
      for (int l = k; l < m; ++l) {
        double s = p.fs[k].inner_dense(wfw[l], n);
        h[static_cast<size_t>(k) * m + l] = s;
        h[static_cast<size_t>(l) * m + k] = s;
      }
    std::vector<double> hch = h;
    double ridge = 0;
    while (!symm::cholesky(hch, m)) {
      ridge = ridge == 0 ? 1e-12 : ridge * 100;
      if (ridge > 1e-2) break;
      hch = h;
      for (int k = 0; k < m; ++k) hch[static_cast<size_t>(k) * m + k] += ridge;
    }
    if (ridge > 1e-2) {
      res.status = "max-iterations";
      break;
    }

    auto newton = [&](double sigma_mu, std::vector<double> &dy, std::vector<double> &dx,
                      std::vector<double> &dz) {
      std::vector<double> rc(static_cast<size_t>(n) * n);
      for (size_t i = 0; i < rc.size(); ++i) rc[i] = -x[i];
      if (sigma_mu != 0)
        for (size_t i = 0; i < rc.size(); ++i) rc[i] += sigma_mu * z_inv[i];
      std::vector<double> rhs(m);
      for (int k = 0; k < m; ++k) rhs[k] = p.fs[k].inner_dense(rc, n) - pres[k];
      dy = rhs;
      symm::chol_solve(hch, m, dy);
      dz.assign(static_cast<size_t>(n) * n, 0.0);
      for (int k = 0; k < m; ++k)
        if (dy[k] != 0) p.fs[k].add_to_dense(dz, n, dy[k]);
      symm::symmetrize(dz, n);
      // dx = rc - W dz W
      auto wdzw = symm::mul(symm::mul(w, dz, n), w, n);
      dx.resize(rc.size());
      for (size_t i = 0; i < rc.size(); ++i) dx[i] = rc[i] - wdzw[i];
      symm::symmetrize(dx, n);
    };

    std::vector<double> dy, dx, dz;
    newton(0.0, dy, dx, dz);
    double ap = symm::max_step(x, dx, n, opts.tau);
    double ad = symm::max_step(z, dz, n, opts.tau);
    double mu_aff = 0;
    {
      std::vector<double> xa = x, za = z;
      for (size_t i = 0; i < xa.size(); ++i) {
        xa[i] += ap * dx[i];
        za[i] += ad * dz[i];
      }
      mu_aff = symm::inner(xa, za) / n;
    }
    double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 1e-4, 0.9);
    newton(sigma * mu, dy, dx, dz);
    ap = symm::max_step(x, dx, n, opts.tau);
    ad = symm::max_step(z, dz, n, opts.tau);
    for (size_t i = 0; i < x.size(); ++i) {
      x[i] += ap * dx[i];
      z[i] += ad * dz[i];
    }
    for (int k = 0; k < m; ++k) res.y[k] += ad * dy[k];
    z = detail::slack_matrix(p, res.y);  // keep dual feasibility exact
  }
  if (res.status.empty()) res.status = "max-iterations";
  res.iterations = it;
  res.x_mat = x;
  res.primal_obj = p.c0;
  for (int k = 0; k < m; ++k) res.primal_obj += p.c[k] * res.y[k];
  res.dual_obj = p.c0 + symm::inner(p.f0, x);
  res.certified_upper = certify_upper_bound(p, x, &res.cert_shift, &res.x_cert);
  res.gap = res.certified_upper - res.primal_obj;
  res.slack_min_eig = symm::min_eig(detail::slack_matrix(p, res.y), n);
  return res;
}

}  // namespace nlgg
