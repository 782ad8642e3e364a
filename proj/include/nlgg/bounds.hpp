#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "nlgg/npa.hpp"
#include "nlgg/sdp.hpp"

namespace nlgg {

class SolverInconclusive : public std::runtime_error {
 public:
  explicit SolverInconclusive(const std::string &msg) : std::runtime_error(msg) {}
};

struct BoundReport {
  double bound = 0;        // certified upper bound on the quantum value
  double primal = 0;       // value of the feasible moment point found
  double gap = 0;
  std::string status;
  std::string level;
  int iterations = 0;
  int matrix_size = 0;
  int num_moments = 0;
};

namespace detail {

// Variables: one per symmetry class except the normalization class <1>,
// which is pinned to 1 and folded into F0 (the identity matrix).
struct MomentSdp {
  SdpProblem prob;
  std::vector<int> var_of_class;  // -1 for the pinned class
};

inline MomentSdp moment_sdp(const MomentProblem &mp) {
  MomentSdp out;
  out.prob.n = mp.size;
  out.var_of_class.assign(mp.num_classes, -1);
  int nv = 0;
  for (int k = 0; k < mp.num_classes; ++k)
    if (k != mp.one_class) out.var_of_class[k] = nv++;
  out.prob.fs.resize(nv);
  out.prob.c.assign(nv, 0.0);
  out.prob.f0.assign(static_cast<size_t>(mp.size) * mp.size, 0.0);
  for (int k = 0; k < mp.num_classes; ++k) {
    int var = out.var_of_class[k];
    for (auto [i, j] : mp.class_entries[k]) {
      if (var < 0)
        out.prob.f0[static_cast<size_t>(i) * mp.size + j] = 1.0;
      else
        out.prob.fs[var].entries.emplace_back(i, j, 1.0);
    }
  }
  out.prob.c0 = mp.c0 + mp.obj[mp.one_class];
  for (int k = 0; k < mp.num_classes; ++k)
    if (out.var_of_class[k] >= 0) out.prob.c[out.var_of_class[k]] = mp.obj[k];
  return out;
}

}  // namespace detail

// Certified upper bound on the quantum value of a binary-answer graph game
// at the given hierarchy level.
inline BoundReport quantum_upper_bound(const GraphGame &gg, const NpaLevel &level,
                                       double tol = 1e-8, int max_iter = 120) {
  MomentProblem mp = build_moment_problem(gg, level);
  auto ms = detail::moment_sdp(mp);
  SdpOptions opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  SdpResult r = solve_sdp(ms.prob, opts);
  BoundReport b;
  b.bound = r.certified_upper;
  b.primal = r.primal_obj;
  b.gap = r.gap;
  b.status = r.status;
  b.level = level.to_string();
  b.iterations = r.iterations;
  b.matrix_size = mp.size;
  b.num_moments = mp.num_classes;
  return b;
}

struct FeasibilityReport {
  std::string verdict;     // "feasible" | "infeasible" | "inconclusive"
  double lambda_lower = 0; // attained min-eigenvalue of a moment matrix on the slice
  double lambda_upper = 0; // certified upper bound on the best attainable one
  std::string level;
  std::string status;
  // The certificate matrix bounds lambda* linearly in the targets:
  // lambda*(t) <= cert_const + sum_e cert_grad[e] * t_e  for every t.
  double cert_const = 0;
  std::vector<double> cert_grad;
};

// Per-edge CHSH bias targets on the path/tree H: is there a moment matrix at
// the given level with <B_e> = target_e for every edge? Decided through
//   max lambda  s.t.  M(x) - lambda I >= 0,  bias equalities,
// with certificates on both sides (an explicit PSD moment matrix, or a
// negative certified upper bound on lambda*).
class BiasFeasibility {
 public:
  BiasFeasibility(const Graph &h, const NpaLevel &level)
      : level_(level) {
    Game chsh = make_chsh();
    GraphGame gg(chsh, h);
    mp_ = build_moment_structure(NpaScenario{h.n, 2, h}, level);
    // Bias words per edge, pivot first: B_e = w00 + w01 + w10 - w11.
    for (auto [u, v] : h.edges) {
      EdgeBias eb;
      eb.sign = {1.0, 1.0, 1.0, -1.0};
      eb.cls = {cls(u, 0, v, 0), cls(u, 0, v, 1), cls(u, 1, v, 0), cls(u, 1, v, 1)};
      edges_.push_back(eb);
    }
    build_base();
  }

  FeasibilityReport check(const std::vector<double> &targets, double tol = 1e-8,
                          double margin = 1e-6) {
    if (targets.size() != edges_.size())
      throw std::invalid_argument("one bias target per edge required");
    SdpProblem prob = base_;
    // F0 = A_one + sum_e target_e * A_pivot(e) - (lambda handled as variable)
    for (size_t e = 0; e < edges_.size(); ++e)
      pivot_[e].add_to_dense(prob.f0, prob.n, targets[e]);

    // strictly feasible start: x = 0 on free vars, lambda below lambda_min(F0)
    double lam0 = symm::min_eig(prob.f0, prob.n) - 1.0;
    std::vector<double> y0(prob.fs.size(), 0.0);
    y0.back() = lam0;

    SdpOptions opts;
    opts.tol = tol;
    SdpResult r = solve_sdp(prob, opts, &y0);

    FeasibilityReport rep;
    rep.level = level_.to_string();
    rep.status = r.status;
    // Direct lower: min-eig of the moment matrix at the returned x.
    std::vector<double> moment = prob.f0;
    for (size_t k = 0; k + 1 < prob.fs.size(); ++k)
      prob.fs[k].add_to_dense(moment, prob.n, r.y[k]);
    symm::symmetrize(moment, prob.n);
    rep.lambda_lower = symm::min_eig(moment, prob.n);
    rep.lambda_upper = r.certified_upper;
    // The certificate applies to any target vector: it bounds lambda* by
    // <A_one, Xhat> + sum_e t_e <pivot_e, Xhat>.
    rep.cert_const = symm::inner(base_.f0, r.x_cert);
    rep.cert_grad.resize(edges_.size());
    for (size_t e = 0; e < edges_.size(); ++e)
      rep.cert_grad[e] = pivot_[e].inner_dense(r.x_cert, prob.n);
    if (rep.lambda_lower >= -1e-9)
      rep.verdict = "feasible";
    else if (rep.lambda_upper < -margin)
      rep.verdict = "infeasible";
    else
      rep.verdict = "inconclusive";
    return rep;
  }

  int matrix_size() const { return mp_.size; }
  int num_vars() const { return static_cast<int>(base_.fs.size()); }

 private:
  struct EdgeBias {
    std::array<double, 4> sign;
    std::array<int, 4> cls;
  };

  int cls(int u, int su, int v, int sv) {
    int c = mp_.word_class({make_letter(u, su), make_letter(v, sv)});
    if (c < 0) throw std::logic_error("bias word missing from moment matrix");
    return c;
  }

  void build_base() {
    base_.n = mp_.size;
    base_.f0.assign(static_cast<size_t>(mp_.size) * mp_.size, 0.0);
    // classify: pinned <1> class, pivot classes, free classes
    std::vector<int> pivot_edge(mp_.num_classes, -1), coef_in_edge(mp_.num_classes, -1);
    for (size_t e = 0; e < edges_.size(); ++e) {
      pivot_edge[edges_[e].cls[0]] = static_cast<int>(e);
      for (int t = 1; t < 4; ++t) coef_in_edge[edges_[e].cls[t]] = static_cast<int>(e);
    }
    pivot_.assign(edges_.size(), SdpMatrix{});
    for (size_t e = 0; e < edges_.size(); ++e)
      for (auto [i, j] : mp_.class_entries[edges_[e].cls[0]])
        pivot_[e].entries.emplace_back(i, j, 1.0);

    std::vector<int> var_of_class(mp_.num_classes, -1);
    int nv = 0;
    for (int k = 0; k < mp_.num_classes; ++k) {
      if (k == mp_.one_class || pivot_edge[k] >= 0) continue;
      var_of_class[k] = nv++;
    }
    base_.fs.resize(nv + 1);  // +1 for lambda
    base_.c.assign(nv + 1, 0.0);
    base_.c.back() = 1.0;  // maximize lambda

    for (int k = 0; k < mp_.num_classes; ++k) {
      if (pivot_edge[k] >= 0) continue;
      for (auto [i, j] : mp_.class_entries[k]) {
        if (k == mp_.one_class)
          base_.f0[static_cast<size_t>(i) * mp_.size + j] = 1.0;
        else
          base_.fs[var_of_class[k]].entries.emplace_back(i, j, 1.0);
      }
      // substitution: x_pivot(e) = target_e - sum of signed siblings
      if (k != mp_.one_class && coef_in_edge[k] >= 0) {
        int e = coef_in_edge[k];
        double sigma = 0;
        for (int t = 1; t < 4; ++t)
          if (edges_[e].cls[t] == k) sigma += edges_[e].sign[t];
        for (auto [i, j] : mp_.class_entries[edges_[e].cls[0]])
          base_.fs[var_of_class[k]].entries.emplace_back(i, j, -sigma);
      }
    }
    // lambda variable: -I
    for (int i = 0; i < mp_.size; ++i) base_.fs.back().entries.emplace_back(i, i, -1.0);
  }

  NpaLevel level_;
  MomentProblem mp_;
  std::vector<EdgeBias> edges_;
  std::vector<SdpMatrix> pivot_;
  SdpProblem base_;
};

inline FeasibilityReport bias_point_feasible(const Graph &h, const std::vector<double> &targets,
                                             const NpaLevel &level, double tol = 1e-8) {
  BiasFeasibility bf(h, level);
  return bf.check(targets, tol);
}

struct ScanRow {
  double x = 0, y = 0;
  std::string npa_feasible;  // true | false | inconclusive
  bool inside_quadratic = false;
  bool inside_linear = false;
};

namespace detail {

// Convexity bookkeeping for the slice scan. Feasible verdicts certify their
// convex hull feasible; each infeasibility certificate is linear in the
// targets and certifies a whole half-plane infeasible.
struct SliceClassifier {
  std::vector<std::pair<double, double>> feasible_pts;
  std::vector<std::pair<double, double>> hull;
  struct HalfPlane {
    double a, gx, gy;  // lambda*(x, y) <= a + gx*x + gy*y
  };
  std::vector<HalfPlane> cuts;
  double margin = 1e-7;

  void add_feasible(double x, double y) {
    feasible_pts.emplace_back(x, y);
    rebuild_hull();
  }
  void add_cut(double a, double gx, double gy) { cuts.push_back({a, gx, gy}); }

  bool known_infeasible(double x, double y) const {
    for (const auto &c : cuts)
      if (c.a + c.gx * x + c.gy * y < -margin) return true;
    return false;
  }

  bool known_feasible(double x, double y) const {
    if (hull.size() < 3) {
      for (auto [px, py] : feasible_pts)
        if (std::abs(px - x) < 1e-12 && std::abs(py - y) < 1e-12) return true;
      return false;
    }
    // point-in-convex-polygon (hull is counterclockwise)
    size_t n = hull.size();
    for (size_t i = 0; i < n; ++i) {
      auto [x1, y1] = hull[i];
      auto [x2, y2] = hull[(i + 1) % n];
      if ((x2 - x1) * (y - y1) - (y2 - y1) * (x - x1) < -1e-12) return false;
    }
    return true;
  }

 private:
  void rebuild_hull() {
    auto pts = feasible_pts;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) {
      hull = pts;
      return;
    }
    std::vector<std::pair<double, double>> h(2 * pts.size());
    auto cross = [](const std::pair<double, double> &o, const std::pair<double, double> &a,
                    const std::pair<double, double> &b) {
      return (a.first - o.first) * (b.second - o.second) -
             (a.second - o.second) * (b.first - o.first);
    };
    size_t k = 0;
    for (const auto &p : pts) {
      while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) k--;
      h[k++] = p;
    }
    size_t lower = k + 1;
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
      while (k >= lower && cross(h[k - 2], h[k - 1], *it) <= 0) k--;
      h[k++] = *it;
    }
    h.resize(k - 1);
    hull = std::move(h);
  }
};

}  // namespace detail

// Slice of the six-party path scenario: B_AB = B_CD = B_EF = x and
// B_BC = B_DE = y. Reference regions: the quadratic relation x^2+y^2 <= 8
// and the linear relation 3x+2y <= 10. Verdicts for most grid points follow
// from earlier certificates, so only a boundary-sized subset is solved.
inline std::vector<ScanRow> scan_region(const Graph &h, double x0, double x1, double xstep,
                                        double y0, double y1, double ystep,
                                        const NpaLevel &level, double tol = 1e-8,
                                        int *solves_out = nullptr) {
  if (h.edge_count() != 5)
    throw std::invalid_argument("scan_region expects the six-party path");
  BiasFeasibility bf(h, level);
  detail::SliceClassifier cls;
  std::vector<ScanRow> rows;
  int nx = static_cast<int>(std::floor((x1 - x0) / xstep + 0.5)) + 1;
  int ny = static_cast<int>(std::floor((y1 - y0) / ystep + 0.5)) + 1;
  int solves = 0;

  auto probe = [&](double x, double y) {
    if (cls.known_infeasible(x, y) || cls.known_feasible(x, y)) return;
    auto rep = bf.check({x, y, x, y, x}, tol);
    ++solves;
    if (rep.verdict == "feasible") {
      cls.add_feasible(x, y);
      cls.add_feasible(-x, y);
      cls.add_feasible(x, -y);
      cls.add_feasible(-x, -y);
    } else if (rep.verdict == "infeasible") {
      cls.add_cut(rep.cert_const, rep.cert_grad[0] + rep.cert_grad[2] + rep.cert_grad[4],
                  rep.cert_grad[1] + rep.cert_grad[3]);
    }
  };

  // The all-zero point is feasible outright (the moment matrix is the
  // identity), so it anchors the hull without a solve.
  cls.add_feasible(0, 0);
  // Seed the classifier along rays bracketing the expected boundary
  // (disk of radius sqrt8 meets the half-plane 3x+2y <= 10).
  for (int i = 0; i <= 6; ++i) {
    double th = i * (3.14159265358979 / 12.0);
    double cx = std::cos(th), cy = std::sin(th);
    double r = std::min(std::sqrt(8.0), 10.0 / (3 * cx + 2 * cy));
    probe(0.96 * r * cx, 0.96 * r * cy);
    probe(1.07 * r * cx, 1.07 * r * cy);
  }
  for (int ix = 0; ix < nx; ++ix)
    for (int iy = 0; iy < ny; ++iy) {
      double x = x0 + ix * xstep, y = y0 + iy * ystep;
      ScanRow row;
      row.x = x;
      row.y = y;
      row.inside_quadratic = x * x + y * y <= 8.0;
      row.inside_linear = 3 * x + 2 * y <= 10.0;
      if (cls.known_infeasible(x, y)) {
        row.npa_feasible = "false";
      } else if (cls.known_feasible(x, y)) {
        row.npa_feasible = "true";
      } else {
        auto rep = bf.check({x, y, x, y, x}, tol);
        ++solves;
        if (rep.verdict == "feasible") {
          row.npa_feasible = "true";
          cls.add_feasible(x, y);
          // both axis reflections leave the slice region invariant
          cls.add_feasible(-x, y);
          cls.add_feasible(x, -y);
          cls.add_feasible(-x, -y);
        } else if (rep.verdict == "infeasible") {
          row.npa_feasible = "false";
          cls.add_cut(rep.cert_const, rep.cert_grad[0] + rep.cert_grad[2] + rep.cert_grad[4],
                      rep.cert_grad[1] + rep.cert_grad[3]);
        } else {
          row.npa_feasible = "inconclusive";
        }
      }
      rows.push_back(row);
    }
  if (solves_out) *solves_out = solves;
  return rows;
}

inline void write_scan_csv(const std::vector<ScanRow> &rows, std::ostream &os) {
  os << "x,y,npa_feasible,inside_quadratic,inside_linear\n";
  char buf[64];
  for (const auto &r : rows) {
    snprintf(buf, sizeof(buf), "%.9g,%.9g", r.x, r.y);
    os << buf << "," << r.npa_feasible << "," << (r.inside_quadratic ? "true" : "false") << ","
       << (r.inside_linear ? "true" : "false") << "\n";
  }
}

}  // namespace nlgg
