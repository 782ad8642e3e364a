#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "nlgg/game.hpp"
#include "nlgg/linalg.hpp"

namespace nlgg {

inline CMat pauli_x() {
  CMat m(2, 2);
  m(0, 1) = 1;
  m(1, 0) = 1;
  return m;
}
inline CMat pauli_y() {
  CMat m(2, 2);
  m(0, 1) = cplx(0, -1);
  m(1, 0) = cplx(0, 1);
  return m;
}
inline CMat pauli_z() {
  CMat m(2, 2);
  m(0, 0) = 1;
  m(1, 1) = -1;
  return m;
}

// Shared state over a tensor product of finite local dimensions. A pure
// state keeps its amplitude vector alongside the density matrix so that
// evaluation can stay in vector form.
struct DensityMatrix {
  std::vector<int> dims;
  CMat rho;
  std::optional<std::vector<cplx>> pure;

  int total_dim() const {
    int d = 1;
    for (int x : dims) d *= x;
    return d;
  }

  static DensityMatrix from_pure(std::vector<int> dims, std::vector<cplx> psi) {
    DensityMatrix dm;
    dm.dims = std::move(dims);
    double norm2 = 0;
    for (const auto &v : psi) norm2 += std::norm(v);
    if (norm2 <= 0) throw std::invalid_argument("zero state vector");
    double inv = 1.0 / std::sqrt(norm2);
    for (auto &v : psi) v *= inv;
    if (static_cast<int>(psi.size()) != dm.total_dim())
      throw std::invalid_argument("state vector size does not match dims");
    dm.rho = outer(psi);
    dm.pure = std::move(psi);
    return dm;
  }

  static DensityMatrix from_matrix(std::vector<int> dims, CMat rho) {
    DensityMatrix dm;
    dm.dims = std::move(dims);
    dm.rho = std::move(rho);
    dm.validate();
    return dm;
  }

  void validate() const {
    int d = total_dim();
    if (rho.rows != d || rho.cols != d)
      throw std::invalid_argument("density matrix size does not match dims");
    if (!rho.is_hermitian(1e-12 * std::max(1.0, rho.max_abs())))
      throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(rho.trace() - cplx(1.0)) > 1e-12)
      throw std::invalid_argument("density matrix trace != 1");
    if (pure) return;  // unit vector outer products are PSD by construction
    auto eig = hermitian_eigenvalues(rho);
    if (!eig.empty() && eig.front() < -1e-10)
      throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
};

// Projective measurement with sparse answer list; answers not listed carry a
// zero projector (an immediate impossibility, used by parity-violating
// answers and placeholder registers).
struct Measurement {
  int num_answers = 0;
  std::vector<std::pair<int, CMat>> projectors;
};

inline Measurement measurement_from_observable(const CMat &obs) {
  int d = obs.rows;
  CMat id = CMat::identity(d);
  Measurement m;
  m.num_answers = 2;
  m.projectors.emplace_back(0, (id + obs) * 0.5);
  m.projectors.emplace_back(1, (id - obs) * 0.5);
  return m;
}

struct QuantumStrategy {
  DensityMatrix state;
  // meas[player][question]
  std::vector<std::vector<Measurement>> meas;

  void validate(double tol = 1e-10) const {
    if (meas.size() != state.dims.size())
      throw std::invalid_argument("strategy needs one measurement family per player");
    for (size_t p = 0; p < meas.size(); ++p) {
      int d = state.dims[p];
      for (const auto &m : meas[p]) {
        CMat sum(d, d);
        for (const auto &[ans, proj] : m.projectors) {
          if (ans < 0 || ans >= m.num_answers) throw std::invalid_argument("bad answer label");
          if (proj.rows != d || proj.cols != d)
            throw std::invalid_argument("projector dimension mismatch");
          if ((proj * proj - proj).max_abs() > tol)
            throw std::invalid_argument("projector is not idempotent");
          sum = sum + proj;
        }
        for (const auto &[a1, p1] : m.projectors)
          for (const auto &[a2, p2] : m.projectors)
            if (a1 != a2 && (p1 * p2).max_abs() > tol)
              throw std::invalid_argument("projectors are not mutually orthogonal");
        if ((sum - CMat::identity(d)).max_abs() > tol)
          throw std::invalid_argument("projectors do not sum to identity");
      }
    }
  }
};

namespace detail {

// Orthonormal eigencolumns of a projective measurement with the answer label
// each column belongs to.
struct MeasBasis {
  CMat u;                  // d x d, columns form the measurement basis
  std::vector<int> label;  // column -> answer
};

inline MeasBasis measurement_basis(const Measurement &m, int d) {
  MeasBasis out;
  out.u = CMat(d, d);
  int filled = 0;
  for (const auto &[ans, proj] : m.projectors) {
    for (int j = 0; j < d; ++j) {
      std::vector<cplx> v(d);
      for (int i = 0; i < d; ++i) v[i] = proj(i, j);
      for (int c = 0; c < filled; ++c) {
        cplx dot = 0;
        for (int i = 0; i < d; ++i) dot += std::conj(out.u(i, c)) * v[i];
        for (int i = 0; i < d; ++i) v[i] -= dot * out.u(i, c);
      }
      double n2 = 0;
      for (int i = 0; i < d; ++i) n2 += std::norm(v[i]);
      if (n2 < 1e-12) continue;
      double inv = 1.0 / std::sqrt(n2);
      if (filled >= d) throw std::invalid_argument("measurement ranks exceed dimension");
      for (int i = 0; i < d; ++i) out.u(i, filled) = v[i] * inv;
      out.label.push_back(ans);
      ++filled;
    }
  }
  if (filled != d) throw std::invalid_argument("measurement does not resolve the identity");
  return out;
}

// amp <- (M applied to tensor factor `factor`) amp
inline void apply_local(std::vector<cplx> &amp, const std::vector<int> &dims, int factor,
                        const CMat &m) {
  int left = 1, right = 1;
  for (int k = 0; k < factor; ++k) left *= dims[k];
  for (size_t k = factor + 1; k < dims.size(); ++k) right *= dims[k];
  int d = dims[factor];
  std::vector<cplx> buf(d);
  for (int l = 0; l < left; ++l)
    for (int r = 0; r < right; ++r) {
      size_t base = (static_cast<size_t>(l) * d) * right + r;
      for (int i = 0; i < d; ++i) {
        cplx s = 0;
        for (int k = 0; k < d; ++k) s += m(i, k) * amp[base + static_cast<size_t>(k) * right];
        buf[i] = s;
      }
      for (int i = 0; i < d; ++i) amp[base + static_cast<size_t>(i) * right] = buf[i];
    }
}

}  // namespace detail

// Joint answer distribution for players u < v given questions (x for u,
// y for v), marginalizing all other players.
inline std::vector<double> strategy_pair_distribution(const QuantumStrategy &s, int u, int v,
                                                      int x, int y, int num_answers) {
  const auto &dims = s.state.dims;
  auto bu = detail::measurement_basis(s.meas[u][x], dims[u]);
  auto bv = detail::measurement_basis(s.meas[v][y], dims[v]);
  std::vector<double> p(static_cast<size_t>(num_answers) * num_answers, 0.0);

  if (s.state.pure) {
    std::vector<cplx> amp = *s.state.pure;
    detail::apply_local(amp, dims, u, bu.u.adjoint());
    detail::apply_local(amp, dims, v, bv.u.adjoint());
    int stride_u = 1, stride_v = 1;
    for (size_t k = u + 1; k < dims.size(); ++k) stride_u *= dims[k];
    for (size_t k = v + 1; k < dims.size(); ++k) stride_v *= dims[k];
    for (size_t g = 0; g < amp.size(); ++g) {
      double w = std::norm(amp[g]);
      if (w == 0) continue;
      int iu = static_cast<int>(g / stride_u) % dims[u];
      int iv = static_cast<int>(g / stride_v) % dims[v];
      p[static_cast<size_t>(bu.label[iu]) * num_answers + bv.label[iv]] += w;
    }
    return p;
  }

  CMat red = partial_trace(s.state.rho, dims, {std::min(u, v), std::max(u, v)});
  // partial_trace keeps original factor order
  CMat ub = u < v ? bu.u : bv.u;
  CMat vb = u < v ? bv.u : bu.u;
  CMat basis = kron(ub, vb);
  CMat rot = basis.adjoint() * red * basis;
  int d_second = u < v ? dims[v] : dims[u];
  for (int i = 0; i < rot.rows; ++i) {
    double w = rot(i, i).real();
    int first = i / d_second, second = i % d_second;
    int au = u < v ? bu.label[first] : bu.label[second];
    int av = u < v ? bv.label[second] : bv.label[first];
    p[static_cast<size_t>(au) * num_answers + av] += w;
  }
  return p;
}

inline double strategy_edge_value(const GraphGame &gg, const QuantumStrategy &s, int u, int v) {
  const Game &g = gg.base;
  int na = g.num_answers();
  double total = 0;
  for (int x = 0; x < g.num_questions(); ++x)
    for (int y = 0; y < g.num_questions(); ++y) {
      Rat w = g.weight(x, y);
      if (w == 0) continue;
      auto p = strategy_pair_distribution(s, u, v, x, y, na);
      double win = 0;
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b) {
          double q = p[static_cast<size_t>(a) * na + b];
          if (q > 0 && g.eval(x, y, a, b)) win += q;
        }
      total += rat_to_double(w) * win;
    }
  return total;
}

inline std::vector<double> strategy_edge_values(const GraphGame &gg, const QuantumStrategy &s) {
  if (static_cast<int>(s.state.dims.size()) != gg.players())
    throw std::invalid_argument("strategy has wrong number of players");
  std::vector<double> out;
  for (auto [u, v] : gg.graph.edges) out.push_back(strategy_edge_value(gg, s, u, v));
  return out;
}

// Winning probability of the graph game: uniform average over edges.
inline double strategy_value(const GraphGame &gg, const QuantumStrategy &s) {
  auto vals = strategy_edge_values(gg, s);
  double sum = 0;
  for (double v : vals) sum += v;
  return sum / vals.size();
}

// <O_u O_v> with O = P0 - P1, for binary-answer measurements.
inline double edge_correlator(const QuantumStrategy &s, int u, int v, int x, int y) {
  auto p = strategy_pair_distribution(s, u, v, x, y, 2);
  return p[0] - p[1] - p[2] + p[3];
}

// CHSH Bell expression value across one edge.
inline double chsh_edge_bias(const QuantumStrategy &s, int u, int v) {
  return edge_correlator(s, u, v, 0, 0) + edge_correlator(s, u, v, 0, 1) +
         edge_correlator(s, u, v, 1, 0) - edge_correlator(s, u, v, 1, 1);
}

// Expectation of a product of binary observables O = P0 - P1, one factor per
// letter (same-party letters multiply in word order). `word` letters are
// (party, setting) pairs as in the moment-matrix machinery.
inline double expectation_of_observable_word(const QuantumStrategy &s,
                                             const std::vector<std::pair<int, int>> &word) {
  int players = static_cast<int>(s.state.dims.size());
  std::vector<CMat> ops;
  for (int p = 0; p < players; ++p) ops.push_back(CMat::identity(s.state.dims[p]));
  for (auto [p, x] : word) {
    const Measurement &m = s.meas[p][x];
    CMat obs(s.state.dims[p], s.state.dims[p]);
    for (const auto &[ans, proj] : m.projectors) obs = obs + proj * (ans == 0 ? 1.0 : -1.0);
    ops[p] = ops[p] * obs;
  }
  CMat full = ops[0];
  for (int p = 1; p < players; ++p) full = kron(full, ops[p]);
  return (s.state.rho * full).trace().real();
}

// Minimum eigenvalue of the partial transpose over `side`; a negative value
// witnesses entanglement across the cut.
inline double ppt_min_eigenvalue(const DensityMatrix &dm, const std::vector<int> &side) {
  if (side.empty() || side.size() >= dm.dims.size())
    throw std::invalid_argument("ppt_min_eigenvalue: side must be a proper nonempty subset");
  CMat pt = partial_transpose(dm.rho, dm.dims, side);
  auto eig = hermitian_eigenvalues(pt);
  return eig.front();
}

inline DensityMatrix reduce_state(const DensityMatrix &dm, const std::vector<int> &keep) {
  DensityMatrix out;
  for (int k : keep) out.dims.push_back(dm.dims[k]);
  out.rho = partial_trace(dm.rho, dm.dims, keep);
  return out;
}

// --- built-in strategies ---------------------------------------------------

inline std::vector<cplx> epr_vector() {
  std::vector<cplx> v(4, 0.0);
  v[0] = 1 / std::sqrt(2.0);
  v[3] = 1 / std::sqrt(2.0);
  return v;
}

// Optimal CHSH pair: A measures sigma_z / sigma_x, B the rotated bases.
inline QuantumStrategy make_tsirelson_strategy() {
  QuantumStrategy s;
  s.state = DensityMatrix::from_pure({2, 2}, epr_vector());
  double r = 1 / std::sqrt(2.0);
  CMat b0 = (pauli_z() + pauli_x()) * r;
  CMat b1 = (pauli_z() - pauli_x()) * r;
  s.meas = {{measurement_from_observable(pauli_z()), measurement_from_observable(pauli_x())},
            {measurement_from_observable(b0), measurement_from_observable(b1)}};
  return s;
}

// Four-qubit state from the explicit amplitude expansion; see
// p4_swap_operator_state for the alternative construction built from swap
// operators (the two do not coincide; this one attains the optimal biases).
inline DensityMatrix p4_amplitude_state() {
  double s5 = std::sqrt(5.0);
  std::vector<cplx> v(16, 0.0);
  auto set = [&](int a, int b, int c, int d, double val) {
    v[(((a * 2) + b) * 2 + c) * 2 + d] = val / 20.0;
  };
  for (int i = 0; i <= 1; ++i) {
    int j = 1 - i;
    set(i, i, i, i, 3 * s5 + 5);
    set(i, i, j, j, 5 + s5);
    set(i, j, j, i, 5 - s5);
    set(i, j, i, j, 3 * s5 - 5);
  }
  return DensityMatrix::from_pure({2, 2, 2, 2}, std::move(v));
}

// S (|Omega><Omega| x |Omega><Omega|) S* normalized, with S the Hermitian
// combination of the (AD), (BC) and (AD)(BC) swaps.
inline DensityMatrix p4_swap_operator_state() {
  double s5 = std::sqrt(5.0);
  std::vector<cplx> psi(16, 0.0);
  // |Omega>_AB x |Omega>_CD over qubit order A,B,C,D
  for (int i = 0; i <= 1; ++i)
    for (int j = 0; j <= 1; ++j) psi[((i * 2 + i) * 2 + j) * 2 + j] = 0.5;

  auto permute = [](const std::vector<cplx> &in, bool swap_ad, bool swap_bc) {
    std::vector<cplx> out(16, 0.0);
    for (int a = 0; a <= 1; ++a)
      for (int b = 0; b <= 1; ++b)
        for (int c = 0; c <= 1; ++c)
          for (int d = 0; d <= 1; ++d) {
            int aa = swap_ad ? d : a, dd = swap_ad ? a : d;
            int bb = swap_bc ? c : b, cc = swap_bc ? b : c;
            out[((aa * 2 + bb) * 2 + cc) * 2 + dd] = in[((a * 2 + b) * 2 + c) * 2 + d];
          }
    return out;
  };
  auto both = permute(psi, true, true);
  auto ad = permute(psi, true, false);
  auto bc = permute(psi, false, true);
  std::vector<cplx> out(16, 0.0);
  for (int k = 0; k < 16; ++k)
    out[k] = (-(5 + s5) * both[k] + (5 - 3 * s5) * ad[k] + (-5 + s5) * bc[k]) / 20.0;
  return DensityMatrix::from_pure({2, 2, 2, 2}, std::move(out));
}

// Optimal CHSH strategy on the path of four players. The middle-edge bias is
// half the outer ones; the observable assignment is pinned by reproducing
// those biases (the second setting of A and C is sigma_x, and the sign of
// the second B/D basis vector follows the A side).
inline QuantumStrategy make_p4_strategy() {
  QuantumStrategy s;
  s.state = p4_amplitude_state();
  double r = 1 / std::sqrt(2.0);
  CMat b0 = (pauli_z() + pauli_x()) * r;
  CMat b1 = (pauli_z() - pauli_x()) * r;
  std::vector<Measurement> outer_party = {measurement_from_observable(pauli_z()),
                                          measurement_from_observable(pauli_x())};
  std::vector<Measurement> inner_party = {measurement_from_observable(b0),
                                          measurement_from_observable(b1)};
  s.meas = {outer_party, inner_party, outer_party, inner_party};
  return s;
}

// Partial-transpose minimum eigenvalues for all six player pairs of a
// four-party state, keyed "AD","BC","AB","CD","AC","BD".
inline std::map<std::string, double> p4_ppt_pattern(const DensityMatrix &dm) {
  auto pt = [&](int u, int v) { return ppt_min_eigenvalue(reduce_state(dm, {u, v}), {0}); };
  return {{"AD", pt(0, 3)}, {"BC", pt(1, 2)}, {"AB", pt(0, 1)},
          {"CD", pt(2, 3)}, {"AC", pt(0, 2)}, {"BD", pt(1, 3)}};
}

// The two published constructions of the four-qubit state disagree; each
// matches a different claim. The amplitude state attains the optimal edge
// biases; the swap-built state carries the separable-(AD,BC) pattern.
struct P4ConstructionReport {
  double fidelity;  // |<amplitude, swap-built>|^2
  bool constructions_match;
  double bias_ab, bias_bc, bias_cd;
  std::map<std::string, double> ppt_amplitude;
  std::map<std::string, double> ppt_swap_built;
};

inline P4ConstructionReport p4_construction_report() {
  P4ConstructionReport r{};
  auto amp = p4_amplitude_state();
  auto swp = p4_swap_operator_state();
  cplx dot = 0;
  for (int k = 0; k < 16; ++k) dot += std::conj((*amp.pure)[k]) * (*swp.pure)[k];
  r.fidelity = std::norm(dot);
  r.constructions_match = r.fidelity > 1.0 - 1e-9;
  auto s = make_p4_strategy();
  r.bias_ab = chsh_edge_bias(s, 0, 1);
  r.bias_bc = chsh_edge_bias(s, 1, 2);
  r.bias_cd = chsh_edge_bias(s, 2, 3);
  r.ppt_amplitude = p4_ppt_pattern(amp);
  r.ppt_swap_built = p4_ppt_pattern(swp);
  return r;
}

// Mermin-Peres square observables on two qubits: rows multiply to +I and
// columns to -I, every observable is symmetric, and cell (r,c) appears in
// row r and column c alike.
inline CMat magic_square_observable(int r, int c) {
  CMat X = pauli_x(), Y = pauli_y(), Z = pauli_z(), I = CMat::identity(2);
  switch (r * 3 + c) {
    case 0: return kron(X, I);
    case 1: return kron(I, X);
    case 2: return kron(X, X);
    case 3: return kron(I, Z);
    case 4: return kron(Z, I);
    case 5: return kron(Z, Z);
    case 6: return kron(X, Z) * (-1.0);
    case 7: return kron(Z, X) * (-1.0);
    case 8: return kron(Y, Y);
  }
  throw std::invalid_argument("bad magic square cell");
}

// Joint measurement of one line: commuting product projectors over the
// three cells; answers are 3-bit strings, parity-violating ones get rank 0.
inline Measurement magic_square_line_measurement(int line) {
  Measurement m;
  m.num_answers = 8;
  for (int bits = 0; bits < 8; ++bits) {
    CMat p = CMat::identity(4);
    for (int i = 0; i < 3; ++i) {
      int r = line < 3 ? line : i;
      int c = line < 3 ? i : line - 3;
      double sign = ((bits >> i) & 1) ? -1.0 : 1.0;
      p = p * ((CMat::identity(4) + magic_square_observable(r, c) * sign) * 0.5);
    }
    if (p.max_abs() > 1e-12) m.projectors.emplace_back(bits, p);
  }
  return m;
}

// Two shared EPR pairs win the symmetric magic square game with certainty.
inline QuantumStrategy make_magic_square_strategy() {
  QuantumStrategy s;
  std::vector<cplx> psi(16, 0.0);
  for (int k = 0; k < 4; ++k) psi[k * 4 + k] = 0.5;
  s.state = DensityMatrix::from_pure({4, 4}, std::move(psi));
  std::vector<Measurement> lines;
  for (int q = 0; q < 6; ++q) lines.push_back(magic_square_line_measurement(q));
  s.meas = {lines, lines};
  return s;
}

// Three players on a path play two simultaneous instances of the base game:
// instance 1 on a shared state between the first pair, instance 2 between
// the second pair. The middle player measures both registers; the outer
// players answer the instance they do not hold with a fixed 0.
inline QuantumStrategy build_polygamy_strategy(const Game &base, const QuantumStrategy &bs) {
  if (bs.state.dims.size() != 2)
    throw std::invalid_argument("base strategy must be bipartite");
  GraphGame p2(base, path_graph(2));
  if (strategy_value(p2, bs) < 1.0 - 1e-9)
    throw std::invalid_argument("base strategy must win the base game with probability 1");

  int nq = base.num_questions(), na = base.num_answers();
  int d1 = bs.state.dims[0], d2 = bs.state.dims[1];

  QuantumStrategy out;
  if (bs.state.pure) {
    const auto &g = *bs.state.pure;
    std::vector<cplx> psi(static_cast<size_t>(d1) * d2 * d1 * d2);
    for (int a = 0; a < d1; ++a)
      for (int b1 = 0; b1 < d2; ++b1)
        for (int b2 = 0; b2 < d1; ++b2)
          for (int c = 0; c < d2; ++c)
            psi[((static_cast<size_t>(a) * d2 + b1) * d1 + b2) * d2 + c] =
                g[static_cast<size_t>(a) * d2 + b1] * g[static_cast<size_t>(b2) * d2 + c];
    out.state = DensityMatrix::from_pure({d1, d2 * d1, d2}, std::move(psi));
  } else {
    CMat rho = kron(bs.state.rho, bs.state.rho);
    out.state.dims = {d1, d2 * d1, d2};
    out.state.rho = std::move(rho);
    out.state.validate();
  }

  out.meas.resize(3);
  for (int x1 = 0; x1 < nq; ++x1)
    for (int x2 = 0; x2 < nq; ++x2) {
      Measurement ma, mb, mc;
      ma.num_answers = mb.num_answers = mc.num_answers = na * na;
      for (const auto &[a1, p] : bs.meas[0][x1].projectors)
        ma.projectors.emplace_back(a1 * na + 0, p);
      for (const auto &[b1, p1] : bs.meas[1][x1].projectors)
        for (const auto &[b2, p2] : bs.meas[0][x2].projectors)
          mb.projectors.emplace_back(b1 * na + b2, kron(p1, p2));
      for (const auto &[c2, p] : bs.meas[1][x2].projectors)
        mc.projectors.emplace_back(0 * na + c2, p);
      out.meas[0].push_back(std::move(ma));
      out.meas[1].push_back(std::move(mb));
      out.meas[2].push_back(std::move(mc));
    }
  return out;
}

// --- strategy JSON ----------------------------------------------------------

inline nlohmann::json cmat_to_json(const CMat &m) {
  auto rows = nlohmann::json::array();
  for (int i = 0; i < m.rows; ++i) {
    auto row = nlohmann::json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

inline CMat cmat_from_json(const nlohmann::json &j) {
  int r = static_cast<int>(j.size());
  int c = r == 0 ? 0 : static_cast<int>(j[0].size());
  CMat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < c; ++k)
      m(i, k) = cplx(j[i][k][0].get<double>(), j[i][k][1].get<double>());
  return m;
}

inline nlohmann::json strategy_to_json(const QuantumStrategy &s) {
  size_t entries = static_cast<size_t>(s.state.rho.rows) * s.state.rho.cols;
  for (const auto &pl : s.meas)
    for (const auto &m : pl)
      entries += static_cast<size_t>(m.num_answers) * s.state.rho.rows;
  if (entries > (1u << 22))
    throw CapacityError("strategy too large for JSON export");
  nlohmann::json j;
  j["dims"] = s.state.dims;
  j["state"] = cmat_to_json(s.state.rho);
  auto players = nlohmann::json::array();
  for (size_t p = 0; p < s.meas.size(); ++p) {
    auto questions = nlohmann::json::array();
    for (const auto &m : s.meas[p]) {
      auto answers = nlohmann::json::array();
      int d = s.state.dims[p];
      for (int a = 0; a < m.num_answers; ++a) {
        CMat proj(d, d);
        for (const auto &[ans, pm] : m.projectors)
          if (ans == a) proj = pm;
        answers.push_back(cmat_to_json(proj));
      }
      questions.push_back(answers);
    }
    players.push_back(questions);
  }
  j["measurements"] = players;
  return j;
}

inline QuantumStrategy strategy_from_json(const nlohmann::json &j) {
  QuantumStrategy s;
  std::vector<int> dims = j.at("dims").get<std::vector<int>>();
  CMat rho = cmat_from_json(j.at("state"));
  s.state = DensityMatrix::from_matrix(dims, std::move(rho));
  for (const auto &player : j.at("measurements")) {
    std::vector<Measurement> qs;
    for (const auto &question : player) {
      Measurement m;
      m.num_answers = static_cast<int>(question.size());
      for (int a = 0; a < m.num_answers; ++a) {
        CMat proj = cmat_from_json(question[a]);
        if (proj.max_abs() > 1e-12) m.projectors.emplace_back(a, proj);
      }
      qs.push_back(std::move(m));
    }
    s.meas.push_back(std::move(qs));
  }
  s.validate();
  return s;
}

}  // namespace nlgg
