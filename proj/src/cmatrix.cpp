#include "qspeed/cmatrix.hpp"

#include <algorithm>
#include <numeric>

namespace qspeed {

const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

Tolerances reconstructed_data_tolerances() {
  Tolerances tol;
  tol.validation = 2e-3;  // entries quoted to 4 decimals; traces off by ~1e-4
  tol.psd = 1e-3;         // reconstructed effects dip to ~-4e-5
  tol.eig_clip = 1e-3;
  return tol;
}

double max_abs(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  CMatrix gram = m.adjoint() * m;
  gram -= CMatrix::Identity(m.rows(), m.cols());
  return max_abs(gram) <= tol;
}

void require_square(const CMatrix& m, const std::string& what) {
  if (m.rows() != m.cols()) {
    throw ValidationError(what + ": expected a square matrix, got " +
                          std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
  }
}

void require_hermitian(const CMatrix& m, double tol, const std::string& what) {
  require_square(m, what);
  const double dev = max_abs(m - m.adjoint());
  if (dev > tol) {
    throw ValidationError(what + ": not hermitian (deviation " +
                          std::to_string(dev) + " > tol " +
                          std::to_string(tol) + ")");
  }
}

void require_unitary(const CMatrix& m, double tol, const std::string& what) {
  require_square(m, what);
  if (!is_unitary(m, tol)) {
    throw ValidationError(what + ": not unitary within tol " +
                          std::to_string(tol));
  }
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector tensor(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

namespace {

int total_dim(const std::vector<int>& dims) {
  int d = 1;
  for (int x : dims) {
    if (x < 1) throw ValidationError("subsystem dimensions must be positive");
    d *= x;
  }
  return d;
}

// Row-major flattening of a multi-index over `dims`.
int flatten(const std::vector<int>& idx, const std::vector<int>& dims) {
  int flat = 0;
  for (size_t k = 0; k < dims.size(); ++k) flat = flat * dims[k] + idx[k];
  return flat;
}

bool advance(std::vector<int>& idx, const std::vector<int>& dims) {
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    if (++idx[k] < dims[k]) return true;
    idx[k] = 0;
  }
  return false;
}

}  // namespace

CMatrix partial_trace(const CMatrix& m, const std::vector<int>& dims,
                      const std::vector<int>& keep) {
  require_square(m, "partial_trace input");
  const int d = total_dim(dims);
  if (m.rows() != d) {
    throw ValidationError("partial_trace: matrix dim " +
                          std::to_string(m.rows()) +
                          " does not match subsystem dims product " +
                          std::to_string(d));
  }
  std::vector<int> traced;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k) {
    if (std::find(keep.begin(), keep.end(), k) == keep.end())
      traced.push_back(k);
  }
  if (!std::is_sorted(keep.begin(), keep.end()))
    throw ValidationError("partial_trace: keep indices must be ascending");
  for (int k : keep) {
    if (k < 0 || k >= static_cast<int>(dims.size()))
      throw ValidationError("partial_trace: keep index out of range");
  }

  std::vector<int> keep_dims, traced_dims;
  for (int k : keep) keep_dims.push_back(dims[k]);
  for (int k : traced) traced_dims.push_back(dims[k]);
  const int dk = total_dim(keep_dims);

  CMatrix out = CMatrix::Zero(dk, dk);
  std::vector<int> row_idx(dims.size(), 0), col_idx(dims.size(), 0);
  std::vector<int> kr(keep.size(), 0), kc(keep.size(), 0),
      tr(traced.size(), 0);
  // Loop kept row/col indices and the shared traced diagonal index.
  bool more_r = true;
  for (; more_r; more_r = !kr.empty() && advance(kr, keep_dims)) {
    bool more_c = true;
    std::fill(kc.begin(), kc.end(), 0);
    for (; more_c; more_c = !kc.empty() && advance(kc, keep_dims)) {
      cplx acc = 0.0;
      bool more_t = true;
      std::fill(tr.begin(), tr.end(), 0);
      for (; more_t; more_t = !tr.empty() && advance(tr, traced_dims)) {
        for (size_t k = 0; k < keep.size(); ++k) {
          row_idx[keep[k]] = kr[k];
          col_idx[keep[k]] = kc[k];
        }
        for (size_t k = 0; k < traced.size(); ++k) {
          row_idx[traced[k]] = tr[k];
          col_idx[traced[k]] = tr[k];
        }
        acc += m(flatten(row_idx, dims), flatten(col_idx, dims));
        if (tr.empty()) break;
      }
      out(flatten(kr, keep_dims), flatten(kc, keep_dims)) = acc;
      if (kc.empty()) break;
    }
    if (kr.empty()) break;
  }
  return out;
}

CMatrix permute_subsystems(const CMatrix& m, const std::vector<int>& dims,
                           const std::vector<int>& perm) {
  require_square(m, "permute_subsystems input");
  const int d = total_dim(dims);
  if (m.rows() != d)
    throw ValidationError("permute_subsystems: matrix dim mismatch");
  if (perm.size() != dims.size())
    throw ValidationError("permute_subsystems: permutation length mismatch");
  std::vector<int> seen(dims.size(), 0);
  for (int p : perm) {
    if (p < 0 || p >= static_cast<int>(dims.size()) || seen[p]++)
      throw ValidationError("permute_subsystems: invalid permutation");
  }

  std::vector<int> new_dims(dims.size());
  for (size_t k = 0; k < perm.size(); ++k) new_dims[k] = dims[perm[k]];

  // Flat index map: new basis index -> old basis index.
  std::vector<int> map(d);
  std::vector<int> new_idx(dims.size(), 0), old_idx(dims.size(), 0);
  bool more = true;
  for (; more; more = advance(new_idx, new_dims)) {
    for (size_t k = 0; k < perm.size(); ++k) old_idx[perm[k]] = new_idx[k];
    map[flatten(new_idx, new_dims)] = flatten(old_idx, dims);
    if (dims.empty()) break;
  }

  CMatrix out(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) out(r, c) = m(map[r], map[c]);
  return out;
}

Spectrum eig_hermitian(const CMatrix& m, const Tolerances& tol) {
  require_hermitian(m, tol.validation, "eig_hermitian input");
  const CMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw ValidationError("eig_hermitian: eigensolver failed to converge");

  const Eigen::Index n = m.rows();
  RVector vals = solver.eigenvalues();
  CMatrix vecs = solver.eigenvectors();

  // Deterministic phase: first component above threshold made real positive.
  for (Eigen::Index j = 0; j < n; ++j) {
    const double scale = vecs.col(j).cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
      const cplx v = vecs(i, j);
      if (std::abs(v) > 1e-8 * scale) {
        vecs.col(j) *= std::conj(v) / std::abs(v);
        break;
      }
    }
  }

  // Descending order; exact eigenvalue ties broken lexicographically by the
  // phase-fixed eigenvector entries.
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (vals(a) != vals(b)) return vals(a) > vals(b);
    for (Eigen::Index i = 0; i < n; ++i) {
      const cplx va = vecs(i, a), vb = vecs(i, b);
      if (va.real() != vb.real()) return va.real() < vb.real();
      if (va.imag() != vb.imag()) return va.imag() < vb.imag();
    }
    return false;
  });

  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.eigenvalues(j) = vals(order[j]);
    out.eigenvectors.col(j) = vecs.col(order[j]);
  }
  return out;
}

double trace_product(const CMatrix& a, const CMatrix& b) {
  require_square(a, "trace_product a");
  require_square(b, "trace_product b");
  if (a.rows() != b.rows())
    throw ValidationError("trace_product: dimension mismatch");
  return a.cwiseProduct(b.transpose()).sum().real();
}

}  // namespace qspeed
