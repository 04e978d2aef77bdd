#pragma once

// Tangent spaces of symplectic Grassmannians and the two decision paths for
// linear dependence among the symmetry conditions of a pair of pairings:
// the rank path (left kernel of the condition matrix) and the criterion path
// (common roots of the (k-1)-minors of the pencil).

#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "fixdet/binary_forms.hpp"
#include "fixdet/forms.hpp"
#include "fixdet/jordan.hpp"

namespace fixdet {

// Pair (psi_1, psi_2) of k x n pairings V x W -> F.  Row j of psi_i is the
// functional psi_i(.)(v_j) on W.
template <class F>
struct FormPencil {
  Matrix<F> psi1, psi2;
  bool surjective1 = false, surjective2 = false;

  FormPencil(Matrix<F> a, Matrix<F> b) : psi1(std::move(a)), psi2(std::move(b)) {
    require(psi1.rows() == psi2.rows() && psi1.cols() == psi2.cols(), ErrorCode::invalid_input,
            "pencil matrices have different shapes");
    surjective1 = rank(psi1) == psi1.rows();
    surjective2 = rank(psi2) == psi2.rows();
  }
  std::size_t k() const { return psi1.rows(); }
  std::size_t n() const { return psi1.cols(); }
  const F& field() const { return psi1.field(); }
};

// Condition rows (i, j, l), j < l, in lexicographic order.  Column j*n + c is
// the entry phi(v_j)_c of phi : V -> W.
template <class F>
struct ConditionSystem {
  Matrix<F> matrix;
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> labels;  // 0-based
};

inline std::vector<std::pair<std::size_t, std::size_t>> condition_pairs(std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t l = j + 1; l < k; ++l) out.emplace_back(j, l);
  return out;
}

template <class F>
ConditionSystem<F> condition_matrix(const std::vector<Matrix<F>>& psis) {
  require(!psis.empty(), ErrorCode::invalid_input, "condition matrix needs at least one pairing");
  const F& f = psis.front().field();
  const std::size_t k = psis.front().rows(), n = psis.front().cols();
  const auto pairs = condition_pairs(k);
  ConditionSystem<F> out{Matrix<F>(f, psis.size() * pairs.size(), k * n), {}};
  std::size_t row = 0;
  for (std::size_t i = 0; i < psis.size(); ++i) {
    const auto& psi = psis[i];
    require(psi.rows() == k && psi.cols() == n, ErrorCode::invalid_input, "pairings have different shapes");
    for (auto [j, l] : pairs) {
      // psi_i(phi(v_j))(v_l) - psi_i(phi(v_l))(v_j)
      for (std::size_t c = 0; c < n; ++c) {
        out.matrix(row, j * n + c) = psi(l, c);
        out.matrix(row, l * n + c) = f.neg(psi(j, c));
      }
      out.labels.emplace_back(i, j, l);
      ++row;
    }
  }
  return out;
}

// The pairing V x (E/V) -> F induced by a form, with E/V identified with the
// coordinate vectors off the pivots of V.
template <class F>
struct InducedPairing {
  Matrix<F> psi;
  std::vector<std::size_t> complement;
};

template <class F>
InducedPairing<F> induced_pairing(const AlternatingForm<F>& form, const Subspace<F>& V) {
  require(V.ambient() == form.dim(), ErrorCode::invalid_input, "subspace and form have different ambient dimension");
  require(is_isotropic(form, V), ErrorCode::not_isotropic, "subspace is not isotropic");
  std::vector<bool> pivot(form.dim(), false);
  for (auto p : V.pivots()) pivot[p] = true;
  InducedPairing<F> out{Matrix<F>(form.field(), V.dim(), 0), {}};
  for (std::size_t c = 0; c < form.dim(); ++c)
    if (!pivot[c]) out.complement.push_back(c);
  const Matrix<F> vg = V.basis() * form.gram();
  out.psi = Matrix<F>(form.field(), V.dim(), out.complement.size());
  for (std::size_t j = 0; j < V.dim(); ++j)
    for (std::size_t t = 0; t < out.complement.size(); ++t) out.psi(j, t) = vg(j, out.complement[t]);
  return out;
}

// Tangent space to SG(k, form) at V inside Hom(V, E/V) = k x (r-k) matrices.
template <class F>
Subspace<F> sg_tangent(const AlternatingForm<F>& form, const Subspace<F>& V) {
  require(form.radical().dim() == 0, ErrorCode::invalid_input, "form is degenerate");
  const auto ip = induced_pairing(form, V);
  const auto sys = condition_matrix<F>({ip.psi});
  const std::size_t cols = V.dim() * ip.complement.size();
  return Subspace<F>::span(form.field(), cols, right_kernel(sys.matrix));
}

// Left kernel of the stacked m = 2 condition matrix, echelonized.  Each vector
// is (x, y) with x weighting the psi_1 rows and y the psi_2 rows.
template <class F>
std::vector<std::vector<typename F::Element>> dependence_space(const FormPencil<F>& p) {
  const auto sys = condition_matrix<F>({p.psi1, p.psi2});
  if (sys.matrix.rows() == 0) return {};
  return left_kernel(sys.matrix);
}

// Coefficients (c, c') of the identity
//   sum c_ij (B_ij - B_ji) = sum c'_ij ((AB)_ij - (AB)_ji)
// for psi_1 = [I | 0], psi_2 = A, B = phi^T.  With that normalization the
// left-kernel vector (x, y) gives c = x and c' = -y.
template <class F>
struct DependenceCoefficients {
  std::vector<typename F::Element> c, c_prime;  // indexed like condition_pairs(k)
};

template <class F>
DependenceCoefficients<F> split_dependence(const F& f, const std::vector<typename F::Element>& xy) {
  require(xy.size() % 2 == 0, ErrorCode::invalid_input, "dependence vector has odd length");
  const std::size_t half = xy.size() / 2;
  DependenceCoefficients<F> out;
  out.c.assign(xy.begin(), xy.begin() + static_cast<std::ptrdiff_t>(half));
  for (std::size_t t = half; t < xy.size(); ++t) out.c_prime.push_back(f.neg(xy[t]));
  return out;
}

// Checks sum_i sum_{j<l} w_{i,j,l} ((psi_i B)_jl - (psi_i B)_lj) = 0 for every
// elementary n x k matrix B.  Independent of condition_matrix.
template <class F>
bool satisfies_dependence_identity(const FormPencil<F>& p, const std::vector<typename F::Element>& w) {
  const F& f = p.field();
  const std::size_t k = p.k(), n = p.n();
  const auto pairs = condition_pairs(k);
  if (w.size() != 2 * pairs.size()) return false;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      Matrix<F> B(f, n, k);
      B(a, b) = f.one();
      const Matrix<F> P1 = p.psi1 * B, P2 = p.psi2 * B;
      auto sum = f.zero();
      for (std::size_t t = 0; t < pairs.size(); ++t) {
        const auto [j, l] = pairs[t];
        sum = f.add(sum, f.mul(w[t], f.sub(P1(j, l), P1(l, j))));
        sum = f.add(sum, f.mul(w[pairs.size() + t], f.sub(P2(j, l), P2(l, j))));
      }
      if (!f.is_zero(sum)) return false;
    }
  return true;
}

template <class F>
struct DependenceCertificate {
  using Element = typename F::Element;
  bool dependent = false;
  // Rank path: a nonzero left-kernel vector (x, y).
  std::vector<Element> coefficients;
  // Criterion path: (lambda_1 : lambda_2) with rank(lambda_1 psi_1 + lambda_2 psi_2) <= k - 2,
  // over `witness_field`, and V' (two rows in V-coordinates) in the left kernel there.
  std::optional<std::pair<Element, Element>> witness;
  std::optional<F> witness_field;
  std::uint32_t witness_field_degree = 1;
  std::optional<Matrix<F>> v_prime;
  std::optional<Polynomial<F>> gcd;
};

template <class F>
DependenceCertificate<F> rank_certificate(const FormPencil<F>& p) {
  DependenceCertificate<F> out;
  const auto ker = dependence_space(p);
  out.dependent = !ker.empty();
  if (out.dependent) out.coefficients = ker.front();
  return out;
}

// Criterion path.  Never consults the condition matrix.
template <class F>
DependenceCertificate<F> pencil_rank_drop(const FormPencil<F>& p) {
  require(p.surjective1 && p.surjective2, ErrorCode::not_surjective, "pencil pairings are not both surjective");
  const F& base = p.field();
  const std::size_t k = p.k();
  std::vector<BinaryForm<F>> minors;
  // Once the running gcd is a unit with a nonvanishing form at infinity the answer is settled.
  std::optional<Polynomial<F>> g;
  bool infinity = true;
  for_each_pencil_minor(p.psi1, p.psi2, k - 1, [&](BinaryForm<F> m) {
    if (!m.is_zero()) {
      if (!m.vanishes_at_infinity()) infinity = false;
      g = g ? gcd(*g, m.dehom) : m.dehom.monic();
    }
    minors.push_back(std::move(m));
    return infinity || !g || g->degree() >= 1;
  });
  const auto root = binary_form_common_root(minors, base);
  DependenceCertificate<F> out;
  out.gcd = root.gcd;
  if (root.status == CommonRootStatus::none) return out;
  out.dependent = true;
  if (!root.witness) return out;
  out.witness = root.witness;
  out.witness_field = root.field;
  out.witness_field_degree = root.field_degree;
  const F& K = *root.field;
  const auto emb = detail::embedding_for(base, K);
  const Matrix<F> comb = map_matrix(p.psi1, emb, K).scaled(root.witness->first) +
                         map_matrix(p.psi2, emb, K).scaled(root.witness->second);
  const auto ker = left_kernel(comb);
  require(ker.size() >= 2, ErrorCode::invariant_violation, "pencil witness does not drop rank by two");
  out.v_prime = Matrix<F>::from_rows(K, {ker[0], ker[1]}, k);
  return out;
}

// The explicit dependence of the degenerate-pencil construction: change the
// basis of V so that V' comes first, then put lambda_i on slot (i; 1, 2).
template <class F>
struct EasyDependence {
  Matrix<F> change;  // rows: new basis of V in old coordinates
  FormPencil<F> adapted;
  std::vector<typename F::Element> coefficients;
};

template <class F>
EasyDependence<F> msg_easy_dependence(const FormPencil<F>& p, const std::pair<typename F::Element, typename F::Element>& lambda,
                                      const Matrix<F>& v_prime) {
  const F& f = p.field();
  const std::size_t k = p.k();
  require(k >= 2 && v_prime.rows() == 2 && v_prime.cols() == k && rank(v_prime) == 2, ErrorCode::invalid_input,
          "V' must be a 2-plane in V");
  const Matrix<F> comb = p.psi1.scaled(lambda.first) + p.psi2.scaled(lambda.second);
  require((v_prime * comb).is_zero(), ErrorCode::invalid_input, "the combined pairing does not vanish on V'");
  std::vector<std::vector<typename F::Element>> rows = {v_prime.row(0), v_prime.row(1)};
  for (std::size_t e = 0; e < k && rows.size() < k; ++e) {
    std::vector<typename F::Element> unit(k, f.zero());
    unit[e] = f.one();
    auto trial = rows;
    trial.push_back(unit);
    if (rank(Matrix<F>::from_rows(f, trial, k)) == trial.size()) rows = std::move(trial);
  }
  const Matrix<F> T = Matrix<F>::from_rows(f, rows, k);
  EasyDependence<F> out{T, FormPencil<F>(T * p.psi1, T * p.psi2), {}};
  const std::size_t slots = k * (k - 1) / 2;
  out.coefficients.assign(2 * slots, f.zero());
  out.coefficients[0] = lambda.first;
  out.coefficients[slots] = lambda.second;
  return out;
}

// Bases with psi_1 = [I | 0]: psi_2 Q = A where psi_1 Q = [I | 0].
template <class F>
struct NormalizedPencil {
  Matrix<F> col_change;  // Q, n x n
  Matrix<F> a;           // psi_2 Q
};

template <class F>
NormalizedPencil<F> normalize_pencil(const FormPencil<F>& p) {
  require(p.surjective1, ErrorCode::not_surjective, "psi_1 is not surjective");
  const F& f = p.field();
  const std::size_t k = p.k(), n = p.n();
  // Right inverse of psi_1 from the pivots of its RREF, then its kernel.
  auto rr = rref(p.psi1.hconcat(Matrix<F>::identity(f, k)));
  const Matrix<F> E = rr.reduced.block(0, n, k, k);  // E psi_1 = RREF
  Matrix<F> Q(f, n, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t t = 0; t < k; ++t) Q(rr.pivots[i], t) = E(i, t);
  const auto ker = right_kernel(p.psi1);
  for (std::size_t t = 0; t < ker.size(); ++t)
    for (std::size_t c = 0; c < n; ++c) Q(c, k + t) = ker[t][c];
  return {Q, p.psi2 * Q};
}

// For A in generalized Jordan normal form and c' from a dependence of
// ([I | 0], A): per Jordan block, the minimal row i with a nonzero row of the
// antisymmetric extension of c' gives v_i = (c'_{i,1}, .., c'_{i,k}).
template <class F>
std::vector<std::pair<std::size_t, std::vector<typename F::Element>>> extract_dependence_vectors(
    const Matrix<F>& A, const std::vector<typename F::Element>& c_prime) {
  const F& f = A.field();
  const std::size_t k = A.rows();
  require(is_generalized_jordan(A), ErrorCode::malformed, "matrix is not in generalized Jordan normal form");
  const auto pairs = condition_pairs(k);
  require(c_prime.size() == pairs.size(), ErrorCode::malformed, "c' has the wrong number of entries");
  bool any = false;
  for (const auto& x : c_prime) any = any || !f.is_zero(x);
  require(any, ErrorCode::malformed, "certificate has c' = 0");
  Matrix<F> full(f, k, k);
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    full(pairs[t].first, pairs[t].second) = c_prime[t];
    full(pairs[t].second, pairs[t].first) = f.neg(c_prime[t]);
  }
  std::vector<std::pair<std::size_t, std::vector<typename F::Element>>> out;
  std::size_t start = 0;
  while (start < k) {
    std::size_t end = start;
    while (end + 1 < k && f.is_one(A(end, end + 1))) ++end;
    for (std::size_t i = start; i <= end; ++i) {
      auto row = full.row(i);
      bool nz = false;
      for (const auto& x : row) nz = nz || !f.is_zero(x);
      if (nz) {
        out.emplace_back(i, std::move(row));
        break;
      }
    }
    start = end + 1;
  }
  return out;
}

template <class F>
struct SmoothnessReport {
  std::size_t codimension = 0;  // of the intersected tangent spaces in Hom(V, E/V)
  std::size_t expected = 0;     // 2 C(k, 2)
  std::size_t dependence_dim = 0;
  DependenceCertificate<F> criterion;
  bool smooth = false;  // criterion verdict: no degenerate 2-plane
  bool agree = false;
};

template <class F>
SmoothnessReport<F> msg_smoothness_at(const AlternatingForm<F>& f1, const AlternatingForm<F>& f2, const Subspace<F>& V) {
  require(f1.dim() == f2.dim(), ErrorCode::invalid_input, "forms have different dimensions");
  require(f1.radical().dim() == 0 && f2.radical().dim() == 0, ErrorCode::invalid_input, "forms must be nondegenerate");
  const auto p1 = induced_pairing(f1, V), p2 = induced_pairing(f2, V);
  const FormPencil<F> pencil(p1.psi, p2.psi);
  SmoothnessReport<F> out;
  const std::size_t k = V.dim();
  out.expected = k * (k - 1);
  const auto sys = condition_matrix<F>({pencil.psi1, pencil.psi2});
  out.codimension = sys.matrix.rows() ? rank(sys.matrix) : 0;
  out.dependence_dim = out.expected - out.codimension;
  out.criterion = pencil_rank_drop(pencil);
  out.smooth = !out.criterion.dependent;
  out.agree = (out.codimension == out.expected) == out.smooth;
  return out;
}

}  // namespace fixdet
