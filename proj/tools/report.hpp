#pragma once

// JSON encoding of fields, scalars, matrices and forms, plus the
// dimension-law campaign shared by the CLI and the acceptance runner.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fixdet/enumerate.hpp"
#include "fixdet/field.hpp"
#include "fixdet/forms.hpp"
#include "fixdet/matrix.hpp"
#include "fixdet/polynomial.hpp"

namespace fixdet::tools {

// Insertion-ordered so that dumps are reproducible.
using Json = nlohmann::ordered_json;

Json field_to_json(const FieldSpec& spec);
FieldSpec field_from_json(const Json& j);

// Calls fn with the field object described by spec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.is_finite()) return fn(FiniteField::from_spec(spec));
  return fn(RationalField{});
}

Json integer_to_json(const mpz_class& v);

// Rationals as "a/b" strings; prime-field residues as integers; extension
// elements as coefficient lists over the prime field.
inline Json element_to_json(const RationalField&, const mpq_class& a) { return a.get_str(); }
inline Json element_to_json(const FiniteField& f, std::uint32_t a) {
  if (f.degree() == 1) return a;
  return f.digits(a);
}

mpq_class element_from_json(const RationalField& f, const Json& j);
std::uint32_t element_from_json(const FiniteField& f, const Json& j);

template <class F>
Json matrix_to_json(const Matrix<F>& m) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(element_to_json(m.field(), m(i, j)));
    entries.push_back(std::move(row));
  }
  return {{"field", field_to_json(m.field().spec())}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

namespace detail {
void check_matrix_shape(const Json& j, std::size_t& rows, std::size_t& cols);
}

template <class F>
Matrix<F> matrix_from_json(const F& f, const Json& j) {
  std::size_t rows = 0, cols = 0;
  detail::check_matrix_shape(j, rows, cols);
  Matrix<F> m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = element_from_json(f, j["entries"][i][c]);
  return m;
}

template <class F>
Json form_to_json(const AlternatingForm<F>& form) {
  Json j = matrix_to_json(form.gram());
  j["type"] = "alternating";
  return j;
}

template <class F>
AlternatingForm<F> form_from_json(const F& f, const Json& j) {
  require(j.is_object() && j.value("type", std::string()) == "alternating", ErrorCode::invalid_input,
          "form JSON needs \"type\": \"alternating\"");
  return AlternatingForm<F>(matrix_from_json(f, j));
}

// Ascending coefficient list.
template <class F>
Polynomial<F> polynomial_from_json(const F& f, const Json& j) {
  require(j.is_array(), ErrorCode::invalid_input, "polynomial must be a coefficient list");
  std::vector<typename F::Element> c;
  for (const auto& x : j) c.push_back(element_from_json(f, x));
  return Polynomial<F>(f, std::move(c));
}

template <class F>
Json polynomial_to_json(const Polynomial<F>& p) {
  Json j = Json::array();
  for (const auto& c : p.coeffs()) j.push_back(element_to_json(p.field(), c));
  return j;
}

Json fit_to_json(const DimensionFit& fit);
Json stratum_report_to_json(const StratumReport& rep);

// --- dimension-law campaign ---------------------------------------------

struct DimensionLawConfig {
  std::size_t r_max = 6, k_max = 4;
  std::vector<std::uint64_t> q_list{2, 3, 5, 7};
  std::uint64_t ceiling = default_ceiling;
  std::uint64_t seed = 1;
  unsigned jobs = 1;  // not part of the report
};

struct DimensionLawResult {
  Json report;
  std::size_t cases = 0;
  std::size_t fit_failures = 0;     // no polynomial, or wrong degree
  std::size_t window_failures = 0;  // populated strata outside the window, or emptiness wrong
  bool ok() const { return fit_failures == 0 && window_failures == 0; }
};

// Every (r <= r_max, 2 delta <= r, 1 <= k <= min(k_max, r)): stratum counts of
// a randomly disguised form of rank 2 delta over every q, fitted and checked
// against the expected degrees and the nonemptiness window.
DimensionLawResult dimension_law_campaign(const DimensionLawConfig& cfg);

}  // namespace fixdet::tools
